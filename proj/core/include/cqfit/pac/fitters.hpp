#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cqfit/duality.hpp"
#include "cqfit/hom.hpp"
#include "cqfit/model.hpp"
#include "cqfit/pac/distribution.hpp"
#include "cqfit/pac/scenarios.hpp"
#include "cqfit/product.hpp"

namespace cqfit::pac {

enum class FittingStrategy { most_specific, scenario_most_general, smallest_path };

std::string to_string(FittingStrategy s);
/// Accepts "most-specific", "scenario-most-general", "smallest-path".
FittingStrategy parse_strategy(const std::string& name);

struct MostGeneralFit {
    /// Join of the covered family members at the answer variable.
    CQ query;
    /// Family indices k whose dual is among the negatives, ascending.
    std::vector<std::size_t> covered;
};

/// Join at y0 of the family members whose duals were seen as negatives, with
/// existential variables kept apart. With no negatives this is the empty-body CQ.
/// Throws ScenarioError if an example is not a support point with the right label.
MostGeneralFit fit_scenario_most_general(const LabeledCollection& collection, const Theorem4Scenario& scenario,
                                         const HomOptions& options = {});

/// ({e_q}, {duals of covered members}) relative to the target example; a
/// homomorphism duality whenever the fit was built from scenario data.
RelativeDuality most_general_duality(const MostGeneralFit& fit, const Theorem4Scenario& scenario);

/// Closed-form error |S \ S'| / 2^(n+1) of a most-general fit.
Rational most_general_closed_form_error(const MostGeneralFit& fit, const Theorem4Scenario& scenario);

/// The most-specific fitting CQ, kept as the canonical CQ of an implicit product
/// of the positives.
class MostSpecificFit {
public:
    explicit MostSpecificFit(ImplicitProduct product) : product_(std::move(product)) {}

    const ImplicitProduct& product() const noexcept { return product_; }

    /// q_H contained in q, decided factor-wise.
    bool contained_in(const CQ& q, const HomOptions& options = {}) const;

    bool is_factor(const Example& e) const;

    /// Classification of `e` without materializing the product. Positive if e is
    /// a factor; negative if `certificate` maps into every factor but not into e
    /// (so the product cannot map into e either); otherwise undecided.
    std::optional<bool> classify(const Example& e, const Example& certificate, const HomOptions& options = {}) const;

    /// Classification through the materialized product (small inputs only).
    bool classify_materialized(const Example& e, const ProductOptions& product_options = {},
                               const HomOptions& options = {}) const;

private:
    ImplicitProduct product_;
};

/// Throws std::invalid_argument without positives. Negatives, if any, are
/// checked on the materialized product (NoFittingError / SizeLimitError).
MostSpecificFit fit_most_specific(const LabeledCollection& collection, const HomOptions& options = {});

struct MostSpecificEvaluation {
    Rational error;
    /// Unseen support points whose misclassification was certified.
    std::size_t certified_unseen = 0;
    /// Unseen points that needed the materialized product.
    std::size_t materialized = 0;
};

/// Exact error of a most-specific fit over the scenario support. Unseen points
/// are classified with their subset path as certificate.
MostSpecificEvaluation evaluate_most_specific(const MostSpecificFit& fit, const Theorem5Scenario& scenario,
                                              const HomOptions& options = {});

struct PathSearchOptions {
    /// Largest number of atoms considered.
    std::size_t max_atoms = 12;
    /// Require the answer variable to occur in an atom (excludes the empty body).
    bool require_safe = true;
    /// Cap on the number of candidates that map into every positive.
    std::size_t max_candidates = 5'000'000;
};

/// Smallest unary path-shaped CQ q(x0) :- L(x0), R1(x0,x1), L(x1), ... over
/// `schema` that fits the collection, searching by atom count and then by
/// serialized text. Throws NoFittingError if none exists within the bound.
CQ fit_smallest_path_cq(const LabeledCollection& collection, const Schema& schema,
                        const PathSearchOptions& options = {});

}  // namespace cqfit::pac
