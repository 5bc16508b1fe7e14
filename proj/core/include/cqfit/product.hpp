#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cqfit/hom.hpp"
#include "cqfit/model.hpp"

namespace cqfit {

inline constexpr std::size_t kDefaultMaxProductFacts = 1'000'000;

struct ProductOptions {
    /// Materializations with more facts than this throw SizeLimitError.
    std::size_t max_facts = kDefaultMaxProductFacts;
};

/// `<u,v>`.
Value pair_value(const Value& u, const Value& v);

/// Inverse of pair_value; nullopt if `v` is not a pair value.
std::optional<std::pair<Value, Value>> split_pair_value(const Value& v);

/// Direct product of two examples of the same arity. Only values that occur in
/// product facts or in the paired answer tuple are materialized.
Example product_example(const Example& e1, const Example& e2, const ProductOptions& options = {});

/// A product of one or more examples that is not materialized until asked.
class ImplicitProduct {
public:
    /// Throws std::invalid_argument on an empty factor list and SchemaError on
    /// mismatched arities or relation arities.
    explicit ImplicitProduct(std::vector<Example> factors);

    const std::vector<Example>& factors() const noexcept { return factors_; }
    std::size_t arity() const noexcept { return factors_.front().arity(); }

    /// Left fold of product_example over the factors.
    Example materialize(const ProductOptions& options = {}) const;

    /// Product of the factor fact counts, saturating at SIZE_MAX.
    std::size_t fact_count_bound() const;

private:
    std::vector<Example> factors_;
};

ImplicitProduct product_many(std::vector<Example> examples);

/// Universal property: src maps into the product iff it maps into every factor.
bool hom_into_product(const Example& src, const ImplicitProduct& product, const HomOptions& options = {});

enum class FitStatus { fitting, no_fitting, size_overflow };

struct MostSpecificFitting {
    FitStatus status;
    /// Canonical CQ of the product when status == fitting.
    std::optional<CQ> query;
    ImplicitProduct product;
};

struct MostSpecificOptions {
    ProductOptions product;
    HomOptions hom;
    /// Greedily drop redundant product facts before returning the query.
    bool minimize = false;
};

/// The canonical CQ of the product of the positives, when it fits. If it fails
/// a negative, no CQ fits the collection. Throws std::invalid_argument when
/// there are no positives.
MostSpecificFitting most_specific_fitting(const LabeledCollection& collection, const MostSpecificOptions& options = {});

/// Removes facts one at a time (in canonical order) while the result stays
/// hom-equivalent to `e`; values left without facts are dropped unless they are answers.
Example reduce_example(const Example& e, const HomOptions& options = {});

}  // namespace cqfit
