#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>

#include "cqfit/model.hpp"

namespace cqfit {

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

struct HomOptions {
    /// Maximum number of branching decisions before ResourceLimitError is thrown.
    std::uint64_t node_budget = kDefaultNodeBudget;
};

/// A total map from the source domain to the target domain.
struct Homomorphism {
    std::map<Value, Value> mapping;

    const Value& operator()(const Value& v) const { return mapping.at(v); }
    bool operator==(const Homomorphism&) const = default;
};

/// Searches for a homomorphism src -> dst that maps the answer tuple of `src`
/// onto the answer tuple of `dst`. Exact: returns nullopt iff none exists.
/// The witness is deterministic for identical inputs.
///
/// Throws std::invalid_argument on an arity mismatch, SchemaError if a relation
/// has different arities in src and dst, and ResourceLimitError when the node
/// budget runs out.
std::optional<Homomorphism> find_hom(const Example& src, const Example& dst, const HomOptions& options = {});

bool hom_exists(const Example& src, const Example& dst, const HomOptions& options = {});

/// Independent fact-by-fact check that `h` is an answer-preserving homomorphism.
bool is_homomorphism(const Homomorphism& h, const Example& src, const Example& dst);

/// Composition (second after first).
Homomorphism compose(const Homomorphism& first, const Homomorphism& second);

/// All answer tuples of `q` on `instance`: { a : (I_q, x) -> (I, a) }.
std::set<Tuple> evaluate(const CQ& q, const Instance& instance, const HomOptions& options = {});

/// True iff the answer tuple of `e` is an answer of `q` on e's instance.
bool is_positive_for(const CQ& q, const Example& e, const HomOptions& options = {});

/// q1 is contained in q2: hom from canonical_example(q2) to canonical_example(q1).
bool contained(const CQ& q1, const CQ& q2, const HomOptions& options = {});

bool equivalent(const CQ& q1, const CQ& q2, const HomOptions& options = {});

/// Every positive is a positive example of q and every negative a negative example.
bool fits(const CQ& q, const LabeledCollection& collection, const HomOptions& options = {});

}  // namespace cqfit
