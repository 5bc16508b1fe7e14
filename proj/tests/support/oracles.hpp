#pragma once

// Independent reference implementations used to cross-check the library.
// Everything here is deliberately naive: exhaustive enumeration, no pruning
// beyond what keeps the loops finite.

#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "cqfit/model.hpp"
#include "cqfit/path.hpp"
#include "cqfit/random.hpp"

namespace cqfit::oracles {

/// Tries every map domain(src) -> domain(dst).
bool brute_hom_exists(const Example& src, const Example& dst);

/// Every assignment of q's variables into the instance domain.
std::set<Tuple> brute_evaluate(const CQ& q, const Instance& instance);

/// Pairs facts of equal relation componentwise. Values are rendered "[u|v]" so
/// the result never coincides textually with the library's product.
Example naive_product(const Example& a, const Example& b);

/// A bijection of domains that maps facts onto facts and answers onto answers.
bool isomorphic(const Example& a, const Example& b);

struct ExampleSpec {
    std::size_t max_values = 3;
    std::size_t max_facts = 4;
    std::vector<std::string> unary = {"A", "B"};
    std::vector<std::string> binary = {"R"};
    std::vector<std::string> ternary = {};
    std::size_t arity = 1;
    /// Prefix for value names.
    std::string prefix = "v";
};

Example random_example(Rng& rng, const ExampleSpec& spec);

struct PathSpec {
    std::size_t max_length = 6;
    std::vector<std::string> labels = {"A", "B"};
    std::vector<std::string> edges = {"R", "S"};
    std::string prefix = "a";
};

PathExample random_path(Rng& rng, const PathSpec& spec);

/// A path that maps into `anchor`: a prefix of it with a subset of its labels.
PathExample random_subpath(Rng& rng, const PathExample& anchor, const std::string& prefix);

/// All unary CQs q(x0) with 1..max_atoms distinct atoms over the relations,
/// up to variable renaming (variables introduced in order).
std::vector<CQ> enumerate_unary_cqs(const std::vector<std::string>& unary, const std::vector<std::string>& binary,
                                    std::size_t max_atoms);

/// Calls `visit` on every unary example with domain {p0..p(k-1)}, 1 <= k <= max_values,
/// answer p0, over the given relations. `binary_filter` prunes on the binary part
/// before unary facts are added.
void for_each_small_example(std::size_t max_values, const std::vector<std::string>& unary,
                            const std::vector<std::string>& binary,
                            const std::function<bool(const Example&)>& binary_filter,
                            const std::function<void(const Example&)>& visit);

}  // namespace cqfit::oracles
