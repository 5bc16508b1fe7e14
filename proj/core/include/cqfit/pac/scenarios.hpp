#pragma once

#include <cstddef>
#include <vector>

#include "cqfit/hom.hpp"
#include "cqfit/model.hpp"
#include "cqfit/pac/distribution.hpp"
#include "cqfit/path.hpp"

namespace cqfit::pac {

/// Negative-result scenario for most-general fitters.
///
/// Target: an R-path of length n whose non-root nodes carry both A and B.
/// Family: the 2^n R-paths of length n with one label per non-root node; the
/// query with index k labels node i with B iff bit i-1 of k is set.
/// Support: the target's canonical example (probability 1/2, positive) followed
/// by one dual per family member (probability 1/2^(n+1) each, negative).
struct Theorem4Scenario {
    int n = 0;
    Schema schema;
    CQ target;
    PathExample target_path;
    std::vector<CQ> family;
    std::vector<PathExample> family_paths;
    /// duals[k] is the dual of family member k relative to the target example.
    std::vector<Example> duals;
    FiniteDistribution distribution;

    static constexpr std::size_t positive_index() { return 0; }
    static constexpr std::size_t dual_index(std::size_t k) { return k + 1; }
    std::size_t family_size() const { return family.size(); }
};

inline constexpr int kTheorem4MaxN = 14;

/// 1 <= n <= 14; throws std::invalid_argument otherwise.
Theorem4Scenario build_theorem4_scenario(int n, const HomOptions& options = {});

/// Negative-result scenario for most-specific fitters.
///
/// Target: q(x0) :- A(x0). For each S subset of {1..n} with |S| = n/2 (in
/// lexicographic order) the support holds the dual of I_S (R-path a0..an with
/// A on a_i for i in S) relative to the fully labeled path b0..bn, plus the
/// fact A on its answer value; all with probability 1/|N| and positive.
struct Theorem5Scenario {
    int n = 0;
    Schema schema;
    CQ target;
    PathExample full_path;
    std::vector<std::vector<int>> subsets;
    std::vector<PathExample> subset_paths;
    std::vector<Example> positives;
    FiniteDistribution distribution;

    std::size_t support_size() const { return positives.size(); }
};

inline constexpr int kTheorem5MaxN = 12;

/// n even, 2 <= n <= 12; throws std::invalid_argument otherwise.
Theorem5Scenario build_theorem5_scenario(int n, const HomOptions& options = {});

}  // namespace cqfit::pac
