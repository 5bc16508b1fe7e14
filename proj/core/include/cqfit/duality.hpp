#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cqfit/hom.hpp"
#include "cqfit/model.hpp"
#include "cqfit/path.hpp"

namespace cqfit {

enum class DualCase {
    /// source does not map to the anchor; the dual is the anchor itself.
    non_mapping,
    /// dual built from pairs <anchor value, source fact or dummy>.
    constructed,
};

struct DualResult {
    Example dual;
    DualCase kind;
};

/// Rendering of the dummy fact inside dual values.
inline constexpr const char* kDummyFact = "_";

/// Value `<b,R<a,a'>>` for anchor value `b` paired with `fact`, or `<b,_>` for the dummy.
Value dual_value(const Value& anchor_value, const std::optional<Fact>& fact);

/// Builds (D, d) such that ({source}, {(D, d)}) is a homomorphism duality
/// relative to `anchor`. Polynomial: |facts(D)| <= |facts(J)| * (|facts(I)| + 1)^2.
DualResult build_path_dual(const PathExample& source, const PathExample& anchor, const HomOptions& options = {});

/// (F, D) together with the example J they are relative to.
struct RelativeDuality {
    std::vector<Example> obstructions;
    std::vector<Example> duals;
    Example anchor;
};

enum class DualityViolation {
    none,
    /// an obstruction maps into the probe, yet the probe maps into a dual.
    obstruction_and_dual,
    /// no obstruction maps into the probe, and the probe maps into no dual.
    neither,
};

struct DualityVerdict {
    bool holds = true;
    DualityViolation violation = DualityViolation::none;
    std::optional<Example> counterexample;
    std::size_t checked = 0;
    /// Probes that do not map into the anchor (outside the relativization).
    std::size_t skipped = 0;
};

/// Checks the duality law on each probe p with p -> anchor:
///   (some obstruction maps into p) <=> (p maps into no dual).
/// Stops at the first violating probe.
DualityVerdict verify_relative_duality(const RelativeDuality& duality, std::span<const Example> probes,
                                       const HomOptions& options = {});

/// `count` examples that all map into `anchor`: sub-examples of anchor x R for
/// random small paths R, random paths that map into the anchor, and sub-examples
/// of the anchor itself. Deterministic under `seed`.
std::vector<Example> generate_probes(const Example& anchor, std::size_t count, std::uint64_t seed);

}  // namespace cqfit
