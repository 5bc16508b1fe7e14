#include "cqfit/pac/scenarios.hpp"

#include <stdexcept>
#include <string>

#include "cqfit/canonical.hpp"
#include "cqfit/duality.hpp"

namespace cqfit::pac {
namespace {

CQ path_cq(const PathExample& path) {
    CQ q;
    q.head = {path.value(0)};
    for (std::size_t i = 1; i <= path.length(); ++i) {
        q.atoms.push_back(path.edge_fact(i));
        for (const auto& p : path.labels_at(i)) {
            q.atoms.push_back(Fact{p, {path.value(i)}});
        }
    }
    return q;
}

std::vector<std::vector<int>> half_subsets(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    auto rec = [&](auto&& self, int next) -> void {
        if (static_cast<int>(current.size()) == n / 2) {
            out.push_back(current);
            return;
        }
        for (int i = next; i <= n; ++i) {
            current.push_back(i);
            self(self, i + 1);
            current.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

}  // namespace

Theorem4Scenario build_theorem4_scenario(int n, const HomOptions& options) {
    if (n < 1 || n > kTheorem4MaxN) {
        throw std::invalid_argument("theorem 4 scenario needs 1 <= n <= " + std::to_string(kTheorem4MaxN) +
                                    ", got " + std::to_string(n));
    }
    const auto count = std::size_t{1} << n;
    const std::vector<std::string> edges(n, "R");

    PathExample target_path =
        PathExample::make(edges, std::vector<std::set<std::string>>(n, std::set<std::string>{"A", "B"}), "x");
    const Example target_example = target_path.to_example();

    std::vector<CQ> family;
    std::vector<PathExample> family_paths;
    std::vector<Example> duals;
    family.reserve(count);
    family_paths.reserve(count);
    duals.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<std::set<std::string>> labels;
        for (int i = 0; i < n; ++i) {
            labels.push_back({((k >> i) & 1) ? "B" : "A"});
        }
        PathExample path = PathExample::make(edges, std::move(labels), "y");
        DualResult dual = build_path_dual(path, target_path, options);
        if (dual.kind != DualCase::constructed || hom_exists(target_example, dual.dual, options)) {
            throw std::logic_error("dual of family member " + std::to_string(k) + " admits the target example");
        }
        family.push_back(path_cq(path));
        family_paths.push_back(std::move(path));
        duals.push_back(std::move(dual.dual));
    }

    std::vector<SupportPoint> support;
    support.reserve(count + 1);
    support.push_back(SupportPoint{target_example, true, Rational(1, 2)});
    const Rational each(BigInt(1), BigInt(2) * BigInt(count));
    for (const auto& d : duals) {
        support.push_back(SupportPoint{d, false, each});
    }

    Schema schema;
    schema.add("A", 1);
    schema.add("B", 1);
    schema.add("R", 2);
    return Theorem4Scenario{n,
                            std::move(schema),
                            path_cq(target_path),
                            std::move(target_path),
                            std::move(family),
                            std::move(family_paths),
                            std::move(duals),
                            FiniteDistribution(std::move(support))};
}

Theorem5Scenario build_theorem5_scenario(int n, const HomOptions& options) {
    if (n < 2 || n > kTheorem5MaxN || n % 2 != 0) {
        throw std::invalid_argument("theorem 5 scenario needs an even n with 2 <= n <= " +
                                    std::to_string(kTheorem5MaxN) + ", got " + std::to_string(n));
    }
    const std::vector<std::string> edges(n, "R");
    PathExample full_path =
        PathExample::make(edges, std::vector<std::set<std::string>>(n, std::set<std::string>{"A"}), "b");

    CQ target;
    target.head = {"x0"};
    target.atoms = {Fact{"A", {"x0"}}};
    const Example target_source = canonical_example(target);

    auto subsets = half_subsets(n);
    std::vector<PathExample> subset_paths;
    std::vector<Example> positives;
    for (const auto& s : subsets) {
        std::vector<std::set<std::string>> labels(n);
        for (int i : s) {
            labels[i - 1].insert("A");
        }
        PathExample path = PathExample::make(edges, std::move(labels), "a");
        DualResult dual = build_path_dual(path, full_path, options);
        if (dual.kind != DualCase::constructed) {
            throw std::logic_error("subset path does not map into the fully labeled path");
        }
        std::set<Fact> facts = dual.dual.facts();
        facts.insert(Fact{"A", {dual.dual.answers().front()}});
        Example positive(Instance(std::move(facts), dual.dual.domain()), dual.dual.answers());
        if (!hom_exists(target_source, positive, options)) {
            throw std::logic_error("support example is not positive for the target");
        }
        subset_paths.push_back(std::move(path));
        positives.push_back(std::move(positive));
    }

    std::vector<SupportPoint> support;
    const Rational each(BigInt(1), BigInt(positives.size()));
    for (const auto& e : positives) {
        support.push_back(SupportPoint{e, true, each});
    }

    Schema schema;
    schema.add("A", 1);
    schema.add("R", 2);
    return Theorem5Scenario{n,
                            std::move(schema),
                            std::move(target),
                            std::move(full_path),
                            std::move(subsets),
                            std::move(subset_paths),
                            std::move(positives),
                            FiniteDistribution(std::move(support))};
}

}  // namespace cqfit::pac
