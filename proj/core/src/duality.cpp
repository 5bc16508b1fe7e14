#include "cqfit/duality.hpp"

#include <map>
#include <stdexcept>
#include <string>

#include "cqfit/product.hpp"
#include "cqfit/random.hpp"

namespace cqfit {
namespace {

// `R<a,b>`: a fact rendered with the value alphabet.
std::string fact_token(const Fact& f) {
    std::string out = f.relation;
    out += '<';
    for (std::size_t i = 0; i < f.args.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += f.args[i];
    }
    out += '>';
    return out;
}

Example random_sub_example(const Example& e, Rng& rng) {
    std::set<Fact> kept;
    for (const auto& f : e.facts()) {
        if (rng.chance(1, 2)) {
            kept.insert(f);
        }
    }
    return Example::from_facts(std::move(kept), e.answers());
}

// Random chain r0 -> r1 -> ... over the anchor's schema; labels may sit anywhere.
Example random_chain(const Schema& schema, Rng& rng) {
    const auto binary = schema.binary_relations();
    const auto unary = schema.unary_relations();
    const std::size_t length = binary.empty() ? 0 : static_cast<std::size_t>(rng.between(1, 3));
    std::set<Fact> facts;
    for (std::size_t i = 0; i <= length; ++i) {
        const Value v = "r" + std::to_string(i);
        if (i > 0) {
            facts.insert(Fact{binary[rng.below(binary.size())], {"r" + std::to_string(i - 1), v}});
        }
        for (const auto& p : unary) {
            if (rng.chance(1, 2)) {
                facts.insert(Fact{p, {v}});
            }
        }
    }
    return Example::from_facts(std::move(facts), {"r0"});
}

// Walks forward from the anchor's answer along binary facts, keeping a random
// subset of the labels met on the way (and occasionally one it does not have).
std::optional<Example> random_walk_path(const Example& anchor, Rng& rng) {
    const Value& root = anchor.answers().front();
    std::map<Value, std::vector<const Fact*>> out_edges;
    std::map<Value, std::vector<std::string>> labels;
    for (const auto& f : anchor.facts()) {
        if (f.arity() == 2) {
            out_edges[f.args[0]].push_back(&f);
        } else if (f.arity() == 1) {
            labels[f.args[0]].push_back(f.relation);
        }
    }
    const auto unary = anchor.instance().schema().unary_relations();
    std::set<Fact> facts;
    Value at = root;
    std::size_t steps = 0;
    const std::size_t max_steps = static_cast<std::size_t>(rng.between(1, 8));
    while (steps < max_steps) {
        auto it = out_edges.find(at);
        if (it == out_edges.end()) {
            break;
        }
        const Fact* edge = it->second[rng.below(it->second.size())];
        const Value from = "p" + std::to_string(steps);
        const Value to = "p" + std::to_string(steps + 1);
        facts.insert(Fact{edge->relation, {from, to}});
        at = edge->args[1];
        for (const auto& p : labels[at]) {
            if (rng.chance(2, 3)) {
                facts.insert(Fact{p, {to}});
            }
        }
        if (!unary.empty() && rng.chance(1, 10)) {
            facts.insert(Fact{unary[rng.below(unary.size())], {to}});
        }
        ++steps;
    }
    if (steps == 0) {
        return std::nullopt;
    }
    return Example::from_facts(std::move(facts), {"p0"});
}

}  // namespace

Value dual_value(const Value& anchor_value, const std::optional<Fact>& fact) {
    return pair_value(anchor_value, fact ? fact_token(*fact) : std::string(kDummyFact));
}

DualResult build_path_dual(const PathExample& source, const PathExample& anchor, const HomOptions& options) {
    const Example source_example = source.to_example();
    const Example anchor_example = anchor.to_example();
    Schema::merge(source_example.instance().schema(), anchor_example.instance().schema());

    if (!hom_exists(source_example, anchor_example, options)) {
        return DualResult{anchor_example, DualCase::non_mapping};
    }

    const std::size_t n = source.length();
    const std::size_t m = anchor.length();
    if (n > m) {
        throw std::logic_error("source path longer than anchor path but maps into it");
    }
    for (std::size_t i = 1; i <= n; ++i) {
        if (source.edge(i) != anchor.edge(i)) {
            throw std::logic_error("edge " + std::to_string(i) + " differs between source and anchor paths");
        }
    }

    // Facts of the source paired with anchor level i (nullopt is the dummy fact).
    std::vector<std::vector<std::optional<Fact>>> levels(m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        auto& level = levels[i];
        if (i == 0 || i > n) {
            level.emplace_back(std::nullopt);
        }
        if (i >= 1 && i <= n) {
            level.emplace_back(source.edge_fact(i));
        }
        if (i + 1 <= n) {
            level.emplace_back(source.edge_fact(i + 1));
        }
        if (i >= 1 && i <= n) {
            for (const auto& p : source.labels_at(i)) {
                level.emplace_back(Fact{p, {source.value(i)}});
            }
        }
    }

    std::set<Fact> facts;
    std::set<Value> domain;
    for (std::size_t i = 0; i <= m; ++i) {
        for (const auto& f : levels[i]) {
            domain.insert(dual_value(anchor.value(i), f));
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        const std::optional<Fact> blocked =
            i + 1 <= n ? std::optional<Fact>(source.edge_fact(i + 1)) : std::nullopt;
        for (const auto& f : levels[i]) {
            for (const auto& g : levels[i + 1]) {
                if (blocked && f == blocked && g == blocked) {
                    continue;
                }
                facts.insert(Fact{anchor.edge(i + 1),
                                  {dual_value(anchor.value(i), f), dual_value(anchor.value(i + 1), g)}});
            }
        }
        for (const auto& g : levels[i + 1]) {
            for (const auto& p : anchor.labels_at(i + 1)) {
                if (i + 1 <= n && g == Fact{p, {source.value(i + 1)}}) {
                    continue;
                }
                facts.insert(Fact{p, {dual_value(anchor.value(i + 1), g)}});
            }
        }
    }

    const std::size_t bound = anchor.fact_count() * (source.fact_count() + 1) * (source.fact_count() + 1);
    if (facts.size() > bound) {
        throw std::logic_error("dual has " + std::to_string(facts.size()) + " facts, above the bound " +
                               std::to_string(bound));
    }
    const Value root = dual_value(anchor.value(0), source.edge_fact(1));
    return DualResult{Example(Instance(std::move(facts), std::move(domain)), {root}), DualCase::constructed};
}

DualityVerdict verify_relative_duality(const RelativeDuality& duality, std::span<const Example> probes,
                                       const HomOptions& options) {
    DualityVerdict verdict;
    for (const auto& probe : probes) {
        if (!hom_exists(probe, duality.anchor, options)) {
            ++verdict.skipped;
            continue;
        }
        ++verdict.checked;
        bool has_obstruction = false;
        for (const auto& f : duality.obstructions) {
            if (hom_exists(f, probe, options)) {
                has_obstruction = true;
                break;
            }
        }
        bool avoids_duals = true;
        for (const auto& d : duality.duals) {
            if (hom_exists(probe, d, options)) {
                avoids_duals = false;
                break;
            }
        }
        if (has_obstruction != avoids_duals) {
            verdict.holds = false;
            verdict.violation = has_obstruction ? DualityViolation::obstruction_and_dual : DualityViolation::neither;
            verdict.counterexample = probe;
            return verdict;
        }
    }
    return verdict;
}

std::vector<Example> generate_probes(const Example& anchor, std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    const Schema schema = anchor.instance().schema();
    std::vector<Example> probes;
    probes.reserve(count);
    bool anchor_emitted = false;
    while (probes.size() < count) {
        const auto kind = rng.below(3);
        if (kind == 0) {
            Example chain = random_chain(schema, rng);
            if (chain.arity() == anchor.arity()) {
                probes.push_back(random_sub_example(product_example(anchor, chain), rng));
                continue;
            }
        } else if (kind == 1 && anchor.arity() == 1) {
            bool added = false;
            for (int attempt = 0; attempt < 20 && !added; ++attempt) {
                auto path = random_walk_path(anchor, rng);
                if (path && hom_exists(*path, anchor)) {
                    probes.push_back(std::move(*path));
                    added = true;
                }
            }
            if (added) {
                continue;
            }
        }
        if (!anchor_emitted) {
            probes.push_back(anchor);
            anchor_emitted = true;
        } else {
            probes.push_back(random_sub_example(anchor, rng));
        }
    }
    return probes;
}

}  // namespace cqfit
