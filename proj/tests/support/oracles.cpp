#include "oracles.hpp"

#include <algorithm>
#include <map>

namespace cqfit::oracles {

bool brute_hom_exists(const Example& src, const Example& dst) {
    if (src.arity() != dst.arity()) {
        return false;
    }
    const std::vector<Value> from(src.domain().begin(), src.domain().end());
    const std::vector<Value> to(dst.domain().begin(), dst.domain().end());
    if (from.empty()) {
        return true;
    }
    if (to.empty()) {
        return false;
    }
    std::vector<std::size_t> choice(from.size(), 0);
    std::map<Value, std::size_t> position;
    for (std::size_t i = 0; i < from.size(); ++i) {
        position[from[i]] = i;
    }
    while (true) {
        bool ok = true;
        for (std::size_t i = 0; i < src.arity() && ok; ++i) {
            ok = to[choice[position[src.answers()[i]]]] == dst.answers()[i];
        }
        for (auto it = src.facts().begin(); ok && it != src.facts().end(); ++it) {
            Fact image{it->relation, {}};
            for (const auto& v : it->args) {
                image.args.push_back(to[choice[position[v]]]);
            }
            ok = dst.facts().count(image) != 0;
        }
        if (ok) {
            return true;
        }
        std::size_t k = 0;
        while (k < choice.size() && ++choice[k] == to.size()) {
            choice[k++] = 0;
        }
        if (k == choice.size()) {
            return false;
        }
    }
}

std::set<Tuple> brute_evaluate(const CQ& q, const Instance& instance) {
    const auto variables = q.variables();
    const auto domain = instance.domain();
    const std::vector<Value> vars(variables.begin(), variables.end());
    const std::vector<Value> dom(domain.begin(), domain.end());
    std::set<Tuple> out;
    if (vars.empty()) {
        out.insert(Tuple{});
        return out;
    }
    if (dom.empty()) {
        return out;
    }
    std::vector<std::size_t> choice(vars.size(), 0);
    while (true) {
        std::map<Value, Value> assignment;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            assignment[vars[i]] = dom[choice[i]];
        }
        bool ok = true;
        for (auto it = q.atoms.begin(); ok && it != q.atoms.end(); ++it) {
            Fact image{it->relation, {}};
            for (const auto& v : it->args) {
                image.args.push_back(assignment[v]);
            }
            ok = instance.contains(image);
        }
        if (ok) {
            Tuple t;
            for (const auto& v : q.head) {
                t.push_back(assignment[v]);
            }
            out.insert(t);
        }
        std::size_t k = 0;
        while (k < choice.size() && ++choice[k] == dom.size()) {
            choice[k++] = 0;
        }
        if (k == choice.size()) {
            return out;
        }
    }
}

Example naive_product(const Example& a, const Example& b) {
    auto pair = [](const Value& u, const Value& v) { return "[" + u + "|" + v + "]"; };
    std::set<Fact> facts;
    for (const auto& f : a.facts()) {
        for (const auto& g : b.facts()) {
            if (f.relation != g.relation || f.arity() != g.arity()) {
                continue;
            }
            Fact p{f.relation, {}};
            for (std::size_t i = 0; i < f.arity(); ++i) {
                p.args.push_back(pair(f.args[i], g.args[i]));
            }
            facts.insert(p);
        }
    }
    Tuple answers;
    for (std::size_t i = 0; i < a.arity(); ++i) {
        answers.push_back(pair(a.answers()[i], b.answers()[i]));
    }
    std::set<Value> domain;
    for (const auto& u : a.domain()) {
        for (const auto& v : b.domain()) {
            domain.insert(pair(u, v));
        }
    }
    return Example::from_facts(std::move(facts), std::move(answers), std::move(domain));
}

namespace {

bool extend(const std::vector<Value>& from, const std::vector<Value>& to, std::size_t next,
            std::map<Value, Value>& map, std::set<Value>& used, const Example& a, const Example& b) {
    for (const auto& f : a.facts()) {
        Fact image{f.relation, {}};
        bool complete = true;
        for (const auto& v : f.args) {
            auto it = map.find(v);
            if (it == map.end()) {
                complete = false;
                break;
            }
            image.args.push_back(it->second);
        }
        if (complete && !b.facts().count(image)) {
            return false;
        }
    }
    if (next == from.size()) {
        return true;
    }
    if (map.count(from[next])) {
        return extend(from, to, next + 1, map, used, a, b);
    }
    for (const auto& candidate : to) {
        if (used.count(candidate)) {
            continue;
        }
        map[from[next]] = candidate;
        used.insert(candidate);
        if (extend(from, to, next + 1, map, used, a, b)) {
            return true;
        }
        used.erase(candidate);
        map.erase(from[next]);
    }
    return false;
}

}  // namespace

bool isomorphic(const Example& a, const Example& b) {
    if (a.arity() != b.arity() || a.domain().size() != b.domain().size() || a.size() != b.size()) {
        return false;
    }
    std::map<Value, Value> map;
    std::set<Value> used;
    for (std::size_t i = 0; i < a.arity(); ++i) {
        auto it = map.find(a.answers()[i]);
        if (it != map.end()) {
            if (it->second != b.answers()[i]) {
                return false;
            }
            continue;
        }
        if (used.count(b.answers()[i])) {
            return false;
        }
        map[a.answers()[i]] = b.answers()[i];
        used.insert(b.answers()[i]);
    }
    const std::vector<Value> from(a.domain().begin(), a.domain().end());
    const std::vector<Value> to(b.domain().begin(), b.domain().end());
    // Same fact count plus an injective fact-preserving map means a bijection on facts.
    return extend(from, to, 0, map, used, a, b);
}

Example random_example(Rng& rng, const ExampleSpec& spec) {
    const std::size_t k = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(spec.max_values)));
    std::vector<Value> values;
    for (std::size_t i = 0; i < k; ++i) {
        values.push_back(spec.prefix + std::to_string(i));
    }
    std::vector<std::pair<std::string, std::size_t>> relations;
    for (const auto& r : spec.unary) {
        relations.emplace_back(r, 1);
    }
    for (const auto& r : spec.binary) {
        relations.emplace_back(r, 2);
    }
    for (const auto& r : spec.ternary) {
        relations.emplace_back(r, 3);
    }
    std::set<Fact> facts;
    const auto count = rng.between(0, static_cast<std::int64_t>(spec.max_facts));
    for (std::int64_t i = 0; i < count && !relations.empty(); ++i) {
        const auto& [name, arity] = relations[rng.below(relations.size())];
        Fact f{name, {}};
        for (std::size_t j = 0; j < arity; ++j) {
            f.args.push_back(values[rng.below(k)]);
        }
        facts.insert(f);
    }
    Tuple answers;
    for (std::size_t i = 0; i < spec.arity; ++i) {
        answers.push_back(values[rng.below(k)]);
    }
    return Example::from_facts(std::move(facts), std::move(answers), std::set<Value>(values.begin(), values.end()));
}

PathExample random_path(Rng& rng, const PathSpec& spec) {
    const auto n = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(spec.max_length)));
    std::vector<std::string> edges;
    std::vector<std::set<std::string>> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        edges.push_back(spec.edges[rng.below(spec.edges.size())]);
        for (const auto& p : spec.labels) {
            if (rng.chance(1, 2)) {
                labels[i].insert(p);
            }
        }
    }
    return PathExample::make(std::move(edges), std::move(labels), spec.prefix);
}

PathExample random_subpath(Rng& rng, const PathExample& anchor, const std::string& prefix) {
    const auto n = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(anchor.length())));
    std::vector<std::string> edges(anchor.edges().begin(), anchor.edges().begin() + static_cast<std::ptrdiff_t>(n));
    std::vector<std::set<std::string>> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& p : anchor.labels()[i]) {
            if (rng.chance(1, 2)) {
                labels[i].insert(p);
            }
        }
    }
    return PathExample::make(std::move(edges), std::move(labels), prefix);
}

std::vector<CQ> enumerate_unary_cqs(const std::vector<std::string>& unary, const std::vector<std::string>& binary,
                                    std::size_t max_atoms) {
    std::set<std::set<Fact>> seen;
    std::vector<CQ> out;
    std::vector<Fact> atoms;
    auto var = [](std::size_t i) { return "x" + std::to_string(i); };
    auto rec = [&](auto&& self, std::size_t vars) -> void {
        if (!atoms.empty()) {
            std::set<Fact> key(atoms.begin(), atoms.end());
            if (key.size() == atoms.size() && seen.insert(key).second) {
                CQ q;
                q.head = {"x0"};
                q.atoms = atoms;
                out.push_back(q);
            }
        }
        if (atoms.size() == max_atoms) {
            return;
        }
        for (const auto& r : unary) {
            for (std::size_t a = 0; a < vars; ++a) {
                atoms.push_back(Fact{r, {var(a)}});
                self(self, vars);
                atoms.pop_back();
            }
        }
        for (const auto& r : binary) {
            for (std::size_t a = 0; a <= vars; ++a) {
                const std::size_t after_a = a == vars ? vars + 1 : vars;
                for (std::size_t b = 0; b <= after_a; ++b) {
                    atoms.push_back(Fact{r, {var(a), var(b)}});
                    self(self, b == after_a ? after_a + 1 : after_a);
                    atoms.pop_back();
                }
            }
        }
    };
    rec(rec, 1);
    return out;
}

void for_each_small_example(std::size_t max_values, const std::vector<std::string>& unary,
                            const std::vector<std::string>& binary,
                            const std::function<bool(const Example&)>& binary_filter,
                            const std::function<void(const Example&)>& visit) {
    for (std::size_t k = 1; k <= max_values; ++k) {
        std::set<Value> domain;
        std::vector<Value> values;
        for (std::size_t i = 0; i < k; ++i) {
            values.push_back("p" + std::to_string(i));
            domain.insert(values.back());
        }
        std::vector<Fact> binary_facts;
        for (const auto& r : binary) {
            for (const auto& u : values) {
                for (const auto& v : values) {
                    binary_facts.push_back(Fact{r, {u, v}});
                }
            }
        }
        std::vector<Fact> unary_facts;
        for (const auto& r : unary) {
            for (const auto& u : values) {
                unary_facts.push_back(Fact{r, {u}});
            }
        }
        for (std::uint64_t bmask = 0; bmask < (std::uint64_t{1} << binary_facts.size()); ++bmask) {
            std::set<Fact> facts;
            for (std::size_t i = 0; i < binary_facts.size(); ++i) {
                if ((bmask >> i) & 1) {
                    facts.insert(binary_facts[i]);
                }
            }
            if (!binary_filter(Example::from_facts(facts, {values[0]}, domain))) {
                continue;
            }
            for (std::uint64_t umask = 0; umask < (std::uint64_t{1} << unary_facts.size()); ++umask) {
                std::set<Fact> all = facts;
                for (std::size_t i = 0; i < unary_facts.size(); ++i) {
                    if ((umask >> i) & 1) {
                        all.insert(unary_facts[i]);
                    }
                }
                visit(Example::from_facts(std::move(all), {values[0]}, domain));
            }
        }
    }
}

}  // namespace cqfit::oracles
