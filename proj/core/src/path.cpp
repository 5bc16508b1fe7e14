#include "cqfit/path.hpp"

#include <map>

#include "cqfit/error.hpp"

namespace cqfit {

PathExample::PathExample(std::vector<Value> values, std::vector<std::string> edges,
                         std::vector<std::set<std::string>> labels)
    : values_(std::move(values)), edges_(std::move(edges)), labels_(std::move(labels)) {
    if (edges_.empty()) {
        throw ShapeError("path example needs at least one edge");
    }
    if (values_.size() != edges_.size() + 1 || labels_.size() != edges_.size()) {
        throw ShapeError("path example with " + std::to_string(edges_.size()) + " edges needs " +
                         std::to_string(edges_.size() + 1) + " values and " + std::to_string(edges_.size()) +
                         " label sets");
    }
    std::set<Value> seen;
    for (const auto& v : values_) {
        if (!seen.insert(v).second) {
            throw ShapeError("path example repeats value '" + v + "'");
        }
    }
    for (const auto& r : edges_) {
        for (const auto& set : labels_) {
            if (set.count(r)) {
                throw ShapeError("relation '" + r + "' used as both edge and label");
            }
        }
    }
}

PathExample PathExample::make(std::vector<std::string> edges, std::vector<std::set<std::string>> labels,
                              const std::string& prefix) {
    std::vector<Value> values;
    for (std::size_t i = 0; i <= edges.size(); ++i) {
        values.push_back(prefix + std::to_string(i));
    }
    return PathExample(std::move(values), std::move(edges), std::move(labels));
}

Fact PathExample::edge_fact(std::size_t i) const {
    return Fact{edge(i), {values_.at(i - 1), values_.at(i)}};
}

Example PathExample::to_example() const {
    std::set<Fact> facts;
    for (std::size_t i = 1; i <= length(); ++i) {
        facts.insert(edge_fact(i));
        for (const auto& p : labels_at(i)) {
            facts.insert(Fact{p, {values_[i]}});
        }
    }
    return Example(Instance(std::move(facts)), {values_.front()});
}

std::size_t PathExample::fact_count() const {
    std::size_t n = edges_.size();
    for (const auto& set : labels_) {
        n += set.size();
    }
    return n;
}

PathExample as_path_example(const Example& e) {
    if (e.arity() != 1) {
        throw ShapeError("path example must be unary, got arity " + std::to_string(e.arity()));
    }
    const Value& root = e.answers().front();

    std::map<Value, const Fact*> outgoing;
    std::map<Value, int> indegree;
    std::map<Value, std::set<std::string>> labels;
    for (const auto& f : e.facts()) {
        if (f.arity() == 1) {
            labels[f.args[0]].insert(f.relation);
        } else if (f.arity() == 2) {
            if (f.args[0] == f.args[1]) {
                throw ShapeError("self-loop " + f.relation + " on '" + f.args[0] + "'");
            }
            if (!outgoing.emplace(f.args[0], &f).second) {
                throw ShapeError("value '" + f.args[0] + "' has more than one outgoing edge");
            }
            if (++indegree[f.args[1]] > 1) {
                throw ShapeError("value '" + f.args[1] + "' has more than one incoming edge");
            }
        } else {
            throw ShapeError("relation '" + f.relation + "' has arity " + std::to_string(f.arity()) +
                             "; path examples use unary and binary relations only");
        }
    }
    if (outgoing.empty()) {
        throw ShapeError("no binary spine");
    }
    if (labels.count(root)) {
        throw ShapeError("root '" + root + "' carries unary facts");
    }
    if (indegree.count(root)) {
        throw ShapeError("root '" + root + "' has an incoming edge");
    }

    std::vector<Value> values{root};
    std::vector<std::string> edges;
    std::vector<std::set<std::string>> label_sets;
    Value current = root;
    for (auto it = outgoing.find(current); it != outgoing.end(); it = outgoing.find(current)) {
        const Fact& f = *it->second;
        current = f.args[1];
        if (current == root || values.size() > outgoing.size()) {
            throw ShapeError("binary facts form a cycle");
        }
        values.push_back(current);
        edges.push_back(f.relation);
        auto lab = labels.find(current);
        label_sets.push_back(lab == labels.end() ? std::set<std::string>{} : lab->second);
    }
    if (edges.size() != outgoing.size()) {
        throw ShapeError("binary facts not on the chain starting at the root");
    }
    std::set<Value> on_chain(values.begin(), values.end());
    for (const auto& [v, set] : labels) {
        if (!on_chain.count(v)) {
            throw ShapeError("unary fact on '" + v + "' which is not on the chain");
        }
    }
    if (e.domain().size() != on_chain.size()) {
        throw ShapeError("domain contains values not on the chain");
    }
    return PathExample(std::move(values), std::move(edges), std::move(label_sets));
}

}  // namespace cqfit
