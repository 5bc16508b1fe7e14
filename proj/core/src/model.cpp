#include "cqfit/model.hpp"

#include <stdexcept>

#include "cqfit/error.hpp"

namespace cqfit {

bool is_valid_value(std::string_view v) {
    if (v.empty()) {
        return false;
    }
    int depth = 0;
    for (char c : v) {
        bool word = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
        if (word) {
            continue;
        }
        if (c == '<') {
            ++depth;
        } else if (c == '>') {
            if (--depth < 0) {
                return false;
            }
        } else if (c == ',') {
            if (depth == 0) {
                return false;
            }
        } else {
            return false;
        }
    }
    return depth == 0;
}

void Schema::add(const std::string& relation, std::size_t arity) {
    if (arity < 1) {
        throw SchemaError("relation '" + relation + "' must have arity >= 1");
    }
    auto [it, inserted] = arities_.emplace(relation, arity);
    if (!inserted && it->second != arity) {
        throw SchemaError("relation '" + relation + "' used with arity " + std::to_string(arity) +
                          " and " + std::to_string(it->second));
    }
}

std::size_t Schema::arity(const std::string& relation) const {
    auto it = arities_.find(relation);
    if (it == arities_.end()) {
        throw SchemaError("unknown relation '" + relation + "'");
    }
    return it->second;
}

std::vector<std::string> Schema::unary_relations() const {
    std::vector<std::string> out;
    for (const auto& [name, arity] : arities_) {
        if (arity == 1) {
            out.push_back(name);
        }
    }
    return out;
}

std::vector<std::string> Schema::binary_relations() const {
    std::vector<std::string> out;
    for (const auto& [name, arity] : arities_) {
        if (arity == 2) {
            out.push_back(name);
        }
    }
    return out;
}

Schema Schema::merge(const Schema& a, const Schema& b) {
    Schema out = a;
    for (const auto& [name, arity] : b.arities_) {
        out.add(name, arity);
    }
    return out;
}

Schema Schema::infer(const std::set<Fact>& facts) {
    Schema out;
    for (const auto& f : facts) {
        out.add(f.relation, f.arity());
    }
    return out;
}

Instance::Instance(std::set<Fact> facts, std::set<Value> extra_domain)
    : facts_(std::move(facts)), domain_(std::move(extra_domain)) {
    Schema::infer(facts_);
    for (const auto& f : facts_) {
        domain_.insert(f.args.begin(), f.args.end());
    }
}

std::set<Value> Instance::isolated_values() const {
    std::set<Value> used;
    for (const auto& f : facts_) {
        used.insert(f.args.begin(), f.args.end());
    }
    std::set<Value> out;
    for (const auto& v : domain_) {
        if (!used.count(v)) {
            out.insert(v);
        }
    }
    return out;
}

Example::Example(Instance instance, Tuple answers) : instance_(std::move(instance)), answers_(std::move(answers)) {
    for (const auto& a : answers_) {
        if (!instance_.domain().count(a)) {
            throw std::invalid_argument("answer value '" + a + "' is not in the instance domain");
        }
    }
}

Example Example::from_facts(std::set<Fact> facts, Tuple answers, std::set<Value> extra_domain) {
    extra_domain.insert(answers.begin(), answers.end());
    return Example(Instance(std::move(facts), std::move(extra_domain)), std::move(answers));
}

std::set<Value> CQ::variables() const {
    std::set<Value> out(head.begin(), head.end());
    for (const auto& a : atoms) {
        out.insert(a.args.begin(), a.args.end());
    }
    out.insert(isolated_variables.begin(), isolated_variables.end());
    return out;
}

Schema CQ::schema() const {
    Schema out;
    for (const auto& a : atoms) {
        out.add(a.relation, a.arity());
    }
    return out;
}

int LabeledCollection::arity() const {
    int arity = -1;
    auto visit = [&](const Example& e) {
        int k = static_cast<int>(e.arity());
        if (arity >= 0 && k != arity) {
            throw SchemaError("examples of arity " + std::to_string(arity) + " and " + std::to_string(k) +
                              " in one collection");
        }
        arity = k;
    };
    for (const auto& e : positives) {
        visit(e);
    }
    for (const auto& e : negatives) {
        visit(e);
    }
    return arity;
}

Schema LabeledCollection::schema() const {
    Schema out;
    for (const auto& e : positives) {
        out = Schema::merge(out, e.instance().schema());
    }
    for (const auto& e : negatives) {
        out = Schema::merge(out, e.instance().schema());
    }
    return out;
}

}  // namespace cqfit
