#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cqfit {

/// Opaque identifier used both for instance values and CQ variables.
using Value = std::string;

/// A tuple of values, e.g. the answer tuple of an example.
using Tuple = std::vector<Value>;

/// True if `v` is a well-formed value: characters from [A-Za-z0-9_<>,], angle
/// brackets balanced, and no comma outside of brackets.
bool is_valid_value(std::string_view v);

/// A relational fact R(v1,...,vk). Also used for CQ atoms, whose arguments are variables.
struct Fact {
    std::string relation;
    Tuple args;

    std::size_t arity() const noexcept { return args.size(); }

    auto operator<=>(const Fact&) const = default;
    bool operator==(const Fact&) const = default;
};

/// Relation name -> arity.
class Schema {
public:
    Schema() = default;

    /// Throws SchemaError on arity < 1 or a conflicting redeclaration.
    void add(const std::string& relation, std::size_t arity);

    bool contains(const std::string& relation) const { return arities_.count(relation) != 0; }
    std::size_t arity(const std::string& relation) const;
    const std::map<std::string, std::size_t>& relations() const noexcept { return arities_; }

    std::vector<std::string> unary_relations() const;
    std::vector<std::string> binary_relations() const;

    /// Union of two schemas; throws SchemaError if they disagree on an arity.
    static Schema merge(const Schema& a, const Schema& b);

    /// Schema of the relations mentioned by `facts`.
    static Schema infer(const std::set<Fact>& facts);

    bool operator==(const Schema&) const = default;

private:
    std::map<std::string, std::size_t> arities_;
};

/// A finite set of facts together with an explicit domain. The domain always
/// contains every value occurring in a fact and may contain isolated values.
class Instance {
public:
    Instance() = default;

    /// Builds the instance; `extra_domain` adds isolated values.
    /// Throws SchemaError if a relation occurs with two different arities.
    explicit Instance(std::set<Fact> facts, std::set<Value> extra_domain = {});

    const std::set<Fact>& facts() const noexcept { return facts_; }
    const std::set<Value>& domain() const noexcept { return domain_; }
    std::size_t size() const noexcept { return facts_.size(); }
    bool contains(const Fact& f) const { return facts_.count(f) != 0; }

    Schema schema() const { return Schema::infer(facts_); }

    /// Domain values that occur in no fact.
    std::set<Value> isolated_values() const;

    auto operator<=>(const Instance&) const = default;
    bool operator==(const Instance&) const = default;

private:
    std::set<Fact> facts_;
    std::set<Value> domain_;
};

/// A data example (I, a).
class Example {
public:
    Example() = default;

    /// Throws std::invalid_argument if an answer value is not in the instance domain.
    Example(Instance instance, Tuple answers);

    /// Convenience: domain = fact values + answers + extra.
    static Example from_facts(std::set<Fact> facts, Tuple answers, std::set<Value> extra_domain = {});

    const Instance& instance() const noexcept { return instance_; }
    const Tuple& answers() const noexcept { return answers_; }
    std::size_t arity() const noexcept { return answers_.size(); }
    const std::set<Fact>& facts() const noexcept { return instance_.facts(); }
    const std::set<Value>& domain() const noexcept { return instance_.domain(); }
    std::size_t size() const noexcept { return instance_.size(); }

    auto operator<=>(const Example&) const = default;
    bool operator==(const Example&) const = default;

private:
    Instance instance_;
    Tuple answers_;
};

/// A conjunctive query q(x) :- atoms. Variables that occur in neither the head
/// nor an atom are tracked in `isolated_variables` (they arise from canonical
/// CQs of examples with isolated domain values).
struct CQ {
    Tuple head;
    std::vector<Fact> atoms;
    std::set<Value> isolated_variables;

    std::size_t arity() const noexcept { return head.size(); }
    /// Number of atoms.
    std::size_t size() const noexcept { return atoms.size(); }
    std::set<Value> variables() const;
    Schema schema() const;
    bool has_isolated_variables() const noexcept { return !isolated_variables.empty(); }

    auto operator<=>(const CQ&) const = default;
    bool operator==(const CQ&) const = default;
};

/// A pair (E+, E-) of example sets of a common arity.
struct LabeledCollection {
    std::set<Example> positives;
    std::set<Example> negatives;

    bool empty() const noexcept { return positives.empty() && negatives.empty(); }

    /// Common arity, or -1 for an empty collection. Throws SchemaError on disagreement.
    int arity() const;

    bool operator==(const LabeledCollection&) const = default;

    Schema schema() const;
};

}  // namespace cqfit
