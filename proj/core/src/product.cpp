#include "cqfit/product.hpp"

#include <limits>
#include <map>
#include <stdexcept>

#include "cqfit/canonical.hpp"
#include "cqfit/error.hpp"

namespace cqfit {

Value pair_value(const Value& u, const Value& v) {
    Value out;
    out.reserve(u.size() + v.size() + 3);
    out += '<';
    out += u;
    out += ',';
    out += v;
    out += '>';
    return out;
}

std::optional<std::pair<Value, Value>> split_pair_value(const Value& v) {
    if (v.size() < 5 || v.front() != '<' || v.back() != '>') {
        return std::nullopt;
    }
    int depth = 0;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        char c = v[i];
        if (c == '<') {
            ++depth;
        } else if (c == '>') {
            if (--depth < 0) {
                return std::nullopt;
            }
        } else if (c == ',' && depth == 0) {
            Value left = v.substr(1, i - 1);
            Value right = v.substr(i + 1, v.size() - i - 2);
            if (left.empty() || right.empty()) {
                return std::nullopt;
            }
            return std::make_pair(std::move(left), std::move(right));
        }
    }
    return std::nullopt;
}

Example product_example(const Example& e1, const Example& e2, const ProductOptions& options) {
    if (e1.arity() != e2.arity()) {
        throw SchemaError("product of examples of arity " + std::to_string(e1.arity()) + " and " +
                          std::to_string(e2.arity()));
    }
    Schema::merge(e1.instance().schema(), e2.instance().schema());

    std::map<std::string, std::vector<const Fact*>> by_relation;
    for (const auto& f : e2.facts()) {
        by_relation[f.relation].push_back(&f);
    }
    std::set<Fact> facts;
    for (const auto& f : e1.facts()) {
        auto it = by_relation.find(f.relation);
        if (it == by_relation.end()) {
            continue;
        }
        for (const Fact* g : it->second) {
            Fact combined{f.relation, {}};
            combined.args.reserve(f.arity());
            for (std::size_t i = 0; i < f.arity(); ++i) {
                combined.args.push_back(pair_value(f.args[i], g->args[i]));
            }
            facts.insert(std::move(combined));
            if (facts.size() > options.max_facts) {
                throw SizeLimitError("product exceeds " + std::to_string(options.max_facts) + " facts");
            }
        }
    }
    Tuple answers;
    for (std::size_t i = 0; i < e1.arity(); ++i) {
        answers.push_back(pair_value(e1.answers()[i], e2.answers()[i]));
    }
    // Pairs outside every fact are isolated and all map wherever one of them
    // does, so a single one stands in for them when nothing else is left.
    std::set<Value> extra;
    if (facts.empty() && answers.empty() && !e1.domain().empty() && !e2.domain().empty()) {
        extra.insert(pair_value(*e1.domain().begin(), *e2.domain().begin()));
    }
    return Example::from_facts(std::move(facts), std::move(answers), std::move(extra));
}

ImplicitProduct::ImplicitProduct(std::vector<Example> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) {
        throw std::invalid_argument("product of an empty list of examples");
    }
    Schema schema;
    for (const auto& e : factors_) {
        if (e.arity() != factors_.front().arity()) {
            throw SchemaError("product factors have different arities");
        }
        schema = Schema::merge(schema, e.instance().schema());
    }
}

Example ImplicitProduct::materialize(const ProductOptions& options) const {
    if (factors_.front().size() > options.max_facts) {
        throw SizeLimitError("product exceeds " + std::to_string(options.max_facts) + " facts");
    }
    Example acc = factors_.front();
    for (std::size_t i = 1; i < factors_.size(); ++i) {
        acc = product_example(acc, factors_[i], options);
    }
    return acc;
}

std::size_t ImplicitProduct::fact_count_bound() const {
    constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
    std::size_t bound = 1;
    for (const auto& e : factors_) {
        std::size_t n = e.size();
        if (n == 0) {
            return 0;
        }
        bound = bound > kMax / n ? kMax : bound * n;
    }
    return bound;
}

ImplicitProduct product_many(std::vector<Example> examples) {
    return ImplicitProduct(std::move(examples));
}

bool hom_into_product(const Example& src, const ImplicitProduct& product, const HomOptions& options) {
    for (const auto& factor : product.factors()) {
        if (!hom_exists(src, factor, options)) {
            return false;
        }
    }
    return true;
}

MostSpecificFitting most_specific_fitting(const LabeledCollection& collection, const MostSpecificOptions& options) {
    if (collection.positives.empty()) {
        throw std::invalid_argument("most-specific fitting needs at least one positive example");
    }
    collection.arity();
    ImplicitProduct product(std::vector<Example>(collection.positives.begin(), collection.positives.end()));

    Example materialized;
    try {
        materialized = product.materialize(options.product);
    } catch (const SizeLimitError&) {
        return MostSpecificFitting{FitStatus::size_overflow, std::nullopt, std::move(product)};
    }
    for (const auto& negative : collection.negatives) {
        if (hom_exists(materialized, negative, options.hom)) {
            return MostSpecificFitting{FitStatus::no_fitting, std::nullopt, std::move(product)};
        }
    }
    if (options.minimize) {
        materialized = reduce_example(materialized, options.hom);
    }
    return MostSpecificFitting{FitStatus::fitting, canonical_cq(materialized), std::move(product)};
}

Example reduce_example(const Example& e, const HomOptions& options) {
    std::set<Fact> kept = e.facts();
    for (const auto& f : e.facts()) {
        std::set<Fact> trial = kept;
        trial.erase(f);
        Example candidate = Example::from_facts(trial, e.answers());
        // candidate -> e always holds (sub-example); keep the removal if e -> candidate.
        if (hom_exists(e, candidate, options)) {
            kept = std::move(trial);
        }
    }
    return Example::from_facts(std::move(kept), e.answers());
}

}  // namespace cqfit
