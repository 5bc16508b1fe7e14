#include "cqfit/canonical.hpp"

namespace cqfit {

Instance canonical_instance(const CQ& q) {
    std::set<Fact> facts(q.atoms.begin(), q.atoms.end());
    std::set<Value> extra(q.head.begin(), q.head.end());
    extra.insert(q.isolated_variables.begin(), q.isolated_variables.end());
    return Instance(std::move(facts), std::move(extra));
}

Example canonical_example(const CQ& q) {
    return Example(canonical_instance(q), q.head);
}

CQ canonical_cq(const Example& e) {
    CQ q;
    q.head = e.answers();
    q.atoms.assign(e.facts().begin(), e.facts().end());
    std::set<Value> answers(e.answers().begin(), e.answers().end());
    for (const auto& v : e.instance().isolated_values()) {
        if (!answers.count(v)) {
            q.isolated_variables.insert(v);
        }
    }
    return q;
}

}  // namespace cqfit
