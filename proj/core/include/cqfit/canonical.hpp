#pragma once

#include "cqfit/model.hpp"

namespace cqfit {

/// Instance whose domain is the variables of `q` and whose facts are its atoms.
Instance canonical_instance(const CQ& q);

/// (canonical_instance(q), head of q).
Example canonical_example(const CQ& q);

/// CQ whose atoms are the facts of `e` and whose head is the answer tuple.
/// Isolated domain values that are not answers become isolated variables.
CQ canonical_cq(const Example& e);

}  // namespace cqfit
