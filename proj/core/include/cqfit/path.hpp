#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "cqfit/model.hpp"

namespace cqfit {

/// A unary example whose instance is a chain
///   R_1(v_0, v_1), ..., R_n(v_{n-1}, v_n)
/// plus unary facts on v_1..v_n only. The answer is v_0.
class PathExample {
public:
    /// `values` has n + 1 entries, `edges` n, and `labels[i]` holds the unary
    /// relations of `values[i + 1]`. Throws ShapeError on inconsistent sizes,
    /// n == 0, or repeated values.
    PathExample(std::vector<Value> values, std::vector<std::string> edges, std::vector<std::set<std::string>> labels);

    /// Path with values `prefix0 .. prefixN`.
    static PathExample make(std::vector<std::string> edges, std::vector<std::set<std::string>> labels,
                            const std::string& prefix = "a");

    std::size_t length() const noexcept { return edges_.size(); }
    const std::vector<Value>& values() const noexcept { return values_; }
    const Value& value(std::size_t i) const { return values_.at(i); }
    const std::vector<std::string>& edges() const noexcept { return edges_; }
    /// Relation of the i-th edge, 1-based (R_i connects v_{i-1} and v_i).
    const std::string& edge(std::size_t i) const { return edges_.at(i - 1); }
    /// Labels of v_i for 1 <= i <= n.
    const std::set<std::string>& labels_at(std::size_t i) const { return labels_.at(i - 1); }
    const std::vector<std::set<std::string>>& labels() const noexcept { return labels_; }

    /// Fact R_i(v_{i-1}, v_i), 1 <= i <= n.
    Fact edge_fact(std::size_t i) const;

    Example to_example() const;
    std::size_t fact_count() const;

    bool operator==(const PathExample&) const = default;

private:
    std::vector<Value> values_;
    std::vector<std::string> edges_;
    std::vector<std::set<std::string>> labels_;
};

/// Recognizes the path shape; throws ShapeError naming the first violation.
PathExample as_path_example(const Example& e);

}  // namespace cqfit
