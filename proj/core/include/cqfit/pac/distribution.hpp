#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cqfit/hom.hpp"
#include "cqfit/model.hpp"
#include "cqfit/random.hpp"

namespace cqfit::pac {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Exact value of a decimal literal such as "0.25" or "1e-3".
Rational parse_decimal(std::string_view text);

/// "p/q" (or "p" when q == 1).
std::string to_string(const Rational& r);

struct SupportPoint {
    Example example;
    /// The target's verdict on this example.
    bool positive;
    Rational probability;
};

/// A distribution over labeled examples with finite support and exact probabilities.
class FiniteDistribution {
public:
    /// Throws std::invalid_argument unless every probability is > 0 and they sum to exactly 1.
    explicit FiniteDistribution(std::vector<SupportPoint> support);

    const std::vector<SupportPoint>& support() const noexcept { return support_; }
    std::size_t size() const noexcept { return support_.size(); }
    const SupportPoint& operator[](std::size_t i) const { return support_.at(i); }

    /// Index of a support point drawn with its exact probability.
    std::size_t draw(Rng& rng) const;

private:
    std::vector<SupportPoint> support_;
    BigInt scale_;
    std::vector<BigInt> cumulative_;
};

/// m i.i.d. draws, folded into a labeled collection.
struct Sample {
    LabeledCollection collection;
    /// Support index of each draw, in draw order.
    std::vector<std::size_t> draws;
    /// Support index -> number of draws.
    std::map<std::size_t, std::size_t> multiplicities;

    bool drew(std::size_t index) const { return multiplicities.count(index) != 0; }
};

Sample sample(const FiniteDistribution& distribution, std::size_t m, Rng& rng);
Sample sample(const FiniteDistribution& distribution, std::size_t m, std::uint64_t seed);

/// Probability mass of the support points on which `q` disagrees with the stored labels.
Rational exact_error(const CQ& q, const FiniteDistribution& distribution, const HomOptions& options = {});

/// Same, with labels recomputed from `target` instead of read from the support.
Rational exact_error(const CQ& q, const FiniteDistribution& distribution, const CQ& target,
                     const HomOptions& options = {});

}  // namespace cqfit::pac
