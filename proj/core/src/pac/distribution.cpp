#include "cqfit/pac/distribution.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <stdexcept>

#include "cqfit/canonical.hpp"

namespace cqfit::pac {

Rational parse_decimal(std::string_view text) {
    auto fail = [&]() -> Rational { throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'"); };
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    BigInt digits = 0;
    long long scale = 0;
    bool any = false;
    bool fraction = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits = digits * 10 + (c - '0');
            any = true;
            if (fraction) {
                ++scale;
            }
        } else if (c == '.' && !fraction) {
            fraction = true;
        } else {
            break;
        }
    }
    if (!any) {
        return fail();
    }
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool exp_negative = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            exp_negative = text[i] == '-';
            ++i;
        }
        long long exponent = 0;
        bool exp_any = false;
        for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
            exponent = exponent * 10 + (text[i] - '0');
            exp_any = true;
            if (exponent > 10000) {
                return fail();
            }
        }
        if (!exp_any) {
            return fail();
        }
        scale += exp_negative ? exponent : -exponent;
    }
    if (i != text.size()) {
        return fail();
    }
    Rational value(digits);
    BigInt power = 1;
    for (long long k = 0; k < (scale < 0 ? -scale : scale); ++k) {
        power *= 10;
    }
    value = scale >= 0 ? value / Rational(power) : value * Rational(power);
    return negative ? -value : value;
}

std::string to_string(const Rational& r) {
    std::string out = boost::multiprecision::numerator(r).str();
    if (boost::multiprecision::denominator(r) != 1) {
        out += '/';
        out += boost::multiprecision::denominator(r).str();
    }
    return out;
}

FiniteDistribution::FiniteDistribution(std::vector<SupportPoint> support) : support_(std::move(support)) {
    if (support_.empty()) {
        throw std::invalid_argument("distribution with empty support");
    }
    Rational total = 0;
    scale_ = 1;
    for (const auto& p : support_) {
        if (p.probability <= 0) {
            throw std::invalid_argument("support point with non-positive probability");
        }
        total += p.probability;
        scale_ = boost::multiprecision::lcm(scale_, boost::multiprecision::denominator(p.probability));
    }
    if (total != 1) {
        throw std::invalid_argument("probabilities sum to " + to_string(total) + ", not 1");
    }
    BigInt running = 0;
    for (const auto& p : support_) {
        running += boost::multiprecision::numerator(p.probability) *
                   (scale_ / boost::multiprecision::denominator(p.probability));
        cumulative_.push_back(running);
    }
}

std::size_t FiniteDistribution::draw(Rng& rng) const {
    // Uniform integer u in [0, scale) by rejection on whole 64-bit limbs; the
    // point is the first whose cumulative weight exceeds u.
    BigInt u;
    if (scale_ <= BigInt(std::numeric_limits<std::uint64_t>::max())) {
        u = rng.below(static_cast<std::uint64_t>(scale_));
    } else {
        const unsigned bits = boost::multiprecision::msb(scale_) + 1;
        do {
            u = 0;
            for (unsigned have = 0; have < bits; have += 64) {
                u = (u << 64) | BigInt(rng.next());
            }
            u >>= ((bits + 63) / 64) * 64 - bits;
        } while (u >= scale_);
    }
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return static_cast<std::size_t>(it - cumulative_.begin());
}

Sample sample(const FiniteDistribution& distribution, std::size_t m, Rng& rng) {
    if (m < 1) {
        throw std::invalid_argument("sample size must be at least 1");
    }
    Sample out;
    out.draws.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t index = distribution.draw(rng);
        out.draws.push_back(index);
        if (out.multiplicities[index]++ == 0) {
            const auto& point = distribution[index];
            (point.positive ? out.collection.positives : out.collection.negatives).insert(point.example);
        }
    }
    return out;
}

Sample sample(const FiniteDistribution& distribution, std::size_t m, std::uint64_t seed) {
    Rng rng(seed);
    return sample(distribution, m, rng);
}

Rational exact_error(const CQ& q, const FiniteDistribution& distribution, const HomOptions& options) {
    const Example source = canonical_example(q);
    Rational error = 0;
    for (const auto& point : distribution.support()) {
        if (hom_exists(source, point.example, options) != point.positive) {
            error += point.probability;
        }
    }
    return error;
}

Rational exact_error(const CQ& q, const FiniteDistribution& distribution, const CQ& target,
                     const HomOptions& options) {
    const Example source = canonical_example(q);
    const Example target_source = canonical_example(target);
    Rational error = 0;
    for (const auto& point : distribution.support()) {
        if (hom_exists(source, point.example, options) != hom_exists(target_source, point.example, options)) {
            error += point.probability;
        }
    }
    return error;
}

}  // namespace cqfit::pac
