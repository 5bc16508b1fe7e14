#include "cqfit/pac/fitters.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "cqfit/canonical.hpp"
#include "cqfit/error.hpp"
#include "cqfit/text.hpp"

namespace cqfit::pac {

std::string to_string(FittingStrategy s) {
    switch (s) {
        case FittingStrategy::most_specific:
            return "most-specific";
        case FittingStrategy::scenario_most_general:
            return "scenario-most-general";
        case FittingStrategy::smallest_path:
            return "smallest-path";
    }
    return "unknown";
}

FittingStrategy parse_strategy(const std::string& name) {
    if (name == "most-specific") {
        return FittingStrategy::most_specific;
    }
    if (name == "scenario-most-general") {
        return FittingStrategy::scenario_most_general;
    }
    if (name == "smallest-path") {
        return FittingStrategy::smallest_path;
    }
    throw std::invalid_argument("unknown fitting strategy '" + name + "'");
}

MostGeneralFit fit_scenario_most_general(const LabeledCollection& collection, const Theorem4Scenario& scenario,
                                         const HomOptions& options) {
    const Example& target_example = scenario.distribution[Theorem4Scenario::positive_index()].example;
    for (const auto& e : collection.positives) {
        if (e != target_example) {
            throw ScenarioError("positive example is not the target's canonical example");
        }
    }
    std::map<Example, std::size_t> dual_index;
    for (std::size_t k = 0; k < scenario.duals.size(); ++k) {
        dual_index.emplace(scenario.duals[k], k);
    }
    MostGeneralFit fit;
    for (const auto& e : collection.negatives) {
        auto it = dual_index.find(e);
        if (it == dual_index.end()) {
            throw ScenarioError("negative example is not one of the scenario's duals");
        }
        fit.covered.push_back(it->second);
    }
    std::sort(fit.covered.begin(), fit.covered.end());

    const Value root = "y0";
    fit.query.head = {root};
    for (std::size_t k : fit.covered) {
        const PathExample& path = scenario.family_paths[k];
        auto rename = [&](std::size_t i) -> Value {
            return i == 0 ? root : "y" + std::to_string(i) + "_" + std::to_string(k);
        };
        for (std::size_t i = 1; i <= path.length(); ++i) {
            fit.query.atoms.push_back(Fact{path.edge(i), {rename(i - 1), rename(i)}});
            for (const auto& p : path.labels_at(i)) {
                fit.query.atoms.push_back(Fact{p, {rename(i)}});
            }
        }
    }
    if (!fits(fit.query, collection, options)) {
        throw std::logic_error("joined query does not fit the collection");
    }
    return fit;
}

RelativeDuality most_general_duality(const MostGeneralFit& fit, const Theorem4Scenario& scenario) {
    RelativeDuality rd;
    rd.obstructions = {canonical_example(fit.query)};
    for (std::size_t k : fit.covered) {
        rd.duals.push_back(scenario.duals[k]);
    }
    rd.anchor = scenario.distribution[Theorem4Scenario::positive_index()].example;
    return rd;
}

Rational most_general_closed_form_error(const MostGeneralFit& fit, const Theorem4Scenario& scenario) {
    const std::size_t missing = scenario.family_size() - fit.covered.size();
    return Rational(BigInt(missing), BigInt(2) * BigInt(scenario.family_size()));
}

bool MostSpecificFit::contained_in(const CQ& q, const HomOptions& options) const {
    return hom_into_product(canonical_example(q), product_, options);
}

bool MostSpecificFit::is_factor(const Example& e) const {
    return std::find(product_.factors().begin(), product_.factors().end(), e) != product_.factors().end();
}

std::optional<bool> MostSpecificFit::classify(const Example& e, const Example& certificate,
                                              const HomOptions& options) const {
    if (is_factor(e)) {
        return true;
    }
    if (hom_into_product(certificate, product_, options) && !hom_exists(certificate, e, options)) {
        return false;
    }
    return std::nullopt;
}

bool MostSpecificFit::classify_materialized(const Example& e, const ProductOptions& product_options,
                                            const HomOptions& options) const {
    return hom_exists(product_.materialize(product_options), e, options);
}

MostSpecificFit fit_most_specific(const LabeledCollection& collection, const HomOptions& options) {
    if (collection.negatives.empty()) {
        if (collection.positives.empty()) {
            throw std::invalid_argument("most-specific fitting needs at least one positive example");
        }
        collection.arity();
        return MostSpecificFit(
            ImplicitProduct(std::vector<Example>(collection.positives.begin(), collection.positives.end())));
    }
    MostSpecificOptions ms_options;
    ms_options.hom = options;
    auto result = most_specific_fitting(collection, ms_options);
    if (result.status == FitStatus::no_fitting) {
        throw NoFittingError("no CQ fits the collection");
    }
    if (result.status == FitStatus::size_overflow) {
        throw SizeLimitError("product of the positives is too large to check the negatives");
    }
    return MostSpecificFit(std::move(result.product));
}

MostSpecificEvaluation evaluate_most_specific(const MostSpecificFit& fit, const Theorem5Scenario& scenario,
                                              const HomOptions& options) {
    MostSpecificEvaluation out;
    const auto& support = scenario.distribution.support();
    for (std::size_t i = 0; i < support.size(); ++i) {
        const auto& point = support[i];
        if (fit.is_factor(point.example)) {
            continue;
        }
        auto verdict = fit.classify(point.example, scenario.subset_paths[i].to_example(), options);
        bool positive;
        if (verdict) {
            positive = *verdict;
            if (!positive) {
                ++out.certified_unseen;
            }
        } else {
            positive = fit.classify_materialized(point.example, {}, options);
            ++out.materialized;
        }
        if (positive != point.positive) {
            out.error += point.probability;
        }
    }
    return out;
}

namespace {

using Word = std::uint64_t;

// An example prepared for evaluating path queries by forward frontier propagation.
class PathEvaluator {
public:
    PathEvaluator(const Example& e, const std::vector<std::string>& unary, const std::vector<std::string>& binary) {
        std::unordered_map<std::string, std::size_t> index;
        for (const auto& v : e.domain()) {
            index.emplace(v, index.size());
        }
        size_ = index.size();
        words_ = std::max<std::size_t>(1, (size_ + 63) / 64);
        labels_.assign(unary.size(), std::vector<Word>(words_, 0));
        succ_.assign(binary.size(), std::vector<Word>(size_ * words_, 0));
        std::unordered_map<std::string, std::size_t> unary_index;
        std::unordered_map<std::string, std::size_t> binary_index;
        for (std::size_t i = 0; i < unary.size(); ++i) {
            unary_index.emplace(unary[i], i);
        }
        for (std::size_t i = 0; i < binary.size(); ++i) {
            binary_index.emplace(binary[i], i);
        }
        for (const auto& f : e.facts()) {
            if (f.arity() == 1) {
                auto it = unary_index.find(f.relation);
                if (it != unary_index.end()) {
                    set(labels_[it->second].data(), index.at(f.args[0]));
                }
            } else if (f.arity() == 2) {
                auto it = binary_index.find(f.relation);
                if (it != binary_index.end()) {
                    set(&succ_[it->second][index.at(f.args[0]) * words_], index.at(f.args[1]));
                }
            }
        }
        root_ = index.at(e.answers().front());
    }

    std::vector<Word> start() const {
        std::vector<Word> f(words_, 0);
        set(f.data(), root_);
        return f;
    }

    // f &= labels of mask; false if empty.
    bool apply_labels(std::vector<Word>& f, unsigned mask) const {
        for (std::size_t p = 0; mask != 0; ++p, mask >>= 1) {
            if (mask & 1) {
                for (std::size_t w = 0; w < words_; ++w) {
                    f[w] &= labels_[p][w];
                }
            }
        }
        return any(f);
    }

    // f := successors of f along `relation`; false if empty.
    bool apply_edge(std::vector<Word>& f, std::size_t relation) const {
        std::vector<Word> next(words_, 0);
        for (std::size_t w = 0; w < words_; ++w) {
            for (Word bits = f[w]; bits != 0; bits &= bits - 1) {
                std::size_t a = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                const Word* row = &succ_[relation][a * words_];
                for (std::size_t u = 0; u < words_; ++u) {
                    next[u] |= row[u];
                }
            }
        }
        f = std::move(next);
        return any(f);
    }

private:
    static void set(Word* row, std::size_t i) { row[i / 64] |= Word{1} << (i % 64); }
    bool any(const std::vector<Word>& f) const {
        return std::any_of(f.begin(), f.end(), [](Word w) { return w != 0; });
    }

    std::size_t size_ = 0;
    std::size_t words_ = 1;
    std::size_t root_ = 0;
    std::vector<std::vector<Word>> labels_;
    std::vector<std::vector<Word>> succ_;
};

struct PathCandidate {
    std::vector<std::size_t> edges;
    std::vector<unsigned> labels;  // one unary-relation mask per node
};

CQ to_cq(const PathCandidate& c, const std::vector<std::string>& unary, const std::vector<std::string>& binary) {
    CQ q;
    q.head = {"x0"};
    for (std::size_t i = 0; i < c.labels.size(); ++i) {
        const Value v = "x" + std::to_string(i);
        if (i > 0) {
            q.atoms.push_back(Fact{binary[c.edges[i - 1]], {"x" + std::to_string(i - 1), v}});
        }
        for (std::size_t p = 0; p < unary.size(); ++p) {
            if ((c.labels[i] >> p) & 1) {
                q.atoms.push_back(Fact{unary[p], {v}});
            }
        }
    }
    return q;
}

bool maps_into(const PathCandidate& c, const PathEvaluator& e) {
    auto f = e.start();
    for (std::size_t i = 0; i < c.labels.size(); ++i) {
        if (i > 0 && !e.apply_edge(f, c.edges[i - 1])) {
            return false;
        }
        if (!e.apply_labels(f, c.labels[i])) {
            return false;
        }
    }
    return true;
}

class PathEnumerator {
public:
    PathEnumerator(const std::vector<PathEvaluator>& positives, std::size_t unary_count, std::size_t binary_count,
                   const PathSearchOptions& options)
        : positives_(positives), unary_count_(unary_count), binary_count_(binary_count), options_(options) {
        buckets_.resize(options.max_atoms + 1);
    }

    std::vector<std::vector<PathCandidate>> run() {
        std::vector<std::vector<Word>> frontiers;
        for (const auto& p : positives_) {
            frontiers.push_back(p.start());
        }
        PathCandidate current;
        visit(current, frontiers, 0);
        return std::move(buckets_);
    }

private:
    void visit(PathCandidate& current, const std::vector<std::vector<Word>>& frontiers, std::size_t size) {
        const unsigned masks = 1u << unary_count_;
        for (unsigned mask = 0; mask < masks; ++mask) {
            const std::size_t labeled = size + static_cast<std::size_t>(std::popcount(mask));
            if (labeled > options_.max_atoms) {
                continue;
            }
            auto narrowed = frontiers;
            bool ok = true;
            for (std::size_t p = 0; p < positives_.size() && ok; ++p) {
                ok = positives_[p].apply_labels(narrowed[p], mask);
            }
            if (!ok) {
                continue;
            }
            current.labels.push_back(mask);
            if (!options_.require_safe || labeled > 0) {
                if (++total_ > options_.max_candidates) {
                    throw ResourceLimitError("path CQ search exceeded " + std::to_string(options_.max_candidates) +
                                             " candidates");
                }
                buckets_[labeled].push_back(current);
            }
            if (labeled + 1 <= options_.max_atoms) {
                for (std::size_t r = 0; r < binary_count_; ++r) {
                    auto next = narrowed;
                    bool reach = true;
                    for (std::size_t p = 0; p < positives_.size() && reach; ++p) {
                        reach = positives_[p].apply_edge(next[p], r);
                    }
                    if (reach) {
                        current.edges.push_back(r);
                        visit(current, next, labeled + 1);
                        current.edges.pop_back();
                    }
                }
            }
            current.labels.pop_back();
        }
    }

    const std::vector<PathEvaluator>& positives_;
    std::size_t unary_count_;
    std::size_t binary_count_;
    PathSearchOptions options_;
    std::vector<std::vector<PathCandidate>> buckets_;
    std::size_t total_ = 0;
};

}  // namespace

CQ fit_smallest_path_cq(const LabeledCollection& collection, const Schema& schema, const PathSearchOptions& options) {
    const int arity = collection.arity();
    if (arity != -1 && arity != 1) {
        throw std::invalid_argument("path CQs are unary; collection has arity " + std::to_string(arity));
    }
    const auto unary = schema.unary_relations();
    const auto binary = schema.binary_relations();
    if (unary.size() > 16) {
        throw std::invalid_argument("too many unary relations for path search");
    }
    std::vector<PathEvaluator> positives;
    for (const auto& e : collection.positives) {
        positives.emplace_back(e, unary, binary);
    }
    std::vector<PathEvaluator> negatives;
    for (const auto& e : collection.negatives) {
        negatives.emplace_back(e, unary, binary);
    }

    auto buckets = PathEnumerator(positives, unary.size(), binary.size(), options).run();
    for (auto& bucket : buckets) {
        std::vector<std::pair<std::string, std::size_t>> order;
        order.reserve(bucket.size());
        for (std::size_t i = 0; i < bucket.size(); ++i) {
            order.emplace_back(serialize(to_cq(bucket[i], unary, binary)), i);
        }
        std::sort(order.begin(), order.end());
        for (const auto& [text, i] : order) {
            const auto& candidate = bucket[i];
            bool rejects_all = std::none_of(negatives.begin(), negatives.end(),
                                            [&](const PathEvaluator& n) { return maps_into(candidate, n); });
            if (rejects_all) {
                return to_cq(candidate, unary, binary);
            }
        }
    }
    throw NoFittingError("no path CQ with at most " + std::to_string(options.max_atoms) + " atoms fits");
}

}  // namespace cqfit::pac
