#include "cqfit/hom.hpp"

#include <bit>
#include <deque>
#include <stdexcept>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cqfit/canonical.hpp"
#include "cqfit/error.hpp"

namespace cqfit {
namespace {

using Word = std::uint64_t;

// Backtracking search over source values with generalized arc consistency
// maintained at every node and minimum-remaining-values ordering. Domains are
// flat bit rows (one row of `words_` words per source value) restored from a
// trail on backtrack.
class HomSearch {
public:
    HomSearch(const Example& src, const Example& dst, const HomOptions& options)
        : src_(src), dst_(dst), options_(options) {}

    std::optional<Homomorphism> run() {
        if (src_.arity() != dst_.arity()) {
            throw std::invalid_argument("homomorphism between examples of arity " + std::to_string(src_.arity()) +
                                        " and " + std::to_string(dst_.arity()));
        }
        Schema::merge(src_.instance().schema(), dst_.instance().schema());

        if (!setup()) {
            return std::nullopt;
        }
        std::deque<int> queue;
        queued_.assign(constraints_.size(), 0);
        for (std::size_t c = 0; c < constraints_.size(); ++c) {
            if (constraints_[c].kind != Kind::static_unary) {
                queue.push_back(static_cast<int>(c));
                queued_[c] = 1;
            }
        }
        if (!propagate(queue, queued_)) {
            return std::nullopt;
        }
        if (!search()) {
            return std::nullopt;
        }
        return extract();
    }

private:
    enum class Kind { static_unary, binary, general };

    struct Relation {
        std::size_t arity = 0;
        std::vector<std::vector<int>> tuples;
        std::vector<Word> unary;  // arity 1: members; arity 2: values with a self-loop
        std::vector<Word> succ;   // arity 2: row per target value
    };

    struct Constraint {
        Kind kind;
        int relation;
        std::vector<int> vars;
    };

    bool setup() {
        for (const auto& v : dst_.domain()) {
            dst_index_.emplace(v, static_cast<int>(dst_values_.size()));
            dst_values_.push_back(v);
        }
        for (const auto& v : src_.domain()) {
            src_index_.emplace(v, static_cast<int>(src_values_.size()));
            src_values_.push_back(v);
        }
        target_size_ = dst_values_.size();
        words_ = (target_size_ + 63) / 64;
        if (words_ == 0) {
            words_ = 1;
        }

        std::unordered_map<std::string_view, int> relation_index;
        for (const auto& f : dst_.facts()) {
            auto [it, inserted] = relation_index.emplace(f.relation, static_cast<int>(relations_.size()));
            if (inserted) {
                Relation r;
                r.arity = f.arity();
                if (r.arity <= 2) {
                    r.unary.assign(words_, 0);
                }
                if (r.arity == 2) {
                    r.succ.assign(target_size_ * words_, 0);
                }
                relations_.push_back(std::move(r));
            }
            Relation& r = relations_[it->second];
            std::vector<int> tuple;
            tuple.reserve(f.arity());
            for (const auto& a : f.args) {
                tuple.push_back(dst_index_.at(a));
            }
            if (r.arity == 1) {
                set_bit(r.unary.data(), tuple[0]);
            } else if (r.arity == 2) {
                set_bit(&r.succ[tuple[0] * words_], tuple[1]);
                if (tuple[0] == tuple[1]) {
                    set_bit(r.unary.data(), tuple[0]);
                }
            }
            r.tuples.push_back(std::move(tuple));
        }

        const std::size_t n = src_values_.size();
        constrained_.assign(n, 0);
        var_constraints_.assign(n, {});
        domains_.assign(n * words_, 0);
        sizes_.assign(n, 0);

        for (const auto& f : src_.facts()) {
            auto it = relation_index.find(f.relation);
            if (it == relation_index.end()) {
                return false;
            }
            Constraint c;
            c.relation = it->second;
            for (const auto& a : f.args) {
                c.vars.push_back(src_index_.at(a));
            }
            if (f.arity() == 1 || (f.arity() == 2 && c.vars[0] == c.vars[1])) {
                c.kind = Kind::static_unary;
            } else if (f.arity() == 2) {
                c.kind = Kind::binary;
            } else {
                c.kind = Kind::general;
            }
            int id = static_cast<int>(constraints_.size());
            for (int v : c.vars) {
                if (var_constraints_[v].empty() || var_constraints_[v].back() != id) {
                    var_constraints_[v].push_back(id);
                }
                constrained_[v] = 1;
            }
            constraints_.push_back(std::move(c));
        }

        // Full domains for constrained values, then anchor the answers.
        for (std::size_t v = 0; v < n; ++v) {
            if (constrained_[v]) {
                Word* row = &domains_[v * words_];
                for (std::size_t t = 0; t < target_size_; ++t) {
                    set_bit(row, t);
                }
                sizes_[v] = static_cast<int>(target_size_);
            }
        }
        anchor_.assign(n, -1);
        for (std::size_t i = 0; i < src_.arity(); ++i) {
            int v = src_index_.at(src_.answers()[i]);
            int t = dst_index_.at(dst_.answers()[i]);
            if (anchor_[v] >= 0 && anchor_[v] != t) {
                return false;
            }
            anchor_[v] = t;
            if (constrained_[v]) {
                Word* row = &domains_[v * words_];
                bool had = test_bit(row, t);
                std::fill(row, row + words_, 0);
                if (!had) {
                    return false;
                }
                set_bit(row, t);
                sizes_[v] = 1;
            }
        }
        for (const auto& c : constraints_) {
            if (c.kind != Kind::static_unary) {
                continue;
            }
            int v = c.vars[0];
            Word* row = &domains_[v * words_];
            const auto& mask = relations_[c.relation].unary;
            for (std::size_t w = 0; w < words_; ++w) {
                row[w] &= mask[w];
            }
            sizes_[v] = count(row);
            if (sizes_[v] == 0) {
                return false;
            }
        }
        if (target_size_ == 0) {
            for (std::size_t v = 0; v < n; ++v) {
                if (!constrained_[v] && anchor_[v] < 0) {
                    return false;
                }
            }
        }
        return true;
    }

    static void set_bit(Word* row, std::size_t i) { row[i / 64] |= Word{1} << (i % 64); }
    static bool test_bit(const Word* row, std::size_t i) { return (row[i / 64] >> (i % 64)) & 1; }

    int count(const Word* row) const {
        int total = 0;
        for (std::size_t w = 0; w < words_; ++w) {
            total += std::popcount(row[w]);
        }
        return total;
    }

    // Replaces the domain of `v` with `row`, recording the old one on the trail.
    void assign_domain(int v, const Word* row, int size) {
        Word* dom = &domains_[v * words_];
        trail_vars_.push_back(v);
        trail_sizes_.push_back(sizes_[v]);
        trail_words_.insert(trail_words_.end(), dom, dom + words_);
        std::copy(row, row + words_, dom);
        sizes_[v] = size;
    }

    void undo(std::size_t mark) {
        while (trail_vars_.size() > mark) {
            int v = trail_vars_.back();
            trail_vars_.pop_back();
            sizes_[v] = trail_sizes_.back();
            trail_sizes_.pop_back();
            std::copy(trail_words_.end() - static_cast<std::ptrdiff_t>(words_), trail_words_.end(),
                      &domains_[v * words_]);
            trail_words_.resize(trail_words_.size() - words_);
        }
    }

    // Narrows the domains of the constraint's variables to supported values.
    // Appends changed variables to `changed`; false on a domain wipe-out.
    bool revise(const Constraint& c, std::vector<int>& changed) {
        if (c.kind == Kind::binary) {
            return revise_binary(c, changed);
        }
        return revise_general(c, changed);
    }

    bool revise_binary(const Constraint& c, std::vector<int>& changed) {
        const Relation& r = relations_[c.relation];
        const int x = c.vars[0];
        const int y = c.vars[1];
        const Word* dx = &domains_[x * words_];
        const Word* dy = &domains_[y * words_];
        scratch_a_.assign(words_, 0);
        scratch_b_.assign(words_, 0);
        for (std::size_t w = 0; w < words_; ++w) {
            for (Word bits = dx[w]; bits != 0; bits &= bits - 1) {
                std::size_t a = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                const Word* succ = &r.succ[a * words_];
                bool supported = false;
                for (std::size_t u = 0; u < words_; ++u) {
                    Word hit = succ[u] & dy[u];
                    if (hit != 0) {
                        supported = true;
                        scratch_b_[u] |= hit;
                    }
                }
                if (supported) {
                    set_bit(scratch_a_.data(), a);
                }
            }
        }
        return narrow(x, scratch_a_.data(), changed) && narrow(y, scratch_b_.data(), changed);
    }

    bool revise_general(const Constraint& c, std::vector<int>& changed) {
        const Relation& r = relations_[c.relation];
        const std::size_t k = c.vars.size();
        scratch_rows_.assign(k * words_, 0);
        for (const auto& t : r.tuples) {
            bool ok = true;
            for (std::size_t j = 0; j < k && ok; ++j) {
                ok = test_bit(&domains_[c.vars[j] * words_], t[j]);
                for (std::size_t l = 0; l < j && ok; ++l) {
                    if (c.vars[l] == c.vars[j] && t[l] != t[j]) {
                        ok = false;
                    }
                }
            }
            if (ok) {
                for (std::size_t j = 0; j < k; ++j) {
                    set_bit(&scratch_rows_[j * words_], t[j]);
                }
            }
        }
        std::vector<Word> row(words_);
        for (std::size_t j = 0; j < k; ++j) {
            std::copy(&scratch_rows_[j * words_], &scratch_rows_[j * words_] + words_, row.begin());
            if (!narrow(c.vars[j], row.data(), changed)) {
                return false;
            }
        }
        return true;
    }

    // dom(v) &= mask.
    bool narrow(int v, const Word* mask, std::vector<int>& changed) {
        const Word* dom = &domains_[v * words_];
        bool differs = false;
        for (std::size_t w = 0; w < words_; ++w) {
            if ((dom[w] & mask[w]) != dom[w]) {
                differs = true;
                break;
            }
        }
        if (!differs) {
            return true;
        }
        narrowed_.resize(words_);
        for (std::size_t w = 0; w < words_; ++w) {
            narrowed_[w] = dom[w] & mask[w];
        }
        int size = count(narrowed_.data());
        assign_domain(v, narrowed_.data(), size);
        changed.push_back(v);
        return size > 0;
    }

    bool propagate(std::deque<int>& queue, std::vector<char>& queued) {
        std::vector<int> changed;
        while (!queue.empty()) {
            int c = queue.front();
            queue.pop_front();
            queued[c] = 0;
            changed.clear();
            if (!revise(constraints_[c], changed)) {
                for (int q : queue) {
                    queued[q] = 0;
                }
                queue.clear();
                return false;
            }
            for (int v : changed) {
                for (int other : var_constraints_[v]) {
                    if (other != c && !queued[other] && constraints_[other].kind != Kind::static_unary) {
                        queued[other] = 1;
                        queue.push_back(other);
                    }
                }
            }
        }
        return true;
    }

    int select() const {
        int best = -1;
        for (std::size_t v = 0; v < src_values_.size(); ++v) {
            if (constrained_[v] && sizes_[v] > 1 && (best < 0 || sizes_[v] < sizes_[best])) {
                best = static_cast<int>(v);
            }
        }
        return best;
    }

    bool search() {
        int v = select();
        if (v < 0) {
            return true;
        }
        std::vector<Word> values(&domains_[v * words_], &domains_[v * words_] + words_);
        std::vector<Word> single(words_);
        for (std::size_t w = 0; w < words_; ++w) {
            for (Word bits = values[w]; bits != 0; bits &= bits - 1) {
                std::size_t a = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                if (++nodes_ > options_.node_budget) {
                    throw ResourceLimitError("homomorphism search exceeded the node budget of " +
                                             std::to_string(options_.node_budget));
                }
                std::size_t mark = trail_vars_.size();
                std::fill(single.begin(), single.end(), 0);
                set_bit(single.data(), a);
                assign_domain(v, single.data(), 1);
                // queued_ is all-zero between propagations.
                std::deque<int> queue;
                for (int c : var_constraints_[v]) {
                    if (constraints_[c].kind != Kind::static_unary) {
                        queue.push_back(c);
                        queued_[c] = 1;
                    }
                }
                if (propagate(queue, queued_) && search()) {
                    return true;
                }
                undo(mark);
            }
        }
        return false;
    }

    Homomorphism extract() const {
        Homomorphism h;
        for (std::size_t v = 0; v < src_values_.size(); ++v) {
            int t;
            if (constrained_[v]) {
                const Word* row = &domains_[v * words_];
                t = -1;
                for (std::size_t w = 0; w < words_ && t < 0; ++w) {
                    if (row[w] != 0) {
                        t = static_cast<int>(w * 64 + static_cast<std::size_t>(std::countr_zero(row[w])));
                    }
                }
            } else {
                t = anchor_[v] >= 0 ? anchor_[v] : 0;
            }
            h.mapping.emplace(src_values_[v], dst_values_[t]);
        }
        return h;
    }

    const Example& src_;
    const Example& dst_;
    HomOptions options_;

    std::vector<Value> dst_values_;
    std::vector<Value> src_values_;
    std::unordered_map<std::string_view, int> dst_index_;
    std::unordered_map<std::string_view, int> src_index_;
    std::size_t target_size_ = 0;
    std::size_t words_ = 1;

    std::vector<Relation> relations_;
    std::vector<Constraint> constraints_;
    std::vector<std::vector<int>> var_constraints_;
    std::vector<char> constrained_;
    std::vector<int> anchor_;

    std::vector<Word> domains_;
    std::vector<int> sizes_;
    std::vector<int> trail_vars_;
    std::vector<int> trail_sizes_;
    std::vector<Word> trail_words_;

    std::vector<Word> scratch_a_;
    std::vector<Word> scratch_b_;
    std::vector<Word> scratch_rows_;
    std::vector<Word> narrowed_;
    std::vector<char> queued_;
    std::uint64_t nodes_ = 0;
};

}  // namespace

std::optional<Homomorphism> find_hom(const Example& src, const Example& dst, const HomOptions& options) {
    return HomSearch(src, dst, options).run();
}

bool hom_exists(const Example& src, const Example& dst, const HomOptions& options) {
    return find_hom(src, dst, options).has_value();
}

bool is_homomorphism(const Homomorphism& h, const Example& src, const Example& dst) {
    if (src.arity() != dst.arity()) {
        return false;
    }
    for (const auto& v : src.domain()) {
        auto it = h.mapping.find(v);
        if (it == h.mapping.end() || !dst.domain().count(it->second)) {
            return false;
        }
    }
    for (std::size_t i = 0; i < src.arity(); ++i) {
        if (h.mapping.at(src.answers()[i]) != dst.answers()[i]) {
            return false;
        }
    }
    for (const auto& f : src.facts()) {
        Fact image{f.relation, {}};
        for (const auto& a : f.args) {
            image.args.push_back(h.mapping.at(a));
        }
        if (!dst.instance().contains(image)) {
            return false;
        }
    }
    return true;
}

Homomorphism compose(const Homomorphism& first, const Homomorphism& second) {
    Homomorphism out;
    for (const auto& [from, mid] : first.mapping) {
        out.mapping.emplace(from, second.mapping.at(mid));
    }
    return out;
}

std::set<Tuple> evaluate(const CQ& q, const Instance& instance, const HomOptions& options) {
    const Example source = canonical_example(q);
    const std::vector<Value> domain(instance.domain().begin(), instance.domain().end());
    const std::size_t k = q.arity();
    std::set<Tuple> answers;
    if (k > 0 && domain.empty()) {
        return answers;
    }
    std::vector<std::size_t> index(k, 0);
    while (true) {
        Tuple candidate;
        candidate.reserve(k);
        for (std::size_t i = 0; i < k; ++i) {
            candidate.push_back(domain[index[i]]);
        }
        if (hom_exists(source, Example(instance, candidate), options)) {
            answers.insert(candidate);
        }
        std::size_t pos = 0;
        while (pos < k && ++index[pos] == domain.size()) {
            index[pos++] = 0;
        }
        if (pos == k) {
            break;
        }
    }
    return answers;
}

bool is_positive_for(const CQ& q, const Example& e, const HomOptions& options) {
    return hom_exists(canonical_example(q), e, options);
}

bool contained(const CQ& q1, const CQ& q2, const HomOptions& options) {
    return hom_exists(canonical_example(q2), canonical_example(q1), options);
}

bool equivalent(const CQ& q1, const CQ& q2, const HomOptions& options) {
    return contained(q1, q2, options) && contained(q2, q1, options);
}

bool fits(const CQ& q, const LabeledCollection& collection, const HomOptions& options) {
    const Example source = canonical_example(q);
    for (const auto& e : collection.positives) {
        if (!hom_exists(source, e, options)) {
            return false;
        }
    }
    for (const auto& e : collection.negatives) {
        if (hom_exists(source, e, options)) {
            return false;
        }
    }
    return true;
}

}  // namespace cqfit
