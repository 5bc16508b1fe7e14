#include "cqfit/pac/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <stdexcept>
#include <thread>

#include "cqfit/canonical.hpp"
#include "cqfit/error.hpp"
#include "cqfit/pac/scenarios.hpp"
#include "cqfit/text.hpp"

namespace cqfit::pac {

std::string to_string(ScenarioKind kind) { return kind == ScenarioKind::thm4 ? "thm4" : "thm5"; }

ScenarioKind parse_scenario(const std::string& name) {
    if (name == "thm4") {
        return ScenarioKind::thm4;
    }
    if (name == "thm5") {
        return ScenarioKind::thm5;
    }
    throw std::invalid_argument("unknown scenario '" + name + "'");
}

FittingStrategy default_strategy(ScenarioKind kind) {
    return kind == ScenarioKind::thm4 ? FittingStrategy::scenario_most_general : FittingStrategy::most_specific;
}

Rational ExperimentReport::fraction_exceeding() const {
    if (counted == 0) {
        return Rational(0);
    }
    return Rational(BigInt(exceeding), BigInt(counted));
}

namespace {

void validate(const ExperimentConfig& config) {
    if (config.m < 1) {
        throw std::invalid_argument("sample size m must be at least 1");
    }
    if (config.epsilon <= 0 || config.epsilon >= 1) {
        throw std::invalid_argument("epsilon must lie in (0, 1)");
    }
    if (config.delta <= 0 || config.delta >= 1) {
        throw std::invalid_argument("delta must lie in (0, 1)");
    }
    if (config.scenario == ScenarioKind::thm5 && config.strategy == FittingStrategy::scenario_most_general) {
        throw ScenarioError("the scenario-most-general fitter only applies to thm4");
    }
}

std::size_t path_bound(const ExperimentConfig& config) {
    return config.path_max_atoms != 0 ? config.path_max_atoms : static_cast<std::size_t>(3 * config.n);
}

// Each relation's product facts are the componentwise tuples of the factors' facts.
BigInt product_fact_count(const ImplicitProduct& product) {
    std::map<std::string, std::vector<std::size_t>> per_relation;
    const auto& factors = product.factors();
    for (std::size_t i = 0; i < factors.size(); ++i) {
        for (const auto& f : factors[i].facts()) {
            auto& counts = per_relation[f.relation];
            counts.resize(factors.size(), 0);
            ++counts[i];
        }
    }
    BigInt total = 0;
    for (const auto& [relation, counts] : per_relation) {
        BigInt term = 1;
        for (std::size_t c : counts) {
            term *= c;
        }
        total += term;
    }
    return total;
}

void fill_sample_fields(TrialRecord& record, const Sample& s) {
    record.m = s.draws.size();
    record.distinct = s.multiplicities.size();
    record.multiplicities = s.multiplicities;
}

bool fit_smallest_path(TrialRecord& record, const LabeledCollection& collection, const Schema& schema,
                       const FiniteDistribution& distribution, const ExperimentConfig& config) {
    PathSearchOptions options;
    options.max_atoms = path_bound(config);
    try {
        CQ q = fit_smallest_path_cq(collection, schema, options);
        record.error = exact_error(q, distribution, config.hom);
        record.output_size = q.size();
        record.query = serialize(q);
        return true;
    } catch (const NoFittingError& e) {
        record.failed = true;
        record.failure = e.what();
        return false;
    }
}

bool fit_most_specific_materialized(TrialRecord& record, const LabeledCollection& collection,
                                    const FiniteDistribution& distribution, const ExperimentConfig& config) {
    if (collection.positives.empty()) {
        record.failed = true;
        record.failure = "no positive example drawn";
        return false;
    }
    try {
        MostSpecificFit fit = fit_most_specific(collection, config.hom);
        CQ q = canonical_cq(fit.product().materialize());
        record.error = exact_error(q, distribution, config.hom);
        record.output_size = q.size();
        return true;
    } catch (const NoFittingError& e) {
        record.failed = true;
        record.failure = e.what();
    } catch (const SizeLimitError& e) {
        record.failed = true;
        record.failure = e.what();
    }
    return false;
}

TrialRecord run_thm4_trial(const ExperimentConfig& config, const Theorem4Scenario& scenario, std::size_t trial) {
    TrialRecord record;
    record.trial = trial;
    Rng rng = Rng::stream(config.seed, trial);
    const Sample s = sample(scenario.distribution, config.m, rng);
    fill_sample_fields(record, s);
    record.seen = s.collection.negatives.size();
    record.positive_drawn = s.drew(Theorem4Scenario::positive_index());

    switch (config.strategy) {
        case FittingStrategy::scenario_most_general: {
            MostGeneralFit fit = fit_scenario_most_general(s.collection, scenario, config.hom);
            record.error = exact_error(fit.query, scenario.distribution, config.hom);
            record.closed_form = most_general_closed_form_error(fit, scenario);
            record.output_size = fit.query.size();
            record.covered = std::move(fit.covered);
            break;
        }
        case FittingStrategy::most_specific:
            fit_most_specific_materialized(record, s.collection, scenario.distribution, config);
            break;
        case FittingStrategy::smallest_path:
            fit_smallest_path(record, s.collection, scenario.schema, scenario.distribution, config);
            break;
    }
    return record;
}

// Fisher-Yates over `items` driven by `rng`, so the order is the same on every platform.
void shuffle(std::vector<std::size_t>& items, Rng& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::swap(items[i - 1], items[rng.below(i)]);
    }
}

TrialRecord run_thm5_trial(const ExperimentConfig& config, const Theorem5Scenario& scenario, std::size_t trial) {
    TrialRecord record;
    record.trial = trial;
    Rng rng = Rng::stream(config.seed, trial);
    const Sample s = sample(scenario.distribution, config.m, rng);
    fill_sample_fields(record, s);
    record.seen = s.collection.positives.size();
    const std::size_t total = scenario.support_size();

    if (config.strategy == FittingStrategy::smallest_path) {
        fit_smallest_path(record, s.collection, scenario.schema, scenario.distribution, config);
        return record;
    }

    MostSpecificFit fit = fit_most_specific(s.collection, config.hom);
    record.error = evaluate_most_specific(fit, scenario, config.hom).error;
    record.closed_form = Rational(BigInt(total - record.seen), BigInt(total));
    record.output_size = product_fact_count(fit.product());

    // Independent re-check on a few unseen points: the subset path maps into every
    // sampled example but not into the unseen one, so the product cannot either.
    std::vector<std::size_t> unseen;
    for (std::size_t i = 0; i < total; ++i) {
        if (!s.drew(i)) {
            unseen.push_back(i);
        }
    }
    shuffle(unseen, rng);
    unseen.resize(std::min(unseen.size(), config.spot_checks));
    for (std::size_t i : unseen) {
        const Example certificate = scenario.subset_paths[i].to_example();
        bool into_factors = std::all_of(
            fit.product().factors().begin(), fit.product().factors().end(),
            [&](const Example& factor) { return hom_exists(certificate, factor, config.hom); });
        ++record.spot_checked;
        if (into_factors && !hom_exists(certificate, scenario.positives[i], config.hom)) {
            ++record.spot_confirmed;
        }
    }
    return record;
}

ExperimentReport run_trials(const ExperimentConfig& config, const std::function<TrialRecord(std::size_t)>& trial) {
    ExperimentReport report;
    report.config = config;
    report.records.resize(config.trials);
    std::vector<std::exception_ptr> errors(config.trials);
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        for (std::size_t t = next++; t < config.trials; t = next++) {
            try {
                auto start = std::chrono::steady_clock::now();
                report.records[t] = trial(t);
                if (config.timing) {
                    std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
                    report.records[t].elapsed_ms = elapsed.count();
                }
            } catch (...) {
                errors[t] = std::current_exception();
            }
        }
    };
    const std::size_t jobs = std::max<std::size_t>(1, std::min(config.jobs, config.trials));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (std::size_t j = 0; j < jobs; ++j) {
            threads.emplace_back(worker);
        }
        for (auto& t : threads) {
            t.join();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    for (const auto& r : report.records) {
        if (r.failed) {
            ++report.failed;
            continue;
        }
        ++report.counted;
        if (r.error > config.epsilon) {
            ++report.exceeding;
        }
    }
    return report;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config, const Theorem4Scenario& scenario) {
    validate(config);
    if (config.scenario != ScenarioKind::thm4 || config.n != scenario.n) {
        throw std::invalid_argument("scenario does not match the experiment configuration");
    }
    return run_trials(config, [&](std::size_t t) { return run_thm4_trial(config, scenario, t); });
}

ExperimentReport run_experiment(const ExperimentConfig& config, const Theorem5Scenario& scenario) {
    validate(config);
    if (config.scenario != ScenarioKind::thm5 || config.n != scenario.n) {
        throw std::invalid_argument("scenario does not match the experiment configuration");
    }
    return run_trials(config, [&](std::size_t t) { return run_thm5_trial(config, scenario, t); });
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    validate(config);
    if (config.scenario == ScenarioKind::thm4) {
        return run_experiment(config, build_theorem4_scenario(config.n, config.hom));
    }
    return run_experiment(config, build_theorem5_scenario(config.n, config.hom));
}

}  // namespace cqfit::pac
