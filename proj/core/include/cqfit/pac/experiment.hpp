#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cqfit/hom.hpp"
#include "cqfit/pac/distribution.hpp"
#include "cqfit/pac/fitters.hpp"

namespace cqfit::pac {

enum class ScenarioKind { thm4, thm5 };

std::string to_string(ScenarioKind kind);
/// Accepts "thm4" and "thm5".
ScenarioKind parse_scenario(const std::string& name);

/// The strategy a scenario is built to defeat: most-general for thm4, most-specific for thm5.
FittingStrategy default_strategy(ScenarioKind kind);

struct ExperimentConfig {
    ScenarioKind scenario = ScenarioKind::thm4;
    FittingStrategy strategy = FittingStrategy::scenario_most_general;
    int n = 2;
    std::size_t m = 1;
    std::size_t trials = 1;
    Rational epsilon = Rational(1, 4);
    Rational delta = Rational(1, 10);
    std::uint64_t seed = 0;
    /// Worker threads; the report does not depend on it.
    std::size_t jobs = 1;
    /// Record wall-clock time per trial (makes reports non-reproducible).
    bool timing = false;
    /// Unseen support points re-checked per most-specific trial.
    std::size_t spot_checks = 10;
    HomOptions hom;
    /// Atom bound for the path baseline; 0 means 3n, the size of both targets' widest path.
    std::size_t path_max_atoms = 0;
};

struct TrialRecord {
    std::size_t trial = 0;
    std::size_t m = 0;
    /// Distinct support points among the draws.
    std::size_t distinct = 0;
    /// thm4: distinct negatives |S'|; thm5: distinct positives.
    std::size_t seen = 0;
    /// thm4 only: whether the target's own example was drawn.
    bool positive_drawn = false;
    bool failed = false;
    std::string failure;
    /// Exact error from per-support-point evaluation.
    Rational error;
    /// Closed-form error of the scenario's extremal fitter, when it applies.
    std::optional<Rational> closed_form;
    /// Size of the fitter's output: atoms, or the exact product fact count for
    /// most-specific fits (which can be astronomically large).
    BigInt output_size = 0;
    /// Query text (path baseline only).
    std::string query;
    /// Scenario-most-general only: covered family indices.
    std::vector<std::size_t> covered;
    /// Support index -> draw count.
    std::map<std::size_t, std::size_t> multiplicities;
    /// Most-specific only: unseen points re-checked and how many confirmed a misclassification.
    std::size_t spot_checked = 0;
    std::size_t spot_confirmed = 0;
    double elapsed_ms = 0.0;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<TrialRecord> records;
    /// Trials that produced a hypothesis.
    std::size_t counted = 0;
    /// Counted trials with error > epsilon.
    std::size_t exceeding = 0;
    std::size_t failed = 0;

    /// exceeding / counted, 0 when nothing was counted.
    Rational fraction_exceeding() const;
};

/// Runs `config.trials` independent trials. Trial t samples with Rng::stream(seed, t),
/// so records do not depend on `jobs`. Throws std::invalid_argument on parameters
/// out of range and ScenarioError on a strategy that does not apply to the scenario.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Same, on a prebuilt scenario (which must match config.scenario and config.n).
ExperimentReport run_experiment(const ExperimentConfig& config, const Theorem4Scenario& scenario);
ExperimentReport run_experiment(const ExperimentConfig& config, const Theorem5Scenario& scenario);

}  // namespace cqfit::pac
