#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <ostream>
#include <stdexcept>

#include "cqfit/canonical.hpp"
#include "cqfit/duality.hpp"
#include "cqfit/error.hpp"
#include "cqfit/pac/experiment.hpp"
#include "cqfit/pac/fitters.hpp"
#include "cqfit/pac/report.hpp"
#include "cqfit/pac/scenarios.hpp"
#include "cqfit/path.hpp"
#include "cqfit/product.hpp"
#include "cqfit/text.hpp"

namespace cqfit::cli {
namespace fs = std::filesystem;

namespace {

Example load_example(const std::string& path) { return parse_example(read_file(path)); }

CQ load_cq(const std::string& path) { return parse_cq(read_file(path)); }

std::vector<std::string> files_in(const fs::path& dir) {
    std::vector<std::string> out;
    if (!fs::is_directory(dir)) {
        return out;
    }
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file()) {
            out.push_back(entry.path().string());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// A directory holds pos/ and neg/ subdirectories of example files; a file is a collection.
void load_into(LabeledCollection& collection, const std::string& input) {
    if (fs::is_directory(input)) {
        if (!fs::is_directory(fs::path(input) / "pos") && !fs::is_directory(fs::path(input) / "neg")) {
            throw std::invalid_argument("directory '" + input + "' has neither pos/ nor neg/");
        }
        for (const auto& f : files_in(fs::path(input) / "pos")) {
            collection.positives.insert(load_example(f));
        }
        for (const auto& f : files_in(fs::path(input) / "neg")) {
            collection.negatives.insert(load_example(f));
        }
        return;
    }
    LabeledCollection loaded = parse_collection(read_file(input));
    collection.positives.insert(loaded.positives.begin(), loaded.positives.end());
    collection.negatives.insert(loaded.negatives.begin(), loaded.negatives.end());
}

void print_verdict(const DualityVerdict& verdict, std::ostream& out) {
    if (verdict.holds) {
        out << "duality: pass (checked=" << verdict.checked << " skipped=" << verdict.skipped << ")\n";
        return;
    }
    out << "duality: fail ("
        << (verdict.violation == DualityViolation::obstruction_and_dual ? "obstruction maps in and probe maps to a dual"
                                                                        : "no obstruction maps in and no dual admits it")
        << ")\n";
    if (verdict.counterexample) {
        out << "counterexample:\n" << serialize(*verdict.counterexample);
    }
}

void write_or_print(const std::optional<std::string>& file, const std::string& text, std::ostream& out) {
    if (file) {
        write_file(*file, text);
    } else {
        out << text;
    }
}

std::string join(const Tuple& t) {
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i) {
        s += (i ? "," : "") + t[i];
    }
    return s;
}

}  // namespace

int cmd_hom(const std::string& src, const std::string& dst, const HomOptions& hom, Io io) {
    const Example a = load_example(src);
    const Example b = load_example(dst);
    auto h = find_hom(a, b, hom);
    if (!h) {
        io.out << "none\n";
        return kExitOk;
    }
    for (const auto& [u, v] : h->mapping) {
        io.out << u << " -> " << v << '\n';
    }
    return kExitOk;
}

int cmd_eval(const std::string& query, const std::string& data, bool as_example, const HomOptions& hom, Io io) {
    const CQ q = load_cq(query);
    if (as_example) {
        io.out << (is_positive_for(q, load_example(data), hom) ? "positive" : "negative") << '\n';
        return kExitOk;
    }
    for (const auto& t : evaluate(q, parse_instance(read_file(data)), hom)) {
        io.out << join(t) << '\n';
    }
    return kExitOk;
}

int cmd_contained(const std::string& q1, const std::string& q2, const HomOptions& hom, Io io) {
    io.out << (contained(load_cq(q1), load_cq(q2), hom) ? "true" : "false") << '\n';
    return kExitOk;
}

int cmd_product(const std::vector<std::string>& files, const std::optional<std::string>& out_file, Io io) {
    std::vector<Example> factors;
    for (const auto& f : files) {
        factors.push_back(load_example(f));
    }
    write_or_print(out_file, serialize(ImplicitProduct(std::move(factors)).materialize()), io.out);
    return kExitOk;
}

int cmd_fit(const FitArgs& args, Io io) {
    const auto strategy = pac::parse_strategy(args.strategy);
    LabeledCollection collection;
    for (const auto& input : args.inputs) {
        load_into(collection, input);
    }
    for (const auto& f : args.positives) {
        collection.positives.insert(load_example(f));
    }
    for (const auto& f : args.negatives) {
        collection.negatives.insert(load_example(f));
    }
    collection.arity();

    CQ q;
    switch (strategy) {
        case pac::FittingStrategy::most_specific: {
            if (collection.positives.empty()) {
                throw std::invalid_argument("most-specific fitting needs at least one positive example");
            }
            MostSpecificOptions options;
            options.hom = args.hom;
            options.minimize = args.minimize;
            auto result = most_specific_fitting(collection, options);
            if (result.status == FitStatus::no_fitting) {
                throw NoFittingError("no CQ fits the collection");
            }
            if (result.status == FitStatus::size_overflow) {
                throw SizeLimitError("product of the positives exceeds the size guard");
            }
            q = *result.query;
            break;
        }
        case pac::FittingStrategy::scenario_most_general: {
            if (args.n < 1) {
                throw std::invalid_argument("--n is required for the scenario-most-general strategy");
            }
            auto scenario = pac::build_theorem4_scenario(args.n, args.hom);
            q = pac::fit_scenario_most_general(collection, scenario, args.hom).query;
            break;
        }
        case pac::FittingStrategy::smallest_path: {
            pac::PathSearchOptions options;
            options.max_atoms = args.max_atoms;
            options.require_safe = !args.allow_unsafe;
            q = pac::fit_smallest_path_cq(collection, collection.schema(), options);
            break;
        }
    }
    io.out << serialize(q) << '\n';
    if (args.verify) {
        if (!fits(q, collection, args.hom)) {
            io.err << "verify: the query does not fit the collection\n";
            return kExitDomain;
        }
        io.err << "verify: fits\n";
    }
    return kExitOk;
}

int cmd_dual(const DualArgs& args, Io io) {
    if (args.probes > 0 && !args.seed) {
        throw std::invalid_argument("--seed is required with --verify-probes");
    }
    const PathExample source = as_path_example(load_example(args.source));
    const PathExample anchor = as_path_example(load_example(args.anchor));
    DualResult result = build_path_dual(source, anchor, args.hom);
    write_or_print(args.out_file, serialize(result.dual), io.out);
    std::ostream& report = args.out_file ? io.out : io.err;
    report << "case: " << (result.kind == DualCase::constructed ? "constructed" : "non-mapping") << '\n';
    if (args.probes == 0) {
        return kExitOk;
    }
    RelativeDuality rd{{source.to_example()}, {result.dual}, anchor.to_example()};
    const auto probes = generate_probes(rd.anchor, args.probes, *args.seed);
    const auto verdict = verify_relative_duality(rd, probes, args.hom);
    print_verdict(verdict, report);
    return verdict.holds ? kExitOk : kExitDomain;
}

int cmd_verify_duality(const VerifyDualityArgs& args, Io io) {
    if (args.probes > 0 && !args.seed) {
        throw std::invalid_argument("--seed is required with --probes");
    }
    RelativeDuality rd{{}, {}, load_example(args.anchor)};
    for (const auto& f : args.obstructions) {
        rd.obstructions.push_back(load_example(f));
    }
    for (const auto& f : args.duals) {
        rd.duals.push_back(load_example(f));
    }
    std::vector<Example> probes;
    for (const auto& f : args.probe_files) {
        probes.push_back(load_example(f));
    }
    if (args.probes > 0) {
        auto generated = generate_probes(rd.anchor, args.probes, *args.seed);
        probes.insert(probes.end(), generated.begin(), generated.end());
    }
    if (probes.empty()) {
        throw std::invalid_argument("no probes: pass probe files or --probes with --seed");
    }
    const auto verdict = verify_relative_duality(rd, probes, args.hom);
    print_verdict(verdict, io.out);
    return verdict.holds ? kExitOk : kExitDomain;
}

int cmd_experiment(const ExperimentArgs& args, Io io) {
    if (!args.seed) {
        throw std::invalid_argument("--seed is required");
    }
    pac::ExperimentConfig config;
    if (args.scenario == "baseline") {
        config.scenario = pac::parse_scenario(args.base);
        config.strategy = pac::FittingStrategy::smallest_path;
    } else {
        config.scenario = pac::parse_scenario(args.scenario);
        config.strategy = pac::default_strategy(config.scenario);
    }
    if (args.strategy) {
        config.strategy = pac::parse_strategy(*args.strategy);
    }
    config.n = args.n;
    config.m = args.m;
    config.trials = args.trials;
    config.epsilon = pac::parse_decimal(args.epsilon);
    config.delta = pac::parse_decimal(args.delta);
    config.seed = *args.seed;
    config.jobs = args.jobs;
    config.timing = args.timing;
    config.path_max_atoms = args.max_atoms;
    config.hom = args.hom;

    pac::ExperimentReport report;
    auto run = [&](const auto& scenario) {
        report = pac::run_experiment(config, scenario);
        if (args.dump_sample) {
            Rng rng = Rng::stream(config.seed, 0);
            write_file(*args.dump_sample, serialize(pac::sample(scenario.distribution, config.m, rng).collection));
        }
    };
    if (config.scenario == pac::ScenarioKind::thm4) {
        run(pac::build_theorem4_scenario(config.n, config.hom));
    } else {
        run(pac::build_theorem5_scenario(config.n, config.hom));
    }
    if (args.out_file) {
        write_file(*args.out_file, pac::to_json(report));
    }
    if (args.csv_file) {
        write_file(*args.csv_file, pac::to_csv(report));
    }
    io.out << pac::summary_line(report) << '\n';
    return kExitOk;
}

}  // namespace cqfit::cli
