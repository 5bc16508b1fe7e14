#include "cqfit/pac/report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace cqfit::pac {
namespace {

using nlohmann::ordered_json;

std::string scenario_label(const ExperimentConfig& config) {
    return config.strategy == FittingStrategy::smallest_path ? "baseline" : to_string(config.scenario);
}

ordered_json record_json(const TrialRecord& r, const ExperimentConfig& c) {
    ordered_json j;
    j["trial"] = r.trial;
    j["m"] = r.m;
    j["distinct"] = r.distinct;
    j["seen"] = r.seen;
    if (c.scenario == ScenarioKind::thm4) {
        j["positive_drawn"] = r.positive_drawn;
    }
    j["failed"] = r.failed;
    if (r.failed) {
        j["failure"] = r.failure;
    } else {
        j["error"] = to_string(r.error);
        j["error_float"] = static_cast<double>(r.error);
        if (r.closed_form) {
            j["closed_form"] = to_string(*r.closed_form);
        }
        j["output_size"] = r.output_size.str();
    }
    if (!r.query.empty()) {
        j["query"] = r.query;
    }
    if (!r.covered.empty()) {
        j["covered"] = r.covered;
    }
    if (r.spot_checked != 0) {
        j["spot_checked"] = r.spot_checked;
        j["spot_confirmed"] = r.spot_confirmed;
    }
    ordered_json mult = ordered_json::array();
    for (const auto& [index, count] : r.multiplicities) {
        mult.push_back({index, count});
    }
    j["multiplicities"] = std::move(mult);
    if (c.timing) {
        j["elapsed_ms"] = r.elapsed_ms;
    }
    return j;
}

}  // namespace

std::string to_json(const ExperimentReport& report) {
    const auto& c = report.config;
    ordered_json j;
    j["scenario"] = scenario_label(c);
    j["base_scenario"] = to_string(c.scenario);
    j["fitter"] = to_string(c.strategy);
    j["n"] = c.n;
    j["m"] = c.m;
    j["trials"] = c.trials;
    j["epsilon"] = to_string(c.epsilon);
    j["delta"] = to_string(c.delta);
    j["seed"] = c.seed;
    ordered_json records = ordered_json::array();
    for (const auto& r : report.records) {
        records.push_back(record_json(r, c));
    }
    j["records"] = std::move(records);
    const Rational fraction = report.fraction_exceeding();
    j["aggregate"] = {
        {"counted", report.counted},
        {"failed", report.failed},
        {"error_gt_epsilon", report.exceeding},
        {"frac_error_gt_eps", to_string(fraction)},
        {"frac_exceeds_delta", fraction > c.delta},
    };
    return j.dump(2) + "\n";
}

std::string to_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "trial,m,distinct,error_num,error_den,fitter,elapsed_ms\n";
    const std::string fitter = to_string(report.config.strategy);
    for (const auto& r : report.records) {
        out << r.trial << ',' << r.m << ',' << r.seen << ',';
        if (r.failed) {
            out << ",,";
        } else {
            out << boost::multiprecision::numerator(r.error) << ',' << boost::multiprecision::denominator(r.error)
                << ',';
        }
        char elapsed[32];
        std::snprintf(elapsed, sizeof elapsed, "%.3f", r.elapsed_ms);
        out << fitter << ',' << elapsed << '\n';
    }
    return out.str();
}

std::string summary_line(const ExperimentReport& report) {
    const auto& c = report.config;
    char fraction[32];
    std::snprintf(fraction, sizeof fraction, "%.6f", static_cast<double>(report.fraction_exceeding()));
    std::ostringstream out;
    out << "scenario=" << scenario_label(c) << " n=" << c.n << " m=" << c.m << " trials=" << c.trials
        << " frac_error_gt_eps=" << fraction;
    return out.str();
}

}  // namespace cqfit::pac
