#pragma once

#include <string>

#include "cqfit/pac/experiment.hpp"

namespace cqfit::pac {

/// Full report with per-trial records. Rationals are written as "p/q" strings.
/// Output is byte-identical for identical reports; elapsed time appears only
/// when the experiment ran with timing on.
std::string to_json(const ExperimentReport& report);

/// One row per trial: trial,m,distinct,error_num,error_den,fitter,elapsed_ms.
std::string to_csv(const ExperimentReport& report);

/// "scenario=.. n=.. m=.. trials=.. frac_error_gt_eps=.." where the scenario
/// is "baseline" for the path fitter.
std::string summary_line(const ExperimentReport& report);

}  // namespace cqfit::pac
