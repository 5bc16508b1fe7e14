#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cqfit/hom.hpp"

namespace cqfit::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

struct Io {
    std::ostream& out;
    std::ostream& err;
};

int cmd_hom(const std::string& src, const std::string& dst, const HomOptions& hom, Io io);

// Prints q(I) one tuple per line, or positive/negative when the file is an example.
int cmd_eval(const std::string& query, const std::string& data, bool as_example, const HomOptions& hom, Io io);

int cmd_contained(const std::string& q1, const std::string& q2, const HomOptions& hom, Io io);

int cmd_product(const std::vector<std::string>& files, const std::optional<std::string>& out_file, Io io);

struct FitArgs {
    std::vector<std::string> inputs;
    std::vector<std::string> positives;
    std::vector<std::string> negatives;
    std::string strategy = "most-specific";
    bool verify = false;
    bool minimize = false;
    int n = 0;
    std::size_t max_atoms = 12;
    bool allow_unsafe = false;
    HomOptions hom;
};

int cmd_fit(const FitArgs& args, Io io);

struct DualArgs {
    std::string source;
    std::string anchor;
    std::optional<std::string> out_file;
    std::size_t probes = 0;
    std::optional<std::uint64_t> seed;
    HomOptions hom;
};

int cmd_dual(const DualArgs& args, Io io);

struct VerifyDualityArgs {
    std::string anchor;
    std::vector<std::string> obstructions;
    std::vector<std::string> duals;
    std::vector<std::string> probe_files;
    std::size_t probes = 0;
    std::optional<std::uint64_t> seed;
    HomOptions hom;
};

int cmd_verify_duality(const VerifyDualityArgs& args, Io io);

struct ExperimentArgs {
    std::string scenario;
    std::string base = "thm5";
    std::optional<std::string> strategy;
    int n = 0;
    std::size_t m = 0;
    std::size_t trials = 0;
    std::string epsilon = "0.25";
    std::string delta = "0.1";
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_file;
    std::optional<std::string> csv_file;
    std::optional<std::string> dump_sample;
    std::size_t jobs = 1;
    bool timing = false;
    std::size_t max_atoms = 0;
    HomOptions hom;
};

int cmd_experiment(const ExperimentArgs& args, Io io);

}  // namespace cqfit::cli
