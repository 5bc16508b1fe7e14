// cqfit: command-line front end for CQ fitting, duals and the PAC experiments.

#include <cstdlib>
#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "commands.hpp"
#include "cqfit/error.hpp"

using namespace cqfit;
using namespace cqfit::cli;

int main(int argc, char** argv) {
    CLI::App app{"CQ fitting toolkit"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    std::uint64_t budget = kDefaultNodeBudget;
    auto* budget_option = app.add_option("--node-budget", budget, "Search node budget per homomorphism test")->envname("CQFIT_NODE_BUDGET")->check(CLI::PositiveNumber);

    std::string src, dst;
    auto* hom = app.add_subcommand("hom", "Find a homomorphism between two examples");
    hom->add_option("src", src, "Source example")->required()->check(CLI::ExistingFile);
    hom->add_option("dst", dst, "Target example")->required()->check(CLI::ExistingFile);

    std::string query, data;
    bool as_example = false;
    auto* eval = app.add_subcommand("eval", "Evaluate a CQ on an instance, or classify an example");
    eval->add_option("query", query, "CQ file")->required()->check(CLI::ExistingFile);
    eval->add_option("data", data, "Instance or example file")->required()->check(CLI::ExistingFile);
    eval->add_flag("--example", as_example, "Read the data file as an example and print positive/negative");

    std::string q1, q2;
    auto* cont = app.add_subcommand("contained", "Decide whether q1 is contained in q2");
    cont->add_option("q1", q1)->required()->check(CLI::ExistingFile);
    cont->add_option("q2", q2)->required()->check(CLI::ExistingFile);

    std::vector<std::string> factors;
    std::optional<std::string> product_out;
    auto* product = app.add_subcommand("product", "Direct product of examples");
    product->add_option("examples", factors, "Example files")->required()->check(CLI::ExistingFile);
    product->add_option("--out", product_out, "Write the product here instead of stdout");

    FitArgs fit_args;
    auto* fit = app.add_subcommand("fit", "Fit a CQ to a labeled collection");
    fit->add_option("inputs", fit_args.inputs, "Collection files, or directories with pos/ and neg/")
        ->check(CLI::ExistingPath);
    fit->add_option("--pos", fit_args.positives, "Positive example files")->check(CLI::ExistingFile);
    fit->add_option("--neg", fit_args.negatives, "Negative example files")->check(CLI::ExistingFile);
    fit->add_option("--strategy", fit_args.strategy)
        ->check(CLI::IsMember({"most-specific", "scenario-most-general", "smallest-path"}));
    fit->add_flag("--verify", fit_args.verify, "Re-check that the output fits");
    fit->add_flag("--minimize", fit_args.minimize, "Greedily drop redundant atoms (most-specific)");
    fit->add_option("--n", fit_args.n, "Scenario size (scenario-most-general)");
    fit->add_option("--max-atoms", fit_args.max_atoms, "Atom bound (smallest-path)");
    fit->add_flag("--allow-unsafe", fit_args.allow_unsafe, "Admit the empty body (smallest-path)");

    DualArgs dual_args;
    auto* dual = app.add_subcommand("dual", "Build the dual of a path example relative to another");
    dual->add_option("source", dual_args.source, "Path example I")->required()->check(CLI::ExistingFile);
    dual->add_option("anchor", dual_args.anchor, "Path example J")->required()->check(CLI::ExistingFile);
    dual->add_option("--out", dual_args.out_file);
    dual->add_option("--verify-probes", dual_args.probes, "Check the duality on this many random probes");
    dual->add_option("--seed", dual_args.seed);

    VerifyDualityArgs vd_args;
    auto* vd = app.add_subcommand("verify-duality", "Check a relativized homomorphism duality on probes");
    vd->add_option("--anchor", vd_args.anchor)->required()->check(CLI::ExistingFile);
    vd->add_option("--obstruction", vd_args.obstructions)->check(CLI::ExistingFile);
    vd->add_option("--dual", vd_args.duals)->check(CLI::ExistingFile);
    vd->add_option("--probe", vd_args.probe_files)->check(CLI::ExistingFile);
    vd->add_option("--probes", vd_args.probes, "Number of random probes");
    vd->add_option("--seed", vd_args.seed);

    ExperimentArgs ex_args;
    auto* ex = app.add_subcommand("experiment", "Run a PAC experiment scenario");
    ex->add_option("--scenario", ex_args.scenario)->required()->check(CLI::IsMember({"thm4", "thm5", "baseline"}));
    ex->add_option("--base", ex_args.base, "Scenario for the baseline fitter")
        ->check(CLI::IsMember({"thm4", "thm5"}));
    ex->add_option("--strategy", ex_args.strategy)
        ->check(CLI::IsMember({"most-specific", "scenario-most-general", "smallest-path"}));
    ex->add_option("--n", ex_args.n)->required();
    ex->add_option("--m", ex_args.m)->required();
    ex->add_option("--trials", ex_args.trials)->required();
    ex->add_option("--epsilon", ex_args.epsilon);
    ex->add_option("--delta", ex_args.delta);
    ex->add_option("--seed", ex_args.seed)->required();
    ex->add_option("--out", ex_args.out_file, "JSON report");
    ex->add_option("--csv", ex_args.csv_file, "CSV report");
    ex->add_option("--dump-sample", ex_args.dump_sample, "Write trial 0's sample as a collection");
    ex->add_option("--jobs", ex_args.jobs)->check(CLI::PositiveNumber);
    ex->add_flag("--timing", ex_args.timing, "Record per-trial wall-clock time");
    ex->add_option("--max-atoms", ex_args.max_atoms, "Atom bound for the path baseline (default 3n)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }
    // CLI11 drops an environment value that fails validation instead of reporting it.
    if (std::getenv("CQFIT_NODE_BUDGET") != nullptr && budget_option->count() == 0) {
        std::cerr << "CQFIT_NODE_BUDGET: expected a positive integer\n";
        return kExitUsage;
    }

    HomOptions options;
    options.node_budget = budget;
    fit_args.hom = dual_args.hom = vd_args.hom = ex_args.hom = options;
    Io io{std::cout, std::cerr};

    try {
        if (*hom) return cmd_hom(src, dst, options, io);
        if (*eval) return cmd_eval(query, data, as_example, options, io);
        if (*cont) return cmd_contained(q1, q2, options, io);
        if (*product) return cmd_product(factors, product_out, io);
        if (*fit) return cmd_fit(fit_args, io);
        if (*dual) return cmd_dual(dual_args, io);
        if (*vd) return cmd_verify_duality(vd_args, io);
        if (*ex) return cmd_experiment(ex_args, io);
    } catch (const ResourceLimitError& e) {
        std::cerr << "budget: " << e.what() << '\n';
        return kExitBudget;
    } catch (const SizeLimitError& e) {
        std::cerr << "budget: " << e.what() << '\n';
        return kExitBudget;
    } catch (const NoFittingError& e) {
        std::cerr << "no fitting: " << e.what() << '\n';
        return kExitDomain;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
