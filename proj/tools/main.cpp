// rollpack: workbench for online bin packing under random arrival order.
// JSON goes to stdout, human-readable tables to stderr; exit codes:
// 0 = all assertions passed, 1 = an assertion failed, 2 = usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "rollpack/enumeration.hpp"
#include "rollpack/experiments.hpp"
#include "rollpack/expectation.hpp"
#include "rollpack/instances.hpp"
#include "rollpack/json_io.hpp"
#include "rollpack/markov.hpp"
#include "rollpack/rng.hpp"
#include "rollpack/structure.hpp"

namespace {

using namespace rollpack;

constexpr const char* kVersion = "0.1.0";

Instance load_instance(const std::string& spec) {
    if (std::filesystem::exists(spec)) return parse_instance(spec);
    return get_named_instance(spec);
}

TieRule tie_from_name(const std::string& name) {
    if (name == "earliest") return TieRule::EarliestOpened;
    if (name == "latest") return TieRule::LatestOpened;
    throw CLI::ValidationError("--tie must be 'earliest' or 'latest'");
}

int run_pack(const std::string& instance_spec, const std::string& alg_str, const std::string& tie_str,
             const std::string& perm_file, int64_t shuffle_seed, bool has_shuffle) {
    const Instance instance = load_instance(instance_spec);
    if (instance.size() == 0) throw std::invalid_argument("instance is empty");
    const Alg alg = alg_from_name(alg_str);
    const TieRule tie = tie_from_name(tie_str);

    Permutation perm = identity_permutation(instance.size());
    if (!perm_file.empty()) {
        std::ifstream in(perm_file);
        if (!in) throw std::invalid_argument("cannot open permutation file: " + perm_file);
        nlohmann::json doc = nlohmann::json::parse(in);
        perm = doc.get<Permutation>();
        validate_permutation(perm, instance.size());
    } else if (has_shuffle) {
        SplitMix64 rng(static_cast<uint64_t>(shuffle_seed));
        fisher_yates(perm, rng);
    }

    const Packing packing = pack(instance, perm, alg, tie);
    validate_packing(instance, packing);
    nlohmann::json doc = packing_json(instance, packing);
    doc["version"] = kVersion;
    std::cout << doc.dump(2) << "\n";

    std::cerr << instance.label << " | " << alg_name(alg) << " | " << packing.bin_count()
              << " bins\n";
    for (const Bin& bin : packing.bins) {
        std::cerr << "  bin " << (&bin - packing.bins.data()) << " [" << bin_config(instance, bin).label()
                  << "] load " << to_string(bin.load) << " =";
        for (int id : bin.item_ids) std::cerr << " " << to_string(instance.items[id]);
        std::cerr << "\n";
    }
    return 0;
}

int run_expect(const std::string& instance_spec, const std::string& alg_str, const std::string& mode,
               uint64_t samples, uint64_t seed, const std::string& tie_str, int threads, bool csv) {
    const Instance instance = load_instance(instance_spec);
    const Alg alg = alg_from_name(alg_str);
    const TieRule tie = tie_from_name(tie_str);

    ExpectationReport report;
    if (mode == "exact") {
        try {
            report = exact_expectation(instance, alg, tie, threads);
        } catch (const EnumerationCapExceeded& e) {
            std::cerr << "error: " << e.what() << " (rerun with --mode mc)\n";
            return 2;
        }
    } else if (mode == "mc") {
        report = monte_carlo_expectation(instance, alg, samples, seed, tie, threads);
    } else {
        throw CLI::ValidationError("--mode must be 'exact' or 'mc'");
    }

    if (csv) {
        std::cout << "bins,probability,approx\n";
        for (const auto& [bins, prob] : report.bin_count_distribution)
            std::cout << bins << "," << to_string(prob) << "," << to_double(prob) << "\n";
    } else {
        nlohmann::json doc = report_json(report);
        doc["version"] = kVersion;
        std::cout << doc.dump(2) << "\n";
    }

    std::cerr << instance.label << " | " << alg_name(alg) << " | " << mode_name(report.mode) << "\n";
    if (report.mode == Mode::ExactEnumeration) {
        std::cerr << "  E[bins] = " << to_string(report.expectation) << " (~"
                  << to_double(report.expectation) << "), OPT = " << to_string(report.opt)
                  << ", ratio = " << to_string(report.ratio) << " (~" << to_double(report.ratio)
                  << ")\n";
    } else {
        std::cerr << "  estimate = " << report.estimate << " +- " << report.stderr_mean
                  << " (95% CI [" << report.ci95_low << ", " << report.ci95_high << "]), OPT = "
                  << to_string(report.opt) << ", samples = " << report.samples << ", seed = "
                  << report.seed << "\n";
    }
    return 0;
}

int run_markov_cmd(const std::string& p_str, const std::string& sweep, int64_t simulate_n,
                   uint64_t seed, bool csv) {
    if (!sweep.empty()) {
        // "start:end:step" over exact rationals
        const auto first = sweep.find(':');
        const auto second = sweep.find(':', first + 1);
        if (first == std::string::npos || second == std::string::npos)
            throw CLI::ValidationError("--sweep expects start:end:step");
        const Rat start = parse_rational(sweep.substr(0, first));
        const Rat end = parse_rational(sweep.substr(first + 1, second - first - 1));
        const Rat step = parse_rational(sweep.substr(second + 1));
        if (!(step > 0)) throw CLI::ValidationError("sweep step must be positive");
        std::cout << "p,bf_rate,opt_rate,ratio\n";
        for (Rat p = start; p <= end; p += step) {
            if (!(p > 0 && p < 1)) continue;
            std::cout << to_string(p) << "," << to_double(bf_rate(p)) << ","
                      << to_double(opt_rate_upper(p)) << "," << to_double(iid_ratio_lower_bound(p))
                      << "\n";
        }
        return 0;
    }

    const Rat p = parse_rational(p_str);
    nlohmann::json doc = markov_json(p);
    doc["version"] = kVersion;
    int exit_code = 0;
    if (simulate_n > 0) {
        const CrosscheckReport cross = simulate_and_crosscheck(p, simulate_n, seed);
        doc["simulation"] = crosscheck_json(cross);
        const bool ok = cross.states_closed && cross.bins_tally_exact && cross.matches_simulation;
        doc["simulation"]["pass"] = ok;
        if (!ok) exit_code = 1;
        std::cerr << "simulation: n = " << cross.n << ", bins/item = " << cross.bins_per_item
                  << ", max state-frequency deviation = " << cross.max_frequency_deviation << "\n";
    }
    if (csv) {
        std::cout << "state,omega,approx\n";
        const StationaryVector sv = stationary_closed_form(p);
        for (int s = 0; s < kMarkovStates; ++s)
            std::cout << markov_state_name(s) << "," << to_string(sv.omega[s]) << ","
                      << to_double(sv.omega[s]) << "\n";
    } else {
        std::cout << doc.dump(2) << "\n";
    }
    std::cerr << "p = " << to_string(p) << ", ratio = " << doc["ratio"]["rational"].get<std::string>()
              << " (~" << doc["ratio"]["approx"].get<double>() << "), exceeds-11-10: "
              << (doc["exceeds-11-10"].get<bool>() ? "true" : "false") << "\n";
    return exit_code;
}

int run_reproduce(const std::string& name, bool all, bool list, int threads) {
    if (list) {
        for (const std::string& n : experiment_names()) std::cout << n << "\n";
        return 0;
    }
    std::vector<std::string> names;
    if (all) {
        names = experiment_names();
    } else if (!name.empty()) {
        names.push_back(name);
    } else {
        throw CLI::ValidationError("pass an experiment name, --all, or --list");
    }

    nlohmann::json experiments = nlohmann::json::array();
    bool all_pass = true;
    for (const std::string& n : names) {
        const ExperimentReport report = run_experiment(n, threads);
        nlohmann::json doc;
        doc["experiment"] = report.experiment;
        doc["pass"] = report.pass();
        doc["seconds"] = report.seconds;
        doc["budget_seconds"] = report.budget_seconds;
        doc["checks"] = nlohmann::json::array();
        for (const CheckResult& c : report.checks) {
            doc["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
            std::cerr << (c.pass ? "PASS" : "FAIL") << " " << report.experiment << "/" << c.name
                      << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
        }
        std::cerr << (report.pass() ? "PASS" : "FAIL") << " " << report.experiment << " ("
                  << report.seconds << "s)\n";
        experiments.push_back(std::move(doc));
        all_pass = all_pass && report.pass();
    }
    nlohmann::json out;
    out["version"] = kVersion;
    out["experiments"] = std::move(experiments);
    std::cout << out.dump(2) << "\n";
    return all_pass ? 0 : 1;
}

int run_fuzz(const std::string& target, uint64_t trials, uint64_t seed, int k_max,
             bool allow_small, const std::string& witness_path, int threads) {
    nlohmann::json doc;
    bool violated = false;
    bool expected_violations = false;

    if (target == "monotonicity" || target == "relation") {
        FuzzOptions options;
        options.allow_small_items = allow_small;
        options.max_items = std::max(2, 2 * k_max);
        options.threads = threads;
        options.classify_relations = true;
        const MonotonicityFuzzReport report = monotonicity_fuzz(trials, seed, options);
        doc = fuzz_json(report);
        doc["target"] = target;
        violated = !report.violations.empty() || !report.relation_violations.empty();
        expected_violations = allow_small;
        std::cerr << "trials = " << report.trials << ", packings = " << report.packings_checked
                  << ", relation rounds = " << report.relation_rounds_checked << ", violations = "
                  << report.violations.size() << " + " << report.relation_violations.size() << "\n";
    } else if (target == "lemma3" || target == "claims") {
        const TargetFuzzReport report = target == "lemma3"
                                            ? lemma3_fuzz(trials, seed, k_max, threads)
                                            : claims_fuzz(trials, seed, k_max, threads);
        doc["target"] = report.target;
        doc["trials"] = report.trials;
        doc["checks"] = report.checks;
        doc["seed"] = report.seed;
        doc["violations"] = report.violations;
        violated = !report.violations.empty();
        std::cerr << "trials = " << report.trials << ", checks = " << report.checks
                  << ", violations = " << report.violations.size() << "\n";
    } else {
        throw CLI::ValidationError("--target must be monotonicity, lemma3, claims, or relation");
    }

    doc["version"] = kVersion;
    std::cout << doc.dump(2) << "\n";
    if (violated && !witness_path.empty()) {
        std::ofstream out(witness_path);
        out << doc.dump(2) << "\n";
        std::cerr << "witnesses written to " << witness_path << "\n";
    }
    return violated && !expected_violations ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"online bin packing workbench: exact heuristics, random-order expectations,\n"
                 "structural verification and the i.i.d. Markov-chain lower bound"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "worker threads (default: all cores)")
        ->envname("ROLLPACK_THREADS");

    // pack
    auto* pack_cmd = app.add_subcommand("pack", "pack one instance and print the bins");
    pack_cmd->fallthrough();
    std::string pack_instance, pack_alg = "best-fit", pack_tie = "earliest", pack_perm_file;
    int64_t pack_shuffle_seed = 0;
    pack_cmd->add_option("--instance", pack_instance, "named instance or JSON file")->required();
    pack_cmd->add_option("--alg", pack_alg, "best-fit | first-fit | next-fit");
    pack_cmd->add_option("--tie", pack_tie, "Best Fit tie rule: earliest | latest");
    pack_cmd->add_option("--perm-file", pack_perm_file, "JSON array with the arrival order");
    auto* shuffle_opt =
        pack_cmd->add_option("--shuffle-seed", pack_shuffle_seed, "shuffle arrival order with this seed");

    // expect
    auto* expect_cmd = app.add_subcommand("expect", "E[ALG(I^sigma)] by enumeration or sampling");
    expect_cmd->fallthrough();
    std::string exp_instance, exp_alg = "best-fit", exp_mode = "exact", exp_tie = "earliest";
    uint64_t exp_samples = 1000000, exp_seed = 1;
    bool exp_csv = false;
    expect_cmd->add_option("--instance", exp_instance, "named instance or JSON file")->required();
    expect_cmd->add_option("--alg", exp_alg, "best-fit | first-fit | next-fit");
    expect_cmd->add_option("--mode", exp_mode, "exact | mc");
    expect_cmd->add_option("--samples", exp_samples, "Monte Carlo samples");
    expect_cmd->add_option("--seed", exp_seed, "Monte Carlo seed");
    expect_cmd->add_option("--tie", exp_tie, "Best Fit tie rule: earliest | latest");
    expect_cmd->add_flag("--csv", exp_csv, "emit the bin-count distribution as CSV");

    // markov
    auto* markov_cmd = app.add_subcommand("markov", "the nine-state chain and its lower bound");
    markov_cmd->fallthrough();
    std::string mk_p = "3/5", mk_sweep;
    int64_t mk_simulate = 0;
    uint64_t mk_seed = 1;
    bool mk_csv = false;
    markov_cmd->add_option("--p", mk_p, "probability of the 1/4 item (rational)");
    markov_cmd->add_option("--sweep", mk_sweep, "CSV sweep start:end:step");
    markov_cmd->add_option("--simulate", mk_simulate, "cross-check against n i.i.d. samples");
    markov_cmd->add_option("--seed", mk_seed, "simulation seed");
    markov_cmd->add_flag("--csv", mk_csv, "emit the stationary distribution as CSV");

    // reproduce
    auto* rep_cmd = app.add_subcommand("reproduce", "run a named experiment and assert its targets");
    rep_cmd->fallthrough();
    std::string rep_name;
    bool rep_all = false, rep_list = false;
    rep_cmd->add_option("name", rep_name, "experiment name");
    rep_cmd->add_flag("--all", rep_all, "run every experiment");
    rep_cmd->add_flag("--list", rep_list, "list experiment names");

    // fuzz
    auto* fuzz_cmd = app.add_subcommand("fuzz", "randomized property checks");
    fuzz_cmd->fallthrough();
    std::string fz_target = "monotonicity", fz_witness;
    uint64_t fz_trials = 10000, fz_seed = 1;
    int fz_kmax = 4;
    bool fz_small = false;
    fuzz_cmd->add_option("--target", fz_target, "monotonicity | lemma3 | claims | relation");
    fuzz_cmd->add_option("--trials", fz_trials, "number of trials");
    fuzz_cmd->add_option("--seed", fz_seed, "base seed");
    fuzz_cmd->add_option("--k-max", fz_kmax, "max pairs / half the max item count");
    fuzz_cmd->add_flag("--allow-small-items", fz_small,
                       "draw sizes from (1/4, 1] (expect monotonicity violations)");
    fuzz_cmd->add_option("--witness", fz_witness, "write violation witnesses to this JSON file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (pack_cmd->parsed())
            return run_pack(pack_instance, pack_alg, pack_tie, pack_perm_file, pack_shuffle_seed,
                            shuffle_opt->count() > 0);
        if (expect_cmd->parsed())
            return run_expect(exp_instance, exp_alg, exp_mode, exp_samples, exp_seed, exp_tie,
                              threads, exp_csv);
        if (markov_cmd->parsed()) return run_markov_cmd(mk_p, mk_sweep, mk_simulate, mk_seed, mk_csv);
        if (rep_cmd->parsed()) return run_reproduce(rep_name, rep_all, rep_list, threads);
        if (fuzz_cmd->parsed())
            return run_fuzz(fz_target, fz_trials, fz_seed, fz_kmax, fz_small, fz_witness, threads);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
