#include "rollpack/experiments.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rollpack/enumeration.hpp"
#include "rollpack/expectation.hpp"
#include "rollpack/instances.hpp"
#include "rollpack/markov.hpp"
#include "rollpack/opt.hpp"
#include "rollpack/rng.hpp"
#include "rollpack/structure.hpp"

namespace rollpack {

namespace {

constexpr uint64_t kSeed = 20240811;

// Exhaustive 720-permutation count of 4-bin outcomes for the three-pair
// lower-bound instance; the published case analysis guarantees >= 440.
constexpr long kProp3FourBinPermutations = 440;

using Clock = std::chrono::steady_clock;

struct Harness {
    ExperimentReport report;

    void check(const std::string& name, bool pass, const std::string& detail = "") {
        report.checks.push_back({name, pass, detail});
    }

    template <class T, class U>
    void check_eq(const std::string& name, const T& actual, const U& expected) {
        std::ostringstream os;
        os << "expected " << expected << ", got " << actual;
        check(name, actual == expected, os.str());
    }
};

std::string rat_detail(const Rat& r) {
    return to_string(r) + " (~" + std::to_string(to_double(r)) + ")";
}

// 1. The two seven-item lists: inflating one item drops Best Fit from 4 to 3.
ExperimentReport run_monotonicity_ce(int) {
    Harness h;
    h.report.budget_seconds = 0.001;
    auto [before, after] = counterexample_monotonicity();
    const Permutation id = identity_permutation(before.size());

    // warm-up, then time the two packings alone
    bins_used(before.items, id, Alg::BestFit);
    const auto start = Clock::now();
    const int bins_before = bins_used(before.items, id, Alg::BestFit);
    const int bins_after = bins_used(after.items, id, Alg::BestFit);
    h.report.seconds = std::chrono::duration<double>(Clock::now() - start).count();

    h.check_eq("bf-before", bins_before, 4);
    h.check_eq("bf-after", bins_after, 3);
    h.check_eq("opt-before", opt_exact(before).bin_count, 3);
    const MonotonicityResult mono = monotonicity_check(before, after);
    h.check("non-monotone-witness", !mono.holds, "bins dropped from 4 to 3");
    return h.report;
}

// 2. Exact enumeration of the five-item instance: E[BF]/OPT = 13/10.
ExperimentReport run_abs_lb(int threads) {
    Harness h;
    h.report.budget_seconds = 1.0;
    const auto start = Clock::now();
    const Instance instance = abs_lb_instance(rat(1, 1000));
    const ExpectationReport report = exact_expectation(instance, Alg::BestFit,
                                                       TieRule::EarliestOpened, threads);
    h.report.seconds = std::chrono::duration<double>(Clock::now() - start).count();

    h.check_eq("opt", to_string(report.opt), "2");
    h.check("expectation-13-5", report.expectation == rat(13, 5), rat_detail(report.expectation));
    h.check("ratio-13-10", report.ratio == rat(13, 10), rat_detail(report.ratio));
    return h.report;
}

// 3. Three-pair instance: never more than 4 bins, >= 440 of 720 orders use 4.
ExperimentReport run_large_lb(int threads) {
    Harness h;
    h.report.budget_seconds = 1.0;
    const auto start = Clock::now();
    const LmInstance lm = large_lb_instance(3, rat(1, 100));
    const ExpectationReport report = exact_expectation(lm.instance, Alg::BestFit,
                                                       TieRule::EarliestOpened, threads);
    h.report.seconds = std::chrono::duration<double>(Clock::now() - start).count();

    h.check_eq("orderings", report.orderings_total.get_str(), "720");
    bool support_ok = true;
    for (const auto& [bins, prob] : report.bin_count_distribution)
        if (bins != 3 && bins != 4) support_ok = false;
    h.check("bins-at-most-4", support_ok, "support of the bin-count distribution");

    Rat prob4 = 0;
    if (auto it = report.bin_count_distribution.find(4); it != report.bin_count_distribution.end())
        prob4 = it->second;
    const Rat count4 = Rat(prob4 * 720);
    h.check("four-bin-count-at-least-440", count4 >= 440, "count " + to_string(count4));
    h.check_eq("four-bin-count-frozen", to_string(count4), std::to_string(kProp3FourBinPermutations));
    h.check("ratio-at-least-65-54", report.ratio >= rat(65, 54), rat_detail(report.ratio));
    h.check("ratio-above-6-5", report.ratio > rat(6, 5), rat_detail(report.ratio));
    return h.report;
}

// 4. E[BF] <= (5k+1)/4 with E[X] = k/2 and odd-parity probability 1/2;
//    exhaustive for k <= 4, Monte Carlo for k in 5..8.
ExperimentReport run_theorem1(int threads) {
    Harness h;
    h.report.budget_seconds = 120.0;
    const auto start = Clock::now();

    long exact_failures = 0;
    long exact_checked = 0;
    for (int k = 1; k <= 4; ++k) {
        std::vector<LmInstance> instances;
        instances.push_back(large_lb_instance(k, rat(1, 100)));
        for (int i = 0; i < 25; ++i)
            instances.push_back(random_lm_instance(k, kSeed + 100 * k + i));
        for (const LmInstance& lm : instances) {
            const Theorem1Result r = theorem1_check(lm, TieRule::EarliestOpened, threads);
            ++exact_checked;
            if (!(r.bound_holds && r.mean_matches && r.parity_matches)) ++exact_failures;
        }
    }
    h.check("exact-bound-and-moments", exact_failures == 0,
            std::to_string(exact_checked) + " instances, " + std::to_string(exact_failures) +
                " failures");

    long mc_failures = 0;
    for (int k = 5; k <= 8; ++k) {
        for (const LmInstance& lm :
             {large_lb_instance(k, rat(1, 100)), random_lm_instance(k, kSeed + 7000 + k)}) {
            const ExpectationReport mc = monte_carlo_expectation(lm.instance, Alg::BestFit, 100000,
                                                                 kSeed + k, TieRule::EarliestOpened,
                                                                 threads);
            const double bound = (5.0 * k + 1.0) / 4.0;
            if (!(mc.estimate <= bound + 4.0 * mc.stderr_mean)) ++mc_failures;
        }
    }
    h.check("monte-carlo-bound-k5-8", mc_failures == 0, std::to_string(mc_failures) + " failures");

    h.report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return h.report;
}

// 5. Two-pair case: exactly 16 of 24 orders reach the optimum and the rest
//    use 3 bins (ratio 7/6); three-pair exact ratio stays <= 31/24.
ExperimentReport run_prop2(int threads) {
    Harness h;
    h.report.budget_seconds = 1.0;
    const auto start = Clock::now();

    const LmInstance k2 = large_lb_instance(2, rat(1, 100));
    const ExpectationReport r2 = exact_expectation(k2.instance, Alg::BestFit,
                                                   TieRule::EarliestOpened, threads);
    Rat count2 = 0, count3 = 0;
    bool support_ok = true;
    for (const auto& [bins, prob] : r2.bin_count_distribution) {
        if (bins == 2) count2 = Rat(prob * 24);
        else if (bins == 3) count3 = Rat(prob * 24);
        else support_ok = false;
    }
    h.check("k2-support", support_ok, "only 2- and 3-bin outcomes");
    h.check_eq("k2-two-bin-orders", to_string(count2), "16");
    h.check_eq("k2-three-bin-orders", to_string(count3), "8");
    h.check("k2-ratio-7-6", r2.ratio == rat(7, 6), rat_detail(r2.ratio));

    const LmInstance k3 = large_lb_instance(3, rat(1, 100));
    const ExpectationReport r3 = exact_expectation(k3.instance, Alg::BestFit,
                                                   TieRule::EarliestOpened, threads);
    h.check("k3-ratio-at-most-31-24", r3.ratio <= rat(31, 24), rat_detail(r3.ratio));

    h.report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return h.report;
}

// 6. Y >= X on every tested permutation, under both tie rules.
ExperimentReport run_lemma3(int threads) {
    Harness h;
    h.report.budget_seconds = 300.0;
    const auto start = Clock::now();
    const TieRule rules[2] = {TieRule::EarliestOpened, TieRule::LatestOpened};

    long exhaustive_failures = 0;
    long exhaustive_checked = 0;
    for (int k = 1; k <= 3; ++k) {
        std::vector<LmInstance> instances;
        instances.push_back(large_lb_instance(k, rat(1, 100)));
        instances.push_back(random_lm_instance(k, kSeed + 300 + k));
        instances.push_back(random_lm_instance(k, kSeed + 600 + k));
        for (const LmInstance& lm : instances) {
            Permutation perm = identity_permutation(2 * k);
            do {
                for (TieRule tie : rules) {
                    ++exhaustive_checked;
                    if (!verify_lemma3(lm, perm, tie).holds) ++exhaustive_failures;
                }
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }
    h.check("exhaustive-k1-3", exhaustive_failures == 0,
            std::to_string(exhaustive_checked) + " permutation checks");

    // sampled orders, >= 10^5 checks per k
    long sampled_failures = 0;
    long sampled_checked = 0;
    for (int k = 4; k <= 8; ++k) {
        for (const LmInstance& lm :
             {large_lb_instance(k, rat(1, 100)), random_lm_instance(k, kSeed + 900 + k)}) {
            constexpr long kSamples = 25000;
            long local_failures = 0;
#pragma omp parallel for schedule(static) num_threads(resolve_threads(threads)) \
    reduction(+ : local_failures)
            for (long i = 0; i < kSamples; ++i) {
                SplitMix64 rng(SplitMix64::derive(kSeed + k, static_cast<uint64_t>(i)));
                Permutation perm = identity_permutation(2 * k);
                fisher_yates(perm, rng);
                for (TieRule tie : rules)
                    if (!verify_lemma3(lm, perm, tie).holds) ++local_failures;
            }
            sampled_failures += local_failures;
            sampled_checked += 2 * kSamples;
        }
    }
    h.check("sampled-k4-8", sampled_failures == 0,
            std::to_string(sampled_checked) + " permutation checks");

    h.report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return h.report;
}

// 7. Claims over the matching graph at every round of 1000 random runs.
ExperimentReport run_claims(int threads) {
    Harness h;
    h.report.budget_seconds = 120.0;
    const auto start = Clock::now();

    long claim1_failures = 0, claim2_failures = 0, rounds_checked = 0;
    constexpr int kRuns = 1000;
#pragma omp parallel for schedule(dynamic, 16) num_threads(resolve_threads(threads)) \
    reduction(+ : claim1_failures, claim2_failures, rounds_checked)
    for (int run = 0; run < kRuns; ++run) {
        const int k = 1 + run % 5;
        const LmInstance lm = random_lm_instance(k, kSeed + 4000 + run);
        SplitMix64 rng(SplitMix64::derive(kSeed + 5000, static_cast<uint64_t>(run)));
        Permutation perm = identity_permutation(2 * k);
        fisher_yates(perm, rng);
        for (int round = 1; round <= 2 * k; ++round) {
            const MatchGraph graph = build_match_graph(lm, perm, round);
            if (!verify_claim1(graph).holds) ++claim1_failures;
            if (!verify_claim2(graph, lm.instance).holds) ++claim2_failures;
            ++rounds_checked;
        }
    }
    h.check("claim1-roundwise", claim1_failures == 0, std::to_string(rounds_checked) + " rounds");
    h.check("claim2-roundwise", claim2_failures == 0, std::to_string(rounds_checked) + " rounds");

    h.report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return h.report;
}

// 8. Chain structure, closed form on the percent grid, numeric agreement,
//    and the exact ratio at p = 3/5.
ExperimentReport run_markov(int) {
    Harness h;
    h.report.budget_seconds = 5.0;
    const auto start = Clock::now();

    bool transitions_match = true;
    bool balance_ok = true;
    double max_numeric_gap = 0.0;
    for (int percent = 1; percent <= 99; ++percent) {
        const Rat p = rat(percent, 100);
        const MarkovModel model = build_chain(p);
        if (model.transitions != reference_transitions(p)) transitions_match = false;
        const StationaryVector sv = stationary_closed_form(p);
        for (const Rat& residual : balance_residuals(model, sv.omega))
            if (residual != 0) balance_ok = false;
        const auto numeric = stationary_numeric(model);
        for (int s = 0; s < kMarkovStates; ++s)
            max_numeric_gap =
                std::max(max_numeric_gap, std::abs(numeric[s] - to_double(sv.omega[s])));
    }
    h.check("transitions-match-figure", transitions_match, "16 edges with open flags, all p");
    h.check("balance-equations-exact", balance_ok, "(Q1)-(Q10) on the percent grid");
    h.check("numeric-agrees-1e-12", max_numeric_gap <= 1e-12,
            "max gap " + std::to_string(max_numeric_gap));

    const Rat ratio = iid_ratio_lower_bound(rat(3, 5));
    h.check("ratio-exceeds-11-10", ratio > rat(11, 10), rat_detail(ratio));

    h.report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return h.report;
}

// 9. One million i.i.d. samples against the chain.
ExperimentReport run_markov_crosscheck(int) {
    Harness h;
    h.report.budget_seconds = 30.0;
    const auto start = Clock::now();
    const CrosscheckReport report = simulate_and_crosscheck(rat(3, 5), 1000000, kSeed);
    h.report.seconds = std::chrono::duration<double>(Clock::now() - start).count();

    h.check("states-closed", report.states_closed, "all rounds in states A..I");
    h.check("bins-tally-exact", report.bins_tally_exact, "opens only on A->B, A->C, G->H");
    h.check("matches-simulation", report.matches_simulation,
            std::to_string(report.bins_opened) + " bins");
    h.check("state-frequencies-5e-3", report.max_frequency_deviation < 5e-3,
            "max deviation " + std::to_string(report.max_frequency_deviation));
    h.check("rate-within-1-percent", report.rate_relative_error < 0.01,
            "relative error " + std::to_string(report.rate_relative_error));
    return h.report;
}

// 10. Representative lists dominate the i.i.d. ratio for n = 2..8.
ExperimentReport run_lemma5(int threads) {
    Harness h;
    h.report.budget_seconds = 120.0;
    const auto start = Clock::now();
    const DiscreteDistribution dist = quarter_third_distribution(rat(3, 5));
    bool all_hold = true;
    std::string detail;
    for (int n = 2; n <= 8; ++n) {
        const RepresentativeResult r = best_representative(dist, n, Alg::BestFit,
                                                           TieRule::EarliestOpened, threads);
        if (!r.bridge_holds) all_hold = false;
        detail += (detail.empty() ? "n=" : ", n=") + std::to_string(n) + ": " +
                  to_string(r.best_ratio) + " >= " + to_string(r.iid_ratio);
    }
    h.check("bridge-n-2-8", all_hold, detail);
    h.report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return h.report;
}

// 11. Monotonicity fuzz: clean on >1/3 instances, violating once items may
//     fall into (1/4, 1/3].
ExperimentReport run_prop1(int threads) {
    Harness h;
    h.report.budget_seconds = 300.0;
    const auto start = Clock::now();

    FuzzOptions strict;
    strict.threads = threads;
    const MonotonicityFuzzReport clean = monotonicity_fuzz(10000, kSeed, strict);
    h.check("no-violations-above-third", clean.violations.empty(),
            std::to_string(clean.packings_checked) + " packings checked");
    h.check("no-relation-violations", clean.relation_violations.empty(),
            std::to_string(clean.relation_rounds_checked) + " rounds classified");

    FuzzOptions loose;
    loose.threads = threads;
    loose.allow_small_items = true;
    const MonotonicityFuzzReport dirty = monotonicity_fuzz(10000, kSeed + 1, loose);
    std::string witness;
    if (!dirty.violations.empty()) {
        const FuzzViolation& v = dirty.violations.front();
        witness = "witness n=" + std::to_string(v.base.size()) + ", bins " +
                  std::to_string(v.bins_base) + " -> " + std::to_string(v.bins_inflated);
    }
    h.check("small-items-violate", !dirty.violations.empty(), witness);

    h.report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return h.report;
}

}  // namespace

std::vector<std::string> experiment_names() {
    return {"monotonicity-ce", "abs-lb-13-10",     "large-lb-6-5", "theorem1",
            "prop2-absolute",  "lemma3-exhaustive", "claims-roundwise",
            "markov-11-10",    "markov-crosscheck", "lemma5-bridge",
            "prop1-monotonicity"};
}

ExperimentReport run_experiment(const std::string& name, int threads) {
    ExperimentReport report;
    if (name == "monotonicity-ce") report = run_monotonicity_ce(threads);
    else if (name == "abs-lb-13-10") report = run_abs_lb(threads);
    else if (name == "large-lb-6-5") report = run_large_lb(threads);
    else if (name == "theorem1") report = run_theorem1(threads);
    else if (name == "prop2-absolute") report = run_prop2(threads);
    else if (name == "lemma3-exhaustive") report = run_lemma3(threads);
    else if (name == "claims-roundwise") report = run_claims(threads);
    else if (name == "markov-11-10") report = run_markov(threads);
    else if (name == "markov-crosscheck") report = run_markov_crosscheck(threads);
    else if (name == "lemma5-bridge") report = run_lemma5(threads);
    else if (name == "prop1-monotonicity") report = run_prop1(threads);
    else {
        std::string known;
        for (const std::string& n : experiment_names()) known += (known.empty() ? "" : ", ") + n;
        throw std::invalid_argument("unknown experiment \"" + name + "\" (known: " + known + ")");
    }
    report.experiment = name;
    return report;
}

}  // namespace rollpack
