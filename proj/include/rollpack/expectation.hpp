#ifndef ROLLPACK_EXPECTATION_HPP
#define ROLLPACK_EXPECTATION_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rollpack/opt.hpp"
#include "rollpack/packing.hpp"
#include "rollpack/rng.hpp"

namespace rollpack {

enum class Mode { ExactEnumeration, MonteCarlo, IidExact, IidSimulated };

std::string mode_name(Mode mode);

// Raised when an exact enumeration would exceed its cap; callers are
// expected to fall back to Monte Carlo estimation.
struct EnumerationCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExpectationReport {
    std::string instance_label;
    Alg algorithm = Alg::BestFit;
    TieRule tie = TieRule::EarliestOpened;
    Mode mode = Mode::ExactEnumeration;

    // exact modes (rationals are exact; distribution sums to 1 exactly)
    Rat expectation;
    Rat opt;  // OPT(I), or E[OPT] in the i.i.d. model
    Rat ratio;
    std::map<int, Rat> bin_count_distribution;
    Int orderings_total;  // distinct orderings enumerated

    // sampled modes
    uint64_t samples = 0;
    uint64_t seed = 0;
    double estimate = 0.0;
    double stderr_mean = 0.0;
    double ci95_low = 0.0;
    double ci95_high = 0.0;

    int threads = 1;
};

struct EnumerationCaps {
    Int max_orderings = 10'000'000;
    int opt_cap = 20;
};

// Exact E[ALG(I^sigma)] over uniformly random arrival orders. Orderings are
// enumerated per distinct size sequence (identical sizes are interchangeable
// for every implemented heuristic under a fixed tie rule, so the dedup is
// lossless) and weighted equally.
ExpectationReport exact_expectation(const Instance& instance, Alg alg,
                                    TieRule tie = TieRule::EarliestOpened, int threads = 0,
                                    const EnumerationCaps& caps = {});

// Seeded Monte Carlo estimate with sample standard error and a normal 95% CI.
// Deterministic per (seed, samples) for any thread count: samples are cut
// into fixed shards with derived seeds and integer partials.
ExpectationReport monte_carlo_expectation(const Instance& instance, Alg alg, uint64_t samples,
                                          uint64_t seed, TieRule tie = TieRule::EarliestOpened,
                                          int threads = 0);

struct DiscreteDistribution {
    // (size, probability); probabilities are exact, positive, and sum to 1
    std::vector<std::pair<Rat, Rat>> support;

    void validate() const;  // throws std::invalid_argument
};

// The two-point distribution used by the asymptotic lower bound:
// 1/4 with probability p, 1/3 with probability 1-p.
DiscreteDistribution quarter_third_distribution(const Rat& p);

// Exact sampler of support indices: probabilities share a common integer
// denominator, so one uniform draw from [0, denom) selects an index without
// bias. The same (distribution, seed) always yields the same stream, which
// the Markov-chain cross-check relies on.
class IidSampler {
public:
    IidSampler(const DiscreteDistribution& dist, uint64_t seed);
    int next();

private:
    std::vector<uint64_t> cumulative_;
    uint64_t denom_;
    SplitMix64 rng_;
};

// Exact E[ALG(I_n(F))] and E[OPT(I_n(F))] by enumerating outcomes grouped
// into equal-probability classes (one multiset representative each).
ExpectationReport iid_exact_expectation(const DiscreteDistribution& dist, int n, Alg alg,
                                        TieRule tie = TieRule::EarliestOpened, int threads = 0,
                                        const EnumerationCaps& caps = {});

struct RepresentativeResult {
    Instance best;        // multiset maximizing E[ALG(H^sigma)] / OPT(H)
    Rat best_ratio;       // that maximum
    Rat iid_ratio;        // E[ALG(I_n(F))] / E[OPT(I_n(F))]
    bool bridge_holds;    // best_ratio >= iid_ratio (exact comparison)
};

// The i.i.d.-to-random-order bridge: some representative list achieves at
// least the i.i.d. ratio.
RepresentativeResult best_representative(const DiscreteDistribution& dist, int n, Alg alg,
                                         TieRule tie = TieRule::EarliestOpened, int threads = 0,
                                         const EnumerationCaps& caps = {});

struct IidSimResult {
    long long bins_used = 0;
    // bins of a feasible packing built by filling each bin with
    // floor(1/s) copies of size s; an upper bound on OPT of the sample
    long long opt_estimate = 0;
    long long n = 0;
};

// Samples n items i.i.d. from the distribution with a seeded generator and
// runs the online algorithm (load-ordered bin index, O(n log n)).
IidSimResult iid_simulate(const DiscreteDistribution& dist, long long n, uint64_t seed,
                          Alg alg = Alg::BestFit);

}  // namespace rollpack

#endif
