#ifndef ROLLPACK_MARKOV_HPP
#define ROLLPACK_MARKOV_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rollpack/rational.hpp"

namespace rollpack {

// The nine reachable open-bin configurations of Best Fit under the
// two-point distribution {1/4 w.p. p, 1/3 w.p. q}. Bins with load > 3/4
// cannot receive either item and count as closed.
inline constexpr int kMarkovStates = 9;

// State labels A..I; open-bin loads per state:
// A: none, B: 1/4, C: 1/3, D: 2/4, E: 7/12, F: 2/3, G: 3/4,
// H: 3/4 and 1/3, I: 3/4 and 2/3.
const std::array<std::vector<Rat>, kMarkovStates>& markov_state_loads();

char markov_state_name(int state);  // 'A'..'I'
int markov_state_index(char name);

struct Transition {
    int from;
    int to;
    Rat probability;
    bool opens_bin;

    bool operator==(const Transition& other) const = default;
};

struct MarkovModel {
    Rat p;
    Rat q;  // 1 - p
    std::vector<Transition> transitions;  // sorted by (from, to)

    // row-stochastic matrix view
    std::array<std::array<Rat, kMarkovStates>, kMarkovStates> matrix() const;
};

// Derives the transitions by running the Best Fit rule on each state's
// open-bin configuration for both possible arrivals. Throws unless 0<p<1.
MarkovModel build_chain(const Rat& p);

// The transition diagram as published (16 edges): the derivation above is
// asserted against this list edge-for-edge in the test suite.
std::vector<Transition> reference_transitions(const Rat& p);

struct StationaryVector {
    std::array<Rat, kMarkovStates> omega;
    Rat theta;   // p^3 / (1 - q^3)
    Rat lambda;  // theta*q*(3 - q^2) + theta + 3
};

// Closed form omega = (1, p, q+pq*theta, p^2, 2pq+p^2 q*theta,
// q^2+2pq^2*theta, theta, q*theta, q^2*theta) / lambda. Verified against
// the balance equations and the normalization exactly before returning.
StationaryVector stationary_closed_form(const Rat& p);

// Residuals of the ten balance/normalization equations; all zero for the
// true stationary vector.
std::array<Rat, kMarkovStates + 1> balance_residuals(const MarkovModel& model,
                                                     const std::array<Rat, kMarkovStates>& omega);

// Floating-point solve of (P^T - I) omega = 0 with sum omega = 1.
std::array<double, kMarkovStates> stationary_numeric(const MarkovModel& model);

// Asymptotic bins opened per item: omega_A + q * omega_G.
Rat bf_rate(const Rat& p);

// Asymptotic optimal bins per item, upper bound: 1/3 - p/12.
Rat opt_rate_upper(const Rat& p);

// bf_rate / opt_rate_upper; exceeds 11/10 at p = 3/5.
Rat iid_ratio_lower_bound(const Rat& p);

struct CrosscheckReport {
    long long n = 0;
    uint64_t seed = 0;
    Rat p;
    bool states_closed = true;      // every round lands in one of the 9 states
    bool bins_tally_exact = true;   // bins opened == opening-transition count
    bool matches_simulation = true; // equals iid_simulate on the same stream
    long long bins_opened = 0;
    std::array<long long, kMarkovStates> visits{};
    double max_frequency_deviation = 0.0;  // vs closed-form omega
    double bins_per_item = 0.0;
    double rate_relative_error = 0.0;      // vs bf_rate(p)
};

// Runs Best Fit on n i.i.d. samples, tracking which chain state the open-bin
// configuration occupies after each arrival.
CrosscheckReport simulate_and_crosscheck(const Rat& p, long long n, uint64_t seed);

}  // namespace rollpack

#endif
