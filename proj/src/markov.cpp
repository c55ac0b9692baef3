#include "rollpack/markov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rollpack/expectation.hpp"

namespace rollpack {

namespace {

const Rat kQuarter = rat(1, 4);
const Rat kThird = rat(1, 3);
const Rat kClosed = rat(3, 4);  // load > 3/4 cannot take either item

std::array<std::vector<Rat>, kMarkovStates> make_state_loads() {
    return {
        std::vector<Rat>{},                      // A
        std::vector<Rat>{rat(1, 4)},             // B
        std::vector<Rat>{rat(1, 3)},             // C
        std::vector<Rat>{rat(1, 2)},             // D: 2/4
        std::vector<Rat>{rat(7, 12)},            // E
        std::vector<Rat>{rat(2, 3)},             // F
        std::vector<Rat>{rat(3, 4)},             // G
        std::vector<Rat>{rat(1, 3), rat(3, 4)},  // H (sorted ascending)
        std::vector<Rat>{rat(2, 3), rat(3, 4)},  // I
    };
}

// Best Fit over an open-bin load multiset; returns the successor multiset
// (loads > 3/4 dropped as closed) and whether a new bin was opened.
std::pair<std::vector<Rat>, bool> bf_successor(std::vector<Rat> loads, const Rat& item) {
    int chosen = -1;
    for (int i = 0; i < static_cast<int>(loads.size()); ++i) {
        if (!(loads[i] + item <= 1)) continue;
        if (chosen < 0 || loads[i] > loads[chosen]) chosen = i;
    }
    bool opened = false;
    if (chosen < 0) {
        loads.push_back(item);
        opened = true;
    } else {
        loads[chosen] += item;
    }
    std::vector<Rat> open;
    for (const Rat& load : loads)
        if (!(load > kClosed)) open.push_back(load);
    std::sort(open.begin(), open.end());
    return {std::move(open), opened};
}

int state_of(const std::vector<Rat>& open_loads) {
    const auto& table = markov_state_loads();
    for (int s = 0; s < kMarkovStates; ++s)
        if (table[s] == open_loads) return s;
    return -1;
}

void sort_transitions(std::vector<Transition>& edges) {
    std::sort(edges.begin(), edges.end(), [](const Transition& a, const Transition& b) {
        return a.from != b.from ? a.from < b.from : a.to < b.to;
    });
}

}  // namespace

const std::array<std::vector<Rat>, kMarkovStates>& markov_state_loads() {
    static const auto table = make_state_loads();
    return table;
}

char markov_state_name(int state) {
    if (state < 0 || state >= kMarkovStates) throw std::out_of_range("state index");
    return static_cast<char>('A' + state);
}

int markov_state_index(char name) {
    if (name < 'A' || name > 'I') throw std::out_of_range("state name");
    return name - 'A';
}

std::array<std::array<Rat, kMarkovStates>, kMarkovStates> MarkovModel::matrix() const {
    std::array<std::array<Rat, kMarkovStates>, kMarkovStates> m{};
    for (const Transition& t : transitions) m[t.from][t.to] += t.probability;
    return m;
}

MarkovModel build_chain(const Rat& p) {
    if (!(p > 0 && p < 1)) throw std::invalid_argument("p must lie in (0,1)");
    MarkovModel model;
    model.p = p;
    model.q = 1 - p;

    const auto& table = markov_state_loads();
    for (int s = 0; s < kMarkovStates; ++s) {
        for (const auto& [item, prob] :
             {std::pair<Rat, Rat>{kQuarter, model.p}, {kThird, model.q}}) {
            auto [next_loads, opened] = bf_successor(table[s], item);
            const int next = state_of(next_loads);
            if (next < 0)
                throw std::logic_error("Best Fit left the nine-state configuration space");
            // merge the two arrivals when they lead to the same state
            bool merged = false;
            for (Transition& t : model.transitions) {
                if (t.from == s && t.to == next && t.opens_bin == opened) {
                    t.probability += prob;
                    merged = true;
                    break;
                }
            }
            if (!merged) model.transitions.push_back({s, next, prob, opened});
        }
    }
    sort_transitions(model.transitions);

    // sanity: rows sum to 1
    std::array<Rat, kMarkovStates> row_sum{};
    for (const Transition& t : model.transitions) row_sum[t.from] += t.probability;
    for (int s = 0; s < kMarkovStates; ++s)
        if (row_sum[s] != 1) throw std::logic_error("transition probabilities do not sum to 1");
    return model;
}

std::vector<Transition> reference_transitions(const Rat& p) {
    const Rat q = 1 - p;
    const int A = 0, B = 1, C = 2, D = 3, E = 4, F = 5, G = 6, H = 7, I = 8;
    std::vector<Transition> edges = {
        {A, B, p, true},  {A, C, q, true},  {B, D, p, false}, {B, E, q, false},
        {C, E, p, false}, {C, F, q, false}, {D, G, p, false}, {D, A, q, false},
        {E, A, Rat(1), false}, {F, A, Rat(1), false}, {G, A, p, false}, {G, H, q, true},
        {H, C, p, false}, {H, I, q, false}, {I, F, p, false}, {I, G, q, false},
    };
    sort_transitions(edges);
    return edges;
}

StationaryVector stationary_closed_form(const Rat& p) {
    if (!(p > 0 && p < 1)) throw std::invalid_argument("p must lie in (0,1)");
    const Rat q = 1 - p;

    StationaryVector sv;
    sv.theta = Rat(p * p * p) / Rat(1 - q * q * q);
    sv.lambda = Rat(sv.theta * q * (3 - q * q)) + sv.theta + 3;

    const Rat& th = sv.theta;
    std::array<Rat, kMarkovStates> raw = {
        Rat(1),
        p,
        Rat(q + p * q * th),
        Rat(p * p),
        Rat(2 * p * q + p * p * q * th),
        Rat(q * q + 2 * p * q * q * th),
        th,
        Rat(q * th),
        Rat(q * q * th),
    };
    for (int s = 0; s < kMarkovStates; ++s) sv.omega[s] = raw[s] / sv.lambda;

    // verified exactly before returning: omega P = omega and sum = 1
    const MarkovModel model = build_chain(p);
    for (const Rat& residual : balance_residuals(model, sv.omega))
        if (residual != 0) throw std::logic_error("closed form does not satisfy the balance equations");
    return sv;
}

std::array<Rat, kMarkovStates + 1> balance_residuals(const MarkovModel& model,
                                                     const std::array<Rat, kMarkovStates>& omega) {
    const auto matrix = model.matrix();
    std::array<Rat, kMarkovStates + 1> residuals{};
    for (int j = 0; j < kMarkovStates; ++j) {
        Rat incoming = 0;
        for (int i = 0; i < kMarkovStates; ++i) incoming += omega[i] * matrix[i][j];
        residuals[j] = incoming - omega[j];
    }
    Rat total = 0;
    for (const Rat& w : omega) total += w;
    residuals[kMarkovStates] = total - 1;
    return residuals;
}

std::array<double, kMarkovStates> stationary_numeric(const MarkovModel& model) {
    // (P^T - I) omega = 0 with the last equation replaced by sum omega = 1.
    constexpr int n = kMarkovStates;
    const auto matrix = model.matrix();
    std::array<std::array<double, n + 1>, n> a{};
    for (int j = 0; j < n - 1; ++j) {
        for (int i = 0; i < n; ++i) a[j][i] = to_double(matrix[i][j]);
        a[j][j] -= 1.0;
        a[j][n] = 0.0;
    }
    for (int i = 0; i < n; ++i) a[n - 1][i] = 1.0;
    a[n - 1][n] = 1.0;

    // Gaussian elimination with partial pivoting
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int row = col + 1; row < n; ++row)
            if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
        if (a[pivot][col] == 0.0) throw std::runtime_error("singular stationary system");
        std::swap(a[col], a[pivot]);
        for (int row = 0; row < n; ++row) {
            if (row == col) continue;
            const double factor = a[row][col] / a[col][col];
            for (int k = col; k <= n; ++k) a[row][k] -= factor * a[col][k];
        }
    }
    std::array<double, n> omega{};
    for (int i = 0; i < n; ++i) omega[i] = a[i][n] / a[i][i];
    return omega;
}

Rat bf_rate(const Rat& p) {
    const StationaryVector sv = stationary_closed_form(p);
    const Rat q = 1 - p;
    return Rat(sv.omega[0] + q * sv.omega[6]);
}

Rat opt_rate_upper(const Rat& p) {
    if (!(p > 0 && p < 1)) throw std::invalid_argument("p must lie in (0,1)");
    return Rat(kThird - p / 12);
}

Rat iid_ratio_lower_bound(const Rat& p) {
    return Rat(bf_rate(p) / opt_rate_upper(p));
}

CrosscheckReport simulate_and_crosscheck(const Rat& p, long long n, uint64_t seed) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const DiscreteDistribution dist = quarter_third_distribution(p);

    CrosscheckReport report;
    report.n = n;
    report.seed = seed;
    report.p = p;

    // Track the chain state alongside an independent Best Fit run. Loads are
    // twelfths (items 3/12 and 4/12), kept as small integers.
    const auto& table = markov_state_loads();
    std::array<std::vector<int>, kMarkovStates> state_units;
    for (int s = 0; s < kMarkovStates; ++s)
        for (const Rat& load : table[s])
            state_units[s].push_back(static_cast<int>(Int(load.get_num() * (12 / load.get_den().get_si())).get_si()));

    auto find_state = [&](const std::vector<int>& open) {
        for (int s = 0; s < kMarkovStates; ++s)
            if (state_units[s] == open) return s;
        return -1;
    };

    IidSampler sampler(dist, seed);
    std::vector<int> open;  // open-bin loads in twelfths, ascending
    long long opening_transitions = 0;
    int state = 0;  // A
    for (long long t = 0; t < n; ++t) {
        // support[0] = 1/4 -> 3 twelfths, support[1] = 1/3 -> 4 twelfths
        const int units = sampler.next() == 0 ? 3 : 4;
        int chosen = -1;
        for (int i = 0; i < static_cast<int>(open.size()); ++i) {
            if (open[i] + units > 12) continue;
            if (chosen < 0 || open[i] > open[chosen]) chosen = i;
        }
        bool opened = false;
        if (chosen < 0) {
            open.push_back(units);
            opened = true;
            ++report.bins_opened;
        } else {
            open[chosen] += units;
        }
        open.erase(std::remove_if(open.begin(), open.end(), [](int u) { return u > 9; }), open.end());
        std::sort(open.begin(), open.end());

        const int next = find_state(open);
        if (next < 0) {
            report.states_closed = false;
            break;
        }
        // bins open exactly on the marked transitions A->B, A->C, G->H
        const bool marked = (state == 0) || (state == 6 && next == 7);
        if (opened != marked) report.bins_tally_exact = false;
        if (opened) ++opening_transitions;
        report.visits[next]++;
        state = next;
    }

    if (opening_transitions != report.bins_opened) report.bins_tally_exact = false;

    // same stream through the general-purpose simulator
    const IidSimResult sim = iid_simulate(dist, n, seed, Alg::BestFit);
    report.matches_simulation = sim.bins_used == report.bins_opened;

    const StationaryVector sv = stationary_closed_form(p);
    for (int s = 0; s < kMarkovStates; ++s) {
        const double freq = static_cast<double>(report.visits[s]) / static_cast<double>(n);
        report.max_frequency_deviation =
            std::max(report.max_frequency_deviation, std::abs(freq - to_double(sv.omega[s])));
    }
    report.bins_per_item = static_cast<double>(report.bins_opened) / static_cast<double>(n);
    const double rate = to_double(bf_rate(p));
    report.rate_relative_error = std::abs(report.bins_per_item - rate) / rate;
    return report;
}

}  // namespace rollpack
