#include "rollpack/expectation.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "rollpack/enumeration.hpp"
#include "rollpack/rng.hpp"

namespace rollpack {

namespace {

constexpr int kMaxShards = 64;
constexpr uint64_t kMcShardSize = 1 << 16;

Rat rat_pow(const Rat& base, unsigned long exp) {
    Int num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), exp);
    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), exp);
    return rat(num, den);
}

// Distinct sizes (ascending) with multiplicities.
void collapse_sizes(const std::vector<Rat>& items, std::vector<Rat>& values, std::vector<int>& counts) {
    std::vector<Rat> sorted = items;
    std::sort(sorted.begin(), sorted.end());
    values.clear();
    counts.clear();
    for (const Rat& x : sorted) {
        if (!values.empty() && values.back() == x) {
            counts.back()++;
        } else {
            values.push_back(x);
            counts.push_back(1);
        }
    }
}

// All multiplicity vectors z with sum n over m support values, in
// lexicographic order.
void compositions(int m, int n, std::vector<int>& current, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(current.size()) == m - 1) {
        current.push_back(n);
        out.push_back(current);
        current.pop_back();
        return;
    }
    for (int z = 0; z <= n; ++z) {
        current.push_back(z);
        compositions(m, n - z, current, out);
        current.pop_back();
    }
}

}  // namespace

std::string mode_name(Mode mode) {
    switch (mode) {
        case Mode::ExactEnumeration: return "exact_enumeration";
        case Mode::MonteCarlo: return "monte_carlo";
        case Mode::IidExact: return "iid_exact";
        case Mode::IidSimulated: return "iid_simulated";
    }
    return "?";
}

ExpectationReport exact_expectation(const Instance& instance, Alg alg, TieRule tie, int threads,
                                    const EnumerationCaps& caps) {
    validate_instance(instance);
    const int n = instance.size();

    std::vector<Rat> values;
    std::vector<int> counts;
    collapse_sizes(instance.items, values, counts);
    const Int total = multiset_orderings(counts);
    if (total > caps.max_orderings)
        throw EnumerationCapExceeded("distinct orderings (" + total.get_str() +
                                     ") exceed the exact enumeration cap; use Monte Carlo mode");

    const int T = resolve_threads(threads);
    ShardPlan plan(total, kMaxShards);
    std::vector<std::vector<uint64_t>> partial(plan.shards, std::vector<uint64_t>(n + 1, 0));

#pragma omp parallel for schedule(dynamic, 1) num_threads(T)
    for (int s = 0; s < plan.shards; ++s) {
        std::vector<uint64_t>& hist = partial[s];
        const Int from = plan.begin(s);
        const uint64_t len = Int(plan.end(s) - from).get_ui();
        enumerate_multiset_orderings(counts, from, len, [&](const std::vector<int>& order) {
            hist[bins_used(values, order, alg, tie)]++;
        });
    }

    std::vector<uint64_t> hist(n + 1, 0);
    for (const auto& h : partial)
        for (int b = 0; b <= n; ++b) hist[b] += h[b];

    ExpectationReport report;
    report.instance_label = instance.label;
    report.algorithm = alg;
    report.tie = tie;
    report.mode = Mode::ExactEnumeration;
    report.orderings_total = total;
    report.threads = T;

    Int weighted_sum = 0;
    for (int b = 0; b <= n; ++b) {
        if (hist[b] == 0) continue;
        report.bin_count_distribution[b] = rat(Int(hist[b]), total);
        weighted_sum += Int(b) * Int(hist[b]);
    }
    report.expectation = rat(weighted_sum, total);
    report.opt = Rat(static_cast<long>(opt_exact(instance, caps.opt_cap).bin_count));
    report.ratio = report.opt > 0 ? Rat(report.expectation / report.opt) : Rat(1);
    return report;
}

ExpectationReport monte_carlo_expectation(const Instance& instance, Alg alg, uint64_t samples,
                                          uint64_t seed, TieRule tie, int threads) {
    validate_instance(instance);
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    const int n = instance.size();
    const int T = resolve_threads(threads);
    const int shards = static_cast<int>((samples + kMcShardSize - 1) / kMcShardSize);

    struct Partial {
        uint64_t sum = 0;
        uint64_t sum_sq = 0;
        std::vector<uint64_t> hist;
    };
    std::vector<Partial> partial(shards);

#pragma omp parallel for schedule(dynamic, 1) num_threads(T)
    for (int s = 0; s < shards; ++s) {
        Partial& p = partial[s];
        p.hist.assign(n + 1, 0);
        const uint64_t lo = static_cast<uint64_t>(s) * kMcShardSize;
        const uint64_t hi = std::min(samples, lo + kMcShardSize);
        SplitMix64 rng(SplitMix64::derive(seed, static_cast<uint64_t>(s)));
        std::vector<int> arrival = identity_permutation(n);
        for (uint64_t i = lo; i < hi; ++i) {
            fisher_yates(arrival, rng);
            const int b = bins_used(instance.items, arrival, alg, tie);
            p.sum += b;
            p.sum_sq += static_cast<uint64_t>(b) * b;
            p.hist[b]++;
        }
    }

    uint64_t sum = 0, sum_sq = 0;
    std::vector<uint64_t> hist(n + 1, 0);
    for (const Partial& p : partial) {
        sum += p.sum;
        sum_sq += p.sum_sq;
        for (int b = 0; b <= n; ++b) hist[b] += p.hist[b];
    }

    ExpectationReport report;
    report.instance_label = instance.label;
    report.algorithm = alg;
    report.tie = tie;
    report.mode = Mode::MonteCarlo;
    report.samples = samples;
    report.seed = seed;
    report.threads = T;

    const double mean = static_cast<double>(sum) / static_cast<double>(samples);
    double var = 0.0;
    if (samples > 1) {
        var = (static_cast<double>(sum_sq) - static_cast<double>(samples) * mean * mean) /
              (static_cast<double>(samples) - 1.0);
        var = std::max(var, 0.0);
    }
    report.estimate = mean;
    report.stderr_mean = std::sqrt(var / static_cast<double>(samples));
    report.ci95_low = mean - 1.96 * report.stderr_mean;
    report.ci95_high = mean + 1.96 * report.stderr_mean;
    for (int b = 0; b <= n; ++b)
        if (hist[b] > 0) report.bin_count_distribution[b] = rat(Int(hist[b]), Int(samples));
    report.opt = Rat(static_cast<long>(opt_exact(instance).bin_count));
    return report;
}

void DiscreteDistribution::validate() const {
    if (support.empty()) throw std::invalid_argument("empty distribution support");
    Rat sum = 0;
    std::set<Rat> seen;
    for (const auto& [size, prob] : support) {
        if (!(size > 0 && size <= 1))
            throw std::invalid_argument("support size outside (0,1]: " + to_string(size));
        if (!(prob > 0)) throw std::invalid_argument("probabilities must be positive");
        if (!seen.insert(size).second) throw std::invalid_argument("duplicate support size");
        sum += prob;
    }
    if (sum != 1) throw std::invalid_argument("probabilities must sum to 1 exactly");
}

DiscreteDistribution quarter_third_distribution(const Rat& p) {
    if (!(p > 0 && p < 1)) throw std::invalid_argument("p must lie in (0,1)");
    DiscreteDistribution dist;
    dist.support.emplace_back(rat(1, 4), p);
    dist.support.emplace_back(rat(1, 3), Rat(1 - p));
    dist.validate();
    return dist;
}

namespace {

// Shared per-multiset accounting for the i.i.d. model. For multiset H with
// multiplicities z: every concrete outcome equal to a reordering of H has
// probability lambda_H = prod p_i^{z_i}, and H has D_H distinct reorderings.
struct MultisetStats {
    Rat lambda;            // probability of one outcome of this class
    Int orderings;         // D_H
    Int bins_sum;          // sum of ALG bins over the D_H distinct orderings
    int opt = 0;           // OPT(H)
    std::map<int, Int> hist;
};

MultisetStats evaluate_multiset(const DiscreteDistribution& dist, const std::vector<int>& z, Alg alg,
                                TieRule tie, const EnumerationCaps& caps) {
    MultisetStats stats;
    stats.lambda = 1;
    std::vector<Rat> values;
    values.reserve(dist.support.size());
    for (size_t i = 0; i < dist.support.size(); ++i) {
        values.push_back(dist.support[i].first);
        if (z[i] > 0) stats.lambda *= rat_pow(dist.support[i].second, z[i]);
    }
    stats.orderings = multiset_orderings(z);
    stats.bins_sum = 0;
    enumerate_multiset_orderings(z, 0, stats.orderings.get_ui(), [&](const std::vector<int>& order) {
        const int b = bins_used(values, order, alg, tie);
        stats.bins_sum += b;
        stats.hist[b] += 1;
    });

    Instance h;
    h.label = "multiset";
    for (size_t i = 0; i < z.size(); ++i)
        for (int c = 0; c < z[i]; ++c) h.items.push_back(values[i]);
    stats.opt = h.size() == 0 ? 0 : opt_exact(h, caps.opt_cap).bin_count;
    return stats;
}

std::vector<std::vector<int>> all_multisets(int m, int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    compositions(m, n, current, out);
    return out;
}

void check_outcome_cap(const DiscreteDistribution& dist, int n, const EnumerationCaps& caps) {
    Int outcomes;
    mpz_ui_pow_ui(outcomes.get_mpz_t(), dist.support.size(), static_cast<unsigned long>(n));
    if (outcomes > caps.max_orderings)
        throw EnumerationCapExceeded("i.i.d. outcome count " + outcomes.get_str() +
                                     " exceeds the enumeration cap");
}

}  // namespace

ExpectationReport iid_exact_expectation(const DiscreteDistribution& dist, int n, Alg alg, TieRule tie,
                                        int threads, const EnumerationCaps& caps) {
    dist.validate();
    if (n < 0) throw std::invalid_argument("n must be nonnegative");
    check_outcome_cap(dist, n, caps);

    const int m = static_cast<int>(dist.support.size());
    const std::vector<std::vector<int>> multisets = all_multisets(m, n);
    const int T = resolve_threads(threads);
    std::vector<MultisetStats> stats(multisets.size());

#pragma omp parallel for schedule(dynamic, 1) num_threads(T)
    for (size_t h = 0; h < multisets.size(); ++h)
        stats[h] = evaluate_multiset(dist, multisets[h], alg, tie, caps);

    Rat e_alg = 0, e_opt = 0, total_prob = 0;
    std::map<int, Rat> distribution;
    Int total_orderings = 0;
    for (const MultisetStats& s : stats) {
        e_alg += s.lambda * Rat(s.bins_sum);
        e_opt += s.lambda * Rat(s.orderings) * Rat(static_cast<long>(s.opt));
        total_prob += s.lambda * Rat(s.orderings);
        total_orderings += s.orderings;
        for (const auto& [b, count] : s.hist) distribution[b] += s.lambda * Rat(count);
    }
    if (total_prob != 1) throw std::logic_error("i.i.d. class probabilities do not sum to 1");

    ExpectationReport report;
    report.instance_label = "iid(n=" + std::to_string(n) + ")";
    report.algorithm = alg;
    report.tie = tie;
    report.mode = Mode::IidExact;
    report.expectation = e_alg;
    report.opt = e_opt;
    report.ratio = e_opt > 0 ? Rat(e_alg / e_opt) : Rat(1);
    report.bin_count_distribution = std::move(distribution);
    report.orderings_total = total_orderings;
    report.threads = T;
    return report;
}

RepresentativeResult best_representative(const DiscreteDistribution& dist, int n, Alg alg, TieRule tie,
                                         int threads, const EnumerationCaps& caps) {
    dist.validate();
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    check_outcome_cap(dist, n, caps);

    const int m = static_cast<int>(dist.support.size());
    const std::vector<std::vector<int>> multisets = all_multisets(m, n);
    const int T = resolve_threads(threads);
    std::vector<MultisetStats> stats(multisets.size());

#pragma omp parallel for schedule(dynamic, 1) num_threads(T)
    for (size_t h = 0; h < multisets.size(); ++h)
        stats[h] = evaluate_multiset(dist, multisets[h], alg, tie, caps);

    Rat e_alg = 0, e_opt = 0;
    Rat best_ratio = -1;
    size_t best_index = 0;
    for (size_t h = 0; h < stats.size(); ++h) {
        const MultisetStats& s = stats[h];
        e_alg += s.lambda * Rat(s.bins_sum);
        e_opt += s.lambda * Rat(s.orderings) * Rat(static_cast<long>(s.opt));
        Rat ratio = rat(s.bins_sum, s.orderings * s.opt);
        if (ratio > best_ratio) {
            best_ratio = ratio;
            best_index = h;
        }
    }

    RepresentativeResult result;
    result.best.label = "representative(n=" + std::to_string(n) + ")";
    for (int i = 0; i < m; ++i)
        for (int c = 0; c < multisets[best_index][i]; ++c)
            result.best.items.push_back(dist.support[i].first);
    result.best_ratio = best_ratio;
    result.iid_ratio = e_opt > 0 ? Rat(e_alg / e_opt) : Rat(1);
    result.bridge_holds = result.best_ratio >= result.iid_ratio;
    return result;
}

IidSampler::IidSampler(const DiscreteDistribution& dist, uint64_t seed) : rng_(seed) {
    dist.validate();
    Int lcm = 1;
    for (const auto& [size, prob] : dist.support)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), prob.get_den().get_mpz_t());
    if (!lcm.fits_ulong_p())
        throw std::invalid_argument("probability denominators too large to sample");
    denom_ = lcm.get_ui();
    uint64_t acc = 0;
    for (const auto& [size, prob] : dist.support) {
        Int ticket = Int(prob.get_num()) * Int(lcm / prob.get_den());
        acc += ticket.get_ui();
        cumulative_.push_back(acc);
    }
    if (acc != denom_) throw std::logic_error("sampler tickets do not cover the denominator");
}

int IidSampler::next() {
    const uint64_t u = rng_.below(denom_);
    for (size_t i = 0; i < cumulative_.size(); ++i)
        if (u < cumulative_[i]) return static_cast<int>(i);
    return static_cast<int>(cumulative_.size()) - 1;
}

namespace {

// Streaming packers over integer load units (unit = 1 / lcm of support
// denominators), exact and O(log bins) per item.
struct StreamBestFit {
    std::multiset<long long> loads;
    long long capacity;
    long long bins = 0;

    void add(long long item) {
        auto it = loads.upper_bound(capacity - item);
        if (it == loads.begin()) {
            loads.insert(item);
            ++bins;
        } else {
            auto node = loads.extract(std::prev(it));
            node.value() += item;
            loads.insert(std::move(node));
        }
    }
};

struct StreamFirstFit {
    // segment tree over bins in opening order, holding max free capacity
    std::vector<long long> tree;
    int leaves = 1;
    int bins = 0;
    long long capacity;

    explicit StreamFirstFit(long long cap) : tree(2, 0), capacity(cap) {}

    void grow() {
        std::vector<long long> bigger(4 * leaves, 0);
        for (int i = 0; i < leaves; ++i) bigger[2 * leaves + i] = tree[leaves + i];
        leaves *= 2;
        for (int i = leaves - 1; i >= 1; --i) bigger[i] = std::max(bigger[2 * i], bigger[2 * i + 1]);
        tree = std::move(bigger);
    }

    void update(int leaf, long long value) {
        int i = leaf + leaves;
        tree[i] = value;
        for (i /= 2; i >= 1; i /= 2) tree[i] = std::max(tree[2 * i], tree[2 * i + 1]);
    }

    void add(long long item) {
        if (bins > 0 && tree[1] >= item) {
            int i = 1;
            while (i < leaves) i = tree[2 * i] >= item ? 2 * i : 2 * i + 1;
            const int leaf = i - leaves;
            update(leaf, tree[i] - item);
            return;
        }
        if (bins == leaves) grow();
        update(bins, capacity - item);
        ++bins;
    }
};

}  // namespace

IidSimResult iid_simulate(const DiscreteDistribution& dist, long long n, uint64_t seed, Alg alg) {
    dist.validate();
    if (n < 0) throw std::invalid_argument("n must be nonnegative");

    Int lcm = 1;
    for (const auto& [size, prob] : dist.support)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), size.get_den().get_mpz_t());
    if (!lcm.fits_ulong_p()) throw std::invalid_argument("support denominators too large to simulate");
    const long long capacity = static_cast<long long>(lcm.get_ui());

    std::vector<long long> units;
    for (const auto& [size, prob] : dist.support) {
        Int u = Int(size.get_num()) * Int(lcm / size.get_den());
        units.push_back(static_cast<long long>(u.get_ui()));
    }

    IidSampler sampler(dist, seed);
    std::vector<long long> support_count(dist.support.size(), 0);

    IidSimResult result;
    result.n = n;
    switch (alg) {
        case Alg::BestFit: {
            StreamBestFit bf;
            bf.capacity = capacity;
            for (long long i = 0; i < n; ++i) {
                const int idx = sampler.next();
                support_count[idx]++;
                bf.add(units[idx]);
            }
            result.bins_used = bf.bins;
            break;
        }
        case Alg::FirstFit: {
            StreamFirstFit ff(capacity);
            for (long long i = 0; i < n; ++i) {
                const int idx = sampler.next();
                support_count[idx]++;
                ff.add(units[idx]);
            }
            result.bins_used = ff.bins;
            break;
        }
        case Alg::NextFit: {
            long long last = capacity + 1;  // force the first item to open
            long long bins = 0;
            for (long long i = 0; i < n; ++i) {
                const int idx = sampler.next();
                support_count[idx]++;
                if (last + units[idx] <= capacity) {
                    last += units[idx];
                } else {
                    last = units[idx];
                    ++bins;
                }
            }
            result.bins_used = bins;
            break;
        }
        case Alg::Offline:
            throw std::invalid_argument("iid_simulate runs online algorithms only");
    }

    for (size_t i = 0; i < dist.support.size(); ++i) {
        if (support_count[i] == 0) continue;
        const long long per_bin = capacity / units[i];  // floor(1/s)
        result.opt_estimate += (support_count[i] + per_bin - 1) / per_bin;
    }
    return result;
}

}  // namespace rollpack
