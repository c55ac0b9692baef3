#include "rollpack/structure.hpp"

#include <omp.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "rollpack/enumeration.hpp"
#include "rollpack/instances.hpp"
#include "rollpack/opt.hpp"
#include "rollpack/rng.hpp"

namespace rollpack {

LmInstance make_lm_instance(Instance instance) {
    validate_instance(instance);
    if (!instance.lm_pairs) throw std::invalid_argument("LM instance requires lm_pairs metadata");

    LmInstance lm;
    lm.pairs = *instance.lm_pairs;
    lm.k = static_cast<int>(lm.pairs.size());
    const Rat third = rat(1, 3);
    for (const Rat& x : instance.items)
        if (!(x > third)) throw std::invalid_argument("LM instance requires every item > 1/3");
    for (const auto& [large_id, medium_id] : lm.pairs) {
        if (classify(instance.items[large_id]) != SizeClass::Large)
            throw std::invalid_argument("pair member is not Large: item " + std::to_string(large_id));
        if (classify(instance.items[medium_id]) != SizeClass::Medium)
            throw std::invalid_argument("pair member is not Medium: item " + std::to_string(medium_id));
    }
    if (opt_large_items(instance).bin_count != lm.k)
        throw std::invalid_argument("optimal packing does not consist of k LM-bins");
    lm.instance = std::move(instance);
    return lm;
}

int good_order_count(const LmInstance& lm, const Permutation& perm) {
    validate_permutation(perm, lm.instance.size());
    std::vector<int> position(lm.instance.size(), -1);
    for (int t = 0; t < static_cast<int>(perm.size()); ++t) position[perm[t]] = t;
    int count = 0;
    for (const auto& [large_id, medium_id] : lm.pairs)
        if (position[large_id] < position[medium_id]) ++count;
    return count;
}

int lm_bin_count(const Instance& instance, const Packing& packing) {
    int count = 0;
    for (const Bin& bin : packing.bins)
        if (bin_config(instance, bin).is_lm()) ++count;
    return count;
}

Lemma3Result verify_lemma3(const LmInstance& lm, const Permutation& perm, TieRule tie) {
    Lemma3Result result;
    result.good_order_pairs = good_order_count(lm, perm);
    const Packing packing = best_fit_pack(lm.instance, perm, tie);
    result.lm_bins = lm_bin_count(lm.instance, packing);
    result.holds = result.lm_bins >= result.good_order_pairs;
    return result;
}

MatchGraph build_match_graph(const LmInstance& lm, const Permutation& perm, int round, TieRule tie) {
    const int n = lm.instance.size();
    validate_permutation(perm, n);
    if (round < 1 || round > n) throw std::out_of_range("round out of range");

    std::vector<int> position(n, -1);
    for (int t = 0; t < n; ++t) position[perm[t]] = t;

    MatchGraph graph;
    graph.round = round;
    for (int t = 0; t < round; ++t) {
        const int id = perm[t];
        if (classify(lm.instance.items[id]) == SizeClass::Large)
            graph.larges.push_back(id);
        else
            graph.mediums.push_back(id);
    }

    // Best Fit packing of the visible prefix; same-bin LM pairs become edges.
    Packing packing = make_empty_packing(n, Alg::BestFit, tie);
    for (int t = 0; t < round; ++t) place_item(packing, perm[t], lm.instance.items[perm[t]]);
    for (const Bin& bin : packing.bins) {
        if (bin_config(lm.instance, bin).is_lm()) {
            int medium = -1, large = -1;
            for (int id : bin.item_ids) {
                if (classify(lm.instance.items[id]) == SizeClass::Large)
                    large = id;
                else
                    medium = id;
            }
            graph.bf_edges.push_back({medium, large});
        }
    }

    for (const auto& [large_id, medium_id] : lm.pairs) {
        if (position[large_id] < round && position[medium_id] < round)
            graph.opt_edges.push_back({medium_id, large_id, position[large_id] < position[medium_id]});
    }
    return graph;
}

namespace {

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }

    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Claim1Result verify_claim1(const MatchGraph& graph) {
    // Compress ids occurring in this graph.
    std::map<int, int> index;
    auto touch = [&](int id) {
        if (!index.count(id)) index[id] = static_cast<int>(index.size());
    };
    for (int id : graph.mediums) touch(id);
    for (int id : graph.larges) touch(id);

    UnionFind uf(static_cast<int>(index.size()));
    for (const auto& e : graph.bf_edges) uf.unite(index[e.medium], index[e.large]);
    for (const auto& e : graph.opt_edges) uf.unite(index[e.medium], index[e.large]);

    std::map<int, Claim1Result::Component> components;
    for (const auto& [id, idx] : index) components[uf.find(idx)].vertices.push_back(id);
    for (const auto& e : graph.bf_edges) components[uf.find(index[e.medium])].bf_edges++;
    for (const auto& e : graph.opt_edges)
        if (e.good_order) components[uf.find(index[e.medium])].good_order_opt_edges++;

    Claim1Result result;
    result.holds = true;
    for (auto& [root, comp] : components) {
        if (comp.bf_edges < comp.good_order_opt_edges) result.holds = false;
        result.components.push_back(std::move(comp));
    }
    return result;
}

Claim2Result verify_claim2(const MatchGraph& graph, const Instance& instance) {
    // Good-order OPT edges and BF edges are both matchings, so their union
    // splits into disjoint alternating paths and cycles. Walk each path once.
    std::map<int, int> opt_partner;  // over good-order OPT edges only
    std::map<int, int> bf_partner;
    for (const auto& e : graph.opt_edges) {
        if (!e.good_order) continue;
        opt_partner[e.medium] = e.large;
        opt_partner[e.large] = e.medium;
    }
    for (const auto& e : graph.bf_edges) {
        bf_partner[e.medium] = e.large;
        bf_partner[e.large] = e.medium;
    }

    auto degree = [&](int id) {
        return static_cast<int>(opt_partner.count(id)) + static_cast<int>(bf_partner.count(id));
    };
    auto is_large = [&](int id) { return classify(instance.items[id]) == SizeClass::Large; };

    Claim2Result result;
    result.holds = true;
    std::map<int, bool> visited;

    auto walk_from = [&](int start) {
        // Path endpoints have degree <= 1; pick the single incident edge type.
        std::vector<int> path{start};
        visited[start] = true;
        bool via_opt = opt_partner.count(start) > 0;
        bool start_edge_is_opt = via_opt;
        int current = start;
        for (;;) {
            const std::map<int, int>& partner = via_opt ? opt_partner : bf_partner;
            auto it = partner.find(current);
            if (it == partner.end()) break;
            const int next = it->second;
            if (visited.count(next)) break;
            visited[next] = true;
            path.push_back(next);
            current = next;
            via_opt = !via_opt;
        }
        const int last = path.back();
        // Claim shape: both endpoints large. The endpoint whose incident path
        // edge is a BF edge plays b_w, the good-order OPT endpoint plays b_1.
        if (path.size() < 2) return;
        if (!is_large(path.front()) || !is_large(last)) return;
        Claim2Result::PathCheck check;
        check.vertices = path;
        if (start_edge_is_opt) {
            check.end_large = path.front();  // b_1
            check.start_large = last;        // b_w (path has even edge count)
        } else {
            check.start_large = path.front();
            check.end_large = last;
        }
        check.holds = instance.items[check.start_large] >= instance.items[check.end_large];
        result.paths_checked++;
        if (!check.holds) {
            result.holds = false;
            result.failures.push_back(std::move(check));
        }
    };

    std::vector<int> all_vertices;
    all_vertices.reserve(graph.mediums.size() + graph.larges.size());
    for (int id : graph.larges) all_vertices.push_back(id);
    for (int id : graph.mediums) all_vertices.push_back(id);

    for (int id : all_vertices) {
        if (visited.count(id)) continue;
        if (degree(id) == 1) walk_from(id);
    }
    // Isolated large vertices are trivial (w = 1); alternating cycles carry
    // no endpoints and are outside the claim's shape.
    for (int id : all_vertices) {
        if (!visited.count(id) && degree(id) == 0 && is_large(id)) result.paths_checked++;
    }
    return result;
}

Eq1Result eq1_accounting(const LmInstance& lm, const Permutation& perm, TieRule tie) {
    Eq1Result result;
    result.k = lm.k;
    const Packing packing = best_fit_pack(lm.instance, perm, tie);
    result.bf_bins = packing.bin_count();
    for (const Bin& bin : packing.bins) {
        const BinConfig cfg = bin_config(lm.instance, bin);
        if (cfg.is_lm())
            result.lm_bins++;
        else if (cfg.large == 1 && cfg.medium == 0)
            result.l_bins++;
        else if (cfg.large == 0 && cfg.medium > 0)
            result.mm_m_bins++;
    }
    result.predicted = result.k + (result.k - result.lm_bins + 1) / 2;
    result.holds = result.bf_bins == result.predicted &&
                   result.l_bins == result.k - result.lm_bins &&
                   result.mm_m_bins == (result.k - result.lm_bins + 1) / 2;
    return result;
}

Theorem1Result theorem1_check(const LmInstance& lm, TieRule tie, int threads, const Int& cap) {
    const int n = lm.instance.size();
    const Int total = factorial(n);
    if (total > cap) throw std::invalid_argument("permutation count exceeds the enumeration cap");

    const int T = resolve_threads(threads);
    ShardPlan plan(total, 64);

    struct Partial {
        uint64_t bins_sum = 0;
        uint64_t good_sum = 0;
        uint64_t odd_parity = 0;
    };
    std::vector<Partial> partial(plan.shards);

    // positions of pair members for the X tally
    const auto& pairs = lm.pairs;
    const auto& items = lm.instance.items;

#pragma omp parallel for schedule(dynamic, 1) num_threads(T)
    for (int s = 0; s < plan.shards; ++s) {
        Partial& p = partial[s];
        std::vector<int> position(n, -1);
        const Int from = plan.begin(s);
        const uint64_t len = Int(plan.end(s) - from).get_ui();
        enumerate_permutations(n, from, len, [&](const std::vector<int>& order) {
            for (int t = 0; t < n; ++t) position[order[t]] = t;
            int x = 0;
            for (const auto& [large_id, medium_id] : pairs)
                if (position[large_id] < position[medium_id]) ++x;
            p.bins_sum += bins_used(items, order, Alg::BestFit, tie);
            p.good_sum += x;
            if ((lm.k - x) % 2 == 1) p.odd_parity++;
        });
    }

    uint64_t bins_sum = 0, good_sum = 0, odd_parity = 0;
    for (const Partial& p : partial) {
        bins_sum += p.bins_sum;
        good_sum += p.good_sum;
        odd_parity += p.odd_parity;
    }

    Theorem1Result result;
    result.permutations = total;
    result.expected_bf = rat(Int(bins_sum), total);
    result.bound = rat(5 * lm.k + 1, 4);
    result.expected_good_pairs = rat(Int(good_sum), total);
    result.odd_parity_prob = rat(Int(odd_parity), total);
    result.bound_holds = result.expected_bf <= result.bound;
    result.mean_matches = result.expected_good_pairs == rat(lm.k, 2);
    result.parity_matches = result.odd_parity_prob == rat(1, 2);
    return result;
}

MonotonicityResult monotonicity_check(const Instance& before, const Instance& after, TieRule tie) {
    if (before.size() != after.size()) throw std::invalid_argument("instances differ in length");
    for (int i = 0; i < before.size(); ++i)
        if (!(after.items[i] >= before.items[i]))
            throw std::invalid_argument("second instance does not dominate the first");
    MonotonicityResult result;
    const Permutation id = identity_permutation(before.size());
    result.bins_before = bins_used(before.items, id, Alg::BestFit, tie);
    result.bins_after = bins_used(after.items, id, Alg::BestFit, tie);
    result.holds = result.bins_before <= result.bins_after;
    return result;
}

std::string relation_name(RelationClass cls) {
    switch (cls) {
        case RelationClass::Star1: return "star1";
        case RelationClass::Star2: return "star2";
        case RelationClass::Star3: return "star3";
        case RelationClass::Violation: return "violation";
    }
    return "?";
}

RelationResult relation_classify(const Instance& before, const Instance& after, int round,
                                 TieRule tie) {
    const int n = before.size();
    if (after.size() != n) throw std::invalid_argument("instances differ in length");
    const Rat third = rat(1, 3);
    int inflated = -1;
    for (int i = 0; i < n; ++i) {
        if (!(before.items[i] > third) || !(after.items[i] > third))
            throw std::invalid_argument("relation_classify requires >1/3 instances");
        if (after.items[i] == before.items[i]) continue;
        if (!(after.items[i] > before.items[i]))
            throw std::invalid_argument("second instance does not dominate the first");
        if (inflated >= 0) throw std::invalid_argument("more than one item inflated");
        inflated = i;
    }
    if (round < 0 || round > n) throw std::out_of_range("round out of range");

    // Packings of the two prefixes (identity order).
    std::vector<Rat> ones_a, ones_b;
    int twos_a = 0, twos_b = 0;
    auto census = [&](const Instance& inst, std::vector<Rat>& ones, int& twos) {
        Packing p = make_empty_packing(n, Alg::BestFit, tie);
        for (int t = 0; t < round; ++t) place_item(p, t, inst.items[t]);
        for (const Bin& bin : p.bins) {
            if (bin.count() == 1)
                ones.push_back(bin.load);
            else
                ++twos;  // on >1/3 instances every bin has at most two items
        }
        std::sort(ones.begin(), ones.end());
    };
    census(before, ones_a, twos_a);
    census(after, ones_b, twos_b);

    // Drop pairwise-identical 1-bins; 2-bins are pairwise-closed and only
    // their counts matter.
    std::vector<Rat> left_a, left_b;
    std::set_difference(ones_a.begin(), ones_a.end(), ones_b.begin(), ones_b.end(),
                        std::back_inserter(left_a));
    std::set_difference(ones_b.begin(), ones_b.end(), ones_a.begin(), ones_a.end(),
                        std::back_inserter(left_b));

    RelationResult result;
    if (left_a.empty() && left_b.empty() && twos_a == twos_b) {
        result.cls = RelationClass::Star1;
        return result;
    }
    if (left_a.size() == 1 && left_b.size() == 1 && left_a[0] < left_b[0] && twos_a == twos_b) {
        result.cls = RelationClass::Star2;
        result.detail = "b=" + to_string(left_a[0]) + " b'=" + to_string(left_b[0]);
        return result;
    }
    if (left_a.empty() && left_b.size() == 2 && twos_a == twos_b + 1) {
        result.cls = RelationClass::Star3;
        result.detail = "b1'=" + to_string(left_b[0]) + " b2'=" + to_string(left_b[1]);
        return result;
    }
    result.cls = RelationClass::Violation;
    result.detail = "unmatched 1-bins: " + std::to_string(left_a.size()) + " vs " +
                    std::to_string(left_b.size()) + ", 2-bins: " + std::to_string(twos_a) + " vs " +
                    std::to_string(twos_b);
    return result;
}

namespace {

Rat random_size(SplitMix64& rng, long denom, bool allow_small) {
    if (!allow_small) {
        // (1/3, 1]
        const long lo = denom / 3 + 1;
        return rat(lo + static_cast<long>(rng.below(denom - lo + 1)), denom);
    }
    // Anomalies need bins holding three items, so concentrate half the mass
    // on (1/4, 2/5] (triples fit) and the rest on (2/5, 7/10].
    long lo, hi;
    if (rng.below(2) == 0) {
        lo = denom / 4 + 1;
        hi = 2 * denom / 5;
    } else {
        lo = 2 * denom / 5 + 1;
        hi = 7 * denom / 10;
    }
    return rat(lo + static_cast<long>(rng.below(hi - lo + 1)), denom);
}

struct Trial {
    Instance base;
    Instance inflated;
};

Trial random_trial(SplitMix64& rng, const FuzzOptions& options, bool single_item) {
    Trial trial;
    const int n = 2 + static_cast<int>(rng.below(options.max_items - 1));
    trial.base.label = "fuzz";
    for (int i = 0; i < n; ++i)
        trial.base.items.push_back(random_size(rng, options.denom_bound, options.allow_small_items));
    trial.inflated = trial.base;
    trial.inflated.label = "fuzz'";

    auto inflate = [&](int i) {
        // sizes are multiples of 1/denom_bound, so work in integer units
        const Rat& x = trial.base.items[i];
        const long den = options.denom_bound;
        const long units = static_cast<long>(Int(x.get_num() * (den / x.get_den().get_si())).get_si());
        const long span = den - units;
        if (span <= 0) return;  // already 1
        // half the time nudge across at most one nearby fit boundary, half
        // the time jump anywhere up to 1
        const long limit = rng.below(2) == 0 ? std::min(span, std::max(1L, den / 20)) : span;
        const long bump = 1 + static_cast<long>(rng.below(static_cast<uint64_t>(limit)));
        trial.inflated.items[i] = rat(units + bump, den);
    };

    if (single_item) {
        inflate(static_cast<int>(rng.below(n)));
    } else {
        bool any = false;
        for (int i = 0; i < n; ++i)
            if (rng.below(2) == 0) {
                inflate(i);
                any = trial.inflated.items[i] != trial.base.items[i] || any;
            }
        if (!any) inflate(static_cast<int>(rng.below(n)));
    }
    return trial;
}

bool violates(const Trial& trial, const Permutation& perm, TieRule tie) {
    const int before = bins_used(trial.base.items, perm, Alg::BestFit, tie);
    const int after = bins_used(trial.inflated.items, perm, Alg::BestFit, tie);
    return before > after;
}

// Keep the witness small: drop items while the violation persists, then
// try rounding sizes to denominator-100 rationals.
void shrink_witness(FuzzViolation& witness, TieRule tie) {
    bool progress = true;
    while (progress && witness.base.size() > 2) {
        progress = false;
        for (int drop = 0; drop < witness.base.size(); ++drop) {
            Trial candidate;
            candidate.base.items = witness.base.items;
            candidate.inflated.items = witness.inflated.items;
            candidate.base.items.erase(candidate.base.items.begin() + drop);
            candidate.inflated.items.erase(candidate.inflated.items.begin() + drop);
            Permutation perm;
            for (int id : witness.perm) {
                if (id == drop) continue;
                perm.push_back(id > drop ? id - 1 : id);
            }
            if (violates(candidate, perm, tie)) {
                witness.base.items = candidate.base.items;
                witness.inflated.items = candidate.inflated.items;
                witness.perm = perm;
                progress = true;
                break;
            }
        }
    }
    for (int i = 0; i < witness.base.size(); ++i) {
        for (long denom : {100L, 1000L}) {
            Trial candidate;
            candidate.base.items = witness.base.items;
            candidate.inflated.items = witness.inflated.items;
            // round towards the original value from below/above, keeping dominance
            Rat rounded_base = rat(floor_rat(witness.base.items[i] * denom), Int(denom));
            Rat rounded_inflated = rat(ceil_rat(witness.inflated.items[i] * denom), Int(denom));
            if (!(rounded_base > 0) || rounded_inflated > 1) continue;
            if (!(rounded_base <= rounded_inflated)) continue;
            candidate.base.items[i] = rounded_base;
            candidate.inflated.items[i] = rounded_inflated;
            if (violates(candidate, witness.perm, tie)) {
                witness.base.items = candidate.base.items;
                witness.inflated.items = candidate.inflated.items;
                break;
            }
        }
    }
    witness.bins_base = bins_used(witness.base.items, witness.perm, Alg::BestFit, tie);
    witness.bins_inflated = bins_used(witness.inflated.items, witness.perm, Alg::BestFit, tie);
}

}  // namespace

MonotonicityFuzzReport monotonicity_fuzz(uint64_t trials, uint64_t seed, const FuzzOptions& options) {
    MonotonicityFuzzReport report;
    report.trials = trials;
    report.seed = seed;
    report.allow_small_items = options.allow_small_items;

    const int T = resolve_threads(options.threads);
    const TieRule tie = TieRule::EarliestOpened;

    struct Partial {
        uint64_t packings = 0;
        uint64_t relation_rounds = 0;
        std::vector<FuzzViolation> violations;
        std::vector<RelationViolation> relation_violations;
    };
    const int shards = static_cast<int>(std::min<uint64_t>(trials == 0 ? 1 : trials, 64));
    std::vector<Partial> partial(shards);

#pragma omp parallel for schedule(dynamic, 1) num_threads(T)
    for (int s = 0; s < shards; ++s) {
        Partial& p = partial[s];
        const uint64_t lo = trials * s / shards;
        const uint64_t hi = trials * (s + 1) / shards;
        for (uint64_t trial = lo; trial < hi; ++trial) {
            SplitMix64 rng(SplitMix64::derive(seed, trial));
            const bool single_item = trial % 2 == 0;
            Trial t = random_trial(rng, options, single_item);
            const int n = t.base.size();

            // arrival orders: exhaustive when cheap, else identity + samples
            std::vector<Permutation> orders;
            if (factorial(n) <= 120) {
                Permutation perm = identity_permutation(n);
                do {
                    orders.push_back(perm);
                } while (std::next_permutation(perm.begin(), perm.end()));
            } else {
                orders.push_back(identity_permutation(n));
                Permutation perm = identity_permutation(n);
                for (int r = 0; r < 32; ++r) {
                    fisher_yates(perm, rng);
                    orders.push_back(perm);
                }
            }

            for (const Permutation& perm : orders) {
                p.packings++;
                if (violates(t, perm, tie)) {
                    FuzzViolation witness;
                    witness.base = t.base;
                    witness.inflated = t.inflated;
                    witness.perm = perm;
                    witness.trial = trial;
                    shrink_witness(witness, tie);
                    if (p.violations.size() < options.max_witnesses)
                        p.violations.push_back(std::move(witness));
                }
            }

            if (options.classify_relations && single_item && !options.allow_small_items) {
                for (int round = 0; round <= n; ++round) {
                    p.relation_rounds++;
                    RelationResult rel = relation_classify(t.base, t.inflated, round, tie);
                    if (rel.cls == RelationClass::Violation &&
                        p.relation_violations.size() < options.max_witnesses) {
                        RelationViolation rv;
                        rv.base = t.base;
                        rv.inflated = t.inflated;
                        rv.round = round;
                        rv.detail = rel.detail;
                        rv.trial = trial;
                        p.relation_violations.push_back(std::move(rv));
                    }
                }
            }
        }
    }

    for (Partial& p : partial) {
        report.packings_checked += p.packings;
        report.relation_rounds_checked += p.relation_rounds;
        for (auto& v : p.violations)
            if (report.violations.size() < options.max_witnesses) report.violations.push_back(std::move(v));
        for (auto& v : p.relation_violations)
            if (report.relation_violations.size() < options.max_witnesses)
                report.relation_violations.push_back(std::move(v));
    }
    return report;
}

namespace {

std::string describe_run(const LmInstance& lm, const Permutation& perm) {
    std::string s = "k=" + std::to_string(lm.k) + " items=[";
    for (int i = 0; i < lm.instance.size(); ++i)
        s += (i ? "," : "") + to_string(lm.instance.items[i]);
    s += "] order=[";
    for (size_t i = 0; i < perm.size(); ++i) s += (i ? "," : "") + std::to_string(perm[i]);
    return s + "]";
}

}  // namespace

TargetFuzzReport lemma3_fuzz(uint64_t trials, uint64_t seed, int k_max, int threads) {
    TargetFuzzReport report;
    report.target = "lemma3";
    report.trials = trials;
    report.seed = seed;
    const int T = resolve_threads(threads);
    const int shards = static_cast<int>(std::min<uint64_t>(trials == 0 ? 1 : trials, 64));

    std::vector<uint64_t> checks(shards, 0);
    std::vector<std::vector<std::string>> violations(shards);
#pragma omp parallel for schedule(dynamic, 1) num_threads(T)
    for (int s = 0; s < shards; ++s) {
        for (uint64_t trial = trials * s / shards; trial < trials * (s + 1) / shards; ++trial) {
            SplitMix64 rng(SplitMix64::derive(seed, trial));
            const int k = 1 + static_cast<int>(rng.below(k_max));
            const LmInstance lm = random_lm_instance(k, SplitMix64::derive(seed, trial ^ 0xabcd));
            Permutation perm = identity_permutation(2 * k);
            fisher_yates(perm, rng);
            for (TieRule tie : {TieRule::EarliestOpened, TieRule::LatestOpened}) {
                checks[s]++;
                const Lemma3Result r = verify_lemma3(lm, perm, tie);
                if (!r.holds && violations[s].size() < 10)
                    violations[s].push_back("Y=" + std::to_string(r.lm_bins) + " < X=" +
                                            std::to_string(r.good_order_pairs) + " " +
                                            describe_run(lm, perm));
            }
        }
    }
    for (int s = 0; s < shards; ++s) {
        report.checks += checks[s];
        for (auto& v : violations[s])
            if (report.violations.size() < 10) report.violations.push_back(std::move(v));
    }
    return report;
}

TargetFuzzReport claims_fuzz(uint64_t trials, uint64_t seed, int k_max, int threads) {
    TargetFuzzReport report;
    report.target = "claims";
    report.trials = trials;
    report.seed = seed;
    const int T = resolve_threads(threads);
    const int shards = static_cast<int>(std::min<uint64_t>(trials == 0 ? 1 : trials, 64));

    std::vector<uint64_t> checks(shards, 0);
    std::vector<std::vector<std::string>> violations(shards);
#pragma omp parallel for schedule(dynamic, 1) num_threads(T)
    for (int s = 0; s < shards; ++s) {
        for (uint64_t trial = trials * s / shards; trial < trials * (s + 1) / shards; ++trial) {
            SplitMix64 rng(SplitMix64::derive(seed, trial));
            const int k = 1 + static_cast<int>(rng.below(k_max));
            const LmInstance lm = random_lm_instance(k, SplitMix64::derive(seed, trial ^ 0x1234));
            Permutation perm = identity_permutation(2 * k);
            fisher_yates(perm, rng);
            for (int round = 1; round <= 2 * k; ++round) {
                checks[s]++;
                const MatchGraph graph = build_match_graph(lm, perm, round);
                const bool c1 = verify_claim1(graph).holds;
                const bool c2 = verify_claim2(graph, lm.instance).holds;
                if ((!c1 || !c2) && violations[s].size() < 10)
                    violations[s].push_back(std::string(!c1 ? "claim1" : "claim2") + " at t=" +
                                            std::to_string(round) + " " + describe_run(lm, perm));
            }
        }
    }
    for (int s = 0; s < shards; ++s) {
        report.checks += checks[s];
        for (auto& v : violations[s])
            if (report.violations.size() < 10) report.violations.push_back(std::move(v));
    }
    return report;
}

}  // namespace rollpack
