#ifndef ROLLPACK_STRUCTURE_HPP
#define ROLLPACK_STRUCTURE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rollpack/packing.hpp"

namespace rollpack {

// An instance whose optimal packing consists of k large+medium pairs, one
// pair per bin. Construction validates: every item > 1/3, pairs partition
// the ids, each pair fits one bin, larges classify Large and mediums
// Medium, and OPT equals k (certified by the matching solver).
struct LmInstance {
    Instance instance;
    int k = 0;
    std::vector<std::pair<int, int>> pairs;  // (large id, medium id)
};

LmInstance make_lm_instance(Instance instance);  // throws std::invalid_argument

// Number of pairs whose large item arrives before its medium partner.
int good_order_count(const LmInstance& lm, const Permutation& perm);

// Bins containing exactly one Large and one Medium item.
int lm_bin_count(const Instance& instance, const Packing& packing);

struct Lemma3Result {
    bool holds = false;
    int good_order_pairs = 0;  // X
    int lm_bins = 0;           // Y
};

// Runs Best Fit on the permuted instance and checks Y >= X.
Lemma3Result verify_lemma3(const LmInstance& lm, const Permutation& perm,
                           TieRule tie = TieRule::EarliestOpened);

// Bipartite matching view of round t: vertices are the visible medium and
// large items, one edge set from the Best Fit packing (same-bin LM pairs)
// and one from the optimal pairing (restricted to visible items).
struct MatchGraph {
    int round = 0;
    std::vector<int> mediums;
    std::vector<int> larges;

    struct BfEdge {
        int medium;
        int large;
    };
    struct OptEdge {
        int medium;
        int large;
        bool good_order;
    };
    std::vector<BfEdge> bf_edges;
    std::vector<OptEdge> opt_edges;
};

MatchGraph build_match_graph(const LmInstance& lm, const Permutation& perm, int round,
                             TieRule tie = TieRule::EarliestOpened);

struct Claim1Result {
    struct Component {
        std::vector<int> vertices;
        int bf_edges = 0;
        int good_order_opt_edges = 0;
    };
    bool holds = false;
    std::vector<Component> components;
};

// Per connected component: #BF-edges >= #good-order OPT-edges.
Claim1Result verify_claim1(const MatchGraph& graph);

struct Claim2Result {
    struct PathCheck {
        std::vector<int> vertices;  // from the BF-edge endpoint to the OPT-edge endpoint
        int start_large = -1;       // b_w
        int end_large = -1;         // b_1
        bool holds = false;
    };
    bool holds = false;
    int paths_checked = 0;
    std::vector<PathCheck> failures;
};

// Maximal paths alternating good-order OPT-edges and BF-edges with large
// items at both ends: the BF-side endpoint is at least the OPT-side one.
Claim2Result verify_claim2(const MatchGraph& graph, const Instance& instance);

struct Eq1Result {
    bool holds = false;
    int bf_bins = 0;
    int k = 0;
    int lm_bins = 0;    // Y
    int l_bins = 0;     // k - Y
    int mm_m_bins = 0;  // ceil((k - Y) / 2)
    int predicted = 0;  // k + ceil((k - Y) / 2)
};

// Bin census identity of the final Best Fit packing on an LM instance.
Eq1Result eq1_accounting(const LmInstance& lm, const Permutation& perm,
                         TieRule tie = TieRule::EarliestOpened);

struct Theorem1Result {
    Rat expected_bf;         // E[BF(I^sigma)], exact
    Rat bound;               // (5k + 1) / 4
    Rat expected_good_pairs; // E[X]
    Rat odd_parity_prob;     // Pr[(k - X) mod 2 = 1]
    bool bound_holds = false;
    bool mean_matches = false;    // E[X] == k/2
    bool parity_matches = false;  // Pr == 1/2
    Int permutations;
};

// Exhaustive check over all (2k)! arrival orders.
Theorem1Result theorem1_check(const LmInstance& lm, TieRule tie = TieRule::EarliestOpened,
                              int threads = 0, const Int& cap = Int(10'000'000));

struct MonotonicityResult {
    bool holds = false;
    int bins_before = 0;
    int bins_after = 0;
};

// BF(I) <= BF(I') in identity order, where I' dominates I coordinatewise.
// Guaranteed only when every item of I exceeds 1/3; a false result on a
// general instance is a legitimate non-monotonicity witness.
MonotonicityResult monotonicity_check(const Instance& before, const Instance& after,
                                      TieRule tie = TieRule::EarliestOpened);

// How the two packings BF(I(t)) and BF(I'(t)) relate when I' inflates a
// single item of a >1/3 instance. Star1: all bins pairwise-identical or
// pairwise-closed; Star2: additionally one 1-bin pair {b} vs {b'} with
// b < b'; Star3: a closed 2-bin on one side vs two 1-bins on the other.
enum class RelationClass { Star1, Star2, Star3, Violation };

std::string relation_name(RelationClass cls);

struct RelationResult {
    RelationClass cls = RelationClass::Violation;
    std::string detail;
};

RelationResult relation_classify(const Instance& before, const Instance& after, int round,
                                 TieRule tie = TieRule::EarliestOpened);

struct FuzzViolation {
    Instance base;
    Instance inflated;
    Permutation perm;
    int bins_base = 0;
    int bins_inflated = 0;
    uint64_t trial = 0;
};

struct RelationViolation {
    Instance base;
    Instance inflated;
    int round = 0;
    std::string detail;
    uint64_t trial = 0;
};

struct MonotonicityFuzzReport {
    uint64_t trials = 0;
    uint64_t packings_checked = 0;
    uint64_t relation_rounds_checked = 0;
    std::vector<FuzzViolation> violations;           // shrunk witnesses
    std::vector<RelationViolation> relation_violations;
    uint64_t seed = 0;
    bool allow_small_items = false;
};

struct FuzzOptions {
    int max_items = 8;  // instance sizes drawn from [2, max_items]
    // Permit sizes in (1/4, 1/3]: draws shift to a band mixture over
    // (1/4, 7/10] that can form three-item bins, which is where Best Fit's
    // non-monotone behavior lives.
    bool allow_small_items = false;
    long denom_bound = 1000;  // sizes are multiples of 1/denom_bound
    int threads = 0;
    bool classify_relations = true;  // single-item trials also run relation_classify
    uint64_t max_witnesses = 10;
};

// Random instances, random single- and multi-item inflations, identical
// permutations applied to both lists. Exhausts all arrival orders when n! is
// small, otherwise samples a batch per trial. Violations are shrunk before
// reporting.
MonotonicityFuzzReport monotonicity_fuzz(uint64_t trials, uint64_t seed,
                                         const FuzzOptions& options = {});

// Randomized property targets for the fuzz CLI.
struct TargetFuzzReport {
    std::string target;
    uint64_t trials = 0;
    uint64_t checks = 0;
    uint64_t seed = 0;
    std::vector<std::string> violations;
};

// Random LM instances and permutations, both tie rules: Y >= X.
TargetFuzzReport lemma3_fuzz(uint64_t trials, uint64_t seed, int k_max = 6, int threads = 0);

// Matching-graph claims at every round of random runs.
TargetFuzzReport claims_fuzz(uint64_t trials, uint64_t seed, int k_max = 5, int threads = 0);

}  // namespace rollpack

#endif
