#ifndef ROLLPACK_PACKING_HPP
#define ROLLPACK_PACKING_HPP

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rollpack/rational.hpp"

namespace rollpack {

// Item classes: Large > 1/2, Medium in (1/3, 1/2], Small <= 1/3.
// Boundaries are exact: 1/2 is Medium, 1/3 is Small.
enum class SizeClass { Large, Medium, Small };

SizeClass classify(const Rat& size);  // throws std::domain_error outside (0,1]
char size_class_letter(SizeClass c);

struct Instance {
    std::vector<Rat> items;  // index = item id; ids are stable across permutations
    std::string label;
    // optional structure metadata: (large id, medium id) pairs partitioning all ids
    std::optional<std::vector<std::pair<int, int>>> lm_pairs;

    int size() const { return static_cast<int>(items.size()); }
    Rat total_size() const;
};

// Throws std::invalid_argument when sizes leave (0,1] or lm_pairs are
// inconsistent (not a partition, or a pair does not fit one bin).
void validate_instance(const Instance& instance);

// Arrival order: order[t] is the id of the item arriving in round t.
using Permutation = std::vector<int>;

Permutation identity_permutation(int n);
void validate_permutation(const Permutation& perm, int n);

enum class Alg { BestFit, FirstFit, NextFit, Offline };
enum class TieRule { EarliestOpened, LatestOpened };

std::string alg_name(Alg alg);
Alg alg_from_name(const std::string& name);

struct Bin {
    std::vector<int> item_ids;  // in arrival order
    Rat load;                   // sum of member sizes, <= 1
    int opened_at = 0;          // round index of the opening item

    int count() const { return static_cast<int>(item_ids.size()); }
};

struct Packing {
    Alg algorithm = Alg::BestFit;
    TieRule tie = TieRule::EarliestOpened;
    std::vector<Bin> bins;        // in opening order
    std::vector<int> assignment;  // item id -> bin index (-1 before arrival)
    int rounds = 0;

    int bin_count() const { return static_cast<int>(bins.size()); }
};

Packing make_empty_packing(int n, Alg alg, TieRule tie = TieRule::EarliestOpened);

// One online round: places item `item_id` of size `size` per the packing's
// algorithm and tie rule. Packing the whole list is a fold of these steps.
void place_item(Packing& packing, int item_id, const Rat& size);

// Round-by-round form over anonymous items: ids are assigned sequentially.
Packing best_fit_step(Packing packing, const Rat& size);

Packing pack(const Instance& instance, const Permutation& perm, Alg alg,
             TieRule tie = TieRule::EarliestOpened);

Packing best_fit_pack(const Instance& instance, const Permutation& perm,
                      TieRule tie = TieRule::EarliestOpened);
Packing first_fit_pack(const Instance& instance, const Permutation& perm);
Packing next_fit_pack(const Instance& instance, const Permutation& perm);

// Re-checks loads, the load <= 1 invariant and the assignment map.
// Throws std::logic_error on any inconsistency.
void validate_packing(const Instance& instance, const Packing& packing);

// Replays the arrival order against a finished Best Fit packing and checks
// the placement rule: every item went to a feasible bin of maximal load and
// new bins were opened only when nothing fit (tie-rule agnostic).
// Throws std::logic_error on violation.
void replay_check_best_fit(const Instance& instance, const Permutation& perm,
                           const Packing& packing);

// Per-bin census of member classes.
struct BinConfig {
    int large = 0;
    int medium = 0;
    int small = 0;

    bool is_lm() const { return large == 1 && medium == 1 && small == 0; }
    bool is_mm() const { return large == 0 && medium == 2 && small == 0; }
    bool is_l() const { return large == 1 && medium == 0 && small == 0; }
    bool is_m() const { return large == 0 && medium == 1 && small == 0; }
    int items() const { return large + medium + small; }
    std::string label() const;  // "LM", "MM", "L", "MS", ...
};

BinConfig bin_config(const Instance& instance, const Bin& bin);  // throws on empty bin

// Count-only fast path used by enumeration, sampling and fuzz kernels:
// runs the algorithm over sizes[order[0]], sizes[order[1]], ... and returns
// the number of bins. Equivalent to pack(...).bin_count().
int bins_used(std::span<const Rat> sizes, std::span<const int> order, Alg alg,
              TieRule tie = TieRule::EarliestOpened);
int bins_used(std::span<const Rat> sizes_in_arrival_order, Alg alg,
              TieRule tie = TieRule::EarliestOpened);

}  // namespace rollpack

#endif
