#ifndef ROLLPACK_OPT_HPP
#define ROLLPACK_OPT_HPP

#include "rollpack/packing.hpp"

namespace rollpack {

struct OptResult {
    enum class Method { BranchBound, LargeMatching };

    int bin_count = 0;
    Packing certificate;  // feasible packing using exactly bin_count bins
    Method method = Method::BranchBound;
};

// ⌈sum of item sizes⌉, the volume lower bound.
Int size_lower_bound(const Instance& instance);

// Exact offline optimum via branch-and-bound over item-to-bin assignments
// (items in fixed non-increasing order, a new bin may only be opened at
// index = current bin count). Throws std::invalid_argument when
// instance.size() > cap. The certificate is re-validated before returning.
OptResult opt_exact(const Instance& instance, int cap = 20);

// Fast optimum for instances where every item is > 1/3: bins hold at most
// two items, so OPT = n - (maximum number of disjoint compatible pairs).
// Greedy: repeatedly match the largest unmatched item with the largest
// partner it fits with. Throws std::invalid_argument if any item <= 1/3.
OptResult opt_large_items(const Instance& instance);

}  // namespace rollpack

#endif
