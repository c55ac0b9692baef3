#ifndef ROLLPACK_ENUMERATION_HPP
#define ROLLPACK_ENUMERATION_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include "rollpack/rational.hpp"

namespace rollpack {

Int factorial(int n);

// Number of distinct orderings of a multiset with the given multiplicities:
// (sum counts)! / prod(counts[i]!).
Int multiset_orderings(const std::vector<int>& counts);

// Lexicographically rank-th ordering (0-based) of the multiset; the result
// is a sequence of value indices. Compatible with std::next_permutation.
std::vector<int> unrank_multiset_ordering(const std::vector<int>& counts, Int rank);

// Lexicographically rank-th permutation of 0..n-1.
std::vector<int> unrank_permutation(int n, Int rank);

// Thread count resolution: 0 or negative means "all available cores".
int resolve_threads(int requested);

// Static shard plan over [0, total): shard boundaries depend only on total,
// never on the executing thread count, so parallel runs aggregate the same
// partials in the same order regardless of scheduling.
struct ShardPlan {
    Int total;
    int shards;

    ShardPlan(const Int& total_, int max_shards) : total(total_) {
        if (total <= 0) {
            shards = 0;
        } else if (total < max_shards) {
            shards = static_cast<int>(total.get_ui());
        } else {
            shards = max_shards;
        }
    }

    Int begin(int s) const { return (total * s) / shards; }
    Int end(int s) const { return (total * (s + 1)) / shards; }
};

// Visits every distinct multiset ordering with rank in [from, from+len):
// visit(order) where order is a vector of value indices.
template <class Visit>
void enumerate_multiset_orderings(const std::vector<int>& counts, const Int& from, uint64_t len,
                                  Visit&& visit) {
    std::vector<int> order = unrank_multiset_ordering(counts, from);
    for (uint64_t i = 0; i < len; ++i) {
        visit(const_cast<const std::vector<int>&>(order));
        if (!std::next_permutation(order.begin(), order.end())) break;
    }
}

template <class Visit>
void enumerate_permutations(int n, const Int& from, uint64_t len, Visit&& visit) {
    std::vector<int> order = unrank_permutation(n, from);
    for (uint64_t i = 0; i < len; ++i) {
        visit(const_cast<const std::vector<int>&>(order));
        if (!std::next_permutation(order.begin(), order.end())) break;
    }
}

}  // namespace rollpack

#endif
