#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "rollpack/enumeration.hpp"

using namespace rollpack;

TEST_CASE("factorials and multiset counts") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(5) == 120);
    CHECK(multiset_orderings({2, 2, 1}) == 30);  // 5!/(2!2!)
    CHECK(multiset_orderings({3}) == 1);
    CHECK(multiset_orderings({}) == 1);
    CHECK(multiset_orderings({1, 1, 1, 1}) == 24);
}

TEST_CASE("multiset unranking matches lexicographic enumeration") {
    const std::vector<std::vector<int>> cases = {{2, 2, 1}, {3, 1}, {1, 1, 1}, {4}, {1, 2, 3}};
    for (const auto& counts : cases) {
        // oracle: full lexicographic enumeration via next_permutation
        std::vector<int> order;
        for (size_t v = 0; v < counts.size(); ++v)
            for (int c = 0; c < counts[v]; ++c) order.push_back(static_cast<int>(v));
        std::vector<std::vector<int>> all;
        do {
            all.push_back(order);
        } while (std::next_permutation(order.begin(), order.end()));

        REQUIRE(Int(static_cast<long>(all.size())) == multiset_orderings(counts));
        for (size_t rank = 0; rank < all.size(); ++rank)
            CHECK(unrank_multiset_ordering(counts, Int(static_cast<long>(rank))) == all[rank]);
        CHECK_THROWS_AS(unrank_multiset_ordering(counts, Int(static_cast<long>(all.size()))),
                        std::out_of_range);
    }
}

TEST_CASE("permutation unranking matches lexicographic enumeration") {
    for (int n : {1, 2, 3, 4, 5}) {
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        long rank = 0;
        do {
            CHECK(unrank_permutation(n, Int(rank)) == order);
            ++rank;
        } while (std::next_permutation(order.begin(), order.end()));
        CHECK(Int(rank) == factorial(n));
    }
}

TEST_CASE("sharded enumeration covers each ordering exactly once") {
    const std::vector<int> counts = {2, 3, 1};
    const Int total = multiset_orderings(counts);
    ShardPlan plan(total, 7);
    std::set<std::vector<int>> seen;
    long visited = 0;
    for (int s = 0; s < plan.shards; ++s) {
        const Int from = plan.begin(s);
        const uint64_t len = Int(plan.end(s) - from).get_ui();
        enumerate_multiset_orderings(counts, from, len, [&](const std::vector<int>& order) {
            CHECK(seen.insert(order).second);
            ++visited;
        });
    }
    CHECK(Int(visited) == total);
}

TEST_CASE("shard plans split totals without gaps") {
    ShardPlan small(Int(3), 64);
    CHECK(small.shards == 3);
    ShardPlan zero(Int(0), 8);
    CHECK(zero.shards == 0);
    ShardPlan plan(Int(1000), 8);
    Int covered = 0;
    for (int s = 0; s < plan.shards; ++s) {
        CHECK(plan.begin(s) <= plan.end(s));
        covered += plan.end(s) - plan.begin(s);
    }
    CHECK(covered == 1000);
    CHECK(plan.begin(0) == 0);
    CHECK(plan.end(plan.shards - 1) == 1000);
}
