#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "rollpack/instances.hpp"
#include "rollpack/opt.hpp"
#include "rollpack/rng.hpp"

using namespace rollpack;

TEST_CASE("volume lower bound") {
    Instance halves;
    halves.items = {rat(1, 2), rat(1, 2), rat(1, 2)};
    CHECK(size_lower_bound(halves) == 2);

    Instance empty;
    CHECK(size_lower_bound(empty) == 0);

    Instance quarters;
    for (int i = 0; i < 8; ++i) quarters.items.push_back(rat(1, 4));
    CHECK(size_lower_bound(quarters) == 2);
}

TEST_CASE("the five-item lower-bound instance packs into two bins") {
    const Instance inst = abs_lb_instance(rat(1, 1000));
    const OptResult opt = opt_exact(inst);
    CHECK(opt.bin_count == 2);

    // certificate must be {a1, a2, c} and {b1, b2}
    REQUIRE(opt.certificate.bin_count() == 2);
    std::vector<std::vector<int>> bins;
    for (const Bin& bin : opt.certificate.bins) {
        std::vector<int> ids = bin.item_ids;
        std::sort(ids.begin(), ids.end());
        bins.push_back(ids);
    }
    std::sort(bins.begin(), bins.end());
    CHECK(bins[0] == std::vector<int>{0, 1, 4});
    CHECK(bins[1] == std::vector<int>{2, 3});
}

TEST_CASE("three-pair instance has optimum 3") {
    const LmInstance lm = large_lb_instance(3, rat(1, 100));
    CHECK(opt_exact(lm.instance).bin_count == 3);
    CHECK(opt_large_items(lm.instance).bin_count == 3);
}

TEST_CASE("empty instance needs no bins") {
    Instance empty;
    CHECK(opt_exact(empty).bin_count == 0);
}

TEST_CASE("cap is enforced") {
    Instance big;
    for (int i = 0; i < 21; ++i) big.items.push_back(rat(1, 2));
    CHECK_THROWS_AS(opt_exact(big), std::invalid_argument);
    CHECK(opt_exact(big, 21).bin_count == 11);
}

TEST_CASE("matching solver requires >1/3 items") {
    Instance small;
    small.items = {rat(1, 2), rat(1, 4)};
    CHECK_THROWS_AS(opt_large_items(small), std::invalid_argument);
}

TEST_CASE("no pair fits: one bin each") {
    Instance inst;
    inst.items = {rat(3, 5), rat(3, 5), rat(3, 5)};
    CHECK(opt_large_items(inst).bin_count == 3);
}

TEST_CASE("k LM pairs pack into k bins") {
    for (int k : {1, 2, 5, 9}) {
        const LmInstance lm = large_lb_instance(k, rat(1, 100 * k));
        CHECK(opt_large_items(lm.instance).bin_count == k);
    }
}

TEST_CASE("matching equals branch-and-bound on random >1/3 instances") {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        Instance inst;
        const int n = 1 + static_cast<int>(rng.below(12));
        for (int i = 0; i < n; ++i) inst.items.push_back(rat(334 + rng.below(667), 1000));
        const OptResult greedy = opt_large_items(inst);
        const OptResult exact = opt_exact(inst);
        CHECK(greedy.bin_count == exact.bin_count);
    }
}

TEST_CASE("fifty random pairs: matching agrees with exact sub-samples") {
    const LmInstance lm = random_lm_instance(50, 31337);
    CHECK(opt_large_items(lm.instance).bin_count == 50);

    SplitMix64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        // random sub-instance of at most 20 items
        std::vector<int> ids = identity_permutation(lm.instance.size());
        fisher_yates(ids, rng);
        const int m = 4 + static_cast<int>(rng.below(17));
        Instance sub;
        for (int i = 0; i < m; ++i) sub.items.push_back(lm.instance.items[ids[i]]);
        CHECK(opt_large_items(sub).bin_count == opt_exact(sub).bin_count);
    }
}

TEST_CASE("optimum never exceeds a heuristic") {
    SplitMix64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        Instance inst;
        const int n = 1 + static_cast<int>(rng.below(9));
        for (int i = 0; i < n; ++i) inst.items.push_back(rat(1 + rng.below(1000), 1000));
        const int opt = opt_exact(inst).bin_count;
        const Permutation id = identity_permutation(n);
        for (Alg alg : {Alg::BestFit, Alg::FirstFit, Alg::NextFit})
            CHECK(opt <= pack(inst, id, alg).bin_count());
        CHECK(Int(opt) >= size_lower_bound(inst));
    }
}
