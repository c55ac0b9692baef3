#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rollpack/instances.hpp"
#include "rollpack/packing.hpp"
#include "rollpack/rng.hpp"

using namespace rollpack;

namespace {

Instance from_strings(const std::vector<std::string>& sizes) {
    Instance inst;
    for (const auto& s : sizes) inst.items.push_back(parse_rational(s));
    return inst;
}

}  // namespace

TEST_CASE("classification thresholds are exact") {
    CHECK(classify(rat(1, 2)) == SizeClass::Medium);
    CHECK(classify(rat(1, 3)) == SizeClass::Small);
    CHECK(classify(rat(13, 25)) == SizeClass::Large);
    CHECK(classify(rat(1)) == SizeClass::Large);
    CHECK(classify(rat(1, 100)) == SizeClass::Small);
    CHECK_THROWS_AS(classify(rat(0)), std::domain_error);
    CHECK_THROWS_AS(classify(rat(5, 4)), std::domain_error);
}

TEST_CASE("the seven-item pair packs into 4 and 3 bins") {
    auto [before, after] = counterexample_monotonicity();
    const Permutation id = identity_permutation(7);
    CHECK(best_fit_pack(before, id).bin_count() == 4);
    CHECK(best_fit_pack(after, id).bin_count() == 3);

    // the prefix of four items splits as described
    Packing prefix = make_empty_packing(7, Alg::BestFit);
    for (int t = 0; t < 4; ++t) place_item(prefix, t, before.items[t]);
    CHECK(prefix.bin_count() == 2);
    Packing prefix_after = make_empty_packing(7, Alg::BestFit);
    for (int t = 0; t < 4; ++t) place_item(prefix_after, t, after.items[t]);
    CHECK(prefix_after.bin_count() == 3);
}

TEST_CASE("single item opens a single bin") {
    Instance inst = from_strings({"0.7"});
    for (Alg alg : {Alg::BestFit, Alg::FirstFit, Alg::NextFit})
        CHECK(pack(inst, {0}, alg).bin_count() == 1);
}

TEST_CASE("best fit chooses the fullest feasible bin") {
    // state with bins at 0.6 and 0.3: the next item joins the fuller one
    Packing p = make_empty_packing(0, Alg::BestFit);
    p.bins.push_back(Bin{{0}, parse_rational("0.6"), 0});
    p.bins.push_back(Bin{{1}, parse_rational("0.3"), 1});
    p.assignment = {0, 1};
    p.rounds = 2;
    p = best_fit_step(p, parse_rational("0.35"));
    REQUIRE(p.bin_count() == 2);
    CHECK(p.bins[0].load == parse_rational("0.95"));  // joined the 0.6 bin

    Packing q = best_fit_step(make_empty_packing(0, Alg::BestFit), parse_rational("0.7"));
    q = best_fit_step(q, parse_rational("0.65"));
    q = best_fit_step(q, parse_rational("0.4"));
    CHECK(q.bin_count() == 3);  // fits nowhere

    Packing single = best_fit_step(make_empty_packing(0, Alg::BestFit), rat(1, 2));
    CHECK(single.bin_count() == 1);
    CHECK(single.bins[0].load == rat(1, 2));
}

TEST_CASE("first fit and next fit trace their examples") {
    Instance inst = from_strings({"0.6", "0.3", "0.3", "0.5"});
    const Permutation id = identity_permutation(4);

    const Packing ff = first_fit_pack(inst, id);
    CHECK(ff.bin_count() == 2);
    CHECK(ff.bins[0].load == parse_rational("0.9"));
    CHECK(ff.bins[1].load == parse_rational("0.8"));

    const Packing nf = next_fit_pack(inst, id);
    CHECK(nf.bin_count() == 2);

    Instance nf2 = from_strings({"0.6", "0.5", "0.3"});
    const Packing nf2p = next_fit_pack(nf2, identity_permutation(3));
    REQUIRE(nf2p.bin_count() == 2);
    CHECK(nf2p.bins[0].load == parse_rational("0.6"));
    CHECK(nf2p.bins[1].load == parse_rational("0.8"));

    // next fit only ever looks at the most recent bin
    Instance nf3 = from_strings({"0.5", "0.6", "0.3"});
    const Packing nf3p = next_fit_pack(nf3, identity_permutation(3));
    CHECK(nf3p.bin_count() == 2);  // 0.3 joins 0.6 even though 0.5 also fits

    Instance halves = from_strings({"0.5", "0.5", "0.5"});
    CHECK(first_fit_pack(halves, identity_permutation(3)).bin_count() == 2);
}

TEST_CASE("bin configurations") {
    Instance inst = from_strings({"0.6", "0.4", "0.45", "0.2"});
    Bin lm{{0, 1}, parse_rational("1.0"), 0};
    Bin mm{{1, 2}, parse_rational("0.85"), 0};
    Bin l{{0}, parse_rational("0.6"), 0};
    Bin ms{{2, 3}, parse_rational("0.65"), 0};
    CHECK(bin_config(inst, lm).is_lm());
    CHECK(bin_config(inst, lm).label() == "LM");
    CHECK(bin_config(inst, mm).is_mm());
    CHECK(bin_config(inst, l).label() == "L");
    CHECK(bin_config(inst, ms).label() == "MS");
    Bin empty{{}, rat(0), 0};
    CHECK_THROWS_AS(bin_config(inst, empty), std::domain_error);
}

TEST_CASE("identical inputs give identical packings, and fold equals batch") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        Instance inst;
        const int n = 2 + static_cast<int>(rng.below(7));
        for (int i = 0; i < n; ++i) inst.items.push_back(rat(1 + rng.below(1000), 1000));
        Permutation perm = identity_permutation(n);
        fisher_yates(perm, rng);

        for (TieRule tie : {TieRule::EarliestOpened, TieRule::LatestOpened}) {
            const Packing a = best_fit_pack(inst, perm, tie);
            const Packing b = best_fit_pack(inst, perm, tie);
            REQUIRE(a.bin_count() == b.bin_count());
            for (int i = 0; i < a.bin_count(); ++i) {
                CHECK(a.bins[i].item_ids == b.bins[i].item_ids);
                CHECK(a.bins[i].load == b.bins[i].load);
            }

            // fold of steps
            Packing fold = make_empty_packing(n, Alg::BestFit, tie);
            for (int id : perm) place_item(fold, id, inst.items[id]);
            REQUIRE(fold.bin_count() == a.bin_count());
            for (int i = 0; i < a.bin_count(); ++i) CHECK(fold.bins[i].item_ids == a.bins[i].item_ids);

            validate_packing(inst, a);
            replay_check_best_fit(inst, perm, a);
            CHECK(bins_used(inst.items, perm, Alg::BestFit, tie) == a.bin_count());
        }
    }
}

TEST_CASE("instances of >1/3 items never see 3-item bins or two larges together") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        Instance inst;
        const int n = 2 + static_cast<int>(rng.below(9));
        for (int i = 0; i < n; ++i) {
            // (1/3, 1]
            inst.items.push_back(rat(334 + rng.below(667), 1000));
        }
        Permutation perm = identity_permutation(n);
        fisher_yates(perm, rng);
        for (Alg alg : {Alg::BestFit, Alg::FirstFit, Alg::NextFit}) {
            const Packing p = pack(inst, perm, alg);
            for (const Bin& bin : p.bins) {
                CHECK(bin.count() <= 2);
                CHECK(bin_config(inst, bin).large <= 1);
                CHECK(bin.load <= 1);
            }
        }
    }
}

TEST_CASE("tie rules pick opposite ends among equally loaded bins") {
    // two bins at exactly 0.6 each, then an item fitting both
    Instance inst = from_strings({"0.6", "0.6", "0.35"});
    Packing earliest = make_empty_packing(3, Alg::BestFit, TieRule::EarliestOpened);
    for (int t = 0; t < 3; ++t) place_item(earliest, t, inst.items[t]);
    CHECK(earliest.assignment[2] == 0);

    Packing latest = make_empty_packing(3, Alg::BestFit, TieRule::LatestOpened);
    for (int t = 0; t < 3; ++t) place_item(latest, t, inst.items[t]);
    CHECK(latest.assignment[2] == 1);
}

TEST_CASE("tie rule never changes the bin count") {
    // swapping equally loaded bins swaps bin identities, not the load
    // multiset, so the count is invariant
    SplitMix64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        Instance inst;
        const int n = 1 + static_cast<int>(rng.below(9));
        for (int i = 0; i < n; ++i) inst.items.push_back(rat(1 + rng.below(20), 20));
        Permutation perm = identity_permutation(n);
        fisher_yates(perm, rng);
        CHECK(bins_used(inst.items, perm, Alg::BestFit, TieRule::EarliestOpened) ==
              bins_used(inst.items, perm, Alg::BestFit, TieRule::LatestOpened));
    }
}

TEST_CASE("loads sitting exactly at 1 are a fit") {
    Instance inst = from_strings({"0.47", "0.53"});
    CHECK(best_fit_pack(inst, identity_permutation(2)).bin_count() == 1);
}

TEST_CASE("validators reject broken inputs") {
    Instance bad = from_strings({"0.5"});
    bad.items.push_back(rat(5, 4));
    CHECK_THROWS_AS(validate_instance(bad), std::invalid_argument);

    CHECK_THROWS_AS(validate_permutation({0, 0}, 2), std::invalid_argument);
    CHECK_THROWS_AS(validate_permutation({0, 2}, 2), std::invalid_argument);
    CHECK_THROWS_AS(validate_permutation({0}, 2), std::invalid_argument);
}
