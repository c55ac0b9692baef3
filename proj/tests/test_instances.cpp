#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "rollpack/instances.hpp"
#include "rollpack/opt.hpp"

using namespace rollpack;

TEST_CASE("the monotonicity pair differs only in the third item") {
    auto [before, after] = counterexample_monotonicity();
    REQUIRE(before.size() == 7);
    REQUIRE(after.size() == 7);
    CHECK(before.items[2] == rat(17, 50));
    CHECK(after.items[2] == rat(9, 25));
    for (int i = 0; i < 7; ++i)
        if (i != 2) CHECK(before.items[i] == after.items[i]);
    CHECK(before.items[0] == rat(9, 25));
    CHECK(before.items[1] == rat(13, 20));
}

TEST_CASE("five-item instance invariants") {
    const Instance inst = abs_lb_instance(rat(1, 1000));
    REQUIRE(inst.size() == 5);
    CHECK(inst.items[0] + inst.items[1] + inst.items[4] == 1);  // a1 + a2 + c = 1
    CHECK(inst.items[2] == inst.items[3]);

    // boundary epsilon still valid: b1 + b2 = 1 exactly
    const Instance boundary = abs_lb_instance(rat(1, 96));
    CHECK(boundary.items[2] + boundary.items[3] == 1);

    CHECK_THROWS_AS(abs_lb_instance(rat(1, 95)), std::invalid_argument);
    CHECK_THROWS_AS(abs_lb_instance(rat(0)), std::invalid_argument);
    CHECK_THROWS_AS(abs_lb_instance(rat(-1, 1000)), std::invalid_argument);
}

TEST_CASE("pair instance compatibility pattern") {
    for (int k : {1, 3, 5}) {
        const LmInstance lm = large_lb_instance(k, rat(1, 100 * k));
        REQUIRE(lm.k == k);
        for (int i = 1; i <= k; ++i)
            for (int j = 1; j <= k; ++j) {
                const bool fits = lm.instance.items[i - 1] + lm.instance.items[k + j - 1] <= 1;
                CHECK(fits == (i <= j));
            }
        CHECK(opt_large_items(lm.instance).bin_count == k);
    }
    CHECK_THROWS_AS(large_lb_instance(0, rat(1, 100)), std::invalid_argument);
    CHECK_THROWS_AS(large_lb_instance(3, rat(1, 18)), std::invalid_argument);  // needs < 1/18
    CHECK_THROWS_AS(large_lb_instance(3, rat(0)), std::invalid_argument);
}

TEST_CASE("example sequence is the published order") {
    auto [lm, order] = example1_sequence();
    CHECK(lm.k == 4);
    CHECK(order == Permutation{1, 0, 6, 7, 3, 4, 5, 2});
    CHECK(good_order_count(lm, order) == 2);
    CHECK(verify_lemma3(lm, order).holds);
}

TEST_CASE("random pair instances are deterministic per seed and validator-clean") {
    const LmInstance a = random_lm_instance(5, 99);
    const LmInstance b = random_lm_instance(5, 99);
    CHECK(a.instance.items == b.instance.items);
    CHECK(opt_large_items(a.instance).bin_count == 5);

    const LmInstance c = random_lm_instance(5, 100);
    CHECK(a.instance.items != c.instance.items);

    const LmInstance single = random_lm_instance(1, 7);
    CHECK(single.k == 1);

    for (int seed = 0; seed < 30; ++seed) {
        const LmInstance lm = random_lm_instance(3, seed);
        for (const auto& [l, m] : lm.pairs) {
            CHECK(classify(lm.instance.items[l]) == SizeClass::Large);
            CHECK(classify(lm.instance.items[m]) == SizeClass::Medium);
            CHECK(lm.instance.items[l] + lm.instance.items[m] <= 1);
        }
    }
}

TEST_CASE("instances round-trip through JSON files") {
    const std::string path = "roundtrip_test_instance.json";
    for (const Instance& original :
         {abs_lb_instance(rat(1, 1000)), large_lb_instance(3, rat(1, 100)).instance,
          counterexample_monotonicity().first}) {
        serialize_instance(original, path);
        const Instance parsed = parse_instance(path);
        CHECK(parsed.items == original.items);
        CHECK(parsed.label == original.label);
        CHECK(parsed.lm_pairs == original.lm_pairs);
    }
    std::remove(path.c_str());
}

TEST_CASE("parsing rejects each malformed input distinctly") {
    CHECK_THROWS_WITH_AS(parse_instance_text("{"), doctest::Contains("malformed"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_instance_text(R"({"label": "x", "items": ["5/4"]})"),
                         doctest::Contains("outside"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_instance_text(R"({"label": "x", "items": ["abc"]})"),
                         doctest::Contains("non-rational"), std::invalid_argument);
    CHECK_THROWS_AS(parse_instance_text(R"({"label": "x"})"), std::invalid_argument);
    // lm_pairs not partitioning the ids
    CHECK_THROWS_AS(parse_instance_text(
                        R"({"label": "x", "items": ["3/5", "2/5", "3/5"], "lm_pairs": [[0, 1]]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_instance_text(
                        R"({"label": "x", "items": ["3/5", "2/5"], "lm_pairs": [[0, 5]]})"),
                    std::invalid_argument);

    // decimals convert exactly
    const Instance dec = parse_instance_text(R"({"label": "d", "items": ["0.36", "1/3"]})");
    CHECK(dec.items[0] == rat(9, 25));
    CHECK(dec.items[1] == rat(1, 3));
}

TEST_CASE("the registry serves every published name") {
    for (const std::string& name : named_instance_names()) {
        const Instance inst = get_named_instance(name);
        CHECK(inst.size() > 0);
    }
    CHECK(get_named_instance("lemma7").size() == 5);
    CHECK(get_named_instance("prop3-k3").size() == 6);
    CHECK(get_named_instance("example1").size() == 8);
    CHECK_THROWS_AS(get_named_instance("nope"), std::invalid_argument);

    // example1 is stored in arrival order: identity replay gives the trace
    const Instance ex1 = get_named_instance("example1");
    const Packing p = best_fit_pack(ex1, identity_permutation(8));
    CHECK(p.bin_count() == 5);
}
