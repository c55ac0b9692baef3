#include "rollpack/instances.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "rollpack/rng.hpp"

namespace rollpack {

std::pair<Instance, Instance> counterexample_monotonicity() {
    const std::vector<std::string> base = {"0.36", "0.65", "0.34", "0.38", "0.28", "0.35", "0.62"};
    Instance first, second;
    first.label = "monotonicity-ce-a";
    second.label = "monotonicity-ce-b";
    for (const std::string& s : base) first.items.push_back(parse_rational(s));
    second.items = first.items;
    second.items[2] = parse_rational("0.36");
    return {first, second};
}

Instance abs_lb_instance(const Rat& epsilon) {
    if (!(epsilon > 0 && epsilon <= rat(1, 96)))
        throw std::invalid_argument("abs_lb_instance requires 0 < epsilon <= 1/96");
    const Rat third = rat(1, 3);
    const Rat a = Rat(third + 4 * epsilon);
    const Rat b = Rat(third + 16 * epsilon);
    const Rat c = Rat(third - 8 * epsilon);

    Instance instance;
    instance.label = "lemma7";
    instance.items = {a, a, b, b, c};
    validate_instance(instance);

    // invariants the expectation analysis relies on
    if (a + a + c != 1) throw std::logic_error("a1 + a2 + c must equal 1 exactly");
    if (!(b + b <= 1)) throw std::logic_error("the b-pair must fit one bin");
    // a first-round pair holding one b closes the bin against all leftovers
    if (!(b + c + a > 1) || !(b + a + c > 1))
        throw std::logic_error("closure inequality violated (one b among first two)");
    // a first pair from {a1, a2, c} rejects every b
    if (!(a + c + b > 1)) throw std::logic_error("closure inequality violated (no b among first two)");
    return instance;
}

LmInstance large_lb_instance(int k, const Rat& epsilon) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (!(epsilon > 0 && epsilon < rat(1, 6 * static_cast<long>(k))))
        throw std::invalid_argument("large_lb_instance requires 0 < epsilon < 1/(6k)");

    Instance instance;
    instance.label = "large-lb-k" + std::to_string(k);
    const Rat half = rat(1, 2);
    for (int i = 1; i <= k; ++i) instance.items.push_back(Rat(half + i * epsilon));
    for (int i = 1; i <= k; ++i) instance.items.push_back(Rat(half - i * epsilon));
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < k; ++i) pairs.emplace_back(i, k + i);
    instance.lm_pairs = pairs;

    // l_i + m_j <= 1 iff i <= j, strict sizes by construction
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j) {
            const bool fits = instance.items[i - 1] + instance.items[k + j - 1] <= 1;
            if (fits != (i <= j)) throw std::logic_error("pair compatibility pattern violated");
        }
    return make_lm_instance(std::move(instance));
}

std::pair<LmInstance, Permutation> example1_sequence() {
    LmInstance lm = large_lb_instance(4, rat(1, 100));
    lm.instance.label = "example1";
    // (l2, l1, m3, m4, l4, m1, m2, l3) over ids l_i -> i-1, m_i -> 4+i-1
    Permutation order = {1, 0, 6, 7, 3, 4, 5, 2};
    return {std::move(lm), std::move(order)};
}

LmInstance random_lm_instance(int k, uint64_t seed, long denom_bound) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (denom_bound < 12) throw std::invalid_argument("denominator bound too small");
    SplitMix64 rng(SplitMix64::derive(seed, 0x4c4d));

    const long D = denom_bound;
    Instance instance;
    instance.label = "random-lm-k" + std::to_string(k);
    std::vector<Rat> mediums;
    for (int i = 0; i < k; ++i) {
        // l in (1/2, 2/3): a medium partner must exist, so stay below 2/3
        const long l_lo = D / 2 + 1;
        const long l_hi = (2 * D - 1) / 3;  // largest numerator with l < 2/3
        const long l_num = l_lo + static_cast<long>(rng.below(static_cast<uint64_t>(l_hi - l_lo + 1)));
        // m in (1/3, min(1/2, 1 - l)]
        const long m_lo = D / 3 + 1;
        const long m_hi = std::min(D / 2, D - l_num);
        const long m_num = m_lo + static_cast<long>(rng.below(static_cast<uint64_t>(m_hi - m_lo + 1)));
        instance.items.push_back(rat(l_num, D));
        mediums.push_back(rat(m_num, D));
    }
    for (const Rat& m : mediums) instance.items.push_back(m);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < k; ++i) pairs.emplace_back(i, k + i);
    instance.lm_pairs = pairs;
    return make_lm_instance(std::move(instance));
}

Instance parse_instance_text(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed instance JSON: ") + e.what());
    }
    Instance instance;
    if (doc.contains("label") && !doc["label"].is_null()) instance.label = doc["label"].get<std::string>();
    if (!doc.contains("items") || !doc["items"].is_array())
        throw std::invalid_argument("instance JSON must contain an \"items\" array");
    for (const auto& item : doc["items"]) {
        if (!item.is_string()) throw std::invalid_argument("item sizes must be rational strings");
        Rat size;
        try {
            size = parse_rational(item.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(std::string("non-rational size: ") + e.what());
        }
        if (!(size > 0 && size <= 1))
            throw std::invalid_argument("item size outside (0,1]: " + to_string(size));
        instance.items.push_back(size);
    }
    if (doc.contains("lm_pairs") && !doc["lm_pairs"].is_null()) {
        std::vector<std::pair<int, int>> pairs;
        for (const auto& pair : doc["lm_pairs"]) {
            if (!pair.is_array() || pair.size() != 2)
                throw std::invalid_argument("lm_pairs entries must be [large_id, medium_id]");
            pairs.emplace_back(pair[0].get<int>(), pair[1].get<int>());
        }
        instance.lm_pairs = std::move(pairs);
    }
    validate_instance(instance);
    return instance;
}

Instance parse_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open instance file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_instance_text(buffer.str());
}

std::string instance_to_json_text(const Instance& instance) {
    nlohmann::json doc;
    doc["label"] = instance.label;
    doc["items"] = nlohmann::json::array();
    for (const Rat& x : instance.items) doc["items"].push_back(to_string(x));
    if (instance.lm_pairs) {
        doc["lm_pairs"] = nlohmann::json::array();
        for (const auto& [l, m] : *instance.lm_pairs) doc["lm_pairs"].push_back({l, m});
    } else {
        doc["lm_pairs"] = nullptr;
    }
    return doc.dump(2);
}

void serialize_instance(const Instance& instance, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write instance file: " + path);
    out << instance_to_json_text(instance) << "\n";
}

std::vector<std::string> named_instance_names() {
    return {"monotonicity-ce-a", "monotonicity-ce-b", "lemma7", "prop2-k2", "prop3-k3", "example1"};
}

Instance get_named_instance(const std::string& name) {
    if (name == "monotonicity-ce-a") return counterexample_monotonicity().first;
    if (name == "monotonicity-ce-b") return counterexample_monotonicity().second;
    if (name == "lemma7") return abs_lb_instance(rat(1, 1000));
    if (name == "prop2-k2") return large_lb_instance(2, rat(1, 100)).instance;
    if (name == "prop3-k3") return large_lb_instance(3, rat(1, 100)).instance;
    if (name == "example1") {
        // items listed in the example's arrival order
        auto [lm, order] = example1_sequence();
        Instance arrival;
        arrival.label = "example1";
        std::vector<int> new_id(lm.instance.size(), -1);
        for (int t = 0; t < static_cast<int>(order.size()); ++t) {
            arrival.items.push_back(lm.instance.items[order[t]]);
            new_id[order[t]] = t;
        }
        std::vector<std::pair<int, int>> pairs;
        for (const auto& [l, m] : lm.pairs) pairs.emplace_back(new_id[l], new_id[m]);
        arrival.lm_pairs = std::move(pairs);
        return arrival;
    }
    std::string known;
    for (const std::string& n : named_instance_names()) known += (known.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown instance \"" + name + "\" (known: " + known + ")");
}

}  // namespace rollpack
