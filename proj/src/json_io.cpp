#include "rollpack/json_io.hpp"


namespace rollpack {

nlohmann::json rat_json(const Rat& r) {
    return {{"rational", to_string(r)}, {"approx", to_double(r)}};
}

nlohmann::json instance_json(const Instance& instance) {
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
    return doc;
}

nlohmann::json packing_json(const Instance& instance, const Packing& packing) {
    nlohmann::json doc;
    doc["instance"] = instance.label;
    doc["algorithm"] = alg_name(packing.algorithm);
    doc["bins"] = nlohmann::json::array();
    for (const Bin& bin : packing.bins) {
        nlohmann::json b;
        b["items"] = bin.item_ids;
        b["sizes"] = nlohmann::json::array();
        for (int id : bin.item_ids) b["sizes"].push_back(to_string(instance.items[id]));
        b["load"] = rat_json(bin.load);
        b["opened_at"] = bin.opened_at;
        b["config"] = bin_config(instance, bin).label();
        doc["bins"].push_back(std::move(b));
    }
    doc["bin_count"] = packing.bin_count();
    return doc;
}

nlohmann::json report_json(const ExpectationReport& report) {
    nlohmann::json doc;
    doc["instance"] = report.instance_label;
    doc["algorithm"] = alg_name(report.algorithm);
    doc["mode"] = mode_name(report.mode);
    doc["threads"] = report.threads;
    doc["opt"] = rat_json(report.opt);

    const bool exact = report.mode == Mode::ExactEnumeration || report.mode == Mode::IidExact;
    if (exact) {
        doc["expectation"] = rat_json(report.expectation);
        doc["ratio"] = rat_json(report.ratio);
        doc["orderings_total"] = report.orderings_total.get_str();
    } else {
        doc["samples"] = report.samples;
        doc["seed"] = report.seed;
        doc["prng"] = "splitmix64";
        doc["estimate"] = report.estimate;
        doc["stderr"] = report.stderr_mean;
        doc["ci95"] = {report.ci95_low, report.ci95_high};
        if (report.opt > 0) doc["ratio_estimate"] = report.estimate / to_double(report.opt);
    }
    doc["bin_count_distribution"] = nlohmann::json::array();
    for (const auto& [bins, prob] : report.bin_count_distribution)
        doc["bin_count_distribution"].push_back({{"bins", bins}, {"probability", rat_json(prob)}});
    return doc;
}

nlohmann::json markov_json(const Rat& p) {
    const MarkovModel model = build_chain(p);
    const StationaryVector sv = stationary_closed_form(p);
    const auto numeric = stationary_numeric(model);
    const Rat rate = bf_rate(p);
    const Rat opt_rate = opt_rate_upper(p);
    const Rat ratio = iid_ratio_lower_bound(p);

    nlohmann::json doc;
    doc["p"] = rat_json(p);
    doc["q"] = rat_json(model.q);
    doc["theta"] = rat_json(sv.theta);
    doc["lambda"] = rat_json(sv.lambda);
    doc["stationary_closed_form"] = nlohmann::json::object();
    doc["stationary_numeric"] = nlohmann::json::object();
    for (int s = 0; s < kMarkovStates; ++s) {
        const std::string name(1, markov_state_name(s));
        doc["stationary_closed_form"][name] = rat_json(sv.omega[s]);
        doc["stationary_numeric"][name] = numeric[s];
    }
    doc["transitions"] = nlohmann::json::array();
    for (const Transition& t : model.transitions) {
        doc["transitions"].push_back({{"from", std::string(1, markov_state_name(t.from))},
                                      {"to", std::string(1, markov_state_name(t.to))},
                                      {"probability", rat_json(t.probability)},
                                      {"opens_bin", t.opens_bin}});
    }
    doc["bf_rate"] = rat_json(rate);
    doc["opt_rate_upper"] = rat_json(opt_rate);
    doc["ratio"] = rat_json(ratio);
    doc["exceeds-11-10"] = ratio > rat(11, 10);
    return doc;
}

nlohmann::json crosscheck_json(const CrosscheckReport& report) {
    nlohmann::json doc;
    doc["p"] = rat_json(report.p);
    doc["n"] = report.n;
    doc["seed"] = report.seed;
    doc["prng"] = "splitmix64";
    doc["states_closed"] = report.states_closed;
    doc["bins_tally_exact"] = report.bins_tally_exact;
    doc["matches_simulation"] = report.matches_simulation;
    doc["bins_opened"] = report.bins_opened;
    doc["bins_per_item"] = report.bins_per_item;
    doc["rate_relative_error"] = report.rate_relative_error;
    doc["max_frequency_deviation"] = report.max_frequency_deviation;
    doc["visits"] = nlohmann::json::object();
    for (int s = 0; s < kMarkovStates; ++s)
        doc["visits"][std::string(1, markov_state_name(s))] = report.visits[s];
    return doc;
}

nlohmann::json fuzz_json(const MonotonicityFuzzReport& report) {
    nlohmann::json doc;
    doc["trials"] = report.trials;
    doc["seed"] = report.seed;
    doc["prng"] = "splitmix64";
    doc["allow_small_items"] = report.allow_small_items;
    doc["packings_checked"] = report.packings_checked;
    doc["relation_rounds_checked"] = report.relation_rounds_checked;
    doc["violations"] = nlohmann::json::array();
    for (const FuzzViolation& v : report.violations) {
        doc["violations"].push_back({{"instance", instance_json(v.base)},
                                     {"inflated", instance_json(v.inflated)},
                                     {"permutation", v.perm},
                                     {"bins", {v.bins_base, v.bins_inflated}},
                                     {"trial", v.trial}});
    }
    doc["relation_violations"] = nlohmann::json::array();
    for (const RelationViolation& v : report.relation_violations) {
        doc["relation_violations"].push_back({{"instance", instance_json(v.base)},
                                              {"inflated", instance_json(v.inflated)},
                                              {"round", v.round},
                                              {"detail", v.detail},
                                              {"trial", v.trial}});
    }
    return doc;
}

}  // namespace rollpack
