#include "rollpack/opt.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rollpack {

namespace {

struct BranchBound {
    const std::vector<Rat>& sizes;  // by original id
    std::vector<int> order;         // ids, non-increasing size
    std::vector<Rat> suffix_sum;    // sum of sizes from position p on
    std::vector<Rat> loads;
    std::vector<int> assign;  // position -> bin index
    std::vector<int> best_assign;
    int best;

    explicit BranchBound(const Instance& instance)
        : sizes(instance.items), best(instance.size() + 1) {
        const int n = instance.size();
        order.resize(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return sizes[a] > sizes[b]; });
        suffix_sum.assign(n + 1, Rat(0));
        for (int p = n - 1; p >= 0; --p) suffix_sum[p] = suffix_sum[p + 1] + sizes[order[p]];
        loads.assign(n, Rat(0));
        assign.assign(n, -1);
        best_assign.assign(n, -1);
    }

    void search(int pos, int used) {
        if (used >= best) return;
        const int n = static_cast<int>(order.size());
        if (pos == n) {
            best = used;
            best_assign = assign;
            return;
        }
        // Remaining volume cannot fit into the free space of open bins plus
        // fewer than `extra` fresh ones.
        Rat free_space = 0;
        for (int b = 0; b < used; ++b) free_space += 1 - loads[b];
        if (suffix_sum[pos] > free_space) {
            Rat overflow = suffix_sum[pos] - free_space;
            Int extra = ceil_rat(overflow);
            if (Int(used) + extra >= best) return;
        }

        const Rat& item = sizes[order[pos]];
        // Bins of equal load lead to isomorphic subtrees; try each load once.
        for (int b = 0; b < used; ++b) {
            if (!(loads[b] + item <= 1)) continue;
            bool duplicate = false;
            for (int c = 0; c < b; ++c)
                if (loads[c] == loads[b]) {
                    duplicate = true;
                    break;
                }
            if (duplicate) continue;
            loads[b] += item;
            assign[pos] = b;
            search(pos + 1, used);
            loads[b] -= item;
        }
        if (used < n) {
            loads[used] = item;
            assign[pos] = used;
            search(pos + 1, used + 1);
            loads[used] = 0;
        }
        assign[pos] = -1;
    }
};

Packing certificate_from(const Instance& instance, const std::vector<int>& order,
                         const std::vector<int>& assign, int bins) {
    Packing cert = make_empty_packing(instance.size(), Alg::Offline);
    cert.bins.resize(bins);
    for (int b = 0; b < bins; ++b) {
        cert.bins[b].load = 0;
        cert.bins[b].opened_at = b;
    }
    for (size_t pos = 0; pos < order.size(); ++pos) {
        const int id = order[pos];
        const int b = assign[pos];
        cert.bins[b].item_ids.push_back(id);
        cert.bins[b].load += instance.items[id];
        cert.assignment[id] = b;
    }
    cert.rounds = instance.size();
    return cert;
}

}  // namespace

Int size_lower_bound(const Instance& instance) {
    return ceil_rat(instance.total_size());
}

OptResult opt_exact(const Instance& instance, int cap) {
    validate_instance(instance);
    if (instance.size() > cap)
        throw std::invalid_argument("instance too large for exact OPT (n = " +
                                    std::to_string(instance.size()) + " > cap " + std::to_string(cap) + ")");
    OptResult result;
    result.method = OptResult::Method::BranchBound;
    if (instance.size() == 0) {
        result.bin_count = 0;
        result.certificate = make_empty_packing(0, Alg::Offline);
        return result;
    }

    BranchBound bb(instance);
    bb.search(0, 0);
    result.bin_count = bb.best;
    result.certificate = certificate_from(instance, bb.order, bb.best_assign, bb.best);
    validate_packing(instance, result.certificate);
    if (Int(result.bin_count) < size_lower_bound(instance))
        throw std::logic_error("optimum below the volume bound");
    return result;
}

OptResult opt_large_items(const Instance& instance) {
    validate_instance(instance);
    const Rat third = rat(1, 3);
    for (const Rat& x : instance.items)
        if (!(x > third)) throw std::invalid_argument("opt_large_items requires every item > 1/3");

    const int n = instance.size();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return instance.items[a] > instance.items[b]; });

    std::vector<int> partner(n, -1);
    std::vector<char> matched(n, 0);
    for (int i = 0; i < n; ++i) {
        if (matched[i]) continue;
        const Rat& big = instance.items[order[i]];
        for (int j = i + 1; j < n; ++j) {
            if (matched[j]) continue;
            if (big + instance.items[order[j]] <= 1) {
                matched[i] = matched[j] = 1;
                partner[i] = j;
                break;
            }
        }
    }

    OptResult result;
    result.method = OptResult::Method::LargeMatching;
    Packing cert = make_empty_packing(n, Alg::Offline);
    for (int i = 0; i < n; ++i) {
        if (matched[i] && partner[i] < 0) continue;  // second member of a pair
        Bin bin;
        bin.opened_at = cert.bin_count();
        bin.item_ids.push_back(order[i]);
        bin.load = instance.items[order[i]];
        if (partner[i] >= 0) {
            bin.item_ids.push_back(order[partner[i]]);
            bin.load += instance.items[order[partner[i]]];
        }
        cert.assignment[order[i]] = cert.bin_count();
        if (partner[i] >= 0) cert.assignment[order[partner[i]]] = cert.bin_count();
        cert.bins.push_back(std::move(bin));
    }
    cert.rounds = n;
    validate_packing(instance, cert);
    result.bin_count = cert.bin_count();
    result.certificate = std::move(cert);
    return result;
}

}  // namespace rollpack
