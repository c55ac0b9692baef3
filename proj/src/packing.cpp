#include "rollpack/packing.hpp"

#include <algorithm>
#include <stdexcept>

namespace rollpack {

namespace {

const Rat kHalf = rat(1, 2);
const Rat kThird = rat(1, 3);

// Bin choice shared by the full packer and the count-only path. Loads are
// whatever container exposes operator[] to Rat; returns -1 to open a new bin.
template <class Loads>
int choose_bin(const Loads& loads, int bin_count, const Rat& item, Alg alg, TieRule tie) {
    switch (alg) {
        case Alg::FirstFit:
            for (int i = 0; i < bin_count; ++i)
                if (loads[i] + item <= 1) return i;
            return -1;
        case Alg::NextFit:
            if (bin_count > 0 && loads[bin_count - 1] + item <= 1) return bin_count - 1;
            return -1;
        case Alg::BestFit: {
            int best = -1;
            for (int i = 0; i < bin_count; ++i) {
                if (!(loads[i] + item <= 1)) continue;
                if (best < 0 || loads[i] > loads[best] ||
                    (tie == TieRule::LatestOpened && loads[i] == loads[best]))
                    best = i;
            }
            return best;
        }
        case Alg::Offline:
            break;
    }
    throw std::invalid_argument("not an online algorithm");
}

struct LoadView {
    const std::vector<Bin>& bins;
    const Rat& operator[](int i) const { return bins[i].load; }
};

}  // namespace

SizeClass classify(const Rat& size) {
    if (!(size > 0 && size <= 1)) throw std::domain_error("item size outside (0,1]: " + to_string(size));
    if (size > kHalf) return SizeClass::Large;
    if (size > kThird) return SizeClass::Medium;
    return SizeClass::Small;
}

char size_class_letter(SizeClass c) {
    switch (c) {
        case SizeClass::Large: return 'L';
        case SizeClass::Medium: return 'M';
        case SizeClass::Small: return 'S';
    }
    return '?';
}

Rat Instance::total_size() const {
    Rat sum = 0;
    for (const Rat& x : items) sum += x;
    return sum;
}

void validate_instance(const Instance& instance) {
    for (const Rat& x : instance.items)
        if (!(x > 0 && x <= 1))
            throw std::invalid_argument("item size outside (0,1]: " + to_string(x));
    if (!instance.lm_pairs) return;

    const int n = instance.size();
    std::vector<int> seen(n, 0);
    for (const auto& [large_id, medium_id] : *instance.lm_pairs) {
        if (large_id < 0 || large_id >= n || medium_id < 0 || medium_id >= n)
            throw std::invalid_argument("lm_pairs reference an item id out of range");
        seen[large_id]++;
        seen[medium_id]++;
        if (instance.items[large_id] + instance.items[medium_id] > 1)
            throw std::invalid_argument("lm pair does not fit one bin");
    }
    for (int id = 0; id < n; ++id)
        if (seen[id] != 1) throw std::invalid_argument("lm_pairs do not partition the item ids");
}

Permutation identity_permutation(int n) {
    Permutation p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    return p;
}

void validate_permutation(const Permutation& perm, int n) {
    if (static_cast<int>(perm.size()) != n)
        throw std::invalid_argument("permutation length mismatch");
    std::vector<char> seen(n, 0);
    for (int id : perm) {
        if (id < 0 || id >= n || seen[id]) throw std::invalid_argument("not a permutation of the item ids");
        seen[id] = 1;
    }
}

std::string alg_name(Alg alg) {
    switch (alg) {
        case Alg::BestFit: return "best-fit";
        case Alg::FirstFit: return "first-fit";
        case Alg::NextFit: return "next-fit";
        case Alg::Offline: return "offline";
    }
    return "?";
}

Alg alg_from_name(const std::string& name) {
    if (name == "best-fit" || name == "bf") return Alg::BestFit;
    if (name == "first-fit" || name == "ff") return Alg::FirstFit;
    if (name == "next-fit" || name == "nf") return Alg::NextFit;
    throw std::invalid_argument("unknown algorithm: " + name);
}

Packing make_empty_packing(int n, Alg alg, TieRule tie) {
    Packing p;
    p.algorithm = alg;
    p.tie = tie;
    p.assignment.assign(n, -1);
    return p;
}

void place_item(Packing& packing, int item_id, const Rat& size) {
    if (!(size > 0 && size <= 1)) throw std::domain_error("item size outside (0,1]");
    int idx = choose_bin(LoadView{packing.bins}, packing.bin_count(), size, packing.algorithm, packing.tie);
    if (idx < 0) {
        Bin bin;
        bin.load = size;
        bin.item_ids.push_back(item_id);
        bin.opened_at = packing.rounds;
        packing.bins.push_back(std::move(bin));
        idx = packing.bin_count() - 1;
    } else {
        packing.bins[idx].item_ids.push_back(item_id);
        packing.bins[idx].load += size;
    }
    if (item_id >= static_cast<int>(packing.assignment.size()))
        packing.assignment.resize(item_id + 1, -1);
    packing.assignment[item_id] = idx;
    packing.rounds++;
}

Packing best_fit_step(Packing packing, const Rat& size) {
    place_item(packing, packing.rounds, size);
    return packing;
}

Packing pack(const Instance& instance, const Permutation& perm, Alg alg, TieRule tie) {
    validate_permutation(perm, instance.size());
    Packing p = make_empty_packing(instance.size(), alg, tie);
    for (int id : perm) place_item(p, id, instance.items[id]);
    return p;
}

Packing best_fit_pack(const Instance& instance, const Permutation& perm, TieRule tie) {
    return pack(instance, perm, Alg::BestFit, tie);
}

Packing first_fit_pack(const Instance& instance, const Permutation& perm) {
    return pack(instance, perm, Alg::FirstFit);
}

Packing next_fit_pack(const Instance& instance, const Permutation& perm) {
    return pack(instance, perm, Alg::NextFit);
}

void validate_packing(const Instance& instance, const Packing& packing) {
    const int n = instance.size();
    if (static_cast<int>(packing.assignment.size()) < n)
        throw std::logic_error("assignment does not cover all items");
    std::vector<int> found(n, -1);
    for (int b = 0; b < packing.bin_count(); ++b) {
        const Bin& bin = packing.bins[b];
        if (bin.item_ids.empty()) throw std::logic_error("empty bin in packing");
        Rat load = 0;
        for (int id : bin.item_ids) {
            if (id < 0 || id >= n) throw std::logic_error("bin references unknown item id");
            if (found[id] != -1) throw std::logic_error("item packed twice");
            found[id] = b;
            load += instance.items[id];
        }
        if (load != bin.load) throw std::logic_error("stored bin load differs from member sum");
        if (load > 1) throw std::logic_error("bin load exceeds 1");
    }
    for (int id = 0; id < n; ++id) {
        if (found[id] < 0) throw std::logic_error("item not packed");
        if (packing.assignment[id] != found[id]) throw std::logic_error("assignment map inconsistent");
    }
}

void replay_check_best_fit(const Instance& instance, const Permutation& perm, const Packing& packing) {
    if (packing.algorithm != Alg::BestFit) throw std::logic_error("not a Best Fit packing");
    validate_permutation(perm, instance.size());
    std::vector<Rat> loads(packing.bin_count(), Rat(0));
    int opened = 0;
    for (int round = 0; round < static_cast<int>(perm.size()); ++round) {
        const int id = perm[round];
        const Rat& item = instance.items[id];
        const int chosen = packing.assignment.at(id);
        if (chosen < 0 || chosen >= packing.bin_count())
            throw std::logic_error("assignment references an unknown bin");
        const bool opens = loads[chosen] == 0 && chosen == opened;
        if (opens) {
            ++opened;
        } else if (!(chosen < opened)) {
            throw std::logic_error("item placed into a bin that was not open yet");
        }
        if (!(loads[chosen] + item <= 1)) throw std::logic_error("placement overfills a bin");
        // Best Fit rule: if a new bin was opened, nothing may have fit; else
        // the chosen bin's load is maximal among feasible open bins.
        for (int b = 0; b < opened; ++b) {
            if (b == chosen) continue;
            if (!(loads[b] + item <= 1)) continue;
            if (opens || loads[b] > loads[chosen])
                throw std::logic_error("a fuller feasible bin was available at placement time");
        }
        loads[chosen] += item;
    }
}

std::string BinConfig::label() const {
    std::string s;
    s.append(large, 'L');
    s.append(medium, 'M');
    s.append(small, 'S');
    return s;
}

BinConfig bin_config(const Instance& instance, const Bin& bin) {
    if (bin.item_ids.empty()) throw std::domain_error("bin_config of empty bin");
    BinConfig cfg;
    for (int id : bin.item_ids) {
        switch (classify(instance.items[id])) {
            case SizeClass::Large: cfg.large++; break;
            case SizeClass::Medium: cfg.medium++; break;
            case SizeClass::Small: cfg.small++; break;
        }
    }
    return cfg;
}

int bins_used(std::span<const Rat> sizes, std::span<const int> order, Alg alg, TieRule tie) {
    std::vector<Rat> loads;
    loads.reserve(order.size());
    int count = 0;
    for (int idx : order) {
        const Rat& item = sizes[idx];
        int chosen = choose_bin(loads, count, item, alg, tie);
        if (chosen < 0) {
            loads.push_back(item);
            ++count;
        } else {
            loads[chosen] += item;
        }
    }
    return count;
}

int bins_used(std::span<const Rat> sizes_in_arrival_order, Alg alg, TieRule tie) {
    std::vector<Rat> loads;
    loads.reserve(sizes_in_arrival_order.size());
    int count = 0;
    for (const Rat& item : sizes_in_arrival_order) {
        int chosen = choose_bin(loads, count, item, alg, tie);
        if (chosen < 0) {
            loads.push_back(item);
            ++count;
        } else {
            loads[chosen] += item;
        }
    }
    return count;
}

}  // namespace rollpack
