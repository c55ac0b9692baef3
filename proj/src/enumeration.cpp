#include "rollpack/enumeration.hpp"

#include <omp.h>

#include <stdexcept>

namespace rollpack {

Int factorial(int n) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return f;
}

Int multiset_orderings(const std::vector<int>& counts) {
    int n = 0;
    for (int c : counts) {
        if (c < 0) throw std::invalid_argument("negative multiplicity");
        n += c;
    }
    Int result = factorial(n);
    for (int c : counts) result /= factorial(c);
    return result;
}

std::vector<int> unrank_multiset_ordering(const std::vector<int>& counts, Int rank) {
    std::vector<int> remaining = counts;
    int n = 0;
    for (int c : counts) n += c;
    Int total = multiset_orderings(remaining);
    if (rank < 0 || rank >= total) throw std::out_of_range("multiset ordering rank out of range");

    std::vector<int> order;
    order.reserve(n);
    for (int pos = 0; pos < n; ++pos) {
        const int items_left = n - pos;
        for (size_t v = 0; v < remaining.size(); ++v) {
            if (remaining[v] == 0) continue;
            // orderings starting with value v
            Int block = (total * remaining[v]) / items_left;
            if (rank < block) {
                order.push_back(static_cast<int>(v));
                remaining[v]--;
                total = block;
                break;
            }
            rank -= block;
        }
    }
    return order;
}

std::vector<int> unrank_permutation(int n, Int rank) {
    Int total = factorial(n);
    if (rank < 0 || rank >= total) throw std::out_of_range("permutation rank out of range");
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    std::vector<int> order;
    order.reserve(n);
    for (int pos = 0; pos < n; ++pos) {
        Int block = factorial(n - pos - 1);
        Int idx = rank / block;
        rank -= idx * block;
        long i = idx.get_si();
        order.push_back(pool[i]);
        pool.erase(pool.begin() + i);
    }
    return order;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    int n = omp_get_max_threads();
    return n > 0 ? n : 1;
}

}  // namespace rollpack
