#ifndef ROLLPACK_INSTANCES_HPP
#define ROLLPACK_INSTANCES_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rollpack/structure.hpp"

namespace rollpack {

// The non-monotonicity witness pair: seven items, identical except for the
// third (17/50 vs 9/25). Best Fit packs the first into 4 bins, the second
// into 3.
std::pair<Instance, Instance> counterexample_monotonicity();

// Five items (a, a, b, b, c) with a = 1/3 + 4e, b = 1/3 + 16e, c = 1/3 - 8e.
// Valid for 0 < e <= 1/96 (b-pair must fit one bin); the constructor
// re-checks a+a+c = 1 and the closure inequalities used by the analysis.
Instance abs_lb_instance(const Rat& epsilon);

// k pairs l_i = 1/2 + i*e, m_i = 1/2 - i*e; l_i + m_j <= 1 iff i <= j.
// Requires 0 < e < 1/(6k) so that m_k stays Medium and orderings strict.
// Ids: larges 0..k-1, mediums k..2k-1, pair i = (i, k+i).
LmInstance large_lb_instance(int k, const Rat& epsilon);

// The k = 4, e = 1/100 instance with the fixed arrival order
// (l2, l1, m3, m4, l4, m1, m2, l3); two good-order pairs.
std::pair<LmInstance, Permutation> example1_sequence();

// Random feasible LM pairs: l uniform in (1/2, 2/3), m uniform in
// (1/3, min(1/2, 1-l)], as rationals with the given denominator.
LmInstance random_lm_instance(int k, uint64_t seed, long denom_bound = 1'000'000);

// JSON schema: {"label": str, "items": ["num/den" | "0.36", ...],
//               "lm_pairs": [[large_id, medium_id], ...] | null}
Instance parse_instance(const std::string& path);
Instance parse_instance_text(const std::string& json_text);
std::string instance_to_json_text(const Instance& instance);
void serialize_instance(const Instance& instance, const std::string& path);

// Named instances exposed to the CLI.
std::vector<std::string> named_instance_names();
Instance get_named_instance(const std::string& name);  // throws on unknown name

}  // namespace rollpack

#endif
