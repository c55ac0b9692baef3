#ifndef ROLLPACK_JSON_IO_HPP
#define ROLLPACK_JSON_IO_HPP

#include <json.hpp>

#include "rollpack/expectation.hpp"
#include "rollpack/markov.hpp"
#include "rollpack/structure.hpp"

namespace rollpack {

// Rationals are emitted as {"rational": "num/den", "approx": double} so
// reports stay exact and still plot easily.
nlohmann::json rat_json(const Rat& r);

nlohmann::json packing_json(const Instance& instance, const Packing& packing);
nlohmann::json report_json(const ExpectationReport& report);
nlohmann::json markov_json(const Rat& p);
nlohmann::json crosscheck_json(const CrosscheckReport& report);
nlohmann::json fuzz_json(const MonotonicityFuzzReport& report);
nlohmann::json instance_json(const Instance& instance);

}  // namespace rollpack

#endif
