#pragma once

#include <apncodes/codes.hpp>
#include <apncodes/exp_sums.hpp>
#include <apncodes/tables.hpp>

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace apncodes {

inline constexpr std::string_view kToolVersion = "1.0.0";
inline constexpr std::string_view kReportSchema = "apncodes-report/1";

// Counts are decimal strings so that arbitrary precision survives JSON.
nlohmann::json count_json(const mpz_class& c);
nlohmann::json to_json(const ValueDist& d);
nlohmann::json to_json(const PairDist& d);
nlohmann::json to_json(const WeightDist& d);
nlohmann::json to_json(const Table& t);

struct CheckRecord {
    std::string claim_id;
    std::string anchor;  // table caption or the claim in words
    nlohmann::json computed;
    nlohmann::json expected;
    bool match = false;
    double runtime_ms = 0;
};

struct VerifyReport {
    std::string suite;
    nlohmann::json parameters = nlohmann::json::array();
    std::vector<CheckRecord> records;

    bool pass() const;
    // Everything except runtimes; byte-identical across runs and thread counts.
    nlohmann::json body() const;
    nlohmann::json timing() const;
    // {"schema", "body", "body_fnv1a64", "timing"}
    nlohmann::json to_json() const;
};

std::string fnv1a64_hex(std::string_view bytes);

struct VerifyOptions {
    unsigned threads = 1;
    Budget budget = Budget::from_env();
    std::optional<Poly> modulus;  // replaces the canonical modulus; needs a single (p, m)
};

// Desk parameter sets used when the caller gives no (p, m).
inline constexpr std::pair<std::uint32_t, unsigned> kDeskParams[] = {{3, 3}, {3, 5}, {7, 3}};

// Suites: "desk" (every check for each parameter set, kDeskParams by
// default) and "quick" (tables, sums, N4 and two codes; (3,3) by default).
VerifyReport run_verify_suite(std::string_view suite, const std::vector<std::pair<std::uint32_t, unsigned>>& params,
                              const VerifyOptions& opts);

}  // namespace apncodes
