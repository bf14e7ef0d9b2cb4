// verify.hpp
//
// One-shot verification pipeline: recomputes every named constant with a
// rigorous enclosure, compares against its target, and emits a
// machine-readable report. Exit-code policy lives in the CLI: 0 pass,
// 1 execution error, 2 verification failure.

#pragma once

#include <string>
#include <vector>

#include "qwg/interval.hpp"

namespace qwg {

struct VerifyConfig {
    double eta_count = 0.05;       // counting window
    double eta_integral = 0.01;    // singular integrals
    unsigned pmax_series = 100'000;
    unsigned dp_modulus_cap = 1'000'000;
    unsigned M = 40;
    double lambda = 0.887167;
    unsigned seed = 1;             // randomized factoring seed (fixed policy)
    bool full = false;             // include the statistical counting suite
    std::string out_path;
};

enum class Cmp { le, ge, eq, inside, none };

struct VerifyEntry {
    std::string name;
    RInterval enclosure;
    double target_lo = 0.0;   // inside: [target_lo, target_hi]; le/ge/eq: target_lo
    double target_hi = 0.0;
    Cmp cmp = Cmp::none;
    bool pass = true;
    bool mandatory = true;
    std::string notes;
    long runtime_ms = 0;
};

struct VerifyReport {
    std::string version = "0.1.0";
    VerifyConfig config;
    std::vector<VerifyEntry> entries;
    bool overall = true;
    std::string generated_at;

    // JSON text; timings/timestamp live in a separate section excluded from
    // the byte-determinism guarantee when include_timings is false.
    std::string to_json(bool include_timings = true) const;
};

VerifyReport verify_all(const VerifyConfig& config);

}  // namespace qwg
