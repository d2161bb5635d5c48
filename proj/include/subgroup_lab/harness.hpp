#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subgroup_lab/char_spectral.hpp"
#include "subgroup_lab/checks.hpp"
#include "subgroup_lab/fp_core.hpp"
#include "subgroup_lab/rng.hpp"

namespace sglab {

// A batch run is fully determined by this config: the seed fixes every
// random draw, and thread count never changes any computed value.
struct ExperimentConfig {
    std::vector<uint32_t> primes;
    std::vector<uint32_t> orders; // empty = every divisor of p-1
    std::vector<std::string> suites;
    uint64_t seed = 1;
    uint64_t trials = 50;
    unsigned threads = 1;
    std::string format = "json"; // json | csv
};

struct RecordRow {
    std::string suite;
    uint32_t p = 0;
    uint32_t order = 0;
    uint64_t trial = 0;
    CheckRecord check;
};

struct ScanRow {
    uint32_t p = 0;
    uint32_t order = 0;
    int64_t energy_add = 0;
    int64_t t_value = 0;
    double ratio_sigma = 0;        // T vs t^4 log t + 2 t^4
    double ratio_energy_32_13 = 0; // E+ vs t^(32/13) log^(41/65) t
    double ratio_dual_energy = 0;  // sum_c E^x(Gamma-c, Gamma) vs t^4
    double ratio_many_shifts = 0;  // |Gamma ∩ (Gamma+1)| vs 8 (t^(1/3)+1)^2
    std::vector<CheckRecord> checks;
};

struct Report {
    ExperimentConfig config;
    std::string kind; // "verify" | "scan"
    std::vector<RecordRow> records;
    std::vector<ScanRow> rows;

    std::size_t asserted_pass = 0;
    std::size_t asserted_fail = 0;
    std::size_t diagnostic = 0;

    void tally();
    int exit_code() const { return asserted_fail == 0 ? 0 : 1; }
    std::string to_json() const;
    std::string to_csv() const;
    std::string serialize() const; // honours config.format
};

// Known suite names: identities, intersections, t-bounds, search, oracles.
Report run_suite(const ExperimentConfig& config);

// One row per (p, subgroup order), ascending: exact E+ and T for the
// subgroup plus slack ratios against the asymptotic growth bounds, with
// unknown constants taken as 1 and logarithm factors floored at 1.
Report scan_primes(const ExperimentConfig& config);

// Shared instance generators (also used by the acceptance suite).

// Random nonempty subset of pool, at most max_size elements.
FpSet random_subset(SplitMix64& rng, const Field& field, const std::vector<uint32_t>& pool,
                    std::size_t max_size);

// Random (A,B,C,D) with A-C and B-D inside gamma elementwise.
struct CharHypothesisInstance {
    FpSet a, b, c, d;
};
CharHypothesisInstance random_char_hypothesis(SplitMix64& rng, const Subgroup& gamma,
                                              std::size_t max_size);

// Random even Gamma-invariant weight on F_p with values in [0,1).
std::vector<double> random_invariant_even_weight(SplitMix64& rng, const Subgroup& gamma);

// k pairwise distinct nonzero shifts.
std::vector<uint32_t> random_distinct_shifts(SplitMix64& rng, uint32_t p, std::size_t k);

} // namespace sglab
