#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subgroup_lab/checks.hpp"
#include "subgroup_lab/fp_core.hpp"
#include "subgroup_lab/rng.hpp"

namespace sglab {

// |base ∩ (base+x_1) ∩ ... ∩ (base+x_k)| with the explicit main-term /
// error-term split: count = t^{k+1}/(p-1)^k + theta * k * 2^(k+3) * sqrt(p),
// |theta| <= 1. The main term is kept as an exact rational and the pass flag
// is decided with integer cross-multiplication (sqrt(p) rounded up).
struct IntersectionRecord {
    int64_t count = 0;
    double main_term = 0;   // t^{k+1} / (p-1)^k
    double error_bound = 0; // k * 2^(k+3) * sqrt(p), rounded up
    double theta = 0;       // (count - main_term) / error_bound
    bool pass = false;      // |theta| <= 1
    CheckRecord many_shifts; // diagnostic: count <= 4(k+1)(t^{1/(2k+1)}+1)^{k+1}

    std::string to_json() const;
};

IntersectionRecord shift_intersection(const Subgroup& base, const std::vector<uint32_t>& shifts);
IntersectionRecord shift_intersection(const Coset& base, const std::vector<uint32_t>& shifts);

// sum over (u,v) of #{(x,y) in Gamma x Pi : ux + vy = 1}. Pairs are
// deduplicated by canonical coset representatives first (the count only
// depends on the cosets of u and v). The two hypothesis flags of the
// incidence bound are reported, not enforced.
struct MitkinReport {
    int64_t sum = 0;
    std::size_t pairs_used = 0;      // after dedup
    bool size_hypothesis = false;    // (|Gamma||Pi|)^2 |Theta| < p^3
    bool density_hypothesis = false; // |Theta| <= 33^-3 |Gamma||Pi|
    CheckRecord incidence_bound;     // diagnostic: sum <= (|Gamma||Pi||Theta|^2)^(1/3)

    std::string to_json() const;
};

MitkinReport mitkin_sum(const Subgroup& gamma, const Subgroup& pi,
                        const std::vector<std::pair<uint32_t, uint32_t>>& theta);

// Minimal Gamma-invariant superset of Q: the union of the dilates q*Gamma,
// with 0 staying put.
FpSet gamma_closure(const Subgroup& gamma, const FpSet& q);

// All decompositions S = A + B with |A|,|B| >= min_size, each pair listed
// with the maximal compatible B (every valid partner of A is a subset of
// it), deduplicated under A <-> B. Exhaustive mode enumerates all 2^p
// candidate sets A and is limited to p <= 31 by default.
struct DecompositionResult {
    FpSet target;
    std::vector<std::pair<FpSet, FpSet>> pairs;
    bool exhaustive = false;
    bool primitive = false; // exhaustive && pairs empty
    std::vector<CheckRecord> checks;

    std::string to_json() const;
};

DecompositionResult find_decompositions(const FpSet& s, std::size_t min_size = 2,
                                        uint32_t exhaustive_limit = 31);
// Seeded random candidate sampling for primes beyond the exhaustive limit.
DecompositionResult sample_decompositions(const FpSet& s, std::size_t min_size, uint64_t seed,
                                          uint64_t trials);

enum class CoverMode { exact, subset };

// Search for sets with A - A = xi*Gamma ⊔ {0} (exact) or contained in it
// (subset; maximal such A are reported). Solutions are canonical class
// representatives under x -> lambda x + s, with xi recomputed for the
// representative.
struct CoverSolution {
    FpSet set; // canonical: lexicographically least among {lambda*A + s}
    uint32_t xi = 0;
    bool exact = false;
    std::optional<int64_t> c; // when (A o A) is constant on xi*Gamma
};

struct DifferenceCoverResult {
    Subgroup gamma;
    CoverMode mode = CoverMode::exact;
    std::vector<CoverSolution> solutions;
    std::optional<int64_t> c_value; // common c of the exact solutions, if any

    std::string to_json() const;
};

DifferenceCoverResult difference_cover_search(const Field& field, const Subgroup& gamma,
                                              CoverMode mode);

// Verdict for one candidate cover: whether A-A = xi*Gamma ⊔ {0}, the
// constant c when (A o A) restricted to xi*Gamma is constant, and whether
// |A|^2 - |A| = c|Gamma| holds.
struct PerfectDifferenceRecord {
    bool is_cover = false;
    std::optional<int64_t> c;
    bool identity_holds = false;
};

PerfectDifferenceRecord perfect_difference_check(const FpSet& a, const Subgroup& gamma,
                                                 uint32_t xi);

// Canonical representative of the affine class {lambda*A + s : lambda != 0}.
FpSet affine_canonical_form(const FpSet& a);

} // namespace sglab
