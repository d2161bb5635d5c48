#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subgroup_lab/checks.hpp"
#include "subgroup_lab/fp_core.hpp"

namespace sglab {

// T(A,B,C,D) = sum_{c in C, d in D} E^x(A-c, B-d), the collinear-triple
// count. Exact integer; cost O(|C||D| (|A||B| + |A| + |B|)) after the
// per-translate discrete-log remap. Requires all four sets nonempty.
int64_t t_quantity(const FpSet& a, const FpSet& b, const FpSet& c, const FpSet& d,
                   unsigned threads = 1);

// Slope histogram N(lambda) = sum_{x != 0} C_3(C,A,A)(x, lambda x)
//                           = #{(c,a1,a2) : a1 != c, a2-c = lambda (a1-c)},
// indexed by lambda in F_p (lambda = 0 included). This is the main-term
// kernel shared by t_star and the error-budget reconciliation.
std::vector<int64_t> slope_counts(const FpSet& c, const FpSet& a);

// T*(A,C) = sum_lambda N(lambda)^2 in the symmetric case A=B, C=D.
int64_t t_star(const FpSet& a, const FpSet& c);

// sum_{c in C} E^x(A-c, B), the one-sided variant.
int64_t dual_energy_sum(const FpSet& a, const FpSet& b, const FpSet& c);

// Report for one T evaluation: the exact value, the symmetric main term when
// it applies, the three-term error budget, and every bound the inputs
// support (asserted explicit-constant ones, diagnostic asymptotic ones).
struct TReport {
    int64_t t_value = 0;
    std::optional<int64_t> t_star; // set when A=B and C=D
    int64_t main_term = 0;         // sum_lambda N_C(lambda) N_D(lambda)
    int64_t error_budget = 0;
    std::vector<CheckRecord> bound_checks;

    std::string to_json() const;
};

// Optional subgroup context enables the dilate-translate diagnostic bound
// for T(Gamma, Pi, xi Gamma, eta Pi).
TReport t_bounds_report(const FpSet& a, const FpSet& b, const FpSet& c, const FpSet& d,
                        const Subgroup* gamma_ctx = nullptr, const Subgroup* pi_ctx = nullptr);

// True iff A equals the (unique) multiplicative subgroup of order |A|.
bool is_multiplicative_subgroup(const FpSet& a);

} // namespace sglab
