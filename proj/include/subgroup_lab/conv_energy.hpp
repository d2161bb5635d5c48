#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "subgroup_lab/fp_core.hpp"

namespace sglab {

// A length-p vector of nonnegative counts indexed by residue, the common
// carrier for (A*B), (A o B) and their multiplicative analogue. Entries fit
// in int64 since each is at most |A||B| <= p^2.
struct CountVector {
    Field field;
    std::vector<int64_t> values;

    int64_t total() const;
    std::string to_json() const; // {"p": p, "values": {residue: count, ...}}
};

enum class CorrMode { convolve, correlate };

// convolve:  (A*B)(x)  = #{(a,b) in A x B : a+b = x}
// correlate: (A o B)(x) = #{(a,b) in A x B : b-a = x}
// The direct pair loop is used for sparse inputs; above |A||B| > p*log2(p)
// the computation switches to an exact transform of the dense indicators.
CountVector corr_add(const FpSet& a, const FpSet& b, CorrMode mode);

// values[x] = #{(a,b) in A x B : a*b = x}, zero products included. Nonzero
// elements are correlated additively in discrete-log coordinates.
CountVector corr_mult(const FpSet& a, const FpSet& b);

// C_{k+1}(f_1,...,f_{k+1})(x_1,...,x_k) = sum_z f_1(z) f_2(z+x_1) ... f_{k+1}(z+x_k),
// with 1 <= k <= 8 offsets.
int64_t cf_eval(std::span<const FpSet> sets, std::span<const uint32_t> offsets);

// Number of quadruples a1+b1 = a2+b2 / a1*b1 = a2*b2, exact integers.
int64_t energy_add(const FpSet& a, const FpSet& b);
int64_t energy_mult(const FpSet& a, const FpSet& b);

// E^x of two sets given by their nonzero discrete logs and zero multiplicity
// flags; this is the kernel the collinear-triple sum drives |C||D| times.
// `scratch` must be a zeroed length-(p-1) array and is returned zeroed.
int64_t energy_mult_logspace(const std::vector<uint32_t>& dlogs_a, bool a_has_zero,
                             const std::vector<uint32_t>& dlogs_b, bool b_has_zero,
                             uint32_t group_order, std::vector<int64_t>& scratch,
                             std::vector<uint32_t>& touched);

} // namespace sglab
