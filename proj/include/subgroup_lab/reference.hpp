#pragma once

#include <cstdint>
#include <vector>

#include "subgroup_lab/fp_core.hpp"

namespace sglab {

// Literal nested-loop evaluations of the defining formulas, deliberately
// sharing no code with the production kernels. They are the ground truth
// the `oracles` suite and the unit tests compare against; keep them dumb.
namespace reference {

int64_t convolve_at(const FpSet& a, const FpSet& b, uint32_t x);
int64_t correlate_at(const FpSet& a, const FpSet& b, uint32_t x);

int64_t energy_add(const FpSet& a, const FpSet& b);   // quadruple loop
int64_t energy_mult(const FpSet& a, const FpSet& b);  // quadruple loop

// sum_z f1(z) f2(z+x1) ... f_{k+1}(z+x_k) by scanning all z in F_p.
int64_t cf_eval(const std::vector<FpSet>& sets, const std::vector<uint32_t>& offsets);

// T(A,B,C,D) as the literal six-fold loop over (c,d,a1,a2,b1,b2).
int64_t t_quantity(const FpSet& a, const FpSet& b, const FpSet& c, const FpSet& d);

// T*(A,C) = sum_lambda ( sum_{x != 0} C_3(C,A,A)(x, lambda x) )^2, evaluated
// pointwise from the definition.
int64_t t_star(const FpSet& a, const FpSet& c);

// sum_{c in C} E^x(A-c, B) with the inner energy from the quadruple loop.
int64_t dual_energy_sum(const FpSet& a, const FpSet& b, const FpSet& c);

} // namespace reference

} // namespace sglab
