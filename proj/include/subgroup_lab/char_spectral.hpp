#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "subgroup_lab/checks.hpp"
#include "subgroup_lab/fp_core.hpp"

namespace sglab {

using cplx = std::complex<double>;

// A function on Gamma in subgroup coordinates: entry l is the value at
// generator^l, l = 0..t-1.
using GammaFn = std::vector<cplx>;

// The orthonormal multiplicative characters of Gamma:
//   f_alpha(generator^l) = t^{-1/2} exp(2 pi i alpha l / t),
// alpha = 1..t with alpha = t the principal character; zero off Gamma.
class CharBasis {
public:
    explicit CharBasis(Subgroup gamma);

    const Subgroup& subgroup() const { return gamma_; }
    uint32_t order() const { return gamma_.t; }

    cplx chi(uint32_t alpha, uint32_t l) const {
        return roots_[std::size_t(uint64_t(alpha) * l % gamma_.t)];
    }
    cplx f(uint32_t alpha, uint32_t l) const { return norm_ * chi(alpha, l); }
    double norm() const { return norm_; } // t^{-1/2}

private:
    Subgroup gamma_;
    std::vector<cplx> roots_; // exp(2 pi i j / t), j = 0..t-1
    double norm_;
};

CharBasis char_basis(const Subgroup& gamma);

// Indicator of a set as a function on Gamma; the set must be contained in
// Gamma (support_violation otherwise). `shift_away` subtracts a constant
// first, giving the indicator of S - shift_away.
GammaFn indicator_on_gamma(const CharBasis& basis, const FpSet& s, uint32_t shift_away = 0);

// c_alpha(phi) = sum_{x in Gamma} phi(x) conj(f_alpha(x)); Parseval holds:
// sum_alpha |c_alpha|^2 = sum_x |phi(x)|^2.
struct CoeffVector {
    const CharBasis* basis;
    std::vector<cplx> c; // index alpha-1 for alpha = 1..t

    double parseval_sum() const;
};

CoeffVector coeffs(const CharBasis& basis, const GammaFn& phi);

// Real weight g on F_p together with the symmetry flags of the kernel
// g(x-y) Gamma(x) Gamma(y). Flags are computed, not trusted.
struct OperatorSpec {
    Subgroup gamma;
    std::vector<double> weight; // length p
    bool gamma_invariant = false;
    bool even = false;

    double g(uint32_t x) const { return weight[x]; }
};

OperatorSpec make_operator_spec(const Subgroup& gamma, std::vector<double> weight);

// Spectrum of the Gamma-invariant hermitian kernel. Eigenvalues come from
// the closed form mu_alpha = sum_{y in Gamma} g(1 - y) chi_alpha(y); the
// characters are the eigenfunctions, so no dense decomposition is needed.
struct SpectralReport {
    std::vector<cplx> eigenvalues; // index alpha-1
    CheckRecord trace1;            // sum mu_alpha = g(0) |Gamma|
    CheckRecord trace2;            // sum |mu|^2 = sum_x g(x)^2 (Gamma o Gamma)(x)
    bool normal = false;           // sum |mu|^2 equals the Frobenius norm squared

    std::string to_json() const;
};

SpectralReport operator_spectrum(const OperatorSpec& spec);

// Closed-form eigenvalue evaluated at an arbitrary base point x0 in Gamma;
// Gamma-invariance makes the answer independent of x0 (tested as such).
cplx eigenvalue_at(const OperatorSpec& spec, uint32_t alpha, uint32_t x0);

// (T v)(x) = sum_{y in Gamma} g(x-y) v(y) in subgroup coordinates.
GammaFn apply_operator(const OperatorSpec& spec, const GammaFn& v);

// O(t^3) Jacobi eigendecomposition of the real symmetric kernel matrix;
// debug oracle for the closed form. Returns eigenvalues sorted ascending.
std::vector<double> dense_eigenvalues(const OperatorSpec& spec);

// E^x(A,B) = |Gamma| sum_alpha |c_alpha(A)|^2 |c_alpha(B)|^2 for A,B inside
// Gamma; must agree with the exact count to 1e-9 relative.
double energy_mult_via_chars(const CharBasis& basis, const FpSet& a, const FpSet& b);

// T(A,B,C,D) = |Gamma| sum_alpha sum_c sum_d |c_alpha(A-c)|^2 |c_alpha(B-d)|^2
// under the hypothesis A-C, B-D inside Gamma (elementwise differences).
double t_via_chars(const CharBasis& basis, const FpSet& a, const FpSet& b, const FpSet& c,
                   const FpSet& d);

// Both sides of the averaged-action identity
//   (1/|Gamma|) sum_gamma <T h1^gamma, h2^gamma>
//     = sum_alpha c_alpha(h1) conj(c_alpha(h2)) <T f_alpha, f_alpha>,
// computed independently (left by direct triple loop, right by
// coefficients); holds for arbitrary real g, invariant or not.
std::pair<cplx, cplx> average_action_identity(const OperatorSpec& spec, const GammaFn& h1,
                                              const GammaFn& h2);

} // namespace sglab
