#include "subgroup_lab/char_spectral.hpp"

#include <cmath>

#include "subgroup_lab/conv_energy.hpp"

namespace sglab {

namespace {
constexpr double TWO_PI = 6.283185307179586476925286766559;
}

CharBasis::CharBasis(Subgroup gamma) : gamma_(std::move(gamma)) {
    const uint32_t t = gamma_.t;
    roots_.resize(t);
    for (uint32_t j = 0; j < t; ++j) {
        long double angle = TWO_PI * (long double)j / t;
        roots_[j] = cplx(double(std::cos(angle)), double(std::sin(angle)));
    }
    norm_ = 1.0 / std::sqrt(double(t));
}

CharBasis char_basis(const Subgroup& gamma) { return CharBasis(gamma); }

GammaFn indicator_on_gamma(const CharBasis& basis, const FpSet& s, uint32_t shift_away) {
    const auto& gamma = basis.subgroup();
    const auto& f = gamma.field;
    GammaFn phi(gamma.t, cplx(0.0, 0.0));
    for (uint32_t x : s.elements()) {
        uint32_t y = f->sub(x, shift_away);
        if (y == 0 || !gamma.contains(y))
            fail(errc::support_violation, "set element " + std::to_string(y) +
                                              " lies outside the subgroup");
        phi[gamma.position_of(y)] = cplx(1.0, 0.0);
    }
    return phi;
}

CoeffVector coeffs(const CharBasis& basis, const GammaFn& phi) {
    const uint32_t t = basis.order();
    if (phi.size() != t) fail(errc::support_violation, "function length differs from |Gamma|");
    CoeffVector cv{&basis, std::vector<cplx>(t)};
    for (uint32_t alpha = 1; alpha <= t; ++alpha) {
        cplx acc(0.0, 0.0);
        for (uint32_t l = 0; l < t; ++l) acc += phi[l] * std::conj(basis.f(alpha, l));
        cv.c[alpha - 1] = acc;
    }
    return cv;
}

double CoeffVector::parseval_sum() const {
    double s = 0;
    for (const cplx& v : c) s += std::norm(v);
    return s;
}

OperatorSpec make_operator_spec(const Subgroup& gamma, std::vector<double> weight) {
    const auto& f = gamma.field;
    if (weight.size() != f->p()) fail(errc::bad_arity, "weight must have length p");
    OperatorSpec spec{gamma, std::move(weight), true, true};

    // Invariance under the subgroup generator implies invariance under all
    // of Gamma; 0 is fixed by every dilation.
    const uint32_t gen = gamma.generator;
    for (uint32_t x = 1; x < f->p() && spec.gamma_invariant; ++x)
        if (spec.weight[f->mul(gen, x)] != spec.weight[x]) spec.gamma_invariant = false;
    for (uint32_t x = 1; x < f->p() && spec.even; ++x)
        if (spec.weight[f->neg(x)] != spec.weight[x]) spec.even = false;
    return spec;
}

cplx eigenvalue_at(const OperatorSpec& spec, uint32_t alpha, uint32_t x0) {
    // mu f(x0) = sum_{y in Gamma} g(x0 - y) chi_alpha(y), f = chi_alpha.
    const auto& gamma = spec.gamma;
    const auto& f = gamma.field;
    CharBasis basis(gamma); // cheap: root table only
    cplx acc(0.0, 0.0);
    for (uint32_t l = 0; l < gamma.t; ++l) {
        uint32_t y = f->pow_table()[std::size_t(gamma.n) * l];
        acc += spec.g(f->sub(x0, y)) * basis.chi(alpha, l);
    }
    uint32_t l0 = gamma.position_of(x0);
    return acc * std::conj(basis.chi(alpha, l0));
}

GammaFn apply_operator(const OperatorSpec& spec, const GammaFn& v) {
    const auto& gamma = spec.gamma;
    const auto& f = gamma.field;
    const uint32_t t = gamma.t;
    GammaFn out(t, cplx(0.0, 0.0));
    const auto& elems = [&] {
        std::vector<uint32_t> e(t);
        for (uint32_t l = 0; l < t; ++l) e[l] = f->pow_table()[std::size_t(gamma.n) * l];
        return e;
    }();
    for (uint32_t lx = 0; lx < t; ++lx) {
        cplx acc(0.0, 0.0);
        for (uint32_t ly = 0; ly < t; ++ly) acc += spec.g(f->sub(elems[lx], elems[ly])) * v[ly];
        out[lx] = acc;
    }
    return out;
}

SpectralReport operator_spectrum(const OperatorSpec& spec) {
    if (!spec.gamma_invariant)
        fail(errc::not_invariant, "weight is not constant on subgroup dilation orbits");
    if (!spec.even) fail(errc::not_hermitian, "weight must satisfy g(-x) = g(x)");

    const auto& gamma = spec.gamma;
    const auto& f = gamma.field;
    const uint32_t t = gamma.t;
    CharBasis basis(gamma);

    SpectralReport rep;
    rep.eigenvalues.resize(t);
    // mu_alpha = sum_{y in Gamma} g(1 - y) chi_alpha(y); evaluation at x0=1.
    std::vector<double> g_at(t);
    for (uint32_t l = 0; l < t; ++l) {
        uint32_t y = f->pow_table()[std::size_t(gamma.n) * l];
        g_at[l] = spec.g(f->sub(1, y));
    }
    for (uint32_t alpha = 1; alpha <= t; ++alpha) {
        cplx acc(0.0, 0.0);
        for (uint32_t l = 0; l < t; ++l) acc += g_at[l] * basis.chi(alpha, l);
        rep.eigenvalues[alpha - 1] = acc;
    }

    cplx trace_sum(0.0, 0.0);
    double square_sum = 0;
    for (const cplx& mu : rep.eigenvalues) {
        trace_sum += mu;
        square_sum += std::norm(mu);
    }

    const double g0t = spec.g(0) * double(t);
    const double tol1 = 1e-6 * std::max(1.0, std::abs(g0t));
    rep.trace1 = CheckRecord::make("trace_sum", std::abs(trace_sum - g0t), tol1, true);

    auto auto_corr = corr_add(gamma.elements, gamma.elements, CorrMode::correlate);
    double weighted = 0;
    for (uint32_t x = 0; x < f->p(); ++x)
        weighted += spec.g(x) * spec.g(x) * double(auto_corr.values[x]);
    const double tol2 = 1e-6 * std::max(1.0, std::abs(weighted));
    rep.trace2 = CheckRecord::make("trace_square_sum", std::abs(square_sum - weighted), tol2, true);

    // Normality witness: eigenvalue square sum vs the entrywise square sum
    // of the kernel matrix, computed independently of the correlation above.
    double frobenius = 0;
    for (uint32_t lx = 0; lx < t; ++lx) {
        uint32_t x = f->pow_table()[std::size_t(gamma.n) * lx];
        for (uint32_t ly = 0; ly < t; ++ly) {
            uint32_t y = f->pow_table()[std::size_t(gamma.n) * ly];
            double v = spec.g(f->sub(x, y));
            frobenius += v * v;
        }
    }
    rep.normal = std::abs(square_sum - frobenius) <= 1e-6 * std::max(1.0, frobenius);
    return rep;
}

std::vector<double> dense_eigenvalues(const OperatorSpec& spec) {
    if (!spec.even) fail(errc::not_hermitian, "dense oracle expects a symmetric kernel");
    const auto& gamma = spec.gamma;
    const auto& f = gamma.field;
    const uint32_t t = gamma.t;

    std::vector<std::vector<double>> m(t, std::vector<double>(t));
    for (uint32_t lx = 0; lx < t; ++lx)
        for (uint32_t ly = 0; ly < t; ++ly) {
            uint32_t x = f->pow_table()[std::size_t(gamma.n) * lx];
            uint32_t y = f->pow_table()[std::size_t(gamma.n) * ly];
            m[lx][ly] = spec.g(f->sub(x, y));
        }

    // Cyclic Jacobi sweeps; the kernel matrices here are tiny and well
    // conditioned, so a fixed sweep budget with an off-diagonal threshold
    // is plenty.
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0;
        for (uint32_t i = 0; i < t; ++i)
            for (uint32_t j = i + 1; j < t; ++j) off += m[i][j] * m[i][j];
        if (off <= 1e-24) break;
        for (uint32_t i = 0; i < t; ++i)
            for (uint32_t j = i + 1; j < t; ++j) {
                if (std::abs(m[i][j]) < 1e-15) continue;
                double theta = 0.5 * std::atan2(2 * m[i][j], m[j][j] - m[i][i]);
                double c = std::cos(theta), s = std::sin(theta);
                for (uint32_t k = 0; k < t; ++k) {
                    double mik = m[i][k], mjk = m[j][k];
                    m[i][k] = c * mik - s * mjk;
                    m[j][k] = s * mik + c * mjk;
                }
                for (uint32_t k = 0; k < t; ++k) {
                    double mki = m[k][i], mkj = m[k][j];
                    m[k][i] = c * mki - s * mkj;
                    m[k][j] = s * mki + c * mkj;
                }
            }
    }
    std::vector<double> eig(t);
    for (uint32_t i = 0; i < t; ++i) eig[i] = m[i][i];
    std::sort(eig.begin(), eig.end());
    return eig;
}

namespace {

void require_inside_gamma(const Subgroup& gamma, const FpSet& s, const char* name) {
    for (uint32_t x : s.elements())
        if (x == 0 || !gamma.contains(x))
            fail(errc::support_violation, std::string(name) + " is not contained in the subgroup");
}

// sum over alpha of |c_alpha(S - c)|^2 profiles for every c, accumulated.
std::vector<double> translated_power_profile(const CharBasis& basis, const FpSet& s,
                                             const FpSet& shifts) {
    const uint32_t t = basis.order();
    std::vector<double> acc(t, 0.0);
    for (uint32_t c : shifts.elements()) {
        GammaFn phi = indicator_on_gamma(basis, s, c);
        CoeffVector cv = coeffs(basis, phi);
        for (uint32_t i = 0; i < t; ++i) acc[i] += std::norm(cv.c[i]);
    }
    return acc;
}

} // namespace

double energy_mult_via_chars(const CharBasis& basis, const FpSet& a, const FpSet& b) {
    require_same_field(a, b);
    require_inside_gamma(basis.subgroup(), a, "A");
    require_inside_gamma(basis.subgroup(), b, "B");
    CoeffVector ca = coeffs(basis, indicator_on_gamma(basis, a));
    CoeffVector cb = coeffs(basis, indicator_on_gamma(basis, b));
    double s = 0;
    for (uint32_t i = 0; i < basis.order(); ++i) s += std::norm(ca.c[i]) * std::norm(cb.c[i]);
    return double(basis.order()) * s;
}

double t_via_chars(const CharBasis& basis, const FpSet& a, const FpSet& b, const FpSet& c,
                   const FpSet& d) {
    require_same_field(a, b);
    require_same_field(a, c);
    require_same_field(a, d);
    const auto& gamma = basis.subgroup();
    const auto& f = gamma.field;
    auto check_pairs = [&](const FpSet& s, const FpSet& shifts, const char* what) {
        for (uint32_t x : s.elements())
            for (uint32_t y : shifts.elements()) {
                uint32_t diff = f->sub(x, y);
                if (diff == 0 || !gamma.contains(diff))
                    fail(errc::hypothesis_violation,
                         std::string(what) + " differences leave the subgroup");
            }
    };
    check_pairs(a, c, "A-C");
    check_pairs(b, d, "B-D");

    auto pa = translated_power_profile(basis, a, c);
    auto pb = translated_power_profile(basis, b, d);
    double s = 0;
    for (uint32_t i = 0; i < basis.order(); ++i) s += pa[i] * pb[i];
    return double(basis.order()) * s;
}

std::pair<cplx, cplx> average_action_identity(const OperatorSpec& spec, const GammaFn& h1,
                                              const GammaFn& h2) {
    const auto& gamma = spec.gamma;
    const auto& f = gamma.field;
    const uint32_t t = gamma.t;
    if (h1.size() != t || h2.size() != t)
        fail(errc::support_violation, "functions must live on the subgroup");
    CharBasis basis(gamma);

    std::vector<uint32_t> elems(t);
    for (uint32_t l = 0; l < t; ++l) elems[l] = f->pow_table()[std::size_t(gamma.n) * l];
    std::vector<std::vector<double>> kernel(t, std::vector<double>(t));
    for (uint32_t lx = 0; lx < t; ++lx)
        for (uint32_t ly = 0; ly < t; ++ly)
            kernel[lx][ly] = spec.g(f->sub(elems[lx], elems[ly]));

    // Left side: dilating by generator^m rotates subgroup coordinates.
    cplx lhs(0.0, 0.0);
    for (uint32_t m = 0; m < t; ++m) {
        cplx inner(0.0, 0.0);
        for (uint32_t lx = 0; lx < t; ++lx) {
            const uint32_t sx = (lx + m) % t;
            cplx row(0.0, 0.0);
            for (uint32_t ly = 0; ly < t; ++ly) row += kernel[lx][ly] * h1[(ly + m) % t];
            inner += row * std::conj(h2[sx]);
        }
        lhs += inner;
    }
    lhs /= double(t);

    // Right side: diagonal matrix elements <T f_alpha, f_alpha> via the
    // difference profile of the kernel in coordinates.
    CoeffVector c1 = coeffs(basis, h1);
    CoeffVector c2 = coeffs(basis, h2);
    std::vector<double> profile(t, 0.0); // sum over ly-lx = delta of kernel
    for (uint32_t lx = 0; lx < t; ++lx)
        for (uint32_t ly = 0; ly < t; ++ly) profile[(ly + t - lx) % t] += kernel[lx][ly];
    cplx rhs(0.0, 0.0);
    for (uint32_t alpha = 1; alpha <= t; ++alpha) {
        cplx diag(0.0, 0.0);
        for (uint32_t delta = 0; delta < t; ++delta)
            diag += profile[delta] * basis.chi(alpha, delta);
        diag /= double(t);
        rhs += c1.c[alpha - 1] * std::conj(c2.c[alpha - 1]) * diag;
    }
    return {lhs, rhs};
}

std::string SpectralReport::to_json() const {
    JsonWriter w;
    w.begin_object();
    w.key("eigenvalues").begin_array();
    for (const cplx& mu : eigenvalues) {
        w.begin_array();
        w.value(mu.real());
        w.value(mu.imag());
        w.end_array();
    }
    w.end_array();
    w.key("trace1");
    trace1.write(w);
    w.key("trace2");
    trace2.write(w);
    w.kv("normal", normal);
    w.end_object();
    return w.str();
}

} // namespace sglab
