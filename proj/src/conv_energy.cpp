#include "subgroup_lab/conv_energy.hpp"

#include <cmath>

#include "subgroup_lab/json_writer.hpp"
#include "subgroup_lab/ntt.hpp"

namespace sglab {

int64_t CountVector::total() const {
    int64_t s = 0;
    for (int64_t v : values) s += v;
    return s;
}

std::string CountVector::to_json() const {
    JsonWriter w;
    w.begin_object();
    w.kv("p", uint64_t(field->p()));
    w.key("values").begin_object();
    for (uint32_t x = 0; x < field->p(); ++x)
        if (values[x] != 0) w.kv(std::to_string(x), values[x]);
    w.end_object();
    w.end_object();
    return w.str();
}

namespace {

bool dense_pays_off(std::size_t na, std::size_t nb, uint32_t length) {
    if (length < 2) return false;
    double work = double(na) * double(nb);
    return work > double(length) * std::log2(double(length));
}

std::vector<int64_t> indicator(const FpSet& s) {
    std::vector<int64_t> v(s.p(), 0);
    for (uint32_t x : s.elements()) v[x] = 1;
    return v;
}

} // namespace

CountVector corr_add(const FpSet& a, const FpSet& b, CorrMode mode) {
    require_same_field(a, b);
    const uint32_t p = a.p();
    CountVector out{a.field(), std::vector<int64_t>(p, 0)};

    if (dense_pays_off(a.size(), b.size(), p)) {
        auto ia = indicator(a), ib = indicator(b);
        out.values = mode == CorrMode::convolve ? ntt::cyclic_convolve(ia, ib)
                                                : ntt::cyclic_correlate(ia, ib);
        return out;
    }

    const auto& f = a.field();
    if (mode == CorrMode::convolve) {
        for (uint32_t x : a.elements())
            for (uint32_t y : b.elements()) ++out.values[f->add(x, y)];
    } else {
        for (uint32_t x : a.elements())
            for (uint32_t y : b.elements()) ++out.values[f->sub(y, x)];
    }
    return out;
}

CountVector corr_mult(const FpSet& a, const FpSet& b) {
    require_same_field(a, b);
    const auto& f = a.field();
    const uint32_t p = f->p();
    const uint32_t m = p - 1;
    CountVector out{a.field(), std::vector<int64_t>(p, 0)};

    const bool a0 = a.contains(0), b0 = b.contains(0);
    const std::size_t na = a.size() - (a0 ? 1 : 0);
    const std::size_t nb = b.size() - (b0 ? 1 : 0);

    // Products hitting zero: a=0 pairs with all of B and vice versa.
    out.values[0] = int64_t(a0 ? b.size() : 0) + int64_t(b0 ? a.size() : 0) -
                    int64_t(a0 && b0 ? 1 : 0);

    if (na > 0 && nb > 0) {
        if (dense_pays_off(na, nb, m)) {
            std::vector<int64_t> la(m, 0), lb(m, 0);
            for (uint32_t x : a.elements())
                if (x != 0) ++la[f->dlog(x)];
            for (uint32_t x : b.elements())
                if (x != 0) ++lb[f->dlog(x)];
            auto prod = ntt::cyclic_convolve(la, lb);
            for (uint32_t k = 0; k < m; ++k) out.values[f->pow_table()[k]] += prod[k];
        } else {
            for (uint32_t x : a.elements()) {
                if (x == 0) continue;
                for (uint32_t y : b.elements()) {
                    if (y == 0) continue;
                    ++out.values[f->mul(x, y)];
                }
            }
        }
    }
    return out;
}

int64_t cf_eval(std::span<const FpSet> sets, std::span<const uint32_t> offsets) {
    if (sets.size() < 2 || sets.size() > 9 || offsets.size() + 1 != sets.size())
        fail(errc::bad_arity, "expected k+1 sets and k offsets with 1 <= k <= 8");
    for (std::size_t i = 1; i < sets.size(); ++i) require_same_field(sets[0], sets[i]);
    const auto& f = sets[0].field();
    int64_t count = 0;
    for (uint32_t z : sets[0].elements()) {
        bool all = true;
        for (std::size_t j = 0; j + 1 < sets.size(); ++j)
            if (!sets[j + 1].contains(f->add(z, offsets[j] % f->p()))) {
                all = false;
                break;
            }
        if (all) ++count;
    }
    return count;
}

int64_t energy_add(const FpSet& a, const FpSet& b) {
    auto conv = corr_add(a, b, CorrMode::convolve);
    int64_t e = 0;
    for (int64_t v : conv.values) e += v * v;
    return e;
}

int64_t energy_mult(const FpSet& a, const FpSet& b) {
    auto prod = corr_mult(a, b);
    int64_t e = 0;
    for (int64_t v : prod.values) e += v * v;
    return e;
}

int64_t energy_mult_logspace(const std::vector<uint32_t>& dlogs_a, bool a_has_zero,
                             const std::vector<uint32_t>& dlogs_b, bool b_has_zero,
                             uint32_t group_order, std::vector<int64_t>& scratch,
                             std::vector<uint32_t>& touched) {
    // a*b = 0 on both sides of a quadruple: (#zero pairs)^2.
    const int64_t size_a = int64_t(dlogs_a.size()) + (a_has_zero ? 1 : 0);
    const int64_t size_b = int64_t(dlogs_b.size()) + (b_has_zero ? 1 : 0);
    int64_t zero_pairs = (a_has_zero ? size_b : 0) + (b_has_zero ? size_a : 0) -
                         (a_has_zero && b_has_zero ? 1 : 0);
    int64_t energy = zero_pairs * zero_pairs;

    touched.clear();
    for (uint32_t i : dlogs_a)
        for (uint32_t j : dlogs_b) {
            uint32_t k = i + j;
            if (k >= group_order) k -= group_order;
            if (scratch[k]++ == 0) touched.push_back(k);
        }
    for (uint32_t k : touched) {
        energy += scratch[k] * scratch[k];
        scratch[k] = 0;
    }
    return energy;
}

} // namespace sglab
