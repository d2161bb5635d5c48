#include "subgroup_lab/reference.hpp"

namespace sglab {
namespace reference {

int64_t convolve_at(const FpSet& a, const FpSet& b, uint32_t x) {
    const auto& f = a.field();
    int64_t n = 0;
    for (uint32_t u : a.elements())
        for (uint32_t v : b.elements())
            if (f->add(u, v) == x) ++n;
    return n;
}

int64_t correlate_at(const FpSet& a, const FpSet& b, uint32_t x) {
    const auto& f = a.field();
    int64_t n = 0;
    for (uint32_t u : a.elements())
        for (uint32_t v : b.elements())
            if (f->sub(v, u) == x) ++n;
    return n;
}

int64_t energy_add(const FpSet& a, const FpSet& b) {
    const auto& f = a.field();
    int64_t n = 0;
    for (uint32_t a1 : a.elements())
        for (uint32_t a2 : a.elements())
            for (uint32_t b1 : b.elements())
                for (uint32_t b2 : b.elements())
                    if (f->add(a1, b1) == f->add(a2, b2)) ++n;
    return n;
}

int64_t energy_mult(const FpSet& a, const FpSet& b) {
    const auto& f = a.field();
    int64_t n = 0;
    for (uint32_t a1 : a.elements())
        for (uint32_t a2 : a.elements())
            for (uint32_t b1 : b.elements())
                for (uint32_t b2 : b.elements())
                    if (f->mul(a1, b1) == f->mul(a2, b2)) ++n;
    return n;
}

int64_t cf_eval(const std::vector<FpSet>& sets, const std::vector<uint32_t>& offsets) {
    const auto& f = sets.front().field();
    int64_t n = 0;
    for (uint32_t z = 0; z < f->p(); ++z) {
        bool all = sets[0].contains(z);
        for (std::size_t j = 0; all && j < offsets.size(); ++j)
            all = sets[j + 1].contains(f->add(z, offsets[j] % f->p()));
        if (all) ++n;
    }
    return n;
}

int64_t t_quantity(const FpSet& a, const FpSet& b, const FpSet& c, const FpSet& d) {
    const auto& f = a.field();
    int64_t n = 0;
    for (uint32_t cc : c.elements())
        for (uint32_t dd : d.elements())
            for (uint32_t a1 : a.elements())
                for (uint32_t a2 : a.elements())
                    for (uint32_t b1 : b.elements())
                        for (uint32_t b2 : b.elements()) {
                            uint64_t lhs = uint64_t(f->sub(a1, cc)) * f->sub(b1, dd) % f->p();
                            uint64_t rhs = uint64_t(f->sub(a2, cc)) * f->sub(b2, dd) % f->p();
                            if (lhs == rhs) ++n;
                        }
    return n;
}

int64_t t_star(const FpSet& a, const FpSet& c) {
    const auto& f = a.field();
    const uint32_t p = f->p();
    int64_t total = 0;
    for (uint32_t lambda = 0; lambda < p; ++lambda) {
        int64_t inner = 0;
        for (uint32_t x = 1; x < p; ++x) {
            // C_3(C,A,A)(x, lambda*x)
            uint32_t lx = f->mul(lambda, x);
            for (uint32_t z : c.elements())
                if (a.contains(f->add(z, x)) && a.contains(f->add(z, lx))) ++inner;
        }
        total += inner * inner;
    }
    return total;
}

int64_t dual_energy_sum(const FpSet& a, const FpSet& b, const FpSet& c) {
    int64_t total = 0;
    for (uint32_t cc : c.elements()) {
        FpSet shifted = transform(a, 1, a.field()->neg(cc));
        total += energy_mult(shifted, b);
    }
    return total;
}

} // namespace reference
} // namespace sglab
