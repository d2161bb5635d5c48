#include "subgroup_lab/fp_core.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace sglab {

uint64_t PrimeField::table_limit() {
    if (const char* env = std::getenv("SUBGROUP_LAB_MAX_P")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v >= 2) return v;
    }
    return 10'000'000ull;
}

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::vector<uint32_t> divisors_ascending(uint32_t n) {
    std::vector<uint32_t> divs;
    for (uint32_t d = 1; uint64_t(d) * d <= n; ++d) {
        if (n % d == 0) {
            divs.push_back(d);
            if (d != n / d) divs.push_back(n / d);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

static std::vector<uint32_t> prime_factors(uint32_t n) {
    std::vector<uint32_t> fs;
    for (uint32_t d = 2; uint64_t(d) * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

static uint32_t pow_mod(uint64_t base, uint64_t e, uint64_t mod) {
    uint64_t r = 1 % mod;
    base %= mod;
    while (e) {
        if (e & 1) r = r * base % mod;
        base = base * base % mod;
        e >>= 1;
    }
    return uint32_t(r);
}

uint32_t PrimeField::pow(uint32_t a, uint64_t e) const { return pow_mod(a, e, p_); }

Field make_field(uint64_t p) {
    if (p > PrimeField::table_limit())
        fail(errc::too_large, "p=" + std::to_string(p) + " exceeds table limit " +
                                  std::to_string(PrimeField::table_limit()));
    if (!is_prime_u64(p)) fail(errc::not_prime, "p=" + std::to_string(p) + " is composite");

    auto field = std::shared_ptr<PrimeField>(new PrimeField());
    field->p_ = uint32_t(p);
    const uint32_t order = field->p_ - 1;

    // Smallest primitive root: g generates F_p^* iff g^((p-1)/f) != 1 for
    // every prime factor f of p-1.
    const auto factors = prime_factors(order);
    uint32_t g = 0;
    for (uint32_t cand = 1; cand < p; ++cand) {
        if (cand == 1 && p != 2) continue;
        bool ok = true;
        for (uint32_t f : factors)
            if (pow_mod(cand, order / f, p) == 1) {
                ok = false;
                break;
            }
        if (ok) {
            g = cand;
            break;
        }
    }
    field->g_ = g;

    field->pow_table_.resize(order);
    field->dlog_table_.assign(field->p_, 0);
    uint64_t acc = 1;
    for (uint32_t i = 0; i < order; ++i) {
        field->pow_table_[i] = uint32_t(acc);
        field->dlog_table_[acc] = i;
        acc = acc * g % p;
    }
    return field;
}

FpSet FpSet::empty(Field field) {
    FpSet s;
    s.field_ = std::move(field);
    s.mask_.assign((s.field_->p() + 63) / 64, 0);
    return s;
}

FpSet FpSet::of(Field field, const std::vector<int64_t>& values) {
    FpSet s = empty(std::move(field));
    const int64_t p = s.field_->p();
    for (int64_t v : values) {
        int64_t r = v % p;
        if (r < 0) r += p;
        s.mask_[r >> 6] |= 1ull << (r & 63);
    }
    for (uint32_t x = 0; x < uint32_t(p); ++x)
        if (s.contains(x)) s.elems_.push_back(x);
    return s;
}

FpSet FpSet::of_sorted_unique(Field field, std::vector<uint32_t> elems) {
    FpSet s = empty(std::move(field));
    for (uint32_t x : elems) s.mask_[x >> 6] |= 1ull << (x & 63);
    s.elems_ = std::move(elems);
    return s;
}

FpSet FpSet::from_mask(Field field, const std::vector<uint64_t>& mask) {
    FpSet s = empty(std::move(field));
    s.mask_ = mask;
    s.mask_.resize((s.field_->p() + 63) / 64, 0);
    for (uint32_t x = 0; x < s.field_->p(); ++x)
        if (s.contains(x)) s.elems_.push_back(x);
    return s;
}

FpSet FpSet::full(Field field) {
    FpSet s = empty(std::move(field));
    s.elems_.resize(s.field_->p());
    for (uint32_t x = 0; x < s.field_->p(); ++x) {
        s.elems_[x] = x;
        s.mask_[x >> 6] |= 1ull << (x & 63);
    }
    return s;
}

void require_same_field(const FpSet& a, const FpSet& b) {
    if (!a.field() || !b.field() || a.field()->p() != b.field()->p())
        fail(errc::field_mismatch, "sets live over different primes");
}

FpSet FpSet::intersect(const FpSet& other) const {
    require_same_field(*this, other);
    std::vector<uint64_t> m(mask_.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = mask_[i] & other.mask_[i];
    return from_mask(field_, m);
}

FpSet FpSet::unite(const FpSet& other) const {
    require_same_field(*this, other);
    std::vector<uint64_t> m(mask_.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = mask_[i] | other.mask_[i];
    return from_mask(field_, m);
}

FpSet FpSet::minus(const FpSet& other) const {
    require_same_field(*this, other);
    std::vector<uint64_t> m(mask_.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = mask_[i] & ~other.mask_[i];
    return from_mask(field_, m);
}

FpSet FpSet::with(uint32_t x) const {
    if (contains(x)) return *this;
    FpSet s = *this;
    s.mask_[x >> 6] |= 1ull << (x & 63);
    s.elems_.insert(std::lower_bound(s.elems_.begin(), s.elems_.end(), x), x);
    return s;
}

FpSet FpSet::without(uint32_t x) const {
    if (!contains(x)) return *this;
    FpSet s = *this;
    s.mask_[x >> 6] &= ~(1ull << (x & 63));
    s.elems_.erase(std::lower_bound(s.elems_.begin(), s.elems_.end(), x));
    return s;
}

std::size_t FpSet::intersection_size(const FpSet& other) const {
    require_same_field(*this, other);
    std::size_t n = 0;
    for (std::size_t i = 0; i < mask_.size(); ++i)
        n += std::size_t(__builtin_popcountll(mask_[i] & other.mask_[i]));
    return n;
}

FpSet transform(const FpSet& set, uint32_t lambda, uint32_t shift) {
    const auto& f = set.field();
    lambda %= f->p();
    shift %= f->p();
    if (lambda == 0) fail(errc::zero_dilation, "dilation factor must be nonzero");
    std::vector<uint32_t> out;
    out.reserve(set.size());
    for (uint32_t a : set.elements()) out.push_back(f->add(f->mul(lambda, a), shift));
    std::sort(out.begin(), out.end());
    return FpSet::of_sorted_unique(f, std::move(out));
}

FpSet sumset(const FpSet& a, const FpSet& b) {
    require_same_field(a, b);
    FpSet out = FpSet::empty(a.field());
    std::vector<uint64_t> m((a.p() + 63) / 64, 0);
    const auto& f = a.field();
    for (uint32_t x : a.elements())
        for (uint32_t y : b.elements()) {
            uint32_t s = f->add(x, y);
            m[s >> 6] |= 1ull << (s & 63);
        }
    return FpSet::from_mask(f, m);
}

FpSet difference_set(const FpSet& a, const FpSet& b) {
    require_same_field(a, b);
    std::vector<uint64_t> m((a.p() + 63) / 64, 0);
    const auto& f = a.field();
    for (uint32_t x : a.elements())
        for (uint32_t y : b.elements()) {
            uint32_t d = f->sub(x, y);
            m[d >> 6] |= 1ull << (d & 63);
        }
    return FpSet::from_mask(f, m);
}

Subgroup subgroup_of_order(const Field& field, uint32_t t) {
    const uint32_t order = field->p() - 1;
    if (t == 0 || order % t != 0)
        fail(errc::not_a_divisor, "t=" + std::to_string(t) + " does not divide p-1=" +
                                      std::to_string(order));
    Subgroup g;
    g.field = field;
    g.t = t;
    g.n = order / t;
    g.generator = field->pow_of(g.n);
    std::vector<uint32_t> elems;
    elems.reserve(t);
    for (uint32_t l = 0; l < t; ++l) elems.push_back(field->pow_table()[std::size_t(g.n) * l]);
    std::sort(elems.begin(), elems.end());
    g.elements = FpSet::of_sorted_unique(field, std::move(elems));
    return g;
}

std::vector<Subgroup> subgroups(const Field& field) {
    std::vector<Subgroup> out;
    for (uint32_t t : divisors_ascending(field->p() - 1)) out.push_back(subgroup_of_order(field, t));
    return out;
}

uint32_t coset_min(const Subgroup& gamma, uint32_t x) {
    uint32_t best = x;
    const auto& f = gamma.field;
    for (uint32_t g : gamma.elements.elements()) best = std::min(best, f->mul(x, g));
    return best;
}

Coset coset_of(const Subgroup& gamma, uint32_t x) {
    x %= gamma.field->p();
    if (x == 0) fail(errc::zero_dilation, "coset representative must be nonzero");
    Coset c;
    c.subgroup = gamma;
    c.representative = coset_min(gamma, x);
    c.elements = transform(gamma.elements, x, 0);
    return c;
}

std::vector<uint32_t> coset_representatives(const Subgroup& gamma) {
    const uint32_t p = gamma.field->p();
    std::vector<bool> seen(p, false);
    std::vector<uint32_t> reps;
    reps.reserve(gamma.n);
    for (uint32_t x = 1; x < p; ++x) {
        if (seen[x]) continue;
        reps.push_back(x); // first unseen element of a coset is its minimum
        for (uint32_t g : gamma.elements.elements()) seen[gamma.field->mul(x, g)] = true;
    }
    return reps;
}

const char* errc_name(errc c) {
    switch (c) {
        case errc::not_prime: return "NotPrime";
        case errc::too_large: return "TooLarge";
        case errc::not_a_divisor: return "NotADivisor";
        case errc::zero_dilation: return "ZeroDilation";
        case errc::field_mismatch: return "FieldMismatch";
        case errc::bad_arity: return "BadArity";
        case errc::empty_set: return "EmptySet";
        case errc::support_violation: return "SupportViolation";
        case errc::not_invariant: return "NotInvariant";
        case errc::not_hermitian: return "NotHermitian";
        case errc::hypothesis_violation: return "HypothesisViolation";
        case errc::bad_shifts: return "BadShifts";
        case errc::too_large_for_exhaustive: return "TooLargeForExhaustive";
        case errc::empty_config: return "EmptyConfig";
        case errc::limit_exceeded: return "LimitExceeded";
    }
    return "Unknown";
}

} // namespace sglab
