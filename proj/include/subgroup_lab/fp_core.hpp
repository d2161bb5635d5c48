#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "subgroup_lab/errors.hpp"

namespace sglab {

// Arithmetic tables for F_p. pow_table[i] = g^i for 0 <= i < p-1 and
// dlog_table inverts it on 1..p-1, so multiplicative structure (inverses,
// subgroup membership, coset walks) is O(1) per element after an O(p) build.
class PrimeField {
public:
    static uint64_t table_limit(); // default 10^7, SUBGROUP_LAB_MAX_P overrides

    uint32_t p() const { return p_; }
    uint32_t primitive_root() const { return g_; }

    uint32_t pow_of(uint32_t exponent) const { return pow_table_[exponent % (p_ - 1)]; }
    uint32_t dlog(uint32_t x) const { return dlog_table_[x]; } // x in 1..p-1

    const std::vector<uint32_t>& pow_table() const { return pow_table_; }
    const std::vector<uint32_t>& dlog_table() const { return dlog_table_; }

    uint32_t add(uint32_t a, uint32_t b) const {
        uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    uint32_t mul(uint32_t a, uint32_t b) const {
        return uint32_t(uint64_t(a) * b % p_);
    }
    uint32_t inv(uint32_t a) const { // a != 0
        return pow_table_[(p_ - 1 - dlog_table_[a]) % (p_ - 1)];
    }
    uint32_t pow(uint32_t a, uint64_t e) const;

private:
    friend std::shared_ptr<const PrimeField> make_field(uint64_t p);
    PrimeField() = default;

    uint32_t p_ = 0;
    uint32_t g_ = 0;
    std::vector<uint32_t> pow_table_;
    std::vector<uint32_t> dlog_table_;
};

using Field = std::shared_ptr<const PrimeField>;

// Builds the field tables. Throws not_prime / too_large.
Field make_field(uint64_t p);

bool is_prime_u64(uint64_t n);
std::vector<uint32_t> divisors_ascending(uint32_t n);

// A subset of F_p held both ways: a bitmask for O(p/64) set algebra and a
// sorted element list for O(|A|) iteration. Immutable after construction.
class FpSet {
public:
    FpSet() = default;
    static FpSet empty(Field field);
    // Values are reduced mod p and deduplicated.
    static FpSet of(Field field, const std::vector<int64_t>& values);
    static FpSet of_sorted_unique(Field field, std::vector<uint32_t> elems);
    static FpSet from_mask(Field field, const std::vector<uint64_t>& mask);
    static FpSet full(Field field); // all of F_p

    const Field& field() const { return field_; }
    uint32_t p() const { return field_->p(); }
    std::size_t size() const { return elems_.size(); }
    bool is_empty() const { return elems_.empty(); }
    // Rvalue overloads hand the vector out by value, so iterating a
    // temporary's elements never dangles.
    const std::vector<uint32_t>& elements() const& { return elems_; }
    std::vector<uint32_t> elements() && { return std::move(elems_); }
    const std::vector<uint64_t>& mask() const& { return mask_; }
    std::vector<uint64_t> mask() && { return std::move(mask_); }

    bool contains(uint32_t x) const {
        return (mask_[x >> 6] >> (x & 63)) & 1u;
    }

    FpSet intersect(const FpSet& other) const;
    FpSet unite(const FpSet& other) const;
    FpSet minus(const FpSet& other) const;
    FpSet with(uint32_t x) const;
    FpSet without(uint32_t x) const;

    bool operator==(const FpSet& other) const {
        return field_->p() == other.field_->p() && elems_ == other.elems_;
    }
    bool operator!=(const FpSet& other) const { return !(*this == other); }

    std::size_t intersection_size(const FpSet& other) const;

private:
    Field field_;
    std::vector<uint64_t> mask_;
    std::vector<uint32_t> elems_;
};

// x |-> lambda*x + shift applied elementwise. lambda must be nonzero.
FpSet transform(const FpSet& set, uint32_t lambda, uint32_t shift);

FpSet sumset(const FpSet& a, const FpSet& b);        // {x+y}
FpSet difference_set(const FpSet& a, const FpSet& b); // {x-y}

void require_same_field(const FpSet& a, const FpSet& b);

// The multiplicative subgroup of order t (t | p-1): {g^(n*l)}, n = (p-1)/t.
struct Subgroup {
    Field field;
    uint32_t t = 0;         // order
    uint32_t n = 0;         // index (p-1)/t
    uint32_t generator = 0; // g^n
    FpSet elements;

    bool contains(uint32_t x) const { return elements.contains(x); }
    // Position l of x = generator^l within the subgroup; x must belong to it.
    uint32_t position_of(uint32_t x) const { return field->dlog(x) / n; }
};

Subgroup subgroup_of_order(const Field& field, uint32_t t); // not_a_divisor
std::vector<Subgroup> subgroups(const Field& field);        // ascending by order

// A multiplicative coset rep*Gamma. The canonical representative is the
// minimal residue of the coset, so equality is representative equality.
struct Coset {
    Subgroup subgroup;
    uint32_t representative = 0; // canonical: minimal residue in the coset
    FpSet elements;

    bool operator==(const Coset& other) const {
        return subgroup.t == other.subgroup.t && representative == other.representative &&
               subgroup.field->p() == other.subgroup.field->p();
    }
};

Coset coset_of(const Subgroup& gamma, uint32_t x); // x nonzero
uint32_t coset_min(const Subgroup& gamma, uint32_t x);
// Canonical representatives of all (p-1)/t cosets, ascending.
std::vector<uint32_t> coset_representatives(const Subgroup& gamma);

} // namespace sglab
