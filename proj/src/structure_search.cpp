#include "subgroup_lab/structure_search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "subgroup_lab/collinear_t.hpp"
#include "subgroup_lab/conv_energy.hpp"

namespace sglab {

namespace {

// Exact |theta| <= 1 test: |count*(p-1)^k - t^(k+1)| <= bound * (p-1)^k with
// sqrt(p) rounded up. Falls back to long double when the integer products
// would not fit 128 bits (far beyond desk scale).
bool lemma_pass_exact(int64_t count, uint32_t t, uint32_t p, std::size_t k, double error_bound) {
    if (std::log2((long double)t) * (k + 1) < 120 &&
        std::log2((long double)std::max(2u, p - 1)) * k < 120) {
        __int128 den = 1, num = 1;
        for (std::size_t i = 0; i < k; ++i) den *= (p - 1);
        for (std::size_t i = 0; i <= k; ++i) num *= t;
        __int128 lhs = __int128(count) * den - num;
        if (lhs < 0) lhs = -lhs;
        return (long double)lhs <= (long double)error_bound * (long double)den;
    }
    const long double main = std::pow((long double)t, (long double)(k + 1)) /
                             std::pow((long double)(p - 1), (long double)k);
    return std::fabs((long double)count - main) <= (long double)error_bound;
}

IntersectionRecord shift_intersection_impl(const FpSet& base_elements, uint32_t t,
                                           const std::vector<uint32_t>& shifts) {
    const auto& f = base_elements.field();
    const uint32_t p = f->p();

    if (shifts.empty()) fail(errc::bad_shifts, "need at least one shift");
    std::set<uint32_t> distinct;
    for (uint32_t x : shifts) {
        uint32_t r = x % p;
        if (r == 0) fail(errc::bad_shifts, "shifts must be nonzero");
        if (!distinct.insert(r).second) fail(errc::bad_shifts, "shifts must be pairwise distinct");
    }

    FpSet acc = base_elements;
    for (uint32_t x : shifts) acc = acc.intersect(transform(base_elements, 1, x % p));

    const std::size_t k = shifts.size();
    IntersectionRecord rec;
    rec.count = int64_t(acc.size());
    rec.main_term = double(std::pow((long double)t, (long double)(k + 1)) /
                           std::pow((long double)(p - 1), (long double)k));
    double sqrt_p = std::nextafter(std::sqrt(double(p)), std::numeric_limits<double>::infinity());
    rec.error_bound = double(k) * std::ldexp(1.0, int(k) + 3) * sqrt_p;
    rec.theta = (double(rec.count) - rec.main_term) / rec.error_bound;
    rec.pass = lemma_pass_exact(rec.count, t, p, k, rec.error_bound);

    double root = std::pow(double(t), 1.0 / double(2 * k + 1));
    rec.many_shifts =
        CheckRecord::make("many_shifts_bound", double(rec.count),
                          4.0 * double(k + 1) * std::pow(root + 1.0, double(k + 1)), false);
    return rec;
}

} // namespace

IntersectionRecord shift_intersection(const Subgroup& base, const std::vector<uint32_t>& shifts) {
    return shift_intersection_impl(base.elements, base.t, shifts);
}

IntersectionRecord shift_intersection(const Coset& base, const std::vector<uint32_t>& shifts) {
    return shift_intersection_impl(base.elements, base.subgroup.t, shifts);
}

std::string IntersectionRecord::to_json() const {
    JsonWriter w;
    w.begin_object();
    w.kv("count", count);
    w.kv("main_term", main_term);
    w.kv("error_bound", error_bound);
    w.kv("theta", theta);
    w.kv("pass", pass);
    w.key("many_shifts");
    many_shifts.write(w);
    w.end_object();
    return w.str();
}

MitkinReport mitkin_sum(const Subgroup& gamma, const Subgroup& pi,
                        const std::vector<std::pair<uint32_t, uint32_t>>& theta) {
    if (gamma.field->p() != pi.field->p()) fail(errc::field_mismatch, "subgroup fields differ");
    const auto& f = gamma.field;
    const uint32_t p = f->p();

    // The inner count is invariant under u -> u*gamma, v -> v*pi, so pairs
    // collapse to their canonical coset representatives.
    std::set<std::pair<uint32_t, uint32_t>> dedup;
    for (auto [u, v] : theta) {
        u %= p;
        v %= p;
        if (u == 0 || v == 0) fail(errc::bad_shifts, "coset representatives must be nonzero");
        dedup.insert({coset_min(gamma, u), coset_min(pi, v)});
    }

    MitkinReport rep;
    rep.pairs_used = dedup.size();
    for (auto [u, v] : dedup) {
        const uint32_t v_inv = f->inv(v);
        for (uint32_t x : gamma.elements.elements()) {
            // y = (1 - u x) / v must land in Pi.
            uint32_t y = f->mul(f->sub(1, f->mul(u, x)), v_inv);
            if (pi.contains(y)) ++rep.sum;
        }
    }

    const __int128 tg = gamma.t, tp = pi.t, th = __int128(dedup.size());
    rep.size_hypothesis = (tg * tp) * (tg * tp) * th < __int128(p) * p * p;
    rep.density_hypothesis = th * 33 * 33 * 33 <= tg * tp;
    rep.incidence_bound = CheckRecord::make(
        "mitkin_incidences", double(rep.sum),
        std::cbrt(double(gamma.t) * double(pi.t) * double(dedup.size()) * double(dedup.size())),
        false);
    return rep;
}

std::string MitkinReport::to_json() const {
    JsonWriter w;
    w.begin_object();
    w.kv("sum", sum);
    w.kv("pairs_used", uint64_t(pairs_used));
    w.kv("size_hypothesis", size_hypothesis);
    w.kv("density_hypothesis", density_hypothesis);
    w.key("incidence_bound");
    incidence_bound.write(w);
    w.end_object();
    return w.str();
}

FpSet gamma_closure(const Subgroup& gamma, const FpSet& q) {
    const auto& f = gamma.field;
    std::vector<uint64_t> mask((f->p() + 63) / 64, 0);
    for (uint32_t x : q.elements()) {
        if (x == 0) {
            mask[0] |= 1ull;
            continue;
        }
        for (uint32_t g : gamma.elements.elements()) {
            uint32_t y = f->mul(x, g);
            mask[y >> 6] |= 1ull << (y & 63);
        }
    }
    return FpSet::from_mask(f, mask);
}

namespace {

// Single-word mask helpers for the exhaustive search (p <= 31 < 64).
uint64_t rotate_mod_p(uint64_t m, uint32_t by, uint32_t p) {
    // result bit b = m bit (b + by) mod p
    by %= p;
    if (by == 0) return m;
    const uint64_t all = (1ull << p) - 1;
    return ((m >> by) | (m << (p - by))) & all;
}

uint64_t sumset_mask(uint64_t a, uint64_t b, uint32_t p) {
    uint64_t out = 0;
    for (uint64_t m = a; m;) {
        uint32_t x = uint32_t(__builtin_ctzll(m));
        m &= m - 1;
        out |= rotate_mod_p(b, p - x, p); // b shifted by +x
    }
    return out;
}

FpSet set_from_bits(const Field& f, uint64_t m) {
    std::vector<uint32_t> elems;
    while (m) {
        elems.push_back(uint32_t(__builtin_ctzll(m)));
        m &= m - 1;
    }
    return FpSet::of_sorted_unique(f, std::move(elems));
}

void attach_ab_product_checks(DecompositionResult& res) {
    // When the target strips to a multiplicative subgroup (with or without
    // zero), every emitted decomposition obeys |A||B| < 4p.
    const auto& f = res.target.field();
    FpSet stripped = res.target.without(0);
    if (stripped.is_empty() || !is_multiplicative_subgroup(stripped)) return;
    for (const auto& [a, b] : res.pairs) {
        int64_t prod = int64_t(a.size()) * int64_t(b.size());
        res.checks.push_back(CheckRecord::make("ab_product_bound", double(prod),
                                               4.0 * double(f->p()) - 1, true, true,
                                               prod < 4 * int64_t(f->p())));
    }
}

} // namespace

DecompositionResult find_decompositions(const FpSet& s, std::size_t min_size,
                                        uint32_t exhaustive_limit) {
    const auto& f = s.field();
    const uint32_t p = f->p();
    if (s.size() < 2) fail(errc::empty_set, "target must have at least 2 elements");
    if (min_size < 1) min_size = 1;
    if (p > exhaustive_limit || p > 63)
        fail(errc::too_large_for_exhaustive,
             "p=" + std::to_string(p) + " exceeds the exhaustive limit " +
                 std::to_string(std::min<uint32_t>(exhaustive_limit, 63)) +
                 "; use sampled mode");

    uint64_t s_mask = 0;
    for (uint32_t x : s.elements()) s_mask |= 1ull << x;

    DecompositionResult res;
    res.target = s;
    res.exhaustive = true;

    std::set<std::pair<uint64_t, uint64_t>> seen;
    const uint64_t limit = 1ull << p;
    for (uint64_t a = 1; a < limit; ++a) {
        if (std::size_t(__builtin_popcountll(a)) < min_size) continue;
        // Maximal compatible partner: B_max = intersection of (S - x), x in A.
        uint64_t b_max = (1ull << p) - 1;
        for (uint64_t m = a; m;) {
            uint32_t x = uint32_t(__builtin_ctzll(m));
            m &= m - 1;
            b_max &= rotate_mod_p(s_mask, x, p);
            if (std::size_t(__builtin_popcountll(b_max)) < min_size) break;
        }
        if (std::size_t(__builtin_popcountll(b_max)) < min_size) continue;
        if (sumset_mask(a, b_max, p) != s_mask) continue;
        uint64_t lo = std::min(a, b_max), hi = std::max(a, b_max);
        if (seen.insert({lo, hi}).second)
            res.pairs.emplace_back(set_from_bits(f, a), set_from_bits(f, b_max));
    }
    res.primitive = res.pairs.empty();
    attach_ab_product_checks(res);
    return res;
}

DecompositionResult sample_decompositions(const FpSet& s, std::size_t min_size, uint64_t seed,
                                          uint64_t trials) {
    const auto& f = s.field();
    const uint32_t p = f->p();
    if (s.size() < 2) fail(errc::empty_set, "target must have at least 2 elements");
    if (min_size < 1) min_size = 1;

    DecompositionResult res;
    res.target = s;
    res.exhaustive = false;
    res.primitive = false;

    SplitMix64 rng(seed);
    std::set<std::vector<uint32_t>> seen;
    for (uint64_t trial = 0; trial < trials; ++trial) {
        // Any summand A is contained in S - b for each partner element b,
        // so anchor the draw inside a random translate of S.
        uint32_t anchor = uint32_t(rng.below(p));
        FpSet pool = transform(s, 1, f->neg(anchor));
        std::size_t want = min_size + std::size_t(rng.below(3));
        FpSet a = FpSet::empty(f);
        for (std::size_t i = 0; i < want * 4 && a.size() < want; ++i)
            a = a.with(pool.elements()[rng.below(pool.size())]);
        if (a.size() < min_size) continue;
        FpSet b_max = FpSet::full(f);
        for (uint32_t x : a.elements()) b_max = b_max.intersect(transform(s, 1, f->neg(x)));
        if (b_max.size() < min_size) continue;
        if (!(sumset(a, b_max) == s)) continue;
        if (!seen.insert(a.elements()).second) continue;
        if (seen.count(b_max.elements())) continue; // symmetric duplicate
        res.pairs.emplace_back(a, b_max);
    }
    attach_ab_product_checks(res);
    return res;
}

std::string DecompositionResult::to_json() const {
    JsonWriter w;
    w.begin_object();
    w.kv("p", uint64_t(target.p()));
    w.key("target").begin_array();
    for (uint32_t x : target.elements()) w.value(x);
    w.end_array();
    w.kv("exhaustive", exhaustive);
    w.kv("primitive", primitive);
    w.key("pairs").begin_array();
    for (const auto& [a, b] : pairs) {
        w.begin_object();
        w.key("a").begin_array();
        for (uint32_t x : a.elements()) w.value(x);
        w.end_array();
        w.key("b").begin_array();
        for (uint32_t x : b.elements()) w.value(x);
        w.end_array();
        w.end_object();
    }
    w.end_array();
    w.key("checks").begin_array();
    for (const auto& c : checks) c.write(w);
    w.end_array();
    w.end_object();
    return w.str();
}

FpSet affine_canonical_form(const FpSet& a) {
    const auto& f = a.field();
    const uint32_t p = f->p();
    if (a.is_empty()) return a;
    std::vector<uint32_t> best;
    bool have = false;
    std::vector<uint32_t> cand;
    for (uint32_t lambda = 1; lambda < p; ++lambda) {
        std::vector<uint32_t> dil;
        dil.reserve(a.size());
        for (uint32_t x : a.elements()) dil.push_back(f->mul(lambda, x));
        // The lexicographic minimum over translations starts at 0, so only
        // translates that move some element to 0 can win.
        for (uint32_t anchor : dil) {
            cand.clear();
            for (uint32_t x : dil) cand.push_back(f->sub(x, anchor));
            std::sort(cand.begin(), cand.end());
            if (!have || cand < best) {
                best = cand;
                have = true;
            }
        }
    }
    return FpSet::of_sorted_unique(f, best);
}

PerfectDifferenceRecord perfect_difference_check(const FpSet& a, const Subgroup& gamma,
                                                 uint32_t xi) {
    const auto& f = gamma.field;
    xi %= f->p();
    if (xi == 0) fail(errc::zero_dilation, "xi must be nonzero");

    PerfectDifferenceRecord rec;
    FpSet diffs = difference_set(a, a);
    FpSet xi_gamma = transform(gamma.elements, xi, 0);
    rec.is_cover = diffs == xi_gamma.with(0);

    auto corr = corr_add(a, a, CorrMode::correlate);
    bool constant = true;
    int64_t c = -1;
    for (uint32_t x : xi_gamma.elements()) {
        if (c < 0)
            c = corr.values[x];
        else if (corr.values[x] != c)
            constant = false;
    }
    if (constant && c >= 0) {
        rec.c = c;
        int64_t sz = int64_t(a.size());
        rec.identity_holds = sz * sz - sz == c * int64_t(gamma.t);
    }
    return rec;
}

namespace {

struct CoverSearchState {
    const Field& f;
    const Subgroup& gamma;
    CoverMode mode;
    std::set<std::vector<uint32_t>> canonical_seen;
    std::vector<CoverSolution> solutions;

    void record(const FpSet& a) {
        FpSet canon = affine_canonical_form(a);
        if (!canonical_seen.insert(canon.elements()).second) return;
        CoverSolution sol;
        sol.set = canon;
        FpSet canon_diffs = difference_set(canon, canon).without(0);
        sol.xi = coset_min(gamma, canon_diffs.elements().front());
        sol.exact =
            difference_set(canon, canon) == transform(gamma.elements, sol.xi, 0).with(0);
        auto pd = perfect_difference_check(canon, gamma, sol.xi);
        sol.c = pd.c;
        solutions.push_back(std::move(sol));
    }
};

// Ordered depth-first growth for exact covers: every new element keeps all
// pairwise differences inside xi*Gamma, the set size stays within the
// sqrt bound, and subtrees that can no longer cover xi*Gamma are cut.
// `covered_mask` tracks which differences have appeared; `covered` counts
// them (0 included).
void exact_cover_dfs(CoverSearchState& st, const FpSet& allowed, std::size_t target,
                     std::vector<uint32_t>& elems, const std::vector<uint32_t>& cands,
                     std::vector<uint64_t>& covered_mask, std::size_t covered,
                     std::size_t cap) {
    const auto& f = st.f;
    if (elems.size() >= 2 && covered == target)
        st.record(FpSet::of(f, std::vector<int64_t>(elems.begin(), elems.end())));
    if (elems.size() >= cap) return;
    // Coverage can grow by at most the remaining capacity of new pairs.
    const std::size_t m = cap, a = elems.size();
    if (covered + (m * (m - 1) - a * (a - 1)) < target) return;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        const uint32_t x = cands[i];
        std::vector<uint32_t> next;
        next.reserve(cands.size() - i);
        for (std::size_t j = i + 1; j < cands.size(); ++j) {
            uint32_t y = cands[j];
            if (allowed.contains(f->sub(y, x)) && allowed.contains(f->sub(x, y)))
                next.push_back(y);
        }
        std::vector<uint32_t> added;
        elems.push_back(x);
        for (std::size_t k = 0; k + 1 < elems.size(); ++k) {
            for (uint32_t d : {f->sub(x, elems[k]), f->sub(elems[k], x)}) {
                if (!((covered_mask[d >> 6] >> (d & 63)) & 1u)) {
                    covered_mask[d >> 6] |= 1ull << (d & 63);
                    added.push_back(d);
                }
            }
        }
        exact_cover_dfs(st, allowed, target, elems, next, covered_mask,
                        covered + added.size(), cap);
        for (uint32_t d : added) covered_mask[d >> 6] &= ~(1ull << (d & 63));
        elems.pop_back();
    }
}

// Bron-Kerbosch with pivoting over the translation-invariant compatibility
// graph, anchored at 0: enumerates the maximal sets containing 0, which hit
// every affine class once.
void maximal_cover_bk(CoverSearchState& st, const FpSet& allowed, std::vector<uint32_t>& r,
                      FpSet p_set, FpSet x_set) {
    const auto& f = st.f;
    if (p_set.is_empty() && x_set.is_empty()) {
        if (r.size() >= 2)
            st.record(FpSet::of(f, std::vector<int64_t>(r.begin(), r.end())));
        return;
    }
    // Pivot: a vertex of P ∪ X with the most neighbours in P.
    uint32_t pivot = 0;
    std::size_t best = 0;
    bool have_pivot = false;
    for (const FpSet* side : {&p_set, &x_set})
        for (uint32_t u : side->elements()) {
            FpSet nu = transform(allowed, 1, u);
            std::size_t deg = p_set.intersection_size(nu);
            if (!have_pivot || deg > best) {
                best = deg;
                pivot = u;
                have_pivot = true;
            }
        }
    FpSet pivot_nb = transform(allowed, 1, pivot);
    const std::vector<uint32_t> frontier = p_set.minus(pivot_nb).elements();
    for (uint32_t v : frontier) {
        FpSet nv = transform(allowed, 1, v);
        r.push_back(v);
        maximal_cover_bk(st, allowed, r, p_set.intersect(nv), x_set.intersect(nv));
        r.pop_back();
        p_set = p_set.without(v);
        x_set = x_set.with(v);
    }
}

} // namespace

DifferenceCoverResult difference_cover_search(const Field& field, const Subgroup& gamma,
                                              CoverMode mode) {
    DifferenceCoverResult res;
    res.gamma = gamma;
    res.mode = mode;

    const auto& f = field;
    const uint32_t p = f->p();

    // A-A is symmetric, so any |A| >= 2 solution needs -1 inside Gamma.
    if (!gamma.contains(f->neg(1))) return res;

    CoverSearchState st{f, gamma, mode, {}, {}};
    const std::size_t cap = 1 + std::size_t(std::floor(std::sqrt(double(gamma.t) + 1)));

    for (uint32_t xi : coset_representatives(gamma)) {
        FpSet allowed = transform(gamma.elements, xi, 0);
        // Translation lets every class anchor at 0; 0's partners are the
        // symmetric part of xi*Gamma (all of it, since -1 is in Gamma).
        if (mode == CoverMode::exact) {
            std::vector<uint32_t> elems{0};
            std::vector<uint64_t> covered_mask((p + 63) / 64, 0);
            covered_mask[0] = 1; // difference 0
            exact_cover_dfs(st, allowed, allowed.size() + 1, elems, allowed.elements(),
                            covered_mask, 1, cap);
        } else {
            std::vector<uint32_t> r{0};
            maximal_cover_bk(st, allowed, r, allowed, FpSet::empty(f));
        }
    }

    res.solutions = std::move(st.solutions);
    std::sort(res.solutions.begin(), res.solutions.end(),
              [](const CoverSolution& a, const CoverSolution& b) {
                  return a.set.elements() < b.set.elements();
              });

    // Common constant across exact perfect solutions, when they agree.
    std::optional<int64_t> common;
    bool coherent = true;
    for (const auto& sol : res.solutions) {
        if (!sol.exact || !sol.c) continue;
        if (!common)
            common = sol.c;
        else if (*common != *sol.c)
            coherent = false;
    }
    if (coherent && common) res.c_value = common;
    return res;
}

std::string DifferenceCoverResult::to_json() const {
    JsonWriter w;
    w.begin_object();
    w.kv("p", uint64_t(gamma.field->p()));
    w.kv("order", uint64_t(gamma.t));
    w.kv("mode", mode == CoverMode::exact ? "exact" : "subset");
    w.key("solutions").begin_array();
    for (const auto& sol : solutions) {
        w.begin_object();
        w.key("set").begin_array();
        for (uint32_t x : sol.set.elements()) w.value(x);
        w.end_array();
        w.kv("xi", uint64_t(sol.xi));
        w.kv("exact", sol.exact);
        if (sol.c)
            w.kv("c", *sol.c);
        else
            w.key("c").value_null();
        w.end_object();
    }
    w.end_array();
    if (c_value)
        w.kv("c_value", *c_value);
    else
        w.key("c_value").value_null();
    w.end_object();
    return w.str();
}

} // namespace sglab
