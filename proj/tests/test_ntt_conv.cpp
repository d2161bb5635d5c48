#include <doctest.h>

#include "subgroup_lab/conv_energy.hpp"
#include "subgroup_lab/ntt.hpp"
#include "subgroup_lab/reference.hpp"
#include "subgroup_lab/rng.hpp"

using namespace sglab;

TEST_CASE("transform round trip") {
    SplitMix64 rng(11);
    for (std::size_t n : {1ull << 3, 1ull << 8}) {
        std::vector<uint64_t> data(n);
        for (auto& v : data) v = rng.below(1000000);
        auto orig = data;
        ntt::forward(data);
        ntt::inverse(data);
        CHECK(data == orig);
    }
}

TEST_CASE("cyclic convolution matches schoolbook on random vectors") {
    SplitMix64 rng(12);
    for (std::size_t L : {1ull, 2ull, 5ull, 13ull, 60ull}) {
        std::vector<int64_t> a(L), b(L);
        for (auto& v : a) v = int64_t(rng.below(50));
        for (auto& v : b) v = int64_t(rng.below(50));
        auto fast = ntt::cyclic_convolve(a, b);
        auto corr = ntt::cyclic_correlate(a, b);
        for (std::size_t x = 0; x < L; ++x) {
            int64_t direct = 0, direct_corr = 0;
            for (std::size_t y = 0; y < L; ++y) {
                direct += a[y] * b[(x + 2 * L - y) % L];
                direct_corr += a[y] * b[(y + x) % L];
            }
            CHECK(fast[x] == direct);
            CHECK(corr[x] == direct_corr);
        }
    }
}

TEST_CASE("corr_add known values") {
    Field f5 = make_field(5);
    FpSet a = FpSet::of(f5, {1, 2}), b = FpSet::of(f5, {1});
    auto conv = corr_add(a, b, CorrMode::convolve);
    CHECK(conv.values == std::vector<int64_t>{0, 0, 1, 1, 0});

    // (A o A)(0) = |A| always
    Field f13 = make_field(13);
    FpSet g = subgroup_of_order(f13, 6).elements;
    FpSet aa = FpSet::of(f13, {2, 5, 6});
    auto corr = corr_add(aa, aa, CorrMode::correlate);
    CHECK(corr.values[0] == 3);
    // representation function is 1 exactly on the order-6 subgroup
    for (uint32_t x = 1; x < 13; ++x) CHECK(corr.values[x] == (g.contains(x) ? 1 : 0));

    CHECK(corr.total() == int64_t(aa.size()) * int64_t(aa.size()));
}

TEST_CASE("corr_mult known values") {
    Field f13 = make_field(13);
    FpSet g = subgroup_of_order(f13, 6).elements;
    auto prod = corr_mult(g, g);
    for (uint32_t x = 0; x < 13; ++x) CHECK(prod.values[x] == (g.contains(x) ? 6 : 0));

    Field f5 = make_field(5);
    FpSet a = FpSet::of(f5, {0, 1});
    auto p2 = corr_mult(a, a);
    CHECK(p2.values[0] == 3);
    CHECK(p2.values[1] == 1);
    CHECK(p2.values[2] == 0);

    FpSet one = FpSet::of(f5, {1});
    FpSet b = FpSet::of(f5, {0, 2, 3});
    auto p3 = corr_mult(one, b);
    for (uint32_t x = 0; x < 5; ++x) CHECK(p3.values[x] == (b.contains(x) ? 1 : 0));
}

TEST_CASE("corr throws on field mismatch") {
    Field f5 = make_field(5), f7 = make_field(7);
    FpSet a = FpSet::of(f5, {1}), b = FpSet::of(f7, {1});
    CHECK_THROWS_AS(corr_add(a, b, CorrMode::convolve), sg_error);
    CHECK_THROWS_AS(corr_mult(a, b), sg_error);
    CHECK_THROWS_AS(energy_add(a, b), sg_error);
}

TEST_CASE("dense transform path agrees with the direct loops") {
    // Sets big enough that |A||B| > p log2 p forces the fast path; the
    // reference values come from pointwise pair counting.
    Field f = make_field(97);
    SplitMix64 rng(13);
    std::vector<int64_t> va, vb;
    for (int i = 0; i < 60; ++i) {
        va.push_back(int64_t(rng.below(97)));
        vb.push_back(int64_t(rng.below(97)));
    }
    FpSet a = FpSet::of(f, va), b = FpSet::of(f, vb);
    REQUIRE(a.size() * b.size() > 97 * 7);

    auto conv = corr_add(a, b, CorrMode::convolve);
    auto corr = corr_add(a, b, CorrMode::correlate);
    auto prod = corr_mult(a, b);
    for (uint32_t x = 0; x < 97; ++x) {
        CHECK(conv.values[x] == reference::convolve_at(a, b, x));
        CHECK(corr.values[x] == reference::correlate_at(a, b, x));
    }
    int64_t total = 0;
    for (auto v : prod.values) total += v;
    CHECK(total == int64_t(a.size()) * int64_t(b.size()));
    CHECK(energy_mult(a, b) == reference::energy_mult(a, b));
}

TEST_CASE("cf_eval known values and arity guard") {
    Field f5 = make_field(5);
    FpSet a = FpSet::of(f5, {1, 2});

    std::vector<FpSet> sets{a, a, a};
    std::vector<uint32_t> zero{0, 0};
    CHECK(cf_eval(sets, zero) == int64_t(a.size()));

    std::vector<uint32_t> ones{1, 1};
    CHECK(cf_eval(sets, ones) == 1); // only z=1: 1,2,2 all inside

    // k=1 agrees with the correlation at every point
    Field f13 = make_field(13);
    FpSet b = FpSet::of(f13, {3, 7, 9, 11});
    FpSet c = FpSet::of(f13, {1, 2, 5});
    auto corr = corr_add(b, c, CorrMode::correlate);
    for (uint32_t x = 0; x < 13; ++x) {
        std::vector<FpSet> two{b, c};
        std::vector<uint32_t> off{x};
        CHECK(cf_eval(two, off) == corr.values[x]);
    }

    std::vector<FpSet> one_set{a};
    std::vector<uint32_t> none{};
    CHECK_THROWS_AS(cf_eval(one_set, none), sg_error);
    std::vector<FpSet> ten(10, a);
    std::vector<uint32_t> nine(9, 0);
    CHECK_THROWS_AS(cf_eval(ten, nine), sg_error);
}

TEST_CASE("energy known values") {
    Field f5 = make_field(5);
    FpSet a12 = FpSet::of(f5, {1, 2});
    CHECK(energy_add(a12, a12) == 6);
    FpSet s1 = FpSet::of(f5, {2}), s2 = FpSet::of(f5, {4});
    CHECK(energy_add(s1, s2) == 1);

    Field f13 = make_field(13);
    FpSet g = subgroup_of_order(f13, 6).elements;
    CHECK(energy_add(g, g) == 114);
    CHECK(energy_mult(g, g) == 216);

    FpSet z01 = FpSet::of(f5, {0, 1});
    CHECK(energy_mult(z01, z01) == 10);
    FpSet one = FpSet::of(f5, {1});
    FpSet b = FpSet::of(f5, {0, 2, 4});
    CHECK(energy_mult(one, b) == int64_t(b.size()));
}

TEST_CASE("energies over the two-element field") {
    Field f = make_field(2);
    FpSet full = FpSet::full(f);
    CHECK(energy_add(full, full) == reference::energy_add(full, full));
    CHECK(energy_mult(full, full) == reference::energy_mult(full, full));
    FpSet one = FpSet::of(f, {1});
    CHECK(energy_mult(one, one) == 1);
}

TEST_CASE("energy identities and bounds on random sets") {
    SplitMix64 rng(17);
    for (uint32_t p : {11u, 31u}) {
        Field f = make_field(p);
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<int64_t> va, vb;
            std::size_t na = 1 + rng.below(6), nb = 1 + rng.below(6);
            for (std::size_t i = 0; i < na; ++i) va.push_back(int64_t(rng.below(p)));
            for (std::size_t i = 0; i < nb; ++i) vb.push_back(int64_t(rng.below(p)));
            FpSet a = FpSet::of(f, va), b = FpSet::of(f, vb);

            // three-way agreement
            auto conv = corr_add(a, b, CorrMode::convolve);
            auto corr = corr_add(a, b, CorrMode::correlate);
            auto ca = corr_add(a, a, CorrMode::correlate);
            auto cb = corr_add(b, b, CorrMode::correlate);
            int64_t e1 = 0, e2 = 0, e3 = 0;
            for (uint32_t x = 0; x < p; ++x) {
                e1 += conv.values[x] * conv.values[x];
                e2 += corr.values[x] * corr.values[x];
                e3 += ca.values[x] * cb.values[x];
            }
            int64_t e = energy_add(a, b);
            CHECK(e == e1);
            CHECK(e == e2);
            CHECK(e == e3);
            CHECK(e == reference::energy_add(a, b));

            // mass identity
            CHECK(conv.total() == int64_t(a.size() * b.size()));
            CHECK(corr_mult(a, b).total() == int64_t(a.size() * b.size()));

            // Cauchy-Schwarz ceiling
            int64_t sa = int64_t(a.size()), sb = int64_t(b.size());
            CHECK(e <= sa * sa * sb);
            CHECK(e <= sb * sb * sa);
            CHECK(__int128(e - 1) * (e - 1) < __int128(sa * sa * sa) * (sb * sb * sb));

            CHECK(energy_mult(a, b) == reference::energy_mult(a, b));
        }
    }
}
