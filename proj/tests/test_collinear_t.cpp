#include <doctest.h>

#include "subgroup_lab/collinear_t.hpp"
#include "subgroup_lab/conv_energy.hpp"
#include "subgroup_lab/reference.hpp"
#include "subgroup_lab/rng.hpp"

using namespace sglab;

namespace {

FpSet random_set(SplitMix64& rng, const Field& f, std::size_t max_size) {
    std::vector<int64_t> v;
    std::size_t n = 1 + rng.below(max_size);
    for (std::size_t i = 0; i < n; ++i) v.push_back(int64_t(rng.below(f->p())));
    return FpSet::of(f, v);
}

} // namespace

TEST_CASE("t_quantity known values") {
    Field f5 = make_field(5);
    FpSet a = FpSet::of(f5, {1, 2});
    CHECK(t_quantity(a, a, a, a) == 40);

    FpSet s1 = FpSet::of(f5, {0}), s2 = FpSet::of(f5, {2}), s3 = FpSet::of(f5, {3}),
          s4 = FpSet::of(f5, {4});
    CHECK(t_quantity(s1, s2, s3, s4) == 1);

    Field f13 = make_field(13);
    CHECK(t_quantity(FpSet::of(f13, {2, 5}), FpSet::of(f13, {2}), FpSet::of(f13, {6}),
                     FpSet::of(f13, {5})) == 2);

    CHECK_THROWS_AS(t_quantity(a, a, FpSet::empty(f5), a), sg_error);
}

TEST_CASE("t_star known values") {
    Field f5 = make_field(5);
    FpSet a = FpSet::of(f5, {1, 2});
    CHECK(t_star(a, a) == 8);
    FpSet single = FpSet::of(f5, {3});
    CHECK(t_star(single, single) == 0);

    // third-moment bound in the A = C case
    auto corr = corr_add(a, a, CorrMode::correlate);
    int64_t third = 0;
    for (auto v : corr.values) third += v * v * v;
    CHECK(t_star(a, a) <= int64_t(difference_set(a, a).size()) * third);
    CHECK(int64_t(difference_set(a, a).size()) * third == 30);
}

TEST_CASE("dual energy sum known values") {
    Field f5 = make_field(5);
    FpSet a = FpSet::of(f5, {1, 2}), b = FpSet::of(f5, {1}), c = FpSet::of(f5, {0});
    CHECK(dual_energy_sum(a, b, c) == 2);

    FpSet c1 = FpSet::of(f5, {3});
    FpSet shifted = transform(a, 1, f5->neg(3));
    CHECK(dual_energy_sum(a, b, c1) == energy_mult(shifted, b));
}

TEST_CASE("oracle equivalence on random small instances") {
    SplitMix64 rng(23);
    for (uint32_t p : {7u, 13u, 31u}) {
        Field f = make_field(p);
        for (int trial = 0; trial < 25; ++trial) {
            FpSet a = random_set(rng, f, 5), b = random_set(rng, f, 5);
            FpSet c = random_set(rng, f, 5), d = random_set(rng, f, 5);
            CHECK(t_quantity(a, b, c, d) == reference::t_quantity(a, b, c, d));
            CHECK(t_star(a, c) == reference::t_star(a, c));
            CHECK(dual_energy_sum(a, b, c) == reference::dual_energy_sum(a, b, c));
        }
    }
}

TEST_CASE("t_quantity affine invariances are exact") {
    SplitMix64 rng(29);
    Field f = make_field(31);
    for (int trial = 0; trial < 60; ++trial) {
        FpSet a = random_set(rng, f, 5), b = random_set(rng, f, 5);
        FpSet c = random_set(rng, f, 5), d = random_set(rng, f, 5);
        int64_t base = t_quantity(a, b, c, d);

        uint32_t x = uint32_t(rng.below(31)), y = uint32_t(rng.below(31));
        CHECK(t_quantity(transform(a, 1, f->neg(x)), transform(b, 1, f->neg(y)),
                         transform(c, 1, f->neg(x)), transform(d, 1, f->neg(y))) == base);

        uint32_t lam = 1 + uint32_t(rng.below(30)), mu = 1 + uint32_t(rng.below(30));
        CHECK(t_quantity(transform(a, lam, 0), transform(b, mu, 0), transform(c, lam, 0),
                         transform(d, mu, 0)) == base);
    }
}

TEST_CASE("threaded t_quantity equals single-threaded") {
    SplitMix64 rng(31);
    Field f = make_field(101);
    FpSet a = random_set(rng, f, 12), b = random_set(rng, f, 12);
    FpSet c = random_set(rng, f, 12), d = random_set(rng, f, 12);
    CHECK(t_quantity(a, b, c, d, 1) == t_quantity(a, b, c, d, 4));
}

TEST_CASE("error budget reconciles the main term") {
    SplitMix64 rng(37);
    Field f = make_field(31);
    for (int trial = 0; trial < 40; ++trial) {
        FpSet a = random_set(rng, f, 5), b = random_set(rng, f, 5);
        FpSet c = random_set(rng, f, 5), d = random_set(rng, f, 5);
        TReport rep = t_bounds_report(a, b, c, d);
        int64_t budget = int64_t(a.intersection_size(c)) * int64_t(b.size() * b.size()) *
                             int64_t(d.size()) +
                         int64_t(b.intersection_size(d)) * int64_t(a.size() * a.size()) *
                             int64_t(c.size()) +
                         2 * int64_t(a.intersection_size(c)) * int64_t(b.intersection_size(d)) *
                             int64_t(a.size()) * int64_t(b.size());
        CHECK(rep.error_budget == budget);
        CHECK(std::llabs(rep.t_value - rep.main_term) <= budget);
        for (const auto& chk : rep.bound_checks)
            if (chk.asserted) CHECK(chk.pass);
    }
}

TEST_CASE("disjoint supports make the main term exact") {
    Field f = make_field(31);
    FpSet a = FpSet::of(f, {1, 5, 9}), c = FpSet::of(f, {2, 6});
    FpSet b = FpSet::of(f, {3, 7}), d = FpSet::of(f, {4, 8, 12});
    TReport rep = t_bounds_report(a, b, c, d);
    CHECK(rep.error_budget == 0);
    CHECK(rep.t_value == rep.main_term);
}

TEST_CASE("symmetric main term equals t_star") {
    SplitMix64 rng(41);
    Field f = make_field(13);
    for (int trial = 0; trial < 20; ++trial) {
        FpSet a = random_set(rng, f, 4), c = random_set(rng, f, 4);
        TReport rep = t_bounds_report(a, a, c, c);
        REQUIRE(rep.t_star.has_value());
        CHECK(*rep.t_star == t_star(a, c));
        CHECK(std::llabs(rep.t_value - *rep.t_star) <= rep.error_budget);
    }
}

TEST_CASE("subgroup bound report") {
    Field f = make_field(13);
    Subgroup g = subgroup_of_order(f, 6);
    TReport rep = t_bounds_report(g.elements, g.elements, g.elements, g.elements, &g, &g);
    bool saw_subgroup_bound = false, saw_sigma = false, saw_third = false;
    for (const auto& chk : rep.bound_checks) {
        if (chk.name == "subgroup_t_upper") {
            saw_subgroup_bound = true;
            CHECK(chk.asserted);
            CHECK(chk.pass);
        }
        if (chk.name == "sigma_growth") {
            saw_sigma = true;
            CHECK_FALSE(chk.asserted);
        }
        if (chk.name == "t_star_third_moment") {
            saw_third = true;
            CHECK(chk.pass);
        }
        if (chk.name == "t_lower_bound") CHECK(chk.pass);
    }
    CHECK(saw_subgroup_bound);
    CHECK(saw_sigma);
    CHECK(saw_third);

    CHECK(is_multiplicative_subgroup(g.elements));
    CHECK_FALSE(is_multiplicative_subgroup(FpSet::of(f, {1, 2})));
}

TEST_CASE("t_quantity lower bound holds") {
    SplitMix64 rng(43);
    Field f = make_field(31);
    for (int trial = 0; trial < 30; ++trial) {
        FpSet a = random_set(rng, f, 4), b = random_set(rng, f, 4);
        FpSet c = random_set(rng, f, 4), d = random_set(rng, f, 4);
        CHECK(t_quantity(a, b, c, d) >=
              int64_t(a.size()) * int64_t(b.size()) * int64_t(c.size()) * int64_t(d.size()));
    }
}
