#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "subgroup_lab/conv_energy.hpp"
#include "subgroup_lab/harness.hpp"

using namespace sglab;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.primes = {13};
    cfg.suites = {"identities"};
    cfg.seed = 1;
    cfg.trials = 5;
    return cfg;
}

} // namespace

TEST_CASE("run_suite produces passing records for the identity suite") {
    Report rep = run_suite(small_config());
    CHECK(rep.asserted_fail == 0);
    CHECK(rep.asserted_pass > 0);
    CHECK(rep.exit_code() == 0);
    for (const auto& r : rep.records) CHECK(r.suite == "identities");
}

TEST_CASE("every suite runs clean at p=13") {
    ExperimentConfig cfg = small_config();
    cfg.suites = {"identities", "intersections", "t-bounds", "search", "oracles"};
    cfg.trials = 3;
    Report rep = run_suite(cfg);
    CHECK(rep.asserted_fail == 0);
    CHECK(rep.asserted_pass > 0);
    CHECK(rep.diagnostic > 0);

    // the search suite rediscovers the known order-6 cover class at p=13
    bool rediscovered = false;
    for (const auto& r : rep.records)
        if (r.suite == "search" && r.p == 13 && r.order == 6 &&
            r.check.name == "reference_cover_class" && r.check.pass)
            rediscovered = true;
    CHECK(rediscovered);
}

TEST_CASE("config guards") {
    ExperimentConfig empty;
    CHECK_THROWS_AS(run_suite(empty), sg_error);

    ExperimentConfig no_suites = small_config();
    no_suites.suites.clear();
    CHECK_THROWS_AS(run_suite(no_suites), sg_error);

    ExperimentConfig bad_suite = small_config();
    bad_suite.suites = {"nonsense"};
    CHECK_THROWS_AS(run_suite(bad_suite), sg_error);

    ExperimentConfig scan_empty;
    CHECK_THROWS_AS(scan_primes(scan_empty), sg_error);

    ExperimentConfig huge = small_config();
    huge.primes = {uint32_t(PrimeField::table_limit() + 1)};
    try {
        run_suite(huge);
        CHECK(false);
    } catch (const sg_error& e) {
        CHECK(e.code() == errc::limit_exceeded);
    }
}

TEST_CASE("reports are byte-identical across reruns and thread counts") {
    ExperimentConfig cfg = small_config();
    cfg.suites = {"identities", "t-bounds"};
    cfg.trials = 4;
    Report a = run_suite(cfg);
    Report b = run_suite(cfg);
    CHECK(a.to_json() == b.to_json());

    cfg.threads = 4;
    Report c = run_suite(cfg);
    Report d = run_suite(cfg);
    CHECK(c.to_json() == d.to_json());
    // thread count changes the config echo only, never the records
    CHECK(a.records.size() == c.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].check.lhs == c.records[i].check.lhs);
        CHECK(a.records[i].check.pass == c.records[i].check.pass);
    }
}

TEST_CASE("scan rows carry known exact values") {
    ExperimentConfig cfg;
    cfg.primes = {13};
    cfg.orders = {6};
    Report rep = scan_primes(cfg);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].energy_add == 114);
    CHECK(rep.rows[0].t_value >= 6 * 6 * 6 * 6);
    CHECK(rep.asserted_fail == 0);

    // full divisor sweep: one row per divisor of p-1
    ExperimentConfig all;
    all.primes = {13, 17};
    Report rep2 = scan_primes(all);
    CHECK(rep2.rows.size() == divisors_ascending(12).size() + divisors_ascending(16).size());
    for (const auto& row : rep2.rows) {
        CHECK(std::isfinite(row.ratio_sigma));
        CHECK(std::isfinite(row.ratio_energy_32_13));
        CHECK(std::isfinite(row.ratio_dual_energy));
        CHECK(std::isfinite(row.ratio_many_shifts));
    }

    // csv shape: header + one line per row
    all.format = "csv";
    Report rep3 = scan_primes(all);
    std::string csv = rep3.serialize();
    std::size_t lines = std::count(csv.begin(), csv.end(), '\n');
    CHECK(lines == rep3.rows.size() + 1);
}

TEST_CASE("order filter restricts the suites") {
    ExperimentConfig cfg = small_config();
    cfg.orders = {6};
    Report rep = run_suite(cfg);
    CHECK(rep.asserted_fail == 0);
    for (const auto& r : rep.records) CHECK(r.order == 6);

    ExperimentConfig scan_cfg;
    scan_cfg.primes = {13};
    scan_cfg.orders = {4, 6};
    Report srep = scan_primes(scan_cfg);
    REQUIRE(srep.rows.size() == 2);
    CHECK(srep.rows[0].order == 4);
    CHECK(srep.rows[1].order == 6);
}

TEST_CASE("table limit override through the environment") {
    setenv("SUBGROUP_LAB_MAX_P", "100", 1);
    CHECK(PrimeField::table_limit() == 100);
    CHECK_THROWS_AS(make_field(101), sg_error);
    CHECK(make_field(97)->p() == 97);
    unsetenv("SUBGROUP_LAB_MAX_P");
    CHECK(PrimeField::table_limit() == 10'000'000ull);
}

TEST_CASE("json writer formatting is stable") {
    JsonWriter w;
    w.begin_object();
    w.kv("a", int64_t(3));
    w.kv("b", 0.1);
    w.kv("c", true);
    w.key("d").begin_array();
    w.value(uint32_t(7)).value("x");
    w.end_array();
    w.end_object();
    CHECK(w.str() == "{\"a\":3,\"b\":0.10000000000000001,\"c\":true,\"d\":[7,\"x\"]}");

    Field f = make_field(5);
    CountVector cv = corr_add(FpSet::of(f, {1, 2}), FpSet::of(f, {1}), CorrMode::convolve);
    CHECK(cv.to_json() == "{\"p\":5,\"values\":{\"2\":1,\"3\":1}}");
}

TEST_CASE("instance generators satisfy their hypotheses") {
    Field f = make_field(101);
    Subgroup g = subgroup_of_order(f, 20);
    SplitMix64 rng(55);
    for (int trial = 0; trial < 50; ++trial) {
        auto inst = random_char_hypothesis(rng, g, 5);
        for (uint32_t a : inst.a.elements())
            for (uint32_t c : inst.c.elements()) CHECK(g.contains(f->sub(a, c)));
        for (uint32_t b : inst.b.elements())
            for (uint32_t d : inst.d.elements()) CHECK(g.contains(f->sub(b, d)));

        auto w = random_invariant_even_weight(rng, g);
        for (uint32_t x = 0; x < 101; ++x) {
            CHECK(w[f->neg(x)] == w[x]);
            CHECK(w[f->mul(g.generator, x)] == w[x]);
        }

        auto shifts = random_distinct_shifts(rng, 101, 3);
        CHECK(shifts.size() == 3);
        CHECK(shifts[0] != shifts[1]);
        CHECK(shifts[1] != shifts[2]);
        CHECK(shifts[0] != shifts[2]);
    }
}
