#include "subgroup_lab/collinear_t.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "subgroup_lab/conv_energy.hpp"

namespace sglab {

namespace {

struct LogImage {
    std::vector<uint32_t> dlogs; // of the nonzero translated elements
    bool has_zero = false;
};

LogImage log_image_of_translate(const FpSet& s, uint32_t shift_away) {
    // Discrete logs of (S - shift_away) \ {0}.
    const auto& f = s.field();
    LogImage img;
    img.dlogs.reserve(s.size());
    for (uint32_t x : s.elements()) {
        uint32_t y = f->sub(x, shift_away);
        if (y == 0)
            img.has_zero = true;
        else
            img.dlogs.push_back(f->dlog(y));
    }
    return img;
}

void require_nonempty(const FpSet& s, const char* which) {
    if (s.is_empty()) fail(errc::empty_set, std::string(which) + " must be nonempty");
}

} // namespace

int64_t t_quantity(const FpSet& a, const FpSet& b, const FpSet& c, const FpSet& d,
                   unsigned threads) {
    require_same_field(a, b);
    require_same_field(a, c);
    require_same_field(a, d);
    require_nonempty(a, "A");
    require_nonempty(b, "B");
    require_nonempty(c, "C");
    require_nonempty(d, "D");

    const uint32_t m = a.p() - 1;

    // B - d images are reused across all of C, so hoist them.
    std::vector<LogImage> images_b;
    images_b.reserve(d.size());
    for (uint32_t dd : d.elements()) images_b.push_back(log_image_of_translate(b, dd));

    auto run_range = [&](std::size_t c_begin, std::size_t c_end) {
        std::vector<int64_t> scratch(m, 0);
        std::vector<uint32_t> touched;
        touched.reserve(a.size() * b.size());
        int64_t sum = 0;
        for (std::size_t ci = c_begin; ci < c_end; ++ci) {
            LogImage img_a = log_image_of_translate(a, c.elements()[ci]);
            for (const auto& img_b : images_b)
                sum += energy_mult_logspace(img_a.dlogs, img_a.has_zero, img_b.dlogs,
                                            img_b.has_zero, m, scratch, touched);
        }
        return sum;
    };

    if (threads <= 1 || c.size() < 2) return run_range(0, c.size());

    // Deterministic by construction: partial integer sums commute.
    const unsigned nthreads = std::min<unsigned>(threads, unsigned(c.size()));
    std::vector<int64_t> partial(nthreads, 0);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nthreads; ++w) {
        std::size_t lo = c.size() * w / nthreads;
        std::size_t hi = c.size() * (w + 1) / nthreads;
        pool.emplace_back([&, w, lo, hi] { partial[w] = run_range(lo, hi); });
    }
    for (auto& th : pool) th.join();
    int64_t total = 0;
    for (int64_t v : partial) total += v;
    return total;
}

std::vector<int64_t> slope_counts(const FpSet& c, const FpSet& a) {
    require_same_field(c, a);
    const auto& f = a.field();
    std::vector<int64_t> counts(f->p(), 0);
    for (uint32_t cc : c.elements())
        for (uint32_t a1 : a.elements()) {
            uint32_t x = f->sub(a1, cc);
            if (x == 0) continue;
            uint32_t x_inv = f->inv(x);
            for (uint32_t a2 : a.elements()) ++counts[f->mul(f->sub(a2, cc), x_inv)];
        }
    return counts;
}

int64_t t_star(const FpSet& a, const FpSet& c) {
    auto counts = slope_counts(c, a);
    int64_t total = 0;
    for (int64_t n : counts) total += n * n;
    return total;
}

int64_t dual_energy_sum(const FpSet& a, const FpSet& b, const FpSet& c) {
    require_same_field(a, b);
    require_same_field(a, c);
    const uint32_t m = a.p() - 1;
    LogImage img_b = log_image_of_translate(b, 0);
    std::vector<int64_t> scratch(m, 0);
    std::vector<uint32_t> touched;
    int64_t total = 0;
    for (uint32_t cc : c.elements()) {
        LogImage img_a = log_image_of_translate(a, cc);
        total += energy_mult_logspace(img_a.dlogs, img_a.has_zero, img_b.dlogs, img_b.has_zero,
                                      m, scratch, touched);
    }
    return total;
}

bool is_multiplicative_subgroup(const FpSet& a) {
    const uint32_t order = a.p() - 1;
    if (a.is_empty() || a.contains(0)) return false;
    if (order % a.size() != 0) return false;
    return a == subgroup_of_order(a.field(), uint32_t(a.size())).elements;
}

std::string TReport::to_json() const {
    JsonWriter w;
    w.begin_object();
    w.kv("t_value", t_value);
    if (t_star)
        w.kv("t_star", *t_star);
    else
        w.key("t_star").value_null();
    w.kv("main_term", main_term);
    w.kv("error_budget", error_budget);
    w.key("bound_checks").begin_array();
    for (const auto& c : bound_checks) c.write(w);
    w.end_array();
    w.end_object();
    return w.str();
}

TReport t_bounds_report(const FpSet& a, const FpSet& b, const FpSet& c, const FpSet& d,
                        const Subgroup* gamma_ctx, const Subgroup* pi_ctx) {
    TReport rep;
    rep.t_value = t_quantity(a, b, c, d);

    const auto& f = a.field();
    const int64_t sa = int64_t(a.size()), sb = int64_t(b.size());
    const int64_t sc = int64_t(c.size()), sd = int64_t(d.size());

    // Always-valid floor: each inner energy is at least |A||B|.
    rep.bound_checks.push_back(
        CheckRecord::make("t_lower_bound", double(sa * sb * sc * sd), double(rep.t_value), true,
                          true, sa * sb * sc * sd <= rep.t_value));

    // Main term over common slopes, with the exact three-term budget for the
    // removed degenerate tuples.
    auto nc = slope_counts(c, a);
    auto nd = slope_counts(d, b);
    rep.main_term = 0;
    for (uint32_t l = 0; l < f->p(); ++l) rep.main_term += nc[l] * nd[l];
    const int64_t ac = int64_t(a.intersection_size(c));
    const int64_t bd = int64_t(b.intersection_size(d));
    rep.error_budget = ac * sb * sb * sd + bd * sa * sa * sc + 2 * ac * bd * sa * sb;
    const int64_t deviation = std::llabs(rep.t_value - rep.main_term);
    rep.bound_checks.push_back(CheckRecord::make("t_error_budget", double(deviation),
                                                 double(rep.error_budget), true, true,
                                                 deviation <= rep.error_budget));

    if (a == b && c == d) rep.t_star = rep.main_term;

    // Third-moment bound for the symmetric main term:
    // T*(A) <= |A-A| * sum_x (A o A)^3(x), when all four sets coincide.
    if (a == b && a == c && a == d) {
        auto corr = corr_add(a, a, CorrMode::correlate);
        int64_t third = 0;
        for (int64_t v : corr.values) third += v * v * v;
        int64_t diff_size = int64_t(difference_set(a, a).size());
        rep.bound_checks.push_back(CheckRecord::make(
            "t_star_third_moment", double(rep.main_term), double(diff_size * third), true, true,
            rep.main_term <= diff_size * third));
    }

    // Subgroup upper bound, exact rational comparison:
    // T <= |A|^2|B|^2|C||D|/(p-1) + |B||C||D| p + T(A,B,{0},D).
    if (is_multiplicative_subgroup(a)) {
        FpSet zero = FpSet::of(f, {0});
        int64_t t0 = t_quantity(a, b, zero, d);
        const __int128 lhs_scaled =
            (__int128(rep.t_value) - __int128(sb * sc * sd) * f->p() - t0) * (f->p() - 1);
        const __int128 rhs_scaled = __int128(sa * sa) * sb * sb * sc * sd;
        double rhs = double(sa) * sa * sb * sb * sc * sd / double(f->p() - 1) +
                     double(sb * sc * sd) * f->p() + double(t0);
        rep.bound_checks.push_back(CheckRecord::make("subgroup_t_upper", double(rep.t_value), rhs,
                                                     true, true, lhs_scaled <= rhs_scaled));
    }

    // Diagnostic growth bound for subgroup pairs (constant taken as 1,
    // logarithm floored at 1); never asserted.
    if (gamma_ctx && pi_ctx) {
        double tg = gamma_ctx->t, tp = pi_ctx->t;
        double lg = std::max(1.0, std::log2(std::min(tg, tp)));
        double rhs = tg * tg * tp * tp * lg + tg * tp * (tg * tg + tp * tp);
        rep.bound_checks.push_back(
            CheckRecord::make("sigma_growth", double(rep.t_value), rhs, false));
    }

    return rep;
}

} // namespace sglab
