// subgroup-lab: experiments over multiplicative subgroups of prime fields.
//
// Subcommands: verify, scan, tquantity, corr, decompose, diffcover,
// intersect, field. Machine-readable output goes to stdout (or --out);
// timing goes to stderr so reports stay byte-reproducible.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "subgroup_lab/char_spectral.hpp"
#include "subgroup_lab/collinear_t.hpp"
#include "subgroup_lab/conv_energy.hpp"
#include "subgroup_lab/harness.hpp"
#include "subgroup_lab/structure_search.hpp"

using namespace sglab;

namespace {

// Set literal: "G:t" is the order-t subgroup, "G:t|0" adds zero, otherwise a
// comma-separated residue list.
FpSet parse_set_literal(const Field& field, std::string text) {
    if (text.rfind("G:", 0) == 0) {
        bool with_zero = false;
        std::string body = text.substr(2);
        if (body.size() >= 2 && body.substr(body.size() - 2) == "|0") {
            with_zero = true;
            body = body.substr(0, body.size() - 2);
        }
        uint32_t t = uint32_t(std::stoul(body));
        FpSet s = subgroup_of_order(field, t).elements;
        return with_zero ? s.with(0) : s;
    }
    std::vector<int64_t> values;
    std::string cur;
    for (char ch : text + ",") {
        if (ch == ',') {
            if (!cur.empty()) values.push_back(std::stoll(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    return FpSet::of(field, values);
}

std::vector<uint32_t> parse_u32_list(const std::string& text) {
    std::vector<uint32_t> out;
    std::string cur;
    for (char ch : text + ",") {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(uint32_t(std::stoul(cur)));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    return out;
}

std::vector<uint32_t> primes_in_range(uint64_t lo, uint64_t hi) {
    std::vector<uint32_t> out;
    for (uint64_t n = std::max<uint64_t>(2, lo); n <= hi; ++n)
        if (is_prime_u64(n)) out.push_back(uint32_t(n));
    return out;
}

void emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload << "\n";
    } else {
        std::ofstream f(out_path, std::ios::binary);
        f << payload;
    }
}

struct BatchOptions {
    std::string p_range;
    std::vector<uint32_t> primes;
    std::vector<uint32_t> orders;
    std::vector<std::string> suites;
    uint64_t seed = 1;
    uint64_t trials = 50;
    unsigned threads = 1;
    std::string format = "json";
    std::string out_path;
};

void add_batch_options(CLI::App* cmd, BatchOptions& opt, bool with_suites) {
    cmd->add_option("--p-range", opt.p_range, "inclusive prime range A..B");
    cmd->add_option("--primes", opt.primes, "explicit prime list");
    cmd->add_option("--orders", opt.orders, "subgroup orders (default: all divisors)");
    if (with_suites)
        cmd->add_option("--suite", opt.suites,
                        "suite name (repeatable): identities, intersections, t-bounds, search, "
                        "oracles");
    cmd->add_option("--seed", opt.seed, "PRNG seed");
    cmd->add_option("--trials", opt.trials, "trials per (prime, order)");
    cmd->add_option("--threads", opt.threads, "worker threads");
    cmd->add_option("--format", opt.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", opt.out_path, "write the report to this file");
}

ExperimentConfig to_config(const BatchOptions& opt) {
    ExperimentConfig cfg;
    cfg.primes = opt.primes;
    if (!opt.p_range.empty()) {
        auto sep = opt.p_range.find("..");
        if (sep == std::string::npos) throw CLI::ValidationError("--p-range expects A..B");
        uint64_t lo = std::stoull(opt.p_range.substr(0, sep));
        uint64_t hi = std::stoull(opt.p_range.substr(sep + 2));
        for (uint32_t p : primes_in_range(lo, hi)) cfg.primes.push_back(p);
    }
    cfg.orders = opt.orders;
    cfg.suites = opt.suites;
    cfg.seed = opt.seed;
    cfg.trials = opt.trials;
    cfg.threads = opt.threads;
    cfg.format = opt.format;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"experiments over multiplicative subgroups of prime fields"};
    app.require_subcommand(1);

    BatchOptions verify_opt, scan_opt;
    auto* verify_cmd = app.add_subcommand("verify", "run identity and bound suites");
    add_batch_options(verify_cmd, verify_opt, true);
    auto* scan_cmd = app.add_subcommand("scan", "per-(p, order) diagnostics table");
    add_batch_options(scan_cmd, scan_opt, false);

    uint64_t tq_p = 13;
    std::string tq_a, tq_b, tq_c, tq_d;
    uint32_t tq_gamma = 0, tq_pi = 0;
    std::string tq_out;
    auto* tq_cmd = app.add_subcommand("tquantity", "collinear-triple quantity with bounds");
    tq_cmd->add_option("--p", tq_p)->required();
    tq_cmd->add_option("--A", tq_a)->required();
    tq_cmd->add_option("--B", tq_b)->required();
    tq_cmd->add_option("--C", tq_c)->required();
    tq_cmd->add_option("--D", tq_d)->required();
    tq_cmd->add_option("--gamma", tq_gamma, "subgroup order for the growth diagnostic");
    tq_cmd->add_option("--pi", tq_pi, "second subgroup order for the growth diagnostic");
    tq_cmd->add_option("--out", tq_out);

    uint64_t corr_p = 13;
    std::string corr_a, corr_b, corr_op = "correlate", corr_out;
    auto* corr_cmd = app.add_subcommand("corr", "convolution / correlation count vector");
    corr_cmd->add_option("--p", corr_p)->required();
    corr_cmd->add_option("--A", corr_a)->required();
    corr_cmd->add_option("--B", corr_b)->required();
    corr_cmd->add_option("--op", corr_op, "convolve, correlate or mult")
        ->check(CLI::IsMember({"convolve", "correlate", "mult"}));
    corr_cmd->add_option("--out", corr_out);

    uint64_t dec_p = 7;
    std::string dec_target = "G:3", dec_out;
    std::size_t dec_min_size = 2;
    bool dec_exhaustive = false;
    uint64_t dec_seed = 1, dec_trials = 10000;
    uint32_t dec_limit = 31;
    auto* dec_cmd = app.add_subcommand("decompose", "search sumset decompositions of a target");
    dec_cmd->add_option("--p", dec_p)->required();
    dec_cmd->add_option("--target", dec_target, "set literal, e.g. \"G:3\" or \"G:6|0\"");
    dec_cmd->add_option("--min-size", dec_min_size);
    dec_cmd->add_flag("--exhaustive", dec_exhaustive, "full enumeration (p <= limit)");
    dec_cmd->add_option("--limit", dec_limit, "exhaustive prime limit");
    dec_cmd->add_option("--seed", dec_seed);
    dec_cmd->add_option("--trials", dec_trials, "sampled-mode candidate draws");
    dec_cmd->add_option("--out", dec_out);

    uint64_t cov_p = 13;
    uint32_t cov_order = 6;
    std::string cov_mode = "exact", cov_out;
    auto* cov_cmd = app.add_subcommand("diffcover", "difference-cover search for a subgroup");
    cov_cmd->add_option("--p", cov_p)->required();
    cov_cmd->add_option("--order", cov_order)->required();
    cov_cmd->add_option("--mode", cov_mode)->check(CLI::IsMember({"exact", "subset"}));
    cov_cmd->add_option("--out", cov_out);

    uint64_t int_p = 13;
    uint32_t int_order = 6, int_coset = 0;
    std::string int_shifts = "1", int_out;
    auto* int_cmd = app.add_subcommand("intersect", "shifted-subgroup intersection record");
    int_cmd->add_option("--p", int_p)->required();
    int_cmd->add_option("--order", int_order)->required();
    int_cmd->add_option("--shifts", int_shifts, "comma-separated nonzero distinct shifts");
    int_cmd->add_option("--coset", int_coset, "use the coset with this representative");
    int_cmd->add_option("--out", int_out);

    uint64_t mit_p = 13;
    uint32_t mit_gamma = 6, mit_pi = 6;
    std::string mit_pairs = "1:1", mit_out;
    auto* mit_cmd = app.add_subcommand("mitkin", "incidence sum u*x + v*y = 1 over subgroup pairs");
    mit_cmd->add_option("--p", mit_p)->required();
    mit_cmd->add_option("--gamma", mit_gamma)->required();
    mit_cmd->add_option("--pi", mit_pi)->required();
    mit_cmd->add_option("--pairs", mit_pairs, "comma-separated u:v coefficient pairs");
    mit_cmd->add_option("--out", mit_out);

    uint64_t spec_p = 13;
    uint32_t spec_order = 6;
    std::string spec_weight = "G:6", spec_out;
    auto* spec_cmd =
        app.add_subcommand("spectrum", "eigenvalues and trace checks of an indicator kernel");
    spec_cmd->add_option("--p", spec_p)->required();
    spec_cmd->add_option("--order", spec_order)->required();
    spec_cmd->add_option("--weight", spec_weight,
                         "set literal whose indicator is the weight (must be invariant and even)");
    spec_cmd->add_option("--out", spec_out);

    uint64_t fld_p = 13;
    auto* fld_cmd = app.add_subcommand("field", "primitive root and subgroup orders");
    fld_cmd->add_option("--p", fld_p)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        const auto start = std::chrono::steady_clock::now();
        int rc = 0;

        if (*verify_cmd) {
            Report rep = run_suite(to_config(verify_opt));
            emit(rep.serialize(), verify_opt.out_path);
            std::cerr << "asserted: " << rep.asserted_pass << " pass, " << rep.asserted_fail
                      << " fail; diagnostic: " << rep.diagnostic << "\n";
            rc = rep.exit_code();
        } else if (*scan_cmd) {
            Report rep = scan_primes(to_config(scan_opt));
            emit(rep.serialize(), scan_opt.out_path);
            std::cerr << "rows: " << rep.rows.size() << "; asserted: " << rep.asserted_pass
                      << " pass, " << rep.asserted_fail << " fail\n";
            rc = rep.exit_code();
        } else if (*tq_cmd) {
            Field field = make_field(tq_p);
            FpSet a = parse_set_literal(field, tq_a), b = parse_set_literal(field, tq_b);
            FpSet c = parse_set_literal(field, tq_c), d = parse_set_literal(field, tq_d);
            Subgroup gamma, pi;
            const Subgroup *gp = nullptr, *pp = nullptr;
            if (tq_gamma) {
                gamma = subgroup_of_order(field, tq_gamma);
                gp = &gamma;
            }
            if (tq_pi) {
                pi = subgroup_of_order(field, tq_pi);
                pp = &pi;
            }
            emit(t_bounds_report(a, b, c, d, gp, pp).to_json(), tq_out);
        } else if (*corr_cmd) {
            Field field = make_field(corr_p);
            FpSet a = parse_set_literal(field, corr_a), b = parse_set_literal(field, corr_b);
            CountVector cv = corr_op == "mult"
                                 ? corr_mult(a, b)
                                 : corr_add(a, b, corr_op == "convolve" ? CorrMode::convolve
                                                                        : CorrMode::correlate);
            emit(cv.to_json(), corr_out);
        } else if (*dec_cmd) {
            Field field = make_field(dec_p);
            FpSet target = parse_set_literal(field, dec_target);
            DecompositionResult res =
                dec_exhaustive || field->p() <= dec_limit
                    ? find_decompositions(target, dec_min_size, dec_limit)
                    : sample_decompositions(target, dec_min_size, dec_seed, dec_trials);
            emit(res.to_json(), dec_out);
        } else if (*cov_cmd) {
            Field field = make_field(cov_p);
            Subgroup gamma = subgroup_of_order(field, cov_order);
            DifferenceCoverResult res = difference_cover_search(
                field, gamma, cov_mode == "exact" ? CoverMode::exact : CoverMode::subset);
            emit(res.to_json(), cov_out);
        } else if (*int_cmd) {
            Field field = make_field(int_p);
            Subgroup gamma = subgroup_of_order(field, int_order);
            auto shifts = parse_u32_list(int_shifts);
            IntersectionRecord rec = int_coset
                                         ? shift_intersection(coset_of(gamma, int_coset), shifts)
                                         : shift_intersection(gamma, shifts);
            emit(rec.to_json(), int_out);
        } else if (*mit_cmd) {
            Field field = make_field(mit_p);
            Subgroup gamma = subgroup_of_order(field, mit_gamma);
            Subgroup pi = subgroup_of_order(field, mit_pi);
            std::vector<std::pair<uint32_t, uint32_t>> pairs;
            for (const std::string& item : [&] {
                     std::vector<std::string> out;
                     std::string cur;
                     for (char ch : mit_pairs + ",") {
                         if (ch == ',') {
                             if (!cur.empty()) out.push_back(cur);
                             cur.clear();
                         } else {
                             cur += ch;
                         }
                     }
                     return out;
                 }()) {
                auto colon = item.find(':');
                if (colon == std::string::npos)
                    throw CLI::ValidationError("--pairs expects u:v items");
                pairs.emplace_back(uint32_t(std::stoul(item.substr(0, colon))),
                                   uint32_t(std::stoul(item.substr(colon + 1))));
            }
            emit(mitkin_sum(gamma, pi, pairs).to_json(), mit_out);
        } else if (*spec_cmd) {
            Field field = make_field(spec_p);
            Subgroup gamma = subgroup_of_order(field, spec_order);
            FpSet support = parse_set_literal(field, spec_weight);
            std::vector<double> weight(field->p(), 0.0);
            for (uint32_t x : support.elements()) weight[x] = 1.0;
            SpectralReport rep = operator_spectrum(make_operator_spec(gamma, std::move(weight)));
            emit(rep.to_json(), spec_out);
        } else if (*fld_cmd) {
            Field field = make_field(fld_p);
            JsonWriter w;
            w.begin_object();
            w.kv("p", uint64_t(field->p()));
            w.kv("primitive_root", uint64_t(field->primitive_root()));
            w.key("subgroup_orders").begin_array();
            for (uint32_t t : divisors_ascending(field->p() - 1)) w.value(t);
            w.end_array();
            w.end_object();
            std::cout << w.str() << "\n";
        }

        const auto elapsed =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
        std::cerr << "elapsed: " << elapsed.count() << " ms\n";
        return rc;
    } catch (const sg_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
