// Command-line front end: special functions, certificates, exponent bounds,
// combination search, heatmaps, and modular-form coefficient checks.

#include "lpi/io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

namespace {

int kUsage = 2, kDomain = 1, kVerifyFailed = 3;

std::string format_value(double x) { return lpi::format_decimal(x); }

lpi::CoefficientTable table_from(const std::string& coeffs, bool delta, std::uint64_t nmax) {
    if (delta == !coeffs.empty()) throw CLI::ValidationError("exactly one of --coeffs or --delta is required");
    return delta ? lpi::delta_table(nmax) : lpi::load_coefficients(coeffs);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Least primes with a(p) in an interval: certificates, exponents, and data checks"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    std::string output;
    app.add_option("-o,--output", output, "Write to this file instead of standard output");

    // fg
    auto* fg = app.add_subcommand("fg", "Evaluate F(x;kappa), or G(y;kappa) with --invert");
    double fg_x = 0, fg_kappa = 0;
    std::string fg_y;
    bool fg_invert = false;
    fg->add_option("--x", fg_x, "Argument x in [0,1]");
    fg->add_option("--kappa", fg_kappa, "kappa > 0")->required();
    fg->add_flag("--invert", fg_invert, "Evaluate G instead of F");
    fg->add_option("--y", fg_y, "Argument y > 0 or 'inf' (with --invert)");

    // theta
    auto* theta = app.add_subcommand("theta", "theta_1, theta_2, or the theta_2 crossover");
    int which = 1;
    double delta = 0;
    bool crossover = false;
    theta->add_option("--which", which, "1 or 2")->check(CLI::IsMember({1, 2}));
    theta->add_option("--delta", delta, "delta");
    theta->add_flag("--crossover", crossover, "Print the delta where theta_2 reaches 1");

    // extrema
    auto* extrema = app.add_subcommand("extrema", "Certified kappa and F for a combination");
    std::string ex_combo, ex_interval;
    extrema->add_option("--combo", ex_combo, "b1,...,bL")->required();
    extrema->add_option("--interval", ex_interval, "alpha,beta")->required();

    // exponent
    auto* exponent = app.add_subcommand("exponent", "Exponent bound for a combination and interval");
    std::string xp_combo, xp_interval, xp_aspect = "level", xp_lambda = "convexity";
    exponent->add_option("--combo", xp_combo, "b1,...,bL")->required();
    exponent->add_option("--interval", xp_interval, "alpha,beta")->required();
    exponent->add_option("--aspect", xp_aspect, "level|weight");
    exponent->add_option("--lambda", xp_lambda, "convexity|jutila-motohashi|custom:l=val,...");

    // optimize
    auto* optimize = app.add_subcommand("optimize", "Best combination for an interval");
    std::string op_interval, op_aspect = "level", op_lambda = "convexity";
    unsigned op_budget = 42;
    int op_lmax = 8;
    optimize->add_option("--interval", op_interval, "alpha,beta")->required();
    optimize->add_option("--budget", op_budget, "Bound on sum l*b_l")->check(CLI::PositiveNumber);
    optimize->add_option("--lmax", op_lmax, "Largest degree l")->check(CLI::Range(1, 62));
    optimize->add_option("--aspect", op_aspect, "level|weight");
    optimize->add_option("--lambda", op_lambda, "convexity|jutila-motohashi|custom:l=val,...");

    // heatmap
    auto* heat = app.add_subcommand("heatmap", "Best exponent over an (alpha,beta) grid");
    std::string hm_alpha = "-2:2:1/20", hm_beta = "-2:2:1/20", hm_format = "csv", hm_aspect = "level",
                hm_lambda = "convexity";
    unsigned hm_budget = 42, hm_threads = 1;
    int hm_lmax = 8;
    heat->add_option("--alpha-range", hm_alpha, "a:b:step");
    heat->add_option("--beta-range", hm_beta, "a:b:step");
    heat->add_option("--budget", hm_budget, "Bound on sum l*b_l")->check(CLI::PositiveNumber);
    heat->add_option("--lmax", hm_lmax, "Largest degree l")->check(CLI::Range(1, 62));
    heat->add_option("--threads", hm_threads, "Worker threads")->check(CLI::PositiveNumber);
    heat->add_option("--format", hm_format, "csv|svg")->check(CLI::IsMember({"csv", "svg"}));
    heat->add_option("--aspect", hm_aspect, "level|weight");
    heat->add_option("--lambda", hm_lambda, "convexity|jutila-motohashi|custom:l=val,...");

    // verify
    auto* verify = app.add_subcommand("verify", "Recompute the published constants");
    bool verify_json = false;
    verify->add_flag("--json", verify_json, "Emit JSON instead of text");

    // tau
    auto* tau = app.add_subcommand("tau", "Exact Ramanujan tau table");
    std::uint64_t tau_nmax = 1000;
    bool tau_primes = false;
    tau->add_option("--nmax", tau_nmax, "Largest n")->required();
    tau->add_flag("--primes", tau_primes, "Emit the prime coefficient-table format instead");

    // least-prime
    auto* least = app.add_subcommand("least-prime", "Least prime p with a(p) in an interval");
    std::string lp_coeffs, lp_interval;
    bool lp_delta = false;
    std::uint64_t lp_nmax = 10000;
    least->add_option("--coeffs", lp_coeffs, "Coefficient CSV file");
    least->add_flag("--delta", lp_delta, "Use Ramanujan Delta");
    least->add_option("--nmax", lp_nmax, "Extent of the Delta table");
    least->add_option("--interval", lp_interval, "alpha,beta")->required();

    // sato-tate
    auto* st = app.add_subcommand("sato-tate", "Histogram of a(p) against the semicircle law");
    std::string st_coeffs;
    bool st_delta = false;
    std::uint64_t st_nmax = 10000;
    std::size_t st_bins = 8;
    st->add_option("--coeffs", st_coeffs, "Coefficient CSV file");
    st->add_flag("--delta", st_delta, "Use Ramanujan Delta");
    st->add_option("--nmax", st_nmax, "Extent of the Delta table");
    st->add_option("--bins", st_bins, "Number of bins")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    std::unique_ptr<std::ofstream> file;
    if (!output.empty()) {
        file = std::make_unique<std::ofstream>(output, std::ios::binary);
        if (!*file) {
            std::cerr << "error: cannot open " << output << '\n';
            return kDomain;
        }
    }
    std::ostream& out = file ? *file : std::cout;

    try {
        if (*fg) {
            if (fg_invert) {
                if (fg_y.empty()) throw CLI::ValidationError("--y is required with --invert");
                double y = fg_y == "inf" ? INFINITY : lpi::parse_rational(fg_y).get_d();
                out << format_value(lpi::g_value(y, fg_kappa)) << '\n';
            } else {
                if (fg->count("--x") == 0) throw CLI::ValidationError("--x is required");
                out << format_value(lpi::f_value(fg_x, fg_kappa)) << '\n';
            }
        } else if (*theta) {
            if (crossover) {
                out << format_value(lpi::theta2_crossover()) << '\n';
            } else {
                if (theta->count("--delta") == 0) throw CLI::ValidationError("--delta is required");
                out << format_value(which == 1 ? lpi::theta1(delta) : lpi::theta2(delta)) << '\n';
            }
        } else if (*extrema) {
            auto ex = lpi::kappa_of(lpi::parse_combo(ex_combo), lpi::parse_interval(ex_interval));
            out << lpi::to_json(ex).dump(2) << '\n';
        } else if (*exponent) {
            auto params = lpi::ExponentParams::parse(xp_lambda, lpi::parse_aspect(xp_aspect));
            auto rep = lpi::exponent_bound(lpi::parse_combo(xp_combo), lpi::parse_interval(xp_interval), params);
            out << lpi::to_json(rep).dump(2) << '\n';
        } else if (*optimize) {
            lpi::SearchSpec spec;
            spec.budget = op_budget;
            spec.l_max = op_lmax;
            spec.params = lpi::ExponentParams::parse(op_lambda, lpi::parse_aspect(op_aspect));
            spec.params.l_max = op_lmax;
            auto best = lpi::best_for_interval(lpi::parse_interval(op_interval), spec);
            if (best) out << lpi::to_json(*best).dump(2) << '\n';
            else out << lpi::json{{"feasible", false}, {"interval", op_interval}}.dump(2) << '\n';
        } else if (*heat) {
            lpi::SearchSpec spec;
            spec.budget = hm_budget;
            spec.l_max = hm_lmax;
            spec.threads = hm_threads;
            spec.params = lpi::ExponentParams::parse(hm_lambda, lpi::parse_aspect(hm_aspect));
            spec.params.l_max = hm_lmax;
            auto grid = lpi::heatmap(lpi::GridAxis::parse(hm_alpha), lpi::GridAxis::parse(hm_beta), spec);
            if (hm_format == "csv") lpi::write_heatmap_csv(grid, hm_lmax, out);
            else lpi::write_heatmap_svg(grid, out);
        } else if (*verify) {
            auto rep = lpi::verify_theorems();
            if (verify_json) {
                out << lpi::to_json(rep).dump(2) << '\n';
            } else {
                for (const auto& i : rep.items)
                    out << (i.pass ? "PASS " : "FAIL ") << i.name << " = " << format_value(i.value) << " (expected "
                        << i.expected << ")\n";
            }
            if (!rep.all_pass()) return kVerifyFailed;
        } else if (*tau) {
            if (tau_primes) lpi::write_coefficients(lpi::delta_table(tau_nmax), out);
            else lpi::write_tau_csv(lpi::delta_tau(tau_nmax), out);
        } else if (*least) {
            auto table = table_from(lp_coeffs, lp_delta, lp_nmax);
            auto r = lpi::least_prime_in(table, lpi::parse_interval(lp_interval));
            if (r.prime) out << *r.prime << '\n';
            else out << "none (searched primes up to " << r.extent << ")\n";
        } else if (*st) {
            auto table = table_from(st_coeffs, st_delta, st_nmax);
            auto r = lpi::sato_tate_report(table, st_bins);
            lpi::json bins = lpi::json::array();
            for (const auto& b : r.bins)
                bins.push_back({{"lo", format_value(b.lo)},
                                {"hi", format_value(b.hi)},
                                {"count", b.count},
                                {"fraction", format_value(b.fraction)},
                                {"measure", format_value(b.measure)},
                                {"deviation", format_value(b.deviation)}});
            lpi::json hecke = lpi::json::array();
            for (const auto& h : r.hecke)
                hecke.push_back({{"p", h.p}, {"exact_ok", h.exact_ok}, {"residual", format_value(h.normalized_residual)}});
            out << lpi::json{{"primes", r.primes},
                             {"bins", bins},
                             {"max_abs_deviation", format_value(r.max_abs_deviation)},
                             {"hecke", hecke},
                             {"hecke_ok", r.hecke_ok()}}
                       .dump(2)
                << '\n';
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDomain;
    }
    return 0;
}
