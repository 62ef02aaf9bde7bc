// hil: L-functions of half-integral-weight cusp forms on the command line.
#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "hil/forms.hpp"
#include "hil/lfunc.hpp"
#include "hil/mp_lambda.hpp"
#include "hil/verify.hpp"
#include "hil/zeros.hpp"

using nlohmann::json;

namespace {

struct Common {
    std::string form = "yoshida_g";
    std::string registry;
    std::string format = "csv";
    std::string output;
    int jobs = 1;
    unsigned long seed = 0;
};

hil::HalfIntegralForm resolve_form(const Common& c) {
    if (!c.registry.empty()) return hil::load_form(c.registry, c.form);
    return hil::form_from_registry(hil::builtin_registry_json(), c.form);
}

// Tabular payload rendered identically as CSV or JSON.
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    json meta = json::object();

    void emit(std::ostream& os, const std::string& format) const {
        if (format == "json") {
            json doc;
            doc["name"] = name;
            doc["meta"] = meta;
            doc["columns"] = columns;
            doc["rows"] = rows;
            os << doc.dump(2) << "\n";
            return;
        }
        for (size_t i = 0; i < columns.size(); ++i)
            os << columns[i] << (i + 1 < columns.size() ? "," : "\n");
        os.precision(17);
        for (const auto& r : rows)
            for (size_t i = 0; i < r.size(); ++i)
                os << r[i] << (i + 1 < r.size() ? "," : "\n");
    }
};

void write_out(const Common& c, const Table& t) {
    if (c.output.empty() || c.output == "-") {
        t.emit(std::cout, c.format);
        return;
    }
    std::ofstream f(c.output);
    if (!f) throw hil::Error("cannot open output file: " + c.output);
    t.emit(f, c.format);
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

// Ordered fan-out: apply fn to [0, n) on `jobs` threads, results indexed.
template <class Fn>
void parallel_for(long n, int jobs, Fn fn) {
    if (jobs <= 1 || n <= 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    int width = std::min<long>(jobs, n);
    pool.reserve(static_cast<size_t>(width));
    for (int w = 0; w < width; ++w)
        pool.emplace_back([&] {
            for (long i = next.fetch_add(1); i < n; i = next.fetch_add(1))
                fn(i);
        });
    for (auto& th : pool) th.join();
}

// ---- subcommands ----------------------------------------------------------

int cmd_coeffs(const Common& c, long limit) {
    hil::HalfIntegralForm f = resolve_form(c);
    if (!f.coeffs->ensure(limit))
        throw hil::InsufficientCoefficients("coeffs: limit beyond the source");
    Table t;
    t.name = "coeffs";
    t.meta["form"] = f.name;
    t.columns = {"n", "a_n", "abs_err"};
    for (long n = 1; n <= limit; ++n)
        t.rows.push_back({static_cast<double>(n), f.coeffs->coeff(n), 0.0});
    write_out(c, t);
    return 0;
}

int cmd_eval(const Common& c, double sre, double sim, double eps) {
    hil::HalfIntegralForm f = resolve_form(c);
    hil::cplx s(sre, sim);
    hil::LValue lam = hil::lambda_completed(f, s, eps);
    hil::LValue l = hil::l_value(f, s, eps);
    Table t;
    t.name = "eval";
    t.meta["form"] = f.name;
    t.meta["exact_zero"] = l.exact_zero;
    t.columns = {"s_re",      "s_im",      "L_re",    "L_im",
                 "L_abs_err", "Lambda_re", "Lambda_im", "Lambda_abs_err"};
    t.rows.push_back({sre, sim, l.value.real(), l.value.imag(), l.abs_err,
                      lam.value.real(), lam.value.imag(), lam.abs_err});
    write_out(c, t);
    return 0;
}

int cmd_scan(const Common& c, double t0, double t1, double step,
             const std::string& signature, double loc_tol) {
    hil::HalfIntegralForm f = resolve_form(c);
    bool plus = signature != "minus";
    // Independent ordered chunks merged in order.
    long chunks = std::max<long>(1, std::min<long>(c.jobs * 4, 64));
    double width = (t1 - t0) / static_cast<double>(chunks);
    std::vector<std::vector<double>> found(static_cast<size_t>(chunks));
    std::atomic<long> evals{0};
    parallel_for(chunks, c.jobs, [&](long i) {
        double lo = t0 + width * static_cast<double>(i);
        double hi = (i + 1 == chunks) ? t1 : lo + width;
        // Envelope-normalized: same sign changes, but the scanner's dip
        // detection stays scale-free across the e^{-pi t/2} decay.
        auto fn = [&](double t) {
            double v = plus ? hil::r_f(f, t) : hil::i_f(f, t);
            return v / hil::critical_envelope(f, t);
        };
        hil::ZeroScanReport rep =
            hil::scan_sign_changes(fn, lo, hi, step, loc_tol);
        found[static_cast<size_t>(i)] = rep.zeros;
        evals += rep.evals;
    });
    Table t;
    t.name = "scan";
    t.meta["form"] = f.name;
    t.meta["signature"] = plus ? "plus" : "minus";
    t.meta["t0"] = t0;
    t.meta["t1"] = t1;
    t.meta["evals"] = evals.load();
    t.columns = {"index", "t", "abs_err"};
    long idx = 0;
    for (const auto& chunk : found)
        for (double z : chunk)
            t.rows.push_back({static_cast<double>(idx++), z, loc_tol});
    t.meta["count"] = idx;
    write_out(c, t);
    return 0;
}

int cmd_rect(const Common& c, double s1, double s2, double t1, double t2,
             double eps) {
    hil::HalfIntegralForm f = resolve_form(c);
    hil::RectCount rc = hil::count_zeros_rectangle(f, s1, s2, t1, t2, eps);
    Table t;
    t.name = "rect-count";
    t.meta["form"] = f.name;
    t.meta["nudges"] = rc.nudges;
    t.columns = {"count", "s1",    "s2", "t1",
                 "t2",    "min_boundary_abs", "abs_err"};
    t.rows.push_back({static_cast<double>(rc.count), rc.s1, rc.s2, rc.t1,
                      rc.t2, rc.min_boundary_abs, eps});
    write_out(c, t);
    return 0;
}

int cmd_twist_scan(const Common& c, long p, long q, double t0, double t1,
                   double step, double eps) {
    hil::HalfIntegralForm f = resolve_form(c);
    hil::TwistSpec tw = hil::make_twist(p, q, f);
    Table t;
    t.name = "twist-scan";
    t.meta["form"] = f.name;
    t.meta["p"] = p;
    t.meta["q"] = q;
    t.meta["omega_re"] = tw.omega.real();
    t.meta["omega_im"] = tw.omega.imag();
    t.meta["involutive"] = tw.involutive;
    t.meta["cusp_ok"] = tw.cusp_ok;
    t.columns = {"t", "Z", "imag_residual", "abs_err"};
    long n = static_cast<long>(std::floor((t1 - t0) / step)) + 1;
    t.rows.assign(static_cast<size_t>(n), {});
    parallel_for(n, c.jobs, [&](long i) {
        double tt = t0 + step * static_cast<double>(i);
        hil::ZValue z = hil::z_twisted(f, tw, tt, eps);
        t.rows[static_cast<size_t>(i)] = {tt, z.value, z.imag_residual,
                                          z.abs_err};
    });
    write_out(c, t);
    return 0;
}

int cmd_growth(const Common& c, const std::string& checkpoints, double step) {
    hil::HalfIntegralForm f = resolve_form(c);
    std::vector<double> cps = parse_list(checkpoints);
    if (cps.empty()) throw hil::Error("growth: empty checkpoint list");
    hil::GrowthReport rep = hil::n0_growth(f, cps, step);
    Table t;
    t.name = "growth";
    t.meta["form"] = f.name;
    t.meta["i_f_degenerate"] = rep.i_f_degenerate;
    t.meta["fitted_slope_plus"] = rep.fitted_slope_plus;
    t.columns = {"T",          "n_plus",        "n_minus",
                 "n_plus_over_T", "n_plus_over_sqrtT", "abs_err"};
    for (const auto& pt : rep.points)
        t.rows.push_back({pt.T, static_cast<double>(pt.n_plus),
                          static_cast<double>(pt.n_minus),
                          pt.n_plus / pt.T,
                          pt.n_plus / std::sqrt(pt.T), 0.0});
    write_out(c, t);
    return 0;
}

int cmd_verify(const Common& c, const std::string& which, double tol) {
    hil::HalfIntegralForm f = resolve_form(c);
    struct Entry {
        std::string name;
        std::function<hil::CheckResult()> run;
    };
    std::vector<Entry> all = {
        {"cosh_sinh",
         [&] {
             return hil::check_cosh_sinh_identities(
                 f, {0.3, M_PI / 4.0, 1.0}, tol > 0 ? tol : 1e-6);
         }},
        {"fourier",
         [&] {
             std::vector<hil::cplx> zs = {std::exp(hil::cplx(0, 0.4)),
                                          std::exp(hil::cplx(0, 1.0)),
                                          std::exp(hil::cplx(0, 1.4))};
             return hil::check_fourier_representation(f, zs,
                                                      tol > 0 ? tol : 1e-6);
         }},
        {"derivative_bound",
         [&] {
             std::vector<double> us;
             for (int i = 1; i <= 40; ++i) us.push_back(0.04 * i);
             return hil::check_derivative_bound_p0(f, us,
                                                   hil::lemma32_A(1, 1, f.N()));
         }},
        {"l_f1",
         [&] {
             std::vector<hil::cplx> ss = {{3.0, 0.0}, {2.25, 5.0}, {6.0, 0.0}};
             return hil::check_l_f1_integral(f, ss, 1, tol > 0 ? tol : 1e-6);
         }},
        {"parseval",
         [&] {
             return hil::check_parseval_I(f, 1.0, 0.5, 0.0,
                                          tol > 0 ? tol : 1e-4);
         }},
        {"mean_square",
         [&] {
             return hil::check_mean_square_psi(f, {10.0, 20.0, 40.0}, 1.0, 1,
                                               50.0);
         }},
    };
    std::vector<Entry> todo;
    if (which == "all")
        todo = all;
    else {
        for (const auto& e : all)
            if (e.name == which) todo.push_back(e);
        if (todo.empty()) throw hil::Error("verify: unknown check " + which);
    }
    std::vector<hil::CheckResult> results(todo.size());
    parallel_for(static_cast<long>(todo.size()), c.jobs,
                 [&](long i) { results[static_cast<size_t>(i)] =
                                   todo[static_cast<size_t>(i)].run(); });
    bool ok = true;
    if (c.format == "json") {
        json doc = json::array();
        for (const auto& r : results) {
            json item;
            item["name"] = r.name;
            item["residual"] = r.residual_or_sup;
            item["tolerance"] = r.tolerance;
            item["passed"] = r.passed;
            item["fitted_constant"] = r.fitted_constant;
            json samples = json::array();
            for (const auto& s : r.detail)
                samples.push_back({{"param", s.param},
                                   {"lhs_re", s.lhs.real()},
                                   {"lhs_im", s.lhs.imag()},
                                   {"rhs_re", s.rhs.real()},
                                   {"rhs_im", s.rhs.imag()},
                                   {"residual", s.residual}});
            item["samples"] = samples;
            doc.push_back(item);
            ok = ok && r.passed;
        }
        std::ostringstream os;
        os << doc.dump(2) << "\n";
        if (c.output.empty() || c.output == "-")
            std::cout << os.str();
        else
            std::ofstream(c.output) << os.str();
    } else {
        std::ostream& os = std::cout;
        os << "check,residual,tolerance,passed,fitted_constant\n";
        os.precision(12);
        for (const auto& r : results) {
            os << r.name << "," << r.residual_or_sup << "," << r.tolerance
               << "," << (r.passed ? "pass" : "FAIL") << ","
               << r.fitted_constant << "\n";
            ok = ok && r.passed;
        }
    }
    return ok ? 0 : 1;
}

int cmd_report(const Common& c, double t0, double t1, double step,
               double eps) {
    hil::HalfIntegralForm f = resolve_form(c);
    Table t;
    t.name = "report";
    t.meta["form"] = f.name;
    t.columns = {"t", "r_f", "i_f", "abs_err"};
    long n = static_cast<long>(std::floor((t1 - t0) / step)) + 1;
    t.rows.assign(static_cast<size_t>(n), {});
    parallel_for(n, c.jobs, [&](long i) {
        double tt = t0 + step * static_cast<double>(i);
        t.rows[static_cast<size_t>(i)] = {tt, hil::r_f(f, tt, eps),
                                          hil::i_f(f, tt, eps), eps};
    });
    write_out(c, t);
    return 0;
}

// Merge JSON config values (mirroring long flag names) as argv entries placed
// before the explicit flags; command line wins via TakeLast.
std::vector<std::string> apply_config(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    std::string cfg_path;
    for (size_t i = 1; i + 1 < args.size(); ++i)
        if (args[i] == "--config") cfg_path = args[i + 1];
    if (cfg_path.empty()) return args;
    std::ifstream in(cfg_path);
    if (!in) throw hil::Error("cannot open config file: " + cfg_path);
    json doc = json::parse(in);
    std::vector<std::string> merged;
    merged.push_back(args[0]);
    size_t sub_at = 1;
    while (sub_at < args.size() && args[sub_at].rfind("--", 0) == 0)
        sub_at += 2;
    if (sub_at < args.size()) merged.push_back(args[sub_at]);
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        std::string v = it.value().is_string()
                            ? it.value().get<std::string>()
                            : it.value().dump();
        merged.push_back("--" + it.key() + "=" + v);
    }
    for (size_t i = 1; i < args.size(); ++i) {
        if (i == sub_at) continue;
        if (args[i] == "--config") {
            ++i;
            continue;
        }
        merged.push_back(args[i]);
    }
    return merged;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"L-functions of half-integral-weight cusp forms"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    Common com;
    std::string config_dummy;
    auto add_common = [&](CLI::App* sub) {
        sub->option_defaults()->multi_option_policy(
            CLI::MultiOptionPolicy::TakeLast);
        sub->add_option("--form", com.form, "form name in the registry");
        sub->add_option("--registry", com.registry, "registry JSON path");
        sub->add_option("--format", com.format, "csv | json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--output", com.output, "output path (default stdout)");
        sub->add_option("--jobs", com.jobs, "worker threads")
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed", com.seed, "seed for any sampled grids");
        sub->add_option("--config", config_dummy, "JSON config (flags win)");
    };

    long limit = 20;
    CLI::App* coeffs = app.add_subcommand("coeffs", "emit a_f(n)");
    add_common(coeffs);
    coeffs->add_option("--limit", limit)->check(CLI::PositiveNumber);

    double sre = 2.25, sim = 0.0, eps = 1e-10;
    CLI::App* eval = app.add_subcommand("eval", "evaluate L and Lambda");
    add_common(eval);
    eval->add_option("--s-re", sre);
    eval->add_option("--s-im", sim);
    eval->add_option("--eps", eps);

    double t0 = 0.0, t1 = 50.0, step = 0.05, loc_tol = 1e-9;
    std::string signature = "plus";
    CLI::App* scan = app.add_subcommand("scan", "critical-line zero scan");
    add_common(scan);
    scan->add_option("--t0", t0);
    scan->add_option("--t1", t1);
    scan->add_option("--step", step)->check(CLI::PositiveNumber);
    scan->add_option("--signature", signature)
        ->check(CLI::IsMember({"plus", "minus"}));
    scan->add_option("--loc-tol", loc_tol)->check(CLI::PositiveNumber);

    double rs1 = 0.75, rs2 = 3.75, rt1 = 0.0, rt2 = 30.0, reps = 1e-10;
    CLI::App* rect = app.add_subcommand("rect-count", "argument principle");
    add_common(rect);
    rect->add_option("--s1", rs1);
    rect->add_option("--s2", rs2);
    rect->add_option("--t1", rt1);
    rect->add_option("--t2", rt2);
    rect->add_option("--eps", reps);

    long p = 1, q = 4;
    double wt0 = 0.0, wt1 = 30.0, wstep = 0.25, weps = 1e-9;
    CLI::App* twist = app.add_subcommand("twist-scan", "Z_{f,p/q} sweep");
    add_common(twist);
    twist->add_option("--p", p);
    twist->add_option("--q", q);
    twist->add_option("--t0", wt0);
    twist->add_option("--t1", wt1);
    twist->add_option("--step", wstep)->check(CLI::PositiveNumber);
    twist->add_option("--eps", weps);

    std::string checkpoints = "25,50,75,100";
    double gstep = 0.05;
    CLI::App* growth = app.add_subcommand("growth", "N0 growth monitor");
    add_common(growth);
    growth->add_option("--checkpoints", checkpoints);
    growth->add_option("--step", gstep)->check(CLI::PositiveNumber);

    std::string which = "all";
    double vtol = 0.0;
    CLI::App* verify = app.add_subcommand("verify", "verification suite");
    add_common(verify);
    verify->add_option("check", which, "check name or 'all'");
    verify->add_option("--tol", vtol);

    double pt0 = 0.0, pt1 = 30.0, pstep = 0.1, peps = 1e-9;
    CLI::App* report = app.add_subcommand("report", "plot data (t, r_f, i_f)");
    add_common(report);
    report->add_option("--t0", pt0);
    report->add_option("--t1", pt1);
    report->add_option("--step", pstep)->check(CLI::PositiveNumber);
    report->add_option("--eps", peps);

    std::vector<std::string> args;
    try {
        args = apply_config(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::vector<const char*> cargs;
    cargs.reserve(args.size());
    for (const auto& a : args) cargs.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(cargs.size()),
                  const_cast<char**>(cargs.data()));
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (*coeffs) return cmd_coeffs(com, limit);
        if (*eval) return cmd_eval(com, sre, sim, eps);
        if (*scan) return cmd_scan(com, t0, t1, step, signature, loc_tol);
        if (*rect) return cmd_rect(com, rs1, rs2, rt1, rt2, reps);
        if (*twist) return cmd_twist_scan(com, p, q, wt0, wt1, wstep, weps);
        if (*growth) return cmd_growth(com, checkpoints, gstep);
        if (*verify) return cmd_verify(com, which, vtol);
        if (*report) return cmd_report(com, pt0, pt1, pstep, peps);
    } catch (const hil::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
