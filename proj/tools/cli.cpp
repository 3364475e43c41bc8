#include "cli.hpp"

#include "fig8/jones.hpp"
#include "fig8/modularity.hpp"
#include "fig8/parallel.hpp"
#include "fig8/qdilog.hpp"
#include "fig8/region.hpp"
#include "fig8/saddle.hpp"
#include "fig8/sampling.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace fig8::cli {

namespace {

using json = nlohmann::ordered_json;

struct BadInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    double u = 0.5;
    std::string p_spec;
    std::string N_spec;
    int step = 1;
    int m = 0;
    std::string eta_spec = "0,-1,1,0";
    int res = 400;
    double nu = 0.02;
    double tol = -1.0;   // < 0: subcommand default
    unsigned threads = 0;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv";
    bool include_noncoprime = false;
    bool zagier = false;
};

struct Table {
    json meta = json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
    int code = ok;
};

int to_int(const std::string& s)
{
    size_t used = 0;
    long v = 0;
    try {
        v = std::stol(s, &used);
    } catch (const std::exception&) {
        throw BadInput("not an integer: '" + s + "'");
    }
    if (used != s.size())
        throw BadInput("not an integer: '" + s + "'");
    return int(v);
}

// "7", "1,2,3" or "a..b" (stepping by `step`)
std::vector<int> int_list(const std::string& spec, int step)
{
    std::vector<int> out;
    if (spec.empty())
        throw BadInput("empty integer list");
    auto dots = spec.find("..");
    if (dots != std::string::npos) {
        int a = to_int(spec.substr(0, dots)), b = to_int(spec.substr(dots + 2));
        if (step < 1 || b < a)
            throw BadInput("bad range '" + spec + "'");
        for (int v = a; v <= b; v += step)
            out.push_back(v);
        return out;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(to_int(item));
    return out;
}

ModularMatrix parse_eta(const std::string& spec)
{
    std::vector<int> v = int_list(spec, 1);
    if (v.size() != 4)
        throw BadInput("--eta needs four integers a,b,c,d");
    ModularMatrix e{v[0], v[1], v[2], v[3]};
    if (e.det() != 1)
        throw BadInput("--eta must have determinant 1");
    if (e.c <= 0)
        throw BadInput("--eta needs c > 0");
    return e;
}

int single_p(const RunConfig& cfg)
{
    std::vector<int> ps = int_list(cfg.p_spec.empty() ? "2" : cfg.p_spec, 1);
    if (ps.size() != 1)
        throw BadInput("this subcommand takes a single --p");
    if (ps[0] < 1)
        throw BadInput("--p must be positive");
    return ps[0];
}

std::vector<int> positive_list(const std::string& spec, int step, const char* what)
{
    std::vector<int> v = int_list(spec, step);
    for (int x : v)
        if (x < 1)
            throw BadInput(std::string(what) + " values must be positive");
    return v;
}

void warn_gcd(std::ostream& err, int p, int N)
{
    int c = std::gcd(p, N);
    if (c > 1)
        err << "warning: gcd(p=" << p << ", N=" << N << ") = " << c << "\n";
}

std::string num(double x)
{
    if (std::isnan(x))
        return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_cell(const json& v)
{
    if (v.is_null())
        return "nan";
    if (v.is_boolean())
        return v.get<bool>() ? "1" : "0";
    if (v.is_number_integer())
        return std::to_string(v.get<long long>());
    if (v.is_number())
        return num(v.get<double>());
    if (v.is_string())
        return v.get<std::string>();
    return v.dump();
}

void write_table(const Table& t, const RunConfig& cfg, std::ostream& os)
{
    if (cfg.format == "json") {
        json head = {{"schema", schema}, {"command", cfg.command}};
        for (auto& [k, v] : t.meta.items())
            head[k] = v;
        os << head.dump() << "\n";
        for (const auto& r : t.rows) {
            json rec = json::object();
            for (size_t i = 0; i < t.columns.size(); ++i) {
                const json& v = r[i];
                rec[t.columns[i]] = (v.is_number_float() && !std::isfinite(v.get<double>())) ? json() : v;
            }
            os << rec.dump() << "\n";
        }
        return;
    }
    os << "# " << schema << " " << cfg.command;
    for (auto& [k, v] : t.meta.items())
        os << " " << k << "=" << csv_cell(v);
    os << "\n";
    for (size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& r : t.rows) {
        for (size_t i = 0; i < r.size(); ++i)
            os << (i ? "," : "") << csv_cell(r[i]);
        os << "\n";
    }
}

Table cmd_jones(const RunConfig& cfg, std::ostream& err)
{
    const int p = single_p(cfg);
    const std::vector<int> Ns = positive_list(cfg.N_spec.empty() ? "101" : cfg.N_spec, cfg.step, "--N");
    for (int N : Ns)
        warn_gcd(err, p, N);
    std::vector<LogComplex> J(Ns.size());
    parallel_for(Ns.size(), cfg.threads, [&](size_t i) { J[i] = jones_at_cusp({cfg.u, p, Ns[i]}); });
    Table t;
    t.columns = {"N", "u", "p", "logmag", "phase"};
    for (size_t i = 0; i < Ns.size(); ++i)
        t.rows.push_back({Ns[i], cfg.u, p, J[i].logmag, J[i].phase});
    return t;
}

Table cmd_theorem(const RunConfig& cfg, std::ostream& err)
{
    const int p = single_p(cfg);
    const std::vector<int> Ns =
        positive_list(cfg.N_spec.empty() ? "101,201,401,801" : cfg.N_spec, cfg.step, "--N");
    std::vector<cplx> r(Ns.size());
    std::vector<bool> run(Ns.size());
    for (size_t i = 0; i < Ns.size(); ++i) {
        warn_gcd(err, p, Ns[i]);
        run[i] = std::gcd(p, Ns[i]) == 1 || cfg.include_noncoprime;
    }
    parallel_for(Ns.size(), cfg.threads, [&](size_t i) {
        if (run[i])
            r[i] = theorem_ratio({cfg.u, p, Ns[i]}, true);
    });
    Table t;
    t.columns = {"N", "u", "p", "gcd", "status", "ratio_re", "ratio_im", "abs_err"};
    double last = -1.0;
    for (size_t i = 0; i < Ns.size(); ++i) {
        int c = std::gcd(p, Ns[i]);
        if (!run[i]) {
            t.rows.push_back({Ns[i], cfg.u, p, c, "skipped_noncoprime", json(), json(), json()});
            continue;
        }
        double e = std::abs(r[i] - 1.0);
        t.rows.push_back({Ns[i], cfg.u, p, c, c == 1 ? "ok" : "noncoprime", r[i].real(), r[i].imag(), e});
        if (c == 1)
            last = e;
    }
    if (cfg.tol > 0.0) {
        t.meta["tol"] = cfg.tol;
        if (last < 0.0 || last > cfg.tol) {
            err << "theorem: |ratio - 1| at the largest coprime N exceeds tol\n";
            t.code = assertion_failed;
        }
    }
    return t;
}

std::string cstr(cplx z)
{
    std::ostringstream s;
    s.precision(6);
    s << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return s.str();
}

std::string ctx_str(const EvalContext& c)
{
    std::ostringstream s;
    s << "u=" << c.u << " p=" << c.p << " N=" << c.N;
    return s.str();
}

struct Check {
    std::string name, params;
    bool residual;           // residual <= threshold; otherwise value < threshold
    double threshold;
    std::function<double()> eval;
};

Table cmd_lemmas(const RunConfig& cfg, std::ostream& err)
{
    Sampler s(cfg.seed);
    QuadratureConfig qc;
    std::vector<Check> checks;

    for (int k = 0; k <= 2; ++k)
        for (int i = 0; i < 5; ++i) {
            cplx z = sample_strip_point(s, 0.05, 1.0);
            checks.push_back({"L_k_closed_form", "k=" + std::to_string(k) + " z=" + cstr(z), true, 1e-8,
                              [=] {
                                  cplx c = k == 0 ? l0_closed(z) : k == 1 ? l1_closed(z) : l2_closed(z);
                                  return std::abs(l_k_quad(k, z, qc) - c);
                              }});
        }
    for (int i = 0; i < 10; ++i) {
        EvalContext c = sample_context(s);
        cplx z = sample_strip_point(s);
        checks.push_back({"shift_identity", ctx_str(c) + " z=" + cstr(z), true, 1e-7,
                          [=] { return check_shift_identity(z, c, qc); }});
    }
    for (int i = 0; i < 10; ++i) {
        EvalContext c = sample_context(s);
        cplx w = sample_gamma_half_point(s, c);
        checks.push_back({"gamma_half", ctx_str(c) + " w=" + cstr(w), true, 1e-7,
                          [=] { return check_gamma_half(w, c, qc); }});
    }
    for (int i = 0; i < 10; ++i) {
        EvalContext c = sample_context(s);
        cplx z = sample_unit_shift_point(s, c);
        checks.push_back({"unit_shift", ctx_str(c) + " z=" + cstr(z), true, 1e-7,
                          [=] { return check_unit_shift(z, c, qc); }});
    }
    for (EvalContext c : {EvalContext(0.5, 2, 97), EvalContext(0.5, 3, 101)})
        checks.push_back({"decomposition", ctx_str(c), true, 1e-9, [=] { return decomposition_check(c, qc); }});
    struct PI {
        EvalContext c;
        int k;
    };
    for (PI t : {PI{{0.5, 2, 41}, 7}, PI{{0.5, 4, 12}, 3}, PI{{0.5, 4, 12}, 7}, PI{{0.5, 6, 9}, 4}})
        checks.push_back({"product_identity", ctx_str(t.c) + " k=" + std::to_string(t.k), true, 1e-7,
                          [=] { return product_identity_check(t.k, t.c, qc); }});
    for (double u : {0.05, 0.2, 0.5, 0.9})
        for (int p = 1; p <= 3; ++p) {
            std::string ps = "u=" + num(u) + " p=" + std::to_string(p);
            checks.push_back({"F_sigma_lower", ps, false, 0.0, [=] { return -check_F_sigma(u, p).re_F0; }});
            checks.push_back({"F_sigma_upper", ps, false, 0.0, [=] {
                                  FSigmaReport r = check_F_sigma(u, p);
                                  return r.re_F0 - r.re_Fsigma0;
                              }});
            for (int m = 0; m < p; ++m)
                checks.push_back({"F_P12", ps + " m=" + std::to_string(m), false, 0.0, [=] {
                                      PolygonData d = polygon(m, u, p);
                                      return Phi_m(d.P12, m, u, p).real() - Phi_m(d.sigma, m, u, p).real();
                                  }});
        }
    checks.push_back({"c_pm_kappa", "p=1 m=0", false, 0.0, [] { return c_pm(kappa(), 1, 0); }});
    checks.push_back({"dc_top_dp_bound", "p>=1", false, 0.0, [] { return dc_top_dp_bound(); }});

    std::vector<double> vals(checks.size());
    parallel_for(checks.size(), cfg.threads, [&](size_t i) { vals[i] = checks[i].eval(); });

    Table t;
    t.meta["seed"] = cfg.seed;
    if (cfg.tol > 0.0)
        t.meta["tol"] = cfg.tol;
    t.columns = {"check", "params", "value", "threshold", "pass"};
    int failed = 0;
    for (size_t i = 0; i < checks.size(); ++i) {
        const Check& c = checks[i];
        double thr = c.residual && cfg.tol > 0.0 ? cfg.tol : c.threshold;
        bool pass = c.residual ? vals[i] <= thr : vals[i] < thr;
        if (!pass) {
            ++failed;
            err << "FAIL " << c.name << " [" << c.params << "] value=" << num(vals[i]) << " threshold=" << num(thr)
                << "\n";
        }
        t.rows.push_back({c.name, c.params, vals[i], thr, pass});
    }
    t.meta["failed"] = failed;
    if (failed)
        t.code = assertion_failed;
    return t;
}

Table cmd_region(const RunConfig& cfg, std::ostream& err)
{
    const int p = single_p(cfg);
    if (cfg.m < 0 || cfg.m >= p)
        throw BadInput("--m must lie in [0, p-1]");
    if (cfg.res < 50)
        throw BadInput("--res must be at least 50");
    RegionGrid g = grid_scan(cfg.m, cfg.u, p, cfg.res, cfg.res, cfg.nu, cfg.threads);
    int comps = 0;
    try {
        comps = components_D_cap_E(g);
    } catch (const std::runtime_error& e) {
        err << "region: " << e.what() << "\n";
    }
    EndpointTopology topo = endpoint_topology(g);
    Table t;
    t.meta["p"] = p;
    t.meta["m"] = cfg.m;
    t.meta["u"] = cfg.u;
    t.meta["nu"] = cfg.nu;
    t.meta["nx"] = g.nx();
    t.meta["ny"] = g.ny();
    t.meta["components"] = comps;
    t.meta["sigma_re"] = g.sigma.real();
    t.meta["sigma_im"] = g.sigma.imag();
    t.meta["threshold"] = g.threshold;
    t.meta["b_minus"] = g.b_minus;
    t.meta["b_plus"] = g.b_plus;
    t.meta["endpoints_distinct"] = topo.distinct_D_components;
    t.meta["rbar_connected"] = topo.same_Rbar_component;
    t.meta["runder_connected"] = topo.same_Runder_component;
    t.meta["margin_minus"] = topo.margin_minus;
    t.meta["margin_plus"] = topo.margin_plus;
    t.columns = {"x", "y", "rePhi", "inU", "inE", "inD", "inRbar", "inRunder"};
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) {
            const RegionCell& c = g.at(i, j);
            t.rows.push_back({g.xs[i], g.ys[j], c.rePhi, c.inU, c.inE, c.inD, c.inRbar, c.inRunder});
        }
    if (comps != 2)
        t.code = assertion_failed;
    return t;
}

Table cmd_modularity(const RunConfig& cfg, std::ostream& err)
{
    const ModularMatrix eta = parse_eta(cfg.eta_spec);
    const std::vector<int> ps = positive_list(cfg.p_spec.empty() ? "1,2,3" : cfg.p_spec, 1, "--p");
    const std::vector<int> Ns =
        positive_list(cfg.N_spec.empty() ? "401,799,1199" : cfg.N_spec, cfg.step, "--N");
    for (int p : ps)
        for (int N : Ns) {
            warn_gcd(err, p, N);
            if (eta.c * N + eta.d * p < 1)
                throw BadInput("cN + dp must be positive for every (p, N)");
        }

    CEstimateReport rep = estimate_C(eta, cfg.u, ps, Ns, cfg.threads);
    const size_t nN = Ns.size();
    std::vector<LogComplex> ratio(ps.size() * nN), rhs(ps.size() * nN), zr, zh;
    parallel_for(ratio.size(), cfg.threads, [&](size_t t) {
        EvalContext ctx(cfg.u, ps[t / nN], Ns[t % nN]);
        ratio[t] = modularity_ratio(eta, ctx);
        rhs[t] = qmccj_rhs(eta, ctx);
    });
    if (cfg.zagier) {
        zr.resize(ratio.size());
        zh.resize(ratio.size());
        parallel_for(ratio.size(), cfg.threads, [&](size_t t) {
            zr[t] = zagier_ratio(eta, ps[t / nN], Ns[t % nN]);
            zh[t] = zagier_rhs(eta, ps[t / nN], Ns[t % nN]);
        });
    }

    Table t;
    const std::string es = std::to_string(eta.a) + " " + std::to_string(eta.b) + " " + std::to_string(eta.c) +
                           " " + std::to_string(eta.d);
    t.meta["eta"] = es;
    t.meta["u"] = cfg.u;
    t.meta["spread"] = rep.spread;
    cplx bd = bettin_drappeau_C(eta);
    t.meta["bettin_drappeau_re"] = bd.real();
    t.meta["bettin_drappeau_im"] = bd.imag();
    t.columns = {"kind", "eta", "u", "p", "N", "ratio_logmag", "ratio_phase", "rhs_logmag", "rhs_phase",
                 "C_re", "C_im"};
    const json none;
    for (size_t i = 0; i < ps.size(); ++i) {
        for (size_t j = 0; j < nN; ++j) {
            size_t k = i * nN + j;
            cplx c = rep.per_p[i].raw[j];
            t.rows.push_back({"ratio", es, cfg.u, ps[i], Ns[j], ratio[k].logmag, ratio[k].phase, rhs[k].logmag,
                              rhs[k].phase, c.real(), c.imag()});
        }
        cplx C = rep.per_p[i].C;
        t.rows.push_back({"estimate", es, cfg.u, ps[i], none, none, none, none, none, C.real(), C.imag()});
    }
    if (cfg.zagier)
        for (size_t k = 0; k < zr.size(); ++k) {
            cplx c = lc_ratio(zr[k], zh[k]);
            t.rows.push_back({"zagier", es, 0.0, ps[k / nN], Ns[k % nN], zr[k].logmag, zr[k].phase, zh[k].logmag,
                              zh[k].phase, c.real(), c.imag()});
        }

    // only the proved case S = (0,-1;1,0) carries an assertion
    const bool proved = eta.a == 0 && eta.b == -1 && eta.c == 1 && eta.d == 0;
    if (proved) {
        const double tol = cfg.tol > 0.0 ? cfg.tol : 0.05;
        t.meta["tol"] = tol;
        bool good = rep.spread <= tol;
        for (const auto& e : rep.per_p)
            good = good && std::abs(e.C - 1.0) <= tol;
        if (!good) {
            err << "modularity: C estimates for eta = S are not within tol of 1\n";
            t.code = assertion_failed;
        }
    }
    return t;
}

void add_common(CLI::App* sub, RunConfig& cfg)
{
    sub->add_option("--u", cfg.u, "deformation parameter, 0 < u < arccosh(3/2)");
    sub->add_option("--p", cfg.p_spec, "p, or a comma list where the subcommand sweeps p");
    sub->add_option("--threads", cfg.threads, "worker threads (0 = hardware concurrency)");
    sub->add_option("--tol", cfg.tol, "pass threshold for the subcommand's assertions");
    sub->add_option("--out", cfg.out, "output file (default: stdout)");
    sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

void add_N(CLI::App* sub, RunConfig& cfg)
{
    sub->add_option("--N", cfg.N_spec, "N, a comma list, or a range a..b");
    sub->add_option("--step", cfg.step, "step for --N a..b");
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"Numerical laboratory for the colored Jones polynomial of the figure-eight knot"};
    app.require_subcommand(1);

    auto* jones = app.add_subcommand("jones", "J_N(E; e^{xi/N}) as (logmag, phase)");
    add_common(jones, cfg);
    add_N(jones, cfg);

    auto* theorem = app.add_subcommand("theorem", "ratio of J_N to the asymptotic formula over N");
    add_common(theorem, cfg);
    add_N(theorem, cfg);
    theorem->add_flag("--include-noncoprime", cfg.include_noncoprime, "also run N with gcd(p, N) > 1");

    auto* lemmas = app.add_subcommand("lemmas", "identity and inequality residual table");
    add_common(lemmas, cfg);
    lemmas->add_option("--seed", cfg.seed, "seed for the sampled points");

    auto* region = app.add_subcommand("region", "grid of Re Phi_m with region flags");
    add_common(region, cfg);
    region->add_option("--m", cfg.m, "block index, 0 <= m <= p-1");
    region->add_option("--res", cfg.res, "grid panels per axis (>= 50)");
    region->add_option("--nu", cfg.nu, "endpoint offset, 0 < nu < 1/2");

    auto* modularity = app.add_subcommand("modularity", "quantum modularity ratios and C estimates");
    add_common(modularity, cfg);
    add_N(modularity, cfg);
    modularity->add_option("--eta", cfg.eta_spec, "a,b,c,d with ad - bc = 1 and c > 0");
    modularity->add_flag("--zagier", cfg.zagier, "also compare at u = 0 with the Bettin-Drappeau constant");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return bad_input;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        if (!(cfg.u > 0.0 && cfg.u < kappa()))
            throw BadInput("--u must lie in (0, arccosh(3/2))");
        Table t;
        if (cfg.command == "jones")
            t = cmd_jones(cfg, err);
        else if (cfg.command == "theorem")
            t = cmd_theorem(cfg, err);
        else if (cfg.command == "lemmas")
            t = cmd_lemmas(cfg, err);
        else if (cfg.command == "region")
            t = cmd_region(cfg, err);
        else
            t = cmd_modularity(cfg, err);

        if (cfg.out.empty()) {
            write_table(t, cfg, out);
        } else {
            std::ofstream f(cfg.out, std::ios::binary);
            if (!f)
                throw BadInput("cannot open " + cfg.out);
            write_table(t, cfg, f);
        }
        return t.code;
    } catch (const BadInput& e) {
        err << "error: " << e.what() << "\n";
        return bad_input;
    } catch (const QuadratureError& e) {
        err << "numeric failure: " << e.what() << "\n";
        return numeric_failure;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return bad_input;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return bad_input;
    } catch (const std::exception& e) {
        err << "numeric failure: " << e.what() << "\n";
        return numeric_failure;
    }
}

} // namespace fig8::cli
