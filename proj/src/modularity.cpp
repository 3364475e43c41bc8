#include "fig8/modularity.hpp"

#include "fig8/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fig8 {

namespace {

void require_sl2(const ModularMatrix& eta)
{
    if (eta.det() != 1)
        throw std::invalid_argument("modularity: matrix must have determinant 1");
}

void require_positive_c(const ModularMatrix& eta)
{
    require_sl2(eta);
    if (eta.c <= 0)
        throw std::invalid_argument("modularity: need c > 0");
}

long long level(const ModularMatrix& eta, int p, int N)
{
    long long n = eta.c * N + eta.d * p;
    if (n < 1)
        throw std::invalid_argument("modularity: cN + dp must be positive");
    if (n > 100000000)
        throw std::invalid_argument("modularity: cN + dp too large");
    return n;
}

// 2 pi i eta(X) for X = 2N pi i / xi, written as (a' + 2 pi i M) / n with
// n = cN + dp, M = aN + bp and a' = -2 pi i u N / (du + 2 pi i n).
ExactExponent eta_exponent(const ModularMatrix& eta, const EvalContext& ctx)
{
    const long long n = level(eta, ctx.p, ctx.N);
    const long long M = eta.a * ctx.N + eta.b * ctx.p;
    const cplx a = -2.0 * pi * I * ctx.u * double(ctx.N) / (double(eta.d) * ctx.u + 2.0 * pi * I * double(n));
    return {a, M, n};
}

LogComplex lc_principal_pow(cplx z, double e)
{
    return LogComplex::from_log(e * std::log(z));
}

} // namespace

cplx mobius(const ModularMatrix& eta, cplx X)
{
    require_sl2(eta);
    cplx den = double(eta.c) * X + double(eta.d);
    if (den == 0.0)
        throw std::domain_error("mobius: X is the pole of eta");
    return (double(eta.a) * X + double(eta.b)) / den;
}

cplx hbar(const ModularMatrix& eta, cplx X)
{
    require_sl2(eta);
    cplx den = double(eta.c) * X + double(eta.d);
    if (den == 0.0)
        throw std::domain_error("hbar: X is the pole of eta");
    return 2.0 * double(eta.c) * pi * I / den;
}

cplx build_X(const EvalContext& ctx) { return 2.0 * double(ctx.N) * pi * I / ctx.xi(); }

double build_X0(int p, int N)
{
    if (p < 1 || N < 1)
        throw std::invalid_argument("build_X0: p, N must be positive");
    return double(N) / p;
}

LogComplex modularity_ratio(const ModularMatrix& eta, const EvalContext& ctx)
{
    require_positive_c(eta);
    const ExactExponent w = eta_exponent(eta, ctx);
    // e^{2 pi i X} = e^{-4 N pi^2 / xi}
    const cplx w0 = -4.0 * double(ctx.N) * pi * pi / ctx.xi();
    return jones_exp(int(w.den), w) / jones_exp(ctx.p, w0);
}

LogComplex qmccj_rhs(const ModularMatrix& eta, const EvalContext& ctx, cplx C)
{
    require_positive_c(eta);
    if (C == 0.0)
        return LogComplex::zero();
    const SaddleData sd = saddle_data(ctx.u, ctx.p);
    const cplx h = hbar(eta, build_X(ctx));
    LogComplex r = LogComplex::from(C * saddle_prefactor(ctx.u) / (2.0 * std::sinh(0.5 * ctx.u)));
    r = r * lc_principal_pow(1.0 / h, 0.5);
    return r * LogComplex::from_log(sd.S_E / h);
}

CEstimateReport estimate_C(const ModularMatrix& eta, double u, const std::vector<int>& p_list,
                           const std::vector<int>& N_list, unsigned threads)
{
    require_positive_c(eta);
    if (N_list.size() < 2)
        throw std::invalid_argument("estimate_C: need at least two N values");
    if (p_list.empty())
        throw std::invalid_argument("estimate_C: empty p list");
    for (size_t i = 1; i < N_list.size(); ++i)
        if (N_list[i] <= N_list[i - 1])
            throw std::invalid_argument("estimate_C: N values must increase");

    CEstimateReport rep;
    rep.eta = eta;
    rep.u = u;
    rep.per_p.resize(p_list.size());
    const size_t nN = N_list.size();
    std::vector<cplx> raw(p_list.size() * nN);
    parallel_for(raw.size(), threads, [&](size_t t) {
        EvalContext ctx(u, p_list[t / nN], N_list[t % nN]);
        raw[t] = lc_ratio(modularity_ratio(eta, ctx), qmccj_rhs(eta, ctx));
    });
    for (size_t i = 0; i < p_list.size(); ++i) {
        CEstimate& e = rep.per_p[i];
        e.p = p_list[i];
        e.N = N_list;
        e.raw.assign(raw.begin() + i * nN, raw.begin() + (i + 1) * nN);
        const double n1 = N_list[nN - 2], n2 = N_list[nN - 1];
        e.C = (n2 * e.raw[nN - 1] - n1 * e.raw[nN - 2]) / (n2 - n1);
    }
    for (size_t i = 0; i < rep.per_p.size(); ++i)
        for (size_t j = i + 1; j < rep.per_p.size(); ++j) {
            cplx a = rep.per_p[i].C, b = rep.per_p[j].C;
            rep.spread = std::max(rep.spread, std::abs(a - b) / std::min(std::abs(a), std::abs(b)));
        }
    return rep;
}

double cv_figure_eight()
{
    const cplx e = std::exp(cplx(0.0, pi / 3));
    return (li2(e) - li2(std::conj(e))).imag();
}

cplx bettin_drappeau_C(const ModularMatrix& eta)
{
    require_positive_c(eta);
    const long long c = eta.c;
    double log_prod = 0.0, log_run = 0.0;
    std::vector<double> runs;
    for (long long g = 1; g <= c; ++g) {
        double t = double(eta.a * g % c) / double(c) - 5.0 / (6.0 * double(c));
        double lw = std::log(std::abs(1.0 - std::exp(cplx(0.0, 2 * pi * t))));
        log_prod += 2.0 * double(g) / double(c) * lw;
        log_run += 2.0 * lw;
        runs.push_back(log_run);
    }
    double mx = *std::max_element(runs.begin(), runs.end());
    double s = 0.0;
    for (double r : runs)
        s += std::exp(r - mx);
    double mag = std::log(double(c)) - 0.25 * std::log(3.0) + log_prod + mx + std::log(s);
    return std::polar(std::exp(mag), 0.75 * pi);
}

LogComplex zagier_ratio(const ModularMatrix& eta, int p, int N)
{
    require_positive_c(eta);
    if (p < 1 || N < 1)
        throw std::invalid_argument("zagier_ratio: p, N must be positive");
    const long long n = level(eta, p, N);
    const ExactExponent num{0.0, eta.a * N + eta.b * p, n};
    const ExactExponent den{0.0, N, p};
    return jones_exp(int(n), num) / jones_exp(p, den);
}

LogComplex zagier_rhs(const ModularMatrix& eta, int p, int N)
{
    return zagier_rhs(eta, p, N, bettin_drappeau_C(eta));
}

LogComplex zagier_rhs(const ModularMatrix& eta, int p, int N, cplx C)
{
    require_positive_c(eta);
    if (C == 0.0)
        return LogComplex::zero();
    const cplx h = hbar(eta, build_X0(p, N));
    return LogComplex::from(C) * lc_principal_pow(2.0 * pi / h, 1.5) *
           LogComplex::from_log(I * cv_figure_eight() / h);
}

} // namespace fig8
