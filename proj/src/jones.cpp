#include "fig8/jones.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fig8 {

namespace {

long long floor_mod(long long a, long long m)
{
    long long r = a % m;
    return r < 0 ? r + m : r;
}

// sinh(j w / 2) in scaled form, exactly zero when j w lies in 2 pi i Z
ScaledComplex half_sinh(const ExactExponent& w, long long j)
{
    const long long t = j * w.num;
    long long r = floor_mod(t, w.den);
    if (2 * r > w.den)
        r -= w.den;
    if (w.a == 0.0 && r == 0)
        return {};
    // Im(j w / 2) = pi t / den = pi r / den + q pi
    const long long q = (t - r) / w.den;
    cplx z = 0.5 * double(j) * w.a / double(w.den) + cplx(0.0, pi * double(r) / double(w.den));
    ScaledComplex s = std::abs(z.real()) < 350.0 ? ScaledComplex::from(std::sinh(z))
                                                 : ScaledComplex::from_log(lc_sinh(z));
    if (q % 2 != 0)
        s.mant = -s.mant;
    return s;
}

ScaledComplex half_sinh(cplx w, long long j)
{
    cplx z = 0.5 * double(j) * w;
    double k = std::nearbyint(z.imag() / pi);
    double scale = 4.0 * 2.22e-16 * std::max(1.0, std::abs(z));
    if (std::abs(z.real()) <= scale && std::abs(z.imag() - k * pi) <= scale)
        return {};
    if (std::abs(z.real()) < 350.0)
        return ScaledComplex::from(std::sinh(z));
    return ScaledComplex::from_log(lc_sinh(z));
}

template <class W>
LogComplex jones_sum(int N, const W& w)
{
    if (N < 1)
        throw std::invalid_argument("jones_exp: N must be positive");
    ScaledComplex term = ScaledComplex::from(1.0);
    ScaledComplex sum = term;
    const ScaledComplex four = ScaledComplex::from(4.0);
    for (int k = 1; k < N && !term.is_zero(); ++k) {
        term *= four;
        term *= half_sinh(w, N + k);
        term *= half_sinh(w, N - k);
        sum += term;
    }
    return sum.to_log();
}

// log(1 - e^{j w}) with the exact phase reduction
cplx log_factor(const ExactExponent& w, long long j)
{
    return log_one_minus_exp(w.times(j));
}

ExactExponent cusp_exponent(const EvalContext& ctx)
{
    return {ctx.u, ctx.p, ctx.N};
}

// 4 N pi^2 / xi
cplx dual_exponent(const EvalContext& ctx)
{
    return 4.0 * ctx.N * pi * pi / ctx.xi();
}

// log of (1 - e^{4pW})/(1 - e^xi) prod_{j<=m} (1 - e^{4(p-j)W})(1 - e^{4(p+j)W}),
// W = N pi^2 / xi
cplx log_block_prefactor(const EvalContext& ctx, int m)
{
    const cplx W4 = dual_exponent(ctx);
    cplx L = log_one_minus_exp(double(ctx.p) * W4) - log_one_minus_exp(ctx.xi());
    for (int j = 1; j <= m; ++j)
        L += log_one_minus_exp(double(ctx.p - j) * W4) + log_one_minus_exp(double(ctx.p + j) * W4);
    return L;
}

// log of prod_{l<=k} (1 - e^{(N-l)xi/N})(1 - e^{(N+l)xi/N})
cplx log_direct_product(int k, const EvalContext& ctx)
{
    const ExactExponent w = cusp_exponent(ctx);
    cplx L = 0.0;
    for (int l = 1; l <= k; ++l)
        L += log_factor(w, ctx.N - l) + log_factor(w, ctx.N + l);
    return L;
}

double log_residual(cplx a, cplx b)
{
    cplx d = a - b;
    // compare modulo 2 pi i
    d = {d.real(), normalize_phase(d.imag())};
    return std::abs(cexpm1(d));
}

} // namespace

cplx ExactExponent::times(long long j) const
{
    long long r = floor_mod(j * num, den);
    if (2 * r > den)
        r -= den;
    return double(j) * a / double(den) + cplx(0.0, 2 * pi * double(r) / double(den));
}

LogComplex jones_exp(int N, cplx w) { return jones_sum(N, w); }

LogComplex jones_exp(int N, const ExactExponent& w)
{
    if (w.den <= 0)
        throw std::invalid_argument("jones_exp: exponent denominator must be positive");
    return jones_sum(N, w);
}

LogComplex jones_at_cusp(const EvalContext& ctx)
{
    return jones_exp(ctx.N, cusp_exponent(ctx));
}

std::vector<JonesTermTrace> jones_trace(const EvalContext& ctx)
{
    const ExactExponent w = cusp_exponent(ctx);
    std::vector<JonesTermTrace> out;
    out.reserve(ctx.N);
    LogComplex h = LogComplex::one();
    cplx log_term = 0.0;
    const cplx xi = ctx.xi();
    for (int k = 0; k < ctx.N; ++k) {
        if (k > 0) {
            h = h * LogComplex::from(g_eval(double(k) / ctx.N, ctx));
            log_term += log_factor(w, ctx.N + k) + log_factor(w, ctx.N - k);
        }
        // e^{-k xi} has modulus e^{-k u} and phase -2 pi k p = 0
        cplx full = log_term - double(k) * xi.real();
        out.push_back({k, h, LogComplex::from_log(full)});
    }
    return out;
}

LogComplex jones_dual(const EvalContext& ctx)
{
    return jones_exp(ctx.p, dual_exponent(ctx));
}

LogComplex beta(const EvalContext& ctx, int m)
{
    if (m < 0 || m >= ctx.p)
        throw std::invalid_argument("beta: need 0 <= m <= p-1");
    const cplx W4 = dual_exponent(ctx);
    cplx L = -double(m) * ctx.p * W4;
    for (int j = 1; j <= m; ++j)
        L += log_one_minus_exp(double(ctx.p - j) * W4) + log_one_minus_exp(double(ctx.p + j) * W4);
    return LogComplex::from_log(L);
}

cplx g_eval(double x, const EvalContext& ctx)
{
    const cplx xi = ctx.xi();
    return 4.0 * std::sinh(0.5 * xi * (1.0 + x)) * std::sinh(0.5 * xi * (1.0 - x));
}

cplx f_N_eval(cplx z, const EvalContext& ctx, const QuadratureConfig& cfg)
{
    const double s = z.real() + ctx.u / (2 * pi * ctx.p) * z.imag();
    const double half = 1.0 / (2.0 * ctx.N);
    if (!(s > -half && s < 1.0 / ctx.p + half))
        throw std::domain_error("f_N_eval: z outside the strip where f_N is defined");
    const cplx xi = ctx.xi();
    const double p = ctx.p;
    const cplx a = xi * (1.0 - z) / (2 * pi * I) - p + 1.0;
    const cplx b = xi * (1.0 + z) / (2 * pi * I) - p;
    return (t_N(a, ctx, cfg) - t_N(b, ctx, cfg)) / double(ctx.N) - ctx.u * z +
           4.0 * p * pi * pi / xi;
}

double decomposition_check(const EvalContext& ctx, const QuadratureConfig& cfg)
{
    if (std::gcd(ctx.p, ctx.N) != 1)
        throw std::invalid_argument("decomposition_check: needs gcd(p, N) = 1");
    const int N = ctx.N, p = ctx.p;
    const cplx xi = ctx.xi();
    ScaledComplex total;
    for (int m = 0; m < p; ++m) {
        // k = 0 belongs to the m = 0 block (its term is 1)
        int k_lo = m == 0 ? 0 : (m * N) / p + 1;
        int k_hi = ((m + 1) * N - 1) / p;
        ScaledComplex inner;
        for (int k = k_lo; k <= k_hi && k < N; ++k) {
            cplx z = double(2 * k + 1) / (2.0 * N) - 2.0 * m * pi * I / xi;
            inner += ScaledComplex::from_log(LogComplex::from_log(double(N) * f_N_eval(z, ctx, cfg)));
        }
        inner *= ScaledComplex::from_log(beta(ctx, m));
        total += inner;
    }
    cplx pre = log_one_minus_exp(-dual_exponent(ctx) * double(p)) - std::log(2.0 * std::sinh(0.5 * ctx.u));
    total *= ScaledComplex::from_log(LogComplex::from_log(pre));
    LogComplex lhs = jones_at_cusp(ctx);
    return log_residual(total.to_log().log(), lhs.log());
}

int product_block(int k, int p, int N)
{
    const int c = std::gcd(p, N);
    const int Np = N / c, pp = p / c;
    const int n = k / Np;
    const int r = k - n * Np;
    if (r == 0)
        return -1;
    // h N'/p' < r < (h+1) N'/p'
    const int h = (r * pp) / Np;
    return n * pp + h;
}

double product_identity_check(int k, const EvalContext& ctx, const QuadratureConfig& cfg)
{
    const int N = ctx.N, p = ctx.p;
    if (k < 1 || k > N - 1)
        throw std::invalid_argument("product_identity_check: need 1 <= k <= N-1");
    const int c = std::gcd(p, N);
    const int Np = N / c, pp = p / c;
    const cplx g = ctx.gamma();
    const cplx direct = log_direct_product(k, ctx);
    cplx via;
    int m = product_block(k, p, N);
    if (m >= 0) {
        cplx a = (double(N - k) - 0.5) * g - double(p) + double(m + 1);
        cplx b = (double(N + k) + 0.5) * g - double(p) - double(m);
        via = log_block_prefactor(ctx, m) + t_N(a, ctx, cfg) - t_N(b, ctx, cfg);
    } else if (c > 1 && k == Np) {
        const ExactExponent w = cusp_exponent(ctx);
        cplx a = (double(N - Np) + 0.5) * g - double(p) + double(pp);
        cplx b = (double(N + Np) - 0.5) * g - double(p) - double(pp) + 1.0;
        via = log_factor(w, N - Np) + log_factor(w, N + Np) + log_block_prefactor(ctx, pp - 1) +
              t_N(a, ctx, cfg) - t_N(b, ctx, cfg);
    } else {
        throw std::domain_error("product_identity_check: k is an excluded multiple of N/gcd(p,N)");
    }
    return log_residual(via, direct);
}

} // namespace fig8
