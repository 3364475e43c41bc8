#include "fig8/saddle.hpp"

#include "fig8/jones.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fig8 {

namespace {

void require_u(double u)
{
    if (!(u > 0.0 && u < kappa()))
        throw std::invalid_argument("saddle: u must lie in (0, kappa)");
}

// Re z + (u / 2p pi) Im z; U_m is m/p < s < (m+1)/p
double strip_coord(cplx z, double u, int p)
{
    return z.real() + u / (2 * pi * p) * z.imag();
}

cplx xi_of(double u, int p) { return {u, 2 * pi * p}; }

} // namespace

cplx inner_root(double u)
{
    double c = std::cosh(u);
    return {0.0, std::sqrt((2 * c + 1) * (3 - 2 * c))};
}

cplx varphi(double u)
{
    require_u(u);
    return std::log(std::cosh(u) - 0.5 - 0.5 * inner_root(u));
}

cplx F_at_zero(double u, int p)
{
    return 4.0 * p * pi * pi / xi_of(u, p);
}

cplx F_eval_extended(cplx z, double u, int p)
{
    if (z == cplx(0.0, 0.0))
        return F_at_zero(u, p);
    const cplx xi = xi_of(u, p);
    return (li2(std::exp(-xi * (1.0 + z))) - li2(std::exp(-xi * (1.0 - z)))) / xi + u * z -
           cplx(0.0, 2 * pi);
}

cplx F_eval(cplx z, double u, int p)
{
    if (z == cplx(0.0, 0.0))
        return F_at_zero(u, p);
    double s = strip_coord(z, u, p);
    if (!(s > 0.0 && s < 1.0 / p))
        throw std::domain_error("F_eval: z outside U_0");
    return F_eval_extended(z, u, p);
}

cplx F_eval_original(cplx z, double u, int p)
{
    if (z == cplx(0.0, 0.0))
        return F_at_zero(u, p);
    const cplx xi = xi_of(u, p);
    return (li2(std::exp(xi * (1.0 - z))) - li2(std::exp(xi * (1.0 + z)))) / xi - u * z +
           4.0 * p * pi * pi / xi;
}

cplx F_prime(cplx z, double u, int p)
{
    // derivative of the small-argument form, branch by branch
    const cplx xi = xi_of(u, p);
    return log_one_minus_exp(-xi * (1.0 + z)) + log_one_minus_exp(-xi * (1.0 - z)) + u;
}

cplx F_second(cplx z, double u, int p)
{
    const cplx xi = xi_of(u, p);
    const cplx e = std::exp(xi * z);
    return xi * (1.0 / e - e) / (2.0 * std::cosh(u) - e - 1.0 / e);
}

cplx Phi_m(cplx z, int m, double u, int p)
{
    const cplx w = z - 2.0 * m * pi * I / xi_of(u, p);
    if (std::abs(w) <= 1e-14 * (1.0 + std::abs(z)))
        return F_at_zero(u, p);
    double s = strip_coord(z, u, p);
    if (!(s > double(m) / p && s < double(m + 1) / p))
        throw std::domain_error("Phi_m: z outside U_m");
    return F_eval_extended(w, u, p);
}

cplx Phi_m_extended(cplx z, int m, double u, int p)
{
    return F_eval_extended(z - 2.0 * m * pi * I / xi_of(u, p), u, p);
}

SaddleData saddle_data(double u, int p)
{
    require_u(u);
    if (p < 1)
        throw std::invalid_argument("saddle_data: p must be positive");
    SaddleData d;
    d.u = u;
    d.p = p;
    d.varphi = varphi(u);
    d.theta = d.varphi.imag();
    const cplx xi = d.xi();
    const cplx s = inner_root(u);
    d.sigma0 = cplx(0.0, d.theta + 2 * pi) / xi;
    d.a2 = 0.5 * xi * s;
    d.F_sigma0 = F_eval(d.sigma0, u, p);
    d.S_E = li2(std::exp(-u - d.varphi)) - li2(std::exp(-u + d.varphi)) + u * (d.varphi + cplx(0.0, 2 * pi));
    d.T_E = 2.0 / s;
    return d;
}

cplx saddle_prefactor(double u)
{
    return std::sqrt(cplx(-pi, 0.0)) * std::sqrt(2.0 / inner_root(u));
}

cplx saddle_prefactor_closed(double u)
{
    double c = std::cosh(u);
    return std::sqrt(2 * pi) * std::polar(1.0, pi / 4) / std::pow((1 + 2 * c) * (3 - 2 * c), 0.25);
}

LogComplex theorem_rhs(const EvalContext& ctx)
{
    const SaddleData d = saddle_data(ctx.u, ctx.p);
    const cplx xi = ctx.xi();
    const cplx n_over_xi = double(ctx.N) / xi;
    cplx L = std::log(saddle_prefactor(ctx.u)) - std::log(2.0 * std::sinh(0.5 * ctx.u)) +
             std::log(std::sqrt(n_over_xi)) + n_over_xi * d.S_E;
    return LogComplex::from_log(L) * jones_dual(ctx);
}

cplx theorem_ratio(const EvalContext& ctx, bool allow_noncoprime)
{
    if (!allow_noncoprime && std::gcd(ctx.p, ctx.N) != 1)
        throw std::invalid_argument("theorem_ratio: gcd(p, N) != 1");
    return lc_ratio(jones_at_cusp(ctx), theorem_rhs(ctx));
}

} // namespace fig8
