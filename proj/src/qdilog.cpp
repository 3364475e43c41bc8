#include "fig8/qdilog.hpp"

#include "contour.hpp"

#include <cmath>
#include <string>

namespace fig8 {

using detail::Piece;

double kappa() { return std::acosh(1.5); }

EvalContext::EvalContext(double u_, int p_, int N_) : u(u_), p(p_), N(N_)
{
    if (!(u > 0.0 && u < kappa()))
        throw std::invalid_argument("EvalContext: u must lie in (0, kappa)");
    if (p < 1 || N < 1)
        throw std::invalid_argument("EvalContext: p and N must be positive");
}

namespace {

// Shared driver: ray integrands in stable forms plus the semicircle.
// right(x), x >= 1;  left(y) = integrand at x = -y, y >= 1;
// arc(x) on |x| = 1 (the jacobian -i x is applied here, t runs 0..pi).
template <class Right, class Left, class Arc, class TailR, class TailL>
cplx omega_integral(Right right, Left left, Arc arc, TailR tail_r, TailL tail_l,
                    const QuadratureConfig& cfg)
{
    double tol = cfg.tol;
    double xr, xl, tail_err = 0.0;
    if (cfg.tail_cutoff > 0.0) {
        xr = xl = cfg.tail_cutoff;
        tail_err = tail_r(xr) + tail_l(xl);
        if (tail_err > 0.5 * tol)
            throw QuadratureError("t_N: tail_cutoff too small for the requested tolerance");
    } else {
        xr = detail::solve_cutoff(tail_r, 0.05 * tol);
        xl = detail::solve_cutoff(tail_l, 0.05 * tol);
        tail_err = tail_r(xr) + tail_l(xl);
    }
    std::vector<Piece> pieces(3);
    pieces[0].f = [&](double y) { return left(y); };
    pieces[0].breaks = detail::ray_breaks(xl, cfg.panels_per_unit);
    pieces[1].f = [&](double t) {
        cplx x = std::polar(1.0, t);
        return cplx(0.0, -1.0) * x * arc(x);
    };
    int ns = std::max(1, cfg.semicircle_panels);
    for (int j = 0; j <= ns; ++j)
        pieces[1].breaks.push_back(pi * j / ns);
    pieces[2].f = [&](double x) { return right(x); };
    pieces[2].breaks = detail::ray_breaks(xr, cfg.panels_per_unit);
    auto res = detail::integrate_pieces(pieces, tol - tail_err, cfg.max_intervals);
    return res.value;
}

void require_t_strip(cplx z, const EvalContext& ctx)
{
    double edge = double(ctx.p) / (2.0 * ctx.N);
    if (!(z.real() > -edge && z.real() < 1.0 + edge) || !std::isfinite(z.imag()))
        throw std::domain_error("t_N: need -p/(2N) < Re z < 1 + p/(2N)");
}

double one_minus_exp_abs(cplx a)
{
    if (a.real() > 0.0)
        return std::abs(cexpm1(-a)) * std::exp(std::min(a.real(), 700.0));
    return std::abs(cexpm1(a));
}

} // namespace

cplx t_N(cplx z, const EvalContext& ctx, const QuadratureConfig& cfg)
{
    require_t_strip(z, ctx);
    const cplx g = ctx.gamma();
    const double rg = double(ctx.p) / ctx.N;
    const double rate_r = 2.0 - 2.0 * z.real() + rg;
    const double rate_l = 2.0 * z.real() + rg;
    const cplx er = 2.0 * z - 2.0 - g;
    const cplx el = -(2.0 * z + g);

    auto right = [&](double x) {
        return std::exp(er * x) / (x * (-std::expm1(-2.0 * x)) * (-cexpm1(-2.0 * g * x)));
    };
    auto left = [&](double y) {
        return -std::exp(el * y) / (y * (-std::expm1(-2.0 * y)) * (-cexpm1(-2.0 * g * y)));
    };
    auto arc = [&](cplx x) {
        return 0.25 * std::exp((2.0 * z - 1.0) * x) / (x * std::sinh(x) * std::sinh(g * x));
    };
    // |1/sinh(gamma x)| <= 1/sinh(Re(gamma) x) on the rays
    auto tail = [rg](double rate) {
        return [rate, rg](double X) {
            return std::exp(-rate * X) /
                   (rate * X * (-std::expm1(-2.0 * X)) * (-std::expm1(-2.0 * rg * X)));
        };
    };
    return omega_integral(right, left, arc, tail(rate_r), tail(rate_l), cfg);
}

LogComplex e_N(cplx z, const EvalContext& ctx, const QuadratureConfig& cfg)
{
    return LogComplex::from_log(t_N(z, ctx, cfg));
}

cplx l_k_quad(int k, cplx z, const QuadratureConfig& cfg)
{
    if (k < 0 || k > 2)
        throw std::invalid_argument("l_k_quad: k must be 0, 1 or 2");
    if (!(z.real() > 0.0 && z.real() < 1.0))
        throw std::domain_error("l_k_quad: need 0 < Re z < 1");
    const cplx c = k == 0 ? cplx(1.0) : k == 1 ? cplx(-0.5) : cplx(0.0, pi / 2);
    const double cabs = std::abs(c);
    const double rate_r = 2.0 - 2.0 * z.real();
    const double rate_l = 2.0 * z.real();

    auto right = [&](double x) {
        return c * 2.0 * std::exp((2.0 * z - 2.0) * x) / ((-std::expm1(-2.0 * x)) * std::pow(x, k));
    };
    auto left = [&](double y) {
        return -c * 2.0 * std::exp(-2.0 * z * y) / ((-std::expm1(-2.0 * y)) * std::pow(-y, k));
    };
    auto arc = [&](cplx x) {
        return c * std::exp((2.0 * z - 1.0) * x) / (std::pow(x, k) * std::sinh(x));
    };
    auto tail = [cabs, k](double rate) {
        return [rate, cabs, k](double X) {
            return 2.0 * cabs * std::exp(-rate * X) / (rate * std::pow(X, k) * (-std::expm1(-2.0 * X)));
        };
    };
    return omega_integral(right, left, arc, tail(rate_r), tail(rate_l), cfg);
}

double check_shift_identity(cplx z, const EvalContext& ctx, const QuadratureConfig& cfg)
{
    if (!(z.real() > 0.0 && z.real() < 1.0))
        throw std::domain_error("check_shift_identity: need 0 < Re z < 1");
    const cplx a = 2.0 * pi * I * z;
    if (one_minus_exp_abs(a) < 1e-8)
        throw std::domain_error("check_shift_identity: 1 - e^{2 pi i z} vanishes");
    const cplx g = ctx.gamma();
    cplx d = t_N(z - 0.5 * g, ctx, cfg) - t_N(z + 0.5 * g, ctx, cfg) - log_one_minus_exp(a);
    return std::abs(cexpm1(d));
}

double check_gamma_half(cplx w, const EvalContext& ctx, const QuadratureConfig& cfg)
{
    const cplx g = ctx.gamma();
    if (!(std::abs(w.real()) < g.real()))
        throw std::domain_error("check_gamma_half: need |Re w| < Re gamma");
    const cplx den = 2.0 * pi * I * w;
    if (one_minus_exp_abs(den) < 1e-8)
        throw std::domain_error("check_gamma_half: 1 - e^{2 pi i w} vanishes");
    const cplx num = den / g;
    cplx d = t_N(w + 0.5 * g, ctx, cfg) - t_N(w - 0.5 * g + 1.0, ctx, cfg) -
             (log_one_minus_exp(num) - log_one_minus_exp(den));
    return std::abs(cexpm1(d));
}

double check_unit_shift(cplx z, const EvalContext& ctx, const QuadratureConfig& cfg)
{
    const cplx g = ctx.gamma();
    if (!(std::abs(z.real()) < 0.5 * g.real()))
        throw std::domain_error("check_unit_shift: need |Re z| < Re gamma / 2");
    // 1 + e^{a} = 1 - e^{a + i pi}
    const cplx a = 2.0 * pi * I * z / g + cplx(0.0, pi);
    cplx d = t_N(z, ctx, cfg) - t_N(z + 1.0, ctx, cfg) - log_one_minus_exp(a);
    return std::abs(cexpm1(d));
}

cplx t_N_pole(int l, const EvalContext& ctx)
{
    return cplx(0.0, l * pi) / ctx.gamma();
}

} // namespace fig8
