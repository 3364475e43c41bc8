#pragma once

#include "fig8/numkernel.hpp"

#include <stdexcept>

namespace fig8 {

// kappa = arccosh(3/2); u must lie in (0, kappa)
double kappa();

struct EvalContext {
    double u = 0.5;
    int p = 1;
    int N = 1;

    EvalContext() = default;
    EvalContext(double u_, int p_, int N_);  // validates 0 < u < kappa, p, N >= 1

    cplx xi() const { return {u, 2 * pi * p}; }
    // gamma = xi / (2 N pi i) = p/N - i u / (2 N pi)
    cplx gamma() const { return {double(p) / N, -u / (2 * pi * N)}; }
};

struct QuadratureConfig {
    double tail_cutoff = 0.0;   // <= 0: chosen from the analytic tail bound
    int panels_per_unit = 2;
    int semicircle_panels = 8;
    double tol = 1e-11;         // absolute error target for one contour integral
    int max_intervals = 40000;
};

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// T_N(z) = 1/4 int_Omega e^{(2z-1)x} / (x sinh x sinh(gamma x)) dx
// Omega = (-inf,-1] + upper unit semicircle + [1, inf), left to right.
cplx t_N(cplx z, const EvalContext& ctx, const QuadratureConfig& cfg = {});
LogComplex e_N(cplx z, const EvalContext& ctx, const QuadratureConfig& cfg = {});

// Quadrature of the integrals defining L_0, L_1, L_2 (0 < Re z < 1).
cplx l_k_quad(int k, cplx z, const QuadratureConfig& cfg = {});

// Relative residuals of the E_N functional equations.
double check_shift_identity(cplx z, const EvalContext& ctx, const QuadratureConfig& cfg = {});
double check_gamma_half(cplx w, const EvalContext& ctx, const QuadratureConfig& cfg = {});
double check_unit_shift(cplx z, const EvalContext& ctx, const QuadratureConfig& cfg = {});

// l-th zero of sinh(gamma x): x = l pi i / gamma = -2 N l pi^2 / xi.
cplx t_N_pole(int l, const EvalContext& ctx);

} // namespace fig8
