#pragma once

#include "fig8/numkernel.hpp"
#include "fig8/qdilog.hpp"

namespace fig8 {

struct SaddleData {
    double u = 0.0;
    int p = 1;
    double theta = 0.0;     // Im varphi, in (-pi/3, 0)
    cplx varphi;            // purely imaginary
    cplx sigma0;            // (theta + 2 pi) i / xi
    cplx a2;                // F''(sigma0) / 2
    cplx F_sigma0;
    cplx S_E;
    cplx T_E;

    cplx xi() const { return {u, 2 * pi * p}; }
    cplx sigma(int m) const { return sigma0 + 2.0 * m * pi * I / xi(); }
};

// sqrt((2cosh u + 1)(2cosh u - 3)), the root on the positive imaginary axis
cplx inner_root(double u);

// log(cosh u - 1/2 - inner_root(u)/2); needs 0 < u < kappa
cplx varphi(double u);

SaddleData saddle_data(double u, int p);

// F in the form with Li2 arguments inside the unit disk.  F_eval checks
// 0 < Re z + (u/2p pi) Im z < 1/p; F_eval_extended only refuses points
// where an argument lands on the cut.  At z = 0 the two Li2 terms of the
// defining formula coincide and F(0) = 4 p pi^2 / xi.
cplx F_eval(cplx z, double u, int p);
cplx F_eval_extended(cplx z, double u, int p);
// The defining form, Li2(e^{xi(1-z)}) - Li2(e^{xi(1+z)}) over xi, -uz + 4p pi^2/xi
cplx F_eval_original(cplx z, double u, int p);
cplx F_at_zero(double u, int p);

cplx F_prime(cplx z, double u, int p);
cplx F_second(cplx z, double u, int p);

// Phi_m(z) = F(z - 2 m pi i / xi) on m/p < Re z + (u/2p pi) Im z < (m+1)/p
cplx Phi_m(cplx z, int m, double u, int p);
cplx Phi_m_extended(cplx z, int m, double u, int p);

// sqrt(-pi) T_E^{1/2} assembled with principal roots, and the same
// constant written as sqrt(2 pi) e^{i pi/4} / ((1+2cosh u)(3-2cosh u))^{1/4}
cplx saddle_prefactor(double u);
cplx saddle_prefactor_closed(double u);

// sqrt(-pi)/(2 sinh(u/2)) T_E^{1/2} J_p(E; e^{4N pi^2/xi}) (N/xi)^{1/2} e^{(N/xi) S_E}
LogComplex theorem_rhs(const EvalContext& ctx);

// J_N(E; e^{xi/N}) / theorem_rhs; needs gcd(p, N) = 1 unless allow_noncoprime
cplx theorem_ratio(const EvalContext& ctx, bool allow_noncoprime = false);

} // namespace fig8
