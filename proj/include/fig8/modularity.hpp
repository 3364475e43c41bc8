#pragma once

#include "fig8/jones.hpp"
#include "fig8/saddle.hpp"

#include <vector>

namespace fig8 {

struct ModularMatrix {
    long long a = 1, b = 0, c = 0, d = 1;

    long long det() const { return a * d - b * c; }
    ModularMatrix operator*(const ModularMatrix& o) const
    {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    // eta^{-1}(infinity) = -d / c
    double pole() const { return -double(d) / double(c); }
};

inline constexpr ModularMatrix eta_S{0, -1, 1, 0};

// (aX + b) / (cX + d) and 2 c pi i / (cX + d); both throw at the pole
cplx mobius(const ModularMatrix& eta, cplx X);
cplx hbar(const ModularMatrix& eta, cplx X);

// X = 2 N pi i / xi, X0 = N / p
cplx build_X(const EvalContext& ctx);
double build_X0(int p, int N);

// J_{cN+dp}(E; e^{2 pi i eta(X)}) / J_p(E; e^{2 pi i X})
LogComplex modularity_ratio(const ModularMatrix& eta, const EvalContext& ctx);

// C sqrt(-pi) / (2 sinh(u/2)) (T_E / hbar)^{1/2} exp(S_E / hbar), hbar = hbar_eta(X).
// The square root is split as sqrt(T_E) sqrt(1/hbar), matching theorem_rhs.
LogComplex qmccj_rhs(const ModularMatrix& eta, const EvalContext& ctx, cplx C = 1.0);

struct CEstimate {
    int p = 1;
    std::vector<int> N;
    std::vector<cplx> raw;   // ratio / qmccj_rhs(C = 1) at each N
    cplx C;                  // Richardson in 1/N on the last two points
};
struct CEstimateReport {
    ModularMatrix eta;
    double u = 0.0;
    std::vector<CEstimate> per_p;
    double spread = 0.0;     // max over pairs of |C_i - C_j| / min(|C_i|, |C_j|)
};
CEstimateReport estimate_C(const ModularMatrix& eta, double u, const std::vector<int>& p_list,
                           const std::vector<int>& N_list, unsigned threads = 0);

// Im(Li2(e^{i pi/3}) - Li2(e^{-i pi/3})), the hyperbolic volume of the complement
double cv_figure_eight();

cplx bettin_drappeau_C(const ModularMatrix& eta);

// J_{cN+dp}(E; e^{2 pi i eta(X0)}) / J_p(E; e^{2 pi i X0}) at roots of unity
LogComplex zagier_ratio(const ModularMatrix& eta, int p, int N);
// C (2 pi / hbar)^{3/2} exp(i CV / hbar), hbar = hbar_eta(X0)
LogComplex zagier_rhs(const ModularMatrix& eta, int p, int N);
LogComplex zagier_rhs(const ModularMatrix& eta, int p, int N, cplx C);

} // namespace fig8
