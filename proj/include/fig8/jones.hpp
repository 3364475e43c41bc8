#pragma once

#include "fig8/numkernel.hpp"
#include "fig8/qdilog.hpp"

#include <vector>

namespace fig8 {

// w = (a + 2 pi i num) / den.  Integer multiples of w keep an exactly
// reduced rational phase, which matters at the cusp where the phases of
// the q-Pochhammer factors wind around many times.  a is a small complex
// correction (real at the cusp itself).
struct ExactExponent {
    cplx a = 0.0;
    long long num = 0;
    long long den = 1;

    cplx value() const { return (a + cplx(0.0, 2 * pi * double(num))) / double(den); }
    // j * w with the rational part of the phase reduced into (-pi, pi]
    cplx times(long long j) const;
};

struct JonesTermTrace {
    int k;
    LogComplex partial_product;   // h_N(k) = prod_{l<=k} g(l/N)
    LogComplex term;              // e^{-k xi} prod (1 - e^{(N+l)xi/N})(1 - e^{(N-l)xi/N})
};

// J_N(E; e^w)
LogComplex jones_exp(int N, cplx w);
LogComplex jones_exp(int N, const ExactExponent& w);

LogComplex jones_at_cusp(const EvalContext& ctx);
std::vector<JonesTermTrace> jones_trace(const EvalContext& ctx);

// J_p(E; e^{4 N pi^2 / xi}) and its summands
LogComplex jones_dual(const EvalContext& ctx);
LogComplex beta(const EvalContext& ctx, int m);

// g(x) = 4 sinh(xi (1+x)/2) sinh(xi (1-x)/2)
cplx g_eval(double x, const EvalContext& ctx);

cplx f_N_eval(cplx z, const EvalContext& ctx, const QuadratureConfig& cfg = {});

// The sum over k written as
//   (1 - e^{-4pN pi^2/xi}) / (2 sinh(u/2)) sum_m beta_m sum_k exp(N f_N(z_k))
// compared against jones_at_cusp.  Needs gcd(p, N) = 1.
double decomposition_check(const EvalContext& ctx, const QuadratureConfig& cfg = {});

// prod_{l<=k} (1 - e^{(N-l)xi/N})(1 - e^{(N+l)xi/N}) directly vs. through E_N.
double product_identity_check(int k, const EvalContext& ctx, const QuadratureConfig& cfg = {});

// Index of the block m with mN/p < k < (m+1)N/p for gcd(p,N) = c >= 1,
// following the n, h bookkeeping of the non-coprime case.  Returns -1 when
// k is a multiple of N/c.
int product_block(int k, int p, int N);

} // namespace fig8
