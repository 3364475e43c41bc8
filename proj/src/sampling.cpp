#include "fig8/sampling.hpp"

#include <cmath>

namespace fig8 {

EvalContext sample_context(Sampler& s)
{
    static const double us[] = {0.2, 0.5, 0.9};
    static const int Ns[] = {31, 40, 97};
    double u = us[s.pick(3)];
    int p = 1 + s.pick(3);
    int N = Ns[s.pick(3)];
    return {u, p, N};
}

cplx sample_strip_point(Sampler& s, double margin, double im)
{
    double x = s.uniform(margin, 1.0 - margin);
    double y = s.uniform(-im, im);
    return {x, y};
}

cplx sample_gamma_half_point(Sampler& s, const EvalContext& ctx)
{
    const double g = ctx.gamma().real();
    // stay away from w = 0, where both sides of the identity vanish
    for (;;) {
        cplx w(0.9 * g * s.uniform(-1.0, 1.0), s.uniform(-0.3, 0.3));
        if (std::abs(w) > 0.2 * g)
            return w;
    }
}

cplx sample_unit_shift_point(Sampler& s, const EvalContext& ctx)
{
    const double g = ctx.gamma().real();
    return {0.45 * g * s.uniform(-1.0, 1.0), s.uniform(-0.3, 0.3)};
}

} // namespace fig8
