#include "contour.hpp"

#include "fig8/qdilog.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace fig8::detail {

namespace {

// Kronrod 15-point abscissae; odd indices are the Gauss 7-point nodes
constexpr double xk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double wk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
    int piece;
    double a, b;
    cplx value;
    double error;
    bool operator<(const Interval& o) const { return error < o.error; }
};

Interval gk15(const Piece& pc, int idx, double a, double b)
{
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx fc = pc.f(c);
    cplx rk = fc * wk[7], rg = fc * wg[3];
    double resabs = std::abs(fc) * wk[7];
    cplx fv[15];
    fv[7] = fc;
    for (int j = 0; j < 7; ++j) {
        cplx f1 = pc.f(c - h * xk[j]), f2 = pc.f(c + h * xk[j]);
        fv[j] = f1;
        fv[14 - j] = f2;
        rk += wk[j] * (f1 + f2);
        resabs += wk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1)
            rg += wg[j / 2] * (f1 + f2);
    }
    cplx mean = rk * 0.5;
    double resasc = wk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j)
        resasc += wk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
    resasc *= std::abs(h);
    resabs *= std::abs(h);

    // QUADPACK's error heuristic
    double err = std::abs((rk - rg) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    double floor = 50.0 * 2.22e-16 * resabs;
    if (floor > err)
        err = floor;
    return {idx, a, b, rk * h, err};
}

} // namespace

ContourResult integrate_pieces(const std::vector<Piece>& pieces, double tol, int max_intervals)
{
    std::priority_queue<Interval> heap;
    for (int i = 0; i < int(pieces.size()); ++i) {
        const auto& br = pieces[i].breaks;
        for (size_t j = 0; j + 1 < br.size(); ++j)
            heap.push(gk15(pieces[i], i, br[j], br[j + 1]));
    }
    auto totals = [&heap]() {
        // priority_queue has no iteration; copy is cheap relative to integrand work
        auto copy = heap;
        cplx v = 0.0;
        double e = 0.0;
        while (!copy.empty()) {
            v += copy.top().value;
            e += copy.top().error;
            copy.pop();
        }
        return std::make_pair(v, e);
    };

    double err = 0.0;
    {
        auto t = totals();
        err = t.second;
    }
    int steps = 0;
    while (err > tol) {
        if (int(heap.size()) >= max_intervals)
            throw QuadratureError("contour quadrature: tolerance not met at maximum refinement");
        Interval w = heap.top();
        heap.pop();
        double mid = 0.5 * (w.a + w.b);
        if (mid == w.a || mid == w.b)
            throw QuadratureError("contour quadrature: interval collapsed before tolerance was met");
        Interval l = gk15(pieces[w.piece], w.piece, w.a, mid);
        Interval r = gk15(pieces[w.piece], w.piece, mid, w.b);
        err += l.error + r.error - w.error;
        heap.push(l);
        heap.push(r);
        // re-sum now and then so the running error does not drift
        if (++steps % 256 == 0 || err <= tol)
            err = totals().second;
    }
    auto t = totals();
    return {t.first, t.second, int(heap.size())};
}

std::vector<double> ray_breaks(double x_max, int panels_per_unit)
{
    std::vector<double> br{1.0};
    int ppu = std::max(1, panels_per_unit);
    double near_end = std::min(x_max, 17.0);
    int n_near = std::max(1, int(std::ceil((near_end - 1.0) * ppu)));
    for (int j = 1; j <= n_near; ++j)
        br.push_back(1.0 + (near_end - 1.0) * j / n_near);
    double a = near_end;
    while (a < x_max) {
        double b = std::min(x_max, 2.0 * a - 1.0);
        for (int j = 1; j <= 4 * ppu; ++j)
            br.push_back(a + (b - a) * j / (4 * ppu));
        a = b;
    }
    return br;
}

double solve_cutoff(const std::function<double(double)>& bound, double target)
{
    double lo = 1.0, hi = 2.0;
    while (bound(hi) > target) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e9)
            throw QuadratureError("contour quadrature: integrand decays too slowly for a finite cutoff");
    }
    for (int it = 0; it < 60 && hi - lo > 1e-3 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        (bound(mid) > target ? lo : hi) = mid;
    }
    return hi;
}

} // namespace fig8::detail
