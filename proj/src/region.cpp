#include "fig8/region.hpp"

#include "fig8/parallel.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace fig8 {

namespace {

cplx xi_of(double u, int p) { return {u, 2 * pi * p}; }

// Im varphi(u) on (0, kappa]; at kappa the root vanishes and theta = 0
double theta_closed(double u)
{
    double c = std::cosh(u);
    double r = std::max(0.0, (2 * c + 1) * (3 - 2 * c));
    return std::arg(cplx(c - 0.5, -0.5 * std::sqrt(r)));
}

void require_block(int m, double u, int p)
{
    if (p < 1 || m < 0 || m >= p)
        throw std::invalid_argument("region: need 0 <= m <= p-1");
    if (!(u > 0.0 && u < kappa()))
        throw std::invalid_argument("region: u must lie in (0, kappa)");
}

bool in_D_and_E(const RegionCell& c) { return c.inD && c.inE; }
bool in_Rbar(const RegionCell& c) { return c.inRbar && c.inE; }
bool in_Runder(const RegionCell& c) { return c.inRunder && c.inE; }

} // namespace

const LineEq& PolygonData::line(const std::string& name) const
{
    for (const auto& l : lines)
        if (l.name == name)
            return l;
    throw std::out_of_range("PolygonData: no line named " + name);
}

PolygonData polygon(int m, double u, int p)
{
    require_block(m, u, p);
    PolygonData d;
    d.m = m;
    d.u = u;
    d.p = p;
    d.sigma = saddle_data(u, p).sigma(m);
    const double ims = d.sigma.imag();
    const cplx xi = xi_of(u, p), xb = std::conj(xi);
    const double w = double(m) / p, e = double(m + 1) / p, mid = (2.0 * m + 1) / (2.0 * p);
    d.P0 = w;
    d.P1 = w + xb * ims / (p * pi);
    d.P2 = cplx(e, -2 * ims);
    d.P3 = e;
    d.P4 = e - xb * ims / (p * pi);
    d.P5 = cplx(w, 2 * ims);
    d.P12 = mid + xb * ims / (p * pi);
    d.P34 = 2.0 * (m + 1) * pi * I / xi;
    d.P45 = mid - xb * ims / (p * pi);
    d.P50 = double(m) * xb * I / (2.0 * p * p * pi);

    const double slope = u / (2 * pi * p);
    d.lines = {
        {"L_sigma", 1.0, -2 * pi * p / u, 0.0},
        {"L_E", 1.0, slope, e},
        {"L_M", 1.0, slope, mid},
        {"L_W", 1.0, slope, w},
        {"H_upper", 0.0, 1.0, 2 * ims},
        {"H_lower", 0.0, 1.0, -2 * ims},
        {"V_E", 1.0, 0.0, e},
        {"V_W", 1.0, 0.0, w},
    };
    d.ordering_ok = d.P1.real() < d.P45.real() && d.P12.real() < d.P4.real() &&
                    d.P12.real() < d.sigma.real();
    return d;
}

RegionGrid grid_scan(int m, double u, int p, int res_x, int res_y, double nu, unsigned threads)
{
    require_block(m, u, p);
    if (res_x < 50 || res_y < 50)
        throw std::invalid_argument("grid_scan: resolution must be at least 50x50");
    if (!(nu > 0.0 && nu < 0.5))
        throw std::invalid_argument("grid_scan: nu must lie in (0, 1/2)");
    RegionGrid g;
    g.m = m;
    g.u = u;
    g.p = p;
    g.nu = nu;
    g.b_minus = (m + nu) / p;
    g.b_plus = (m + 1 - nu) / p;
    g.sigma = saddle_data(u, p).sigma(m);

    const double dx = (g.b_plus - g.b_minus) / res_x;
    const long i_lo = long(std::ceil((g.b_minus - g.sigma.real()) / dx));
    const long i_hi = long(std::floor((g.b_plus - g.sigma.real()) / dx));
    for (long i = i_lo; i <= i_hi; ++i)
        g.xs.push_back(g.sigma.real() + double(i) * dx);
    g.sigma_i = int(-i_lo);
    const int K = std::max(1, res_y / 4);
    for (int j = -2 * K; j <= 2 * K; ++j)
        g.ys.push_back(g.sigma.imag() * (double(j) / K));
    g.sigma_j = 3 * K;

    g.threshold = Phi_m_extended(g.point(g.sigma_i, g.sigma_j), m, u, p).real();

    const int nx = g.nx(), ny = g.ny();
    const double lo = double(m) / p, hi = double(m + 1) / p;
    const double slope = u / (2 * pi * p);
    const double ylim = 2 * g.sigma.imag();
    g.cells.resize(size_t(nx) * ny);
    parallel_for(size_t(ny), threads, [&](size_t jj) {
        const int j = int(jj);
        const double y = g.ys[j];
        for (int i = 0; i < nx; ++i) {
            const double x = g.xs[i];
            RegionCell c{std::numeric_limits<double>::quiet_NaN(), false, false, false, false, false};
            const double s = x + slope * y;
            c.inU = s > lo && s < hi;
            if (c.inU) {
                c.rePhi = Phi_m_extended(cplx(x, y), m, u, p).real();
                c.inE = x >= g.b_minus && x <= g.b_plus && std::abs(y) <= ylim;
                c.inD = c.rePhi < g.threshold;
                c.inRbar = y >= 0.0 && c.rePhi < g.threshold + 2 * pi * y;
                c.inRunder = y <= 0.0 && c.rePhi < g.threshold - 2 * pi * y;
            }
            g.cells[size_t(j) * nx + i] = c;
        }
    });
    return g;
}

Labels label_cells(const RegionGrid& g, bool (*pred)(const RegionCell&))
{
    const int nx = g.nx(), ny = g.ny();
    Labels out;
    out.label.assign(g.cells.size(), -1);
    std::queue<int> q;
    for (int start = 0; start < int(g.cells.size()); ++start) {
        if (out.label[start] >= 0 || !pred(g.cells[start]))
            continue;
        const int id = out.count++;
        out.label[start] = id;
        q.push(start);
        while (!q.empty()) {
            int c = q.front();
            q.pop();
            int i = c % nx, j = c / nx;
            const int nb[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
            for (const auto& n : nb) {
                if (n[0] < 0 || n[0] >= nx || n[1] < 0 || n[1] >= ny)
                    continue;
                int k = n[1] * nx + n[0];
                if (out.label[k] < 0 && pred(g.cells[k])) {
                    out.label[k] = id;
                    q.push(k);
                }
            }
        }
    }
    return out;
}

int components_D_cap_E(const RegionGrid& g)
{
    Labels l = label_cells(g, in_D_and_E);
    if (l.count == 0)
        throw std::runtime_error("components_D_cap_E: D_m and E_m do not meet on this grid");
    return l.count;
}

EndpointTopology endpoint_topology(const RegionGrid& g)
{
    EndpointTopology t;
    const int nx = g.nx();
    const int row = (g.ny() - 1) / 2;  // y = 0
    const int a = row * nx + 0, b = row * nx + (nx - 1);
    auto same = [&](bool (*pred)(const RegionCell&)) {
        Labels l = label_cells(g, pred);
        return l.label[a] >= 0 && l.label[a] == l.label[b];
    };
    Labels d = label_cells(g, in_D_and_E);
    t.distinct_D_components = d.label[a] >= 0 && d.label[b] >= 0 && d.label[a] != d.label[b];
    t.same_Rbar_component = same(in_Rbar);
    t.same_Runder_component = same(in_Runder);
    t.margin_minus = g.threshold - Phi_m_extended(g.b_minus, g.m, g.u, g.p).real();
    t.margin_plus = g.threshold - Phi_m_extended(g.b_plus, g.m, g.u, g.p).real();
    return t;
}

double d_dy_rePhi(cplx z, int m, double u, int p)
{
    // d/dy Re Phi = Re(i Phi') = -Im Phi'
    return -F_prime(z - 2.0 * m * pi * I / xi_of(u, p), u, p).imag();
}

int predicted_dy_sign(cplx z, int m, double u, int p)
{
    const double x = z.real(), y = z.imag();
    const double A = u * x - 2 * p * pi * y;
    const double B = u * y + 2 * p * pi * x;
    const bool lower = B > 2 * m * pi && B < (2 * m + 1) * pi;
    const bool upper = B > (2 * m + 1) * pi && B < 2 * (m + 1) * pi;
    if ((A > 0 && lower) || (A < 0 && upper))
        return 1;
    if ((A < 0 && lower) || (A > 0 && upper))
        return -1;
    return 0;
}

cplx ell_E(double t, int m, double u, int p)
{
    return double(m + 1) / p - std::conj(xi_of(u, p)) * t / (2 * pi * p);
}

cplx ell_M(double t, int m, double u, int p)
{
    return (2.0 * m + 1) / (2.0 * p) - std::conj(xi_of(u, p)) * t / (2 * pi * p);
}

double d_dt_rePhi_ell_E(double t, int m, double u, int p)
{
    const cplx dl = -std::conj(xi_of(u, p)) / (2 * pi * p);
    return (dl * F_prime(ell_E(t, m, u, p) - 2.0 * m * pi * I / xi_of(u, p), u, p)).real();
}

double d_dt_rePhi_ell_M(double t, int m, double u, int p)
{
    const cplx dl = -std::conj(xi_of(u, p)) / (2 * pi * p);
    return (dl * F_prime(ell_M(t, m, u, p) - 2.0 * m * pi * I / xi_of(u, p), u, p)).real();
}

FSigmaReport check_F_sigma(double u, int p)
{
    SaddleData d = saddle_data(u, p);
    FSigmaReport r;
    r.re_F0 = F_at_zero(u, p).real();
    r.re_Fsigma0 = d.F_sigma0.real();
    r.lower_ok = r.re_F0 > 0.0;
    r.upper_ok = r.re_F0 < r.re_Fsigma0;
    return r;
}

double c_pm(double u, int p, int m)
{
    if (!(u > 0.0 && u <= kappa() * (1 + 1e-15)))
        throw std::invalid_argument("c_pm: need 0 < u <= kappa");
    if (p < 1 || m < 0)
        throw std::invalid_argument("c_pm: need p >= 1, m >= 0");
    const double q = u * ((6 * m + 5) * pi + 2 * theta_closed(u)) / (2 * p * pi);
    cplx v = li2(-std::exp(-u - q)) - li2(-std::exp(-u + q)) + u * q - 2 * p * pi * pi;
    return v.real();
}

bool check_F_P12(double u, int p, int m)
{
    PolygonData d = polygon(m, u, p);
    return Phi_m(d.P12, m, u, p).real() < Phi_m(d.sigma, m, u, p).real();
}

double c_top_kappa(double p)
{
    const double k = kappa();
    const double h = 1.0 / (2.0 * p);
    cplx v = li2(-std::exp(k * (h - 4.0))) - li2(-std::exp(k * (2.0 - h))) + (3.0 - h) * k * k -
             2 * p * pi * pi;
    return v.real();
}

double dc_top_dp(double p)
{
    const double k = kappa();
    return k / (2 * p * p) * std::log(3.0 + 2.0 * std::cosh(k * (3.0 - 1.0 / (2 * p)))) - 2 * pi * pi;
}

double dc_top_dp_bound()
{
    const double k = kappa();
    return 0.5 * k * std::log(3.0 + 2.0 * std::cosh(3.0 * k)) - 2 * pi * pi;
}

EndpointReport endpoint_decay_check(const EvalContext& ctx, int m, double delta,
                                    const QuadratureConfig& cfg)
{
    if (std::gcd(ctx.p, ctx.N) != 1)
        throw std::invalid_argument("endpoint_decay_check: needs gcd(p, N) = 1");
    if (m < 0 || m >= ctx.p)
        throw std::invalid_argument("endpoint_decay_check: need 0 <= m <= p-1");
    const int N = ctx.N, p = ctx.p;
    const double re_top = saddle_data(ctx.u, p).F_sigma0.real();
    const cplx xi = ctx.xi();
    int k_lo = m == 0 ? 0 : (m * N) / p + 1;
    int k_hi = ((m + 1) * N - 1) / p;
    EndpointReport rep;
    for (int k = k_lo; k <= k_hi; ++k) {
        double t = double(k) / N;
        if (std::abs(t - double(m) / p) > delta && std::abs(t - double(m + 1) / p) > delta)
            continue;
        cplx z = double(2 * k + 1) / (2.0 * N) - 2.0 * m * pi * I / xi;
        double re = f_N_eval(z, ctx, cfg).real();
        rep.samples.push_back({k, re, re_top - re});
        if (!(re_top - re > 0.0))
            rep.all_positive = false;
    }
    if (rep.samples.empty())
        throw std::domain_error("endpoint_decay_check: no admissible k near the block ends");
    return rep;
}

} // namespace fig8
