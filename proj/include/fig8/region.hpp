#pragma once

#include "fig8/jones.hpp"
#include "fig8/saddle.hpp"

#include <string>
#include <vector>

namespace fig8 {

// a x + b y = c in the (Re z, Im z) plane
struct LineEq {
    std::string name;
    double a, b, c;
    double eval(cplx z) const { return a * z.real() + b * z.imag() - c; }
};

struct PolygonData {
    int m = 0;
    double u = 0.0;
    int p = 1;
    cplx sigma;
    cplx P0, P1, P2, P3, P4, P5, P12, P34, P45, P50;
    std::vector<LineEq> lines;  // L_sigma, L_E, L_M, L_W, H_upper, H_lower, V_E, V_W
    bool ordering_ok = false;   // Re P1 < Re P45, Re P12 < Re P4, Re P12 < Re sigma_m

    const LineEq& line(const std::string& name) const;
};

PolygonData polygon(int m, double u, int p);

struct RegionCell {
    double rePhi;   // NaN outside U_m
    bool inU, inE, inD, inRbar, inRunder;
};

// Nodes are anchored so that sigma_m is itself a node:
// x = Re sigma_m + i dx,  y = Im sigma_m * j / K,  j = -2K .. 2K.
struct RegionGrid {
    int m = 0;
    double u = 0.0;
    int p = 1;
    double nu = 0.02;
    double b_minus = 0.0, b_plus = 0.0;
    cplx sigma;
    double threshold = 0.0;     // Re Phi_m(sigma_m)
    int sigma_i = 0, sigma_j = 0;
    std::vector<double> xs, ys;
    std::vector<RegionCell> cells;  // row-major, index j * nx + i

    int nx() const { return int(xs.size()); }
    int ny() const { return int(ys.size()); }
    const RegionCell& at(int i, int j) const { return cells[size_t(j) * xs.size() + i]; }
    cplx point(int i, int j) const { return {xs[i], ys[j]}; }
};

// resolution = (number of x panels, number of y panels); both >= 50
RegionGrid grid_scan(int m, double u, int p, int res_x, int res_y, double nu = 0.02,
                     unsigned threads = 0);

struct Labels {
    std::vector<int> label;  // -1 where the predicate fails
    int count = 0;
};

// 4-connected components of the cells selected by `pred`
Labels label_cells(const RegionGrid& g, bool (*pred)(const RegionCell&));

int components_D_cap_E(const RegionGrid& g);

// b_m^- and b_m^+ against the component structure of the grid
struct EndpointTopology {
    bool distinct_D_components = false;  // in different components of D_m ∩ E_m
    bool same_Rbar_component = false;
    bool same_Runder_component = false;
    double margin_minus = 0.0;           // Re Phi_m(sigma_m) - Re Phi_m(b_m^-)
    double margin_plus = 0.0;
};
EndpointTopology endpoint_topology(const RegionGrid& g);

// d/dy Re Phi_m(x + iy) = -arg tau, and the sign the region analysis predicts
double d_dy_rePhi(cplx z, int m, double u, int p);
int predicted_dy_sign(cplx z, int m, double u, int p);

// segments P3 -> P4 on L_E and P12 -> P45 on L_M
cplx ell_E(double t, int m, double u, int p);
cplx ell_M(double t, int m, double u, int p);
double d_dt_rePhi_ell_E(double t, int m, double u, int p);
double d_dt_rePhi_ell_M(double t, int m, double u, int p);

struct FSigmaReport {
    double re_F0, re_Fsigma0;
    bool lower_ok, upper_ok;  // 0 < Re F(0), Re F(0) < Re F(sigma0)
};
FSigmaReport check_F_sigma(double u, int p);

// c_{p,m}(u) with q = u((6m+5)pi + 2 theta) / (2 p pi); 0 < u <= kappa
double c_pm(double u, int p, int m);
bool check_F_P12(double u, int p, int m);

// c_{p,p-1}(kappa) as a function of a continuous p, its p-derivative, and
// the uniform bound of that derivative over p >= 1.
double c_top_kappa(double p);
double dc_top_dp(double p);
double dc_top_dp_bound();

struct EndpointSample {
    int k;
    double re_fN;
    double margin;  // Re F(sigma0) - Re f_N
};
struct EndpointReport {
    std::vector<EndpointSample> samples;
    bool all_positive = true;
};
// k in the block mN/p < k < (m+1)N/p with k/N within delta of m/p or (m+1)/p
EndpointReport endpoint_decay_check(const EvalContext& ctx, int m, double delta,
                                    const QuadratureConfig& cfg = {});

} // namespace fig8
