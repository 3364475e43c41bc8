#include "fig8/region.hpp"
#include "fig8/sampling.hpp"

#include <doctest.h>

#include <cmath>

using namespace fig8;

namespace {

struct Block {
    int p, m;
    double u;
};
const Block blocks[] = {{3, 2, 0.5}, {1, 0, 0.5}, {2, 1, 0.2}};

double strip(cplx z, double u, int p) { return z.real() + u / (2 * pi * p) * z.imag(); }

} // namespace

TEST_CASE("polygon coordinates")
{
    PolygonData d = polygon(2, 0.5, 3);
    const cplx xi(0.5, 6 * pi);
    CHECK(std::abs(d.P34 - 6.0 * pi * I / xi) < 1e-15);
    CHECK(std::abs(d.P0 - 2.0 / 3) < 1e-15);
    CHECK(std::abs(d.P3 - 1.0) < 1e-15);
    CHECK(std::abs(d.P5 - cplx(2.0 / 3, 2 * d.sigma.imag())) < 1e-15);
    CHECK(std::abs(d.P50 - 2.0 * std::conj(xi) * I / (18 * pi)) < 1e-15);
    CHECK_THROWS_AS(polygon(3, 0.5, 3), std::invalid_argument);
    CHECK_THROWS_AS(polygon(0, 1.2, 3), std::invalid_argument);
    CHECK_THROWS_AS(d.line("L_X"), std::out_of_range);

    for (double u : {0.05, 0.2, 0.5, 0.9})
        for (int p : {1, 2, 3})
            for (int m = 0; m < p; ++m) {
                PolygonData q = polygon(m, u, p);
                CHECK(q.ordering_ok);
                // vertices sit on the lines they are named after
                CHECK(std::abs(q.line("L_W").eval(q.P0)) < 1e-14);
                CHECK(std::abs(q.line("L_W").eval(q.P1)) < 1e-14);
                CHECK(std::abs(q.line("L_E").eval(q.P3)) < 1e-14);
                CHECK(std::abs(q.line("L_E").eval(q.P4)) < 1e-14);
                CHECK(std::abs(q.line("L_M").eval(q.P12)) < 1e-14);
                CHECK(std::abs(q.line("L_M").eval(q.P45)) < 1e-14);
                CHECK(std::abs(q.line("L_sigma").eval(q.sigma)) < 1e-14);
                CHECK(std::abs(q.line("H_upper").eval(q.P5)) < 1e-14);
                CHECK(std::abs(q.line("H_lower").eval(q.P2)) < 1e-14);
                CHECK(std::abs(q.line("V_E").eval(q.P2)) < 1e-14);
                CHECK(std::abs(q.line("V_W").eval(q.P5)) < 1e-14);
            }
}

TEST_CASE("grid cells around the saddle")
{
    RegionGrid g = grid_scan(2, 0.5, 3, 100, 100);
    CHECK(std::abs(g.point(g.sigma_i, g.sigma_j) - g.sigma) < 1e-14);
    CHECK(g.ys[size_t(g.ny() - 1) / 2] == 0.0);
    CHECK_FALSE(g.at(g.sigma_i, g.sigma_j).inD);
    CHECK(g.threshold == doctest::Approx(saddle_data(0.5, 3).F_sigma0.real()).epsilon(1e-12));

    // L_sigma (through 0 and sigma_m) meets E_m inside D_m except at sigma_m
    int checked = 0;
    for (int k = -40; k <= 40; ++k) {
        cplx z = g.sigma * (1.0 + k / 40.0);
        double st = z.real() + 0.5 / (6 * pi) * z.imag();
        if (k == 0 || z.real() < g.b_minus || z.real() > g.b_plus || std::abs(z.imag()) > 2 * g.sigma.imag() ||
            !(st > 2.0 / 3 && st < 1.0))
            continue;
        CHECK(Phi_m(z, 2, 0.5, 3).real() < g.threshold);
        ++checked;
    }
    CHECK(checked >= 10);

    // flag definitions
    for (size_t k = 0; k < g.cells.size(); k += 37) {
        const RegionCell& c = g.cells[k];
        if (!c.inU) {
            CHECK(std::isnan(c.rePhi));
            CHECK_FALSE(c.inD);
            continue;
        }
        CHECK(c.inD == (c.rePhi < g.threshold));
    }
    CHECK_THROWS_AS(grid_scan(2, 0.5, 3, 40, 100), std::invalid_argument);
}

TEST_CASE("D_m and E_m meet in two components")
{
    for (const auto& b : blocks) {
        CAPTURE(b.p);
        CAPTURE(b.m);
        RegionGrid g = grid_scan(b.m, b.u, b.p, 400, 400);
        CHECK(components_D_cap_E(g) == 2);
        EndpointTopology t = endpoint_topology(g);
        CHECK(t.distinct_D_components);
        CHECK(t.same_Rbar_component);
        CHECK(t.same_Runder_component);
        CHECK(t.margin_minus > 0.0);
        CHECK(t.margin_plus > 0.0);
    }
}

TEST_CASE("grid scan is independent of the thread count")
{
    RegionGrid a = grid_scan(1, 0.5, 2, 80, 80, 0.02, 1);
    RegionGrid b = grid_scan(1, 0.5, 2, 80, 80, 0.02, 4);
    REQUIRE(a.cells.size() == b.cells.size());
    bool same = true;
    for (size_t k = 0; k < a.cells.size(); ++k)
        same = same && a.cells[k].inD == b.cells[k].inD &&
               (a.cells[k].rePhi == b.cells[k].rePhi ||
                (std::isnan(a.cells[k].rePhi) && std::isnan(b.cells[k].rePhi)));
    CHECK(same);
}

TEST_CASE("vertical monotonicity follows the sign classification")
{
    Sampler s(500);
    int tested = 0, mismatches = 0;
    const double h = 1e-6;
    while (tested < 500) {
        const Block b = blocks[size_t(s.pick(3))];
        SaddleData d = saddle_data(b.u, b.p);
        double ims = d.sigma(b.m).imag();
        cplx z(s.uniform((b.m + 0.02) / b.p, (b.m + 0.98) / b.p), s.uniform(-2 * ims, 2 * ims));
        double st = strip(z, b.u, b.p);
        if (!(st > double(b.m) / b.p && st < double(b.m + 1) / b.p))
            continue;
        int pred = predicted_dy_sign(z, b.m, b.u, b.p);
        if (pred == 0)
            continue;
        double fd = (Phi_m_extended(z + h * I, b.m, b.u, b.p).real() -
                     Phi_m_extended(z - h * I, b.m, b.u, b.p).real()) / (2 * h);
        double an = d_dy_rePhi(z, b.m, b.u, b.p);
        CHECK(std::abs(fd - an) <= 1e-6 * std::max(1.0, std::abs(an)));
        if ((an > 0) != (pred > 0))
            ++mismatches;
        ++tested;
    }
    CHECK(mismatches == 0);
}

TEST_CASE("Re Phi_m along the segments on L_E and L_M")
{
    for (const auto& b : blocks) {
        double ims = saddle_data(b.u, b.p).sigma(b.m).imag();
        PolygonData d = polygon(b.m, b.u, b.p);
        CHECK(std::abs(ell_E(0.0, b.m, b.u, b.p) - d.P3) < 1e-14);
        CHECK(std::abs(ell_E(2 * ims, b.m, b.u, b.p) - d.P4) < 1e-14);
        CHECK(std::abs(ell_M(-2 * ims, b.m, b.u, b.p) - d.P12) < 1e-14);
        CHECK(std::abs(ell_M(2 * ims, b.m, b.u, b.p) - d.P45) < 1e-14);
        for (int k = 1; k <= 50; ++k) {
            double t = 2 * ims * k / 51.0;
            CHECK(d_dt_rePhi_ell_E(t, b.m, b.u, b.p) > 0.0);
            double tm = -2 * ims + 4 * ims * k / 51.0;
            CHECK(d_dt_rePhi_ell_M(tm, b.m, b.u, b.p) < 0.0);
        }
        // the analytic derivative is the derivative
        double t = 0.7 * ims, h = 1e-6;
        auto re = [&](double s) {
            return Phi_m_extended(ell_M(s, b.m, b.u, b.p), b.m, b.u, b.p).real();
        };
        CHECK((re(t + h) - re(t - h)) / (2 * h) ==
              doctest::Approx(d_dt_rePhi_ell_M(t, b.m, b.u, b.p)).epsilon(1e-6));
    }
}

TEST_CASE("check_F_sigma")
{
    for (double u : {0.05, 0.2, 0.5, 0.9})
        for (int p : {1, 2, 3}) {
            FSigmaReport r = check_F_sigma(u, p);
            CHECK(r.lower_ok);
            CHECK(r.upper_ok);
            CHECK(r.re_F0 > 0.0);
            CHECK(r.re_F0 < r.re_Fsigma0);
        }
}

TEST_CASE("c_pm constants")
{
    CHECK(std::abs(c_pm(kappa(), 1, 0) - (-14.9942)) <= 5e-3);
    CHECK(c_pm(kappa(), 1, 0) == doctest::Approx(-14.994163397654562).epsilon(1e-13));
    CHECK(c_pm(0.5, 3, 2) == doctest::Approx(-57.040770120276951).epsilon(1e-13));
    CHECK(c_pm(0.5, 2, 1) == doctest::Approx(-37.422069876776061).epsilon(1e-13));
    CHECK_THROWS_AS(c_pm(1.0, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(c_pm(0.5, 1, -1), std::invalid_argument);

    CHECK(c_top_kappa(1.0) == doctest::Approx(-14.994163397654562).epsilon(1e-13));
    CHECK(c_top_kappa(2.0) == doctest::Approx(-34.072449963808068).epsilon(1e-13));
    CHECK(c_top_kappa(3.0) == doctest::Approx(-53.580953693896414).epsilon(1e-13));
    // c_top_kappa(p) is c_{p,p-1}(kappa)
    for (int p : {1, 2, 3, 5})
        CHECK(c_top_kappa(p) == doctest::Approx(c_pm(kappa(), p, p - 1)).epsilon(1e-12));
}

TEST_CASE("p-derivative of c_{p,p-1}(kappa) and its bound")
{
    CHECK(dc_top_dp(1.0) == doctest::Approx(-18.46310410067763).epsilon(1e-13));
    CHECK(dc_top_dp(2.5) == doctest::Approx(-19.517226300267008).epsilon(1e-13));
    CHECK(std::abs(dc_top_dp_bound() - (-18.274)) <= 5e-3);
    CHECK(dc_top_dp_bound() == doctest::Approx(-18.274148603486916).epsilon(1e-13));
    const double h = 1e-5;
    for (double p = 1.0; p <= 20.0; p += 0.5) {
        double fd = (c_top_kappa(p + h) - c_top_kappa(p - h)) / (2 * h);
        CHECK(fd == doctest::Approx(dc_top_dp(p)).epsilon(1e-6));
        CHECK(dc_top_dp(p) <= dc_top_dp_bound());
        CHECK(c_top_kappa(p) < 0.0);
    }
}

TEST_CASE("Re Phi_m(P12) < Re Phi_m(sigma_m)")
{
    CHECK(check_F_P12(0.5, 3, 2));
    for (double u : {0.05, 0.2, 0.5, 0.9})
        for (int p : {1, 2, 3})
            for (int m = 0; m < p; ++m) {
                CAPTURE(u);
                CAPTURE(p);
                CAPTURE(m);
                CHECK(check_F_P12(u, p, m));
            }
}

TEST_CASE("f_N stays below Re F(sigma0) near the block ends")
{
    EvalContext c(0.5, 2, 201);
    EndpointReport r0 = endpoint_decay_check(c, 0, 0.02);
    CHECK(r0.all_positive);
    CHECK(r0.samples.size() >= 5);
    // at the start of the first block Re f_N is close to 0
    REQUIRE(r0.samples.front().k == 0);
    CHECK(std::abs(r0.samples.front().re_fN) < 0.01);
    CHECK(saddle_data(0.5, 2).F_sigma0.real() > 0.0);

    EndpointReport r1 = endpoint_decay_check(c, 1, 0.02);
    CHECK(r1.all_positive);
    for (const auto& s : r1.samples)
        CHECK(s.margin > 0.0);

    CHECK_THROWS_AS(endpoint_decay_check(EvalContext(0.5, 2, 200), 0, 0.02), std::invalid_argument);
    CHECK_THROWS_AS(endpoint_decay_check(c, 2, 0.02), std::invalid_argument);
    CHECK_THROWS_AS(endpoint_decay_check(c, 1, 1e-6), std::domain_error);
}
