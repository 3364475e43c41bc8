#include "fig8/jones.hpp"
#include "fig8/sampling.hpp"
#include "fig8/saddle.hpp"

#include <doctest.h>

#include <array>
#include <cmath>

using namespace fig8;

namespace {

// theta = Im varphi, S_E / i and T_E / i from mpmath
struct SaddleRef {
    double u, theta, S_im, T_im;
};
const SaddleRef saddle_refs[] = {
    {0.2, -1.0238672212825158, 2.6930761072746831, -1.1707879731492464},
    {0.5, -0.89229631751996529, 3.8268651007512793, -1.2844967211654233},
    {0.9, -0.36789526274625757, 5.6895137644840974, -2.7804630226581574},
};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST_CASE("kappa")
{
    CHECK(kappa() == doctest::Approx(0.962424).epsilon(1e-6));
    CHECK(std::abs(kappa() - 0.96242365011920689) < 1e-15);
    CHECK(std::cosh(kappa()) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(2 * std::cosh(kappa()) - 2 == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("varphi is purely imaginary with the right limits")
{
    CHECK_THROWS_AS(varphi(0.0), std::invalid_argument);
    CHECK_THROWS_AS(varphi(1.0), std::invalid_argument);
    CHECK(std::abs(varphi(0.5).real()) < 1e-12);
    CHECK(std::abs(varphi(1e-9) - cplx(0.0, -pi / 3)) < 1e-8);
    CHECK(std::abs(varphi(kappa() - 1e-12)) < 1e-5);
    // inner root on the positive imaginary axis
    CHECK(inner_root(0.5).real() == 0.0);
    CHECK(inner_root(0.5).imag() > 0.0);
}

TEST_CASE("saddle data references")
{
    for (const auto& r : saddle_refs) {
        SaddleData d = saddle_data(r.u, 1);
        CHECK(d.theta == doctest::Approx(r.theta).epsilon(1e-13));
        CHECK(std::abs(d.S_E - cplx(0.0, r.S_im)) < 1e-12);
        CHECK(std::abs(d.T_E - cplx(0.0, r.T_im)) < 1e-12);
        // S_E and T_E do not depend on p
        SaddleData d3 = saddle_data(r.u, 3);
        CHECK(std::abs(d3.S_E - d.S_E) < 1e-12);
        CHECK(d3.T_E == d.T_E);
    }
    CHECK_THROWS_AS(saddle_data(0.5, 0), std::invalid_argument);
    CHECK_THROWS_AS(saddle_data(-0.1, 1), std::invalid_argument);
}

TEST_CASE("S_E tends to the volume term as u -> 0")
{
    SaddleData d = saddle_data(1e-7, 1);
    CHECK(std::abs(d.S_E - cplx(0.0, 2.0298832128193073)) < 1e-6);
}

TEST_CASE("saddle invariants")
{
    for (double u : {0.05, 0.2, 0.5, 0.7, 0.9})
        for (int p : {1, 2, 3}) {
            CAPTURE(u);
            CAPTURE(p);
            SaddleData d = saddle_data(u, p);
            CHECK(std::abs(std::abs(std::exp(d.varphi)) - 1.0) <= 1e-12);
            CHECK(d.theta > -pi / 3);
            CHECK(d.theta < 0.0);
            cplx e = std::exp(d.varphi);
            CHECK(std::abs(std::exp(u) + std::exp(-u) - e - 1.0 / e - 1.0) <= 1e-12);
            CHECK(d.a2.real() < 0.0);
            CHECK(std::abs(F_prime(d.sigma0, u, p)) <= 1e-10);
            CHECK(std::abs(d.S_E - d.xi() * (d.F_sigma0 + cplx(0.0, 2 * pi))) <= 1e-10);
            CHECK(std::abs(F_second(d.sigma0, u, p) - d.xi() * inner_root(u)) <= 1e-10);
            CHECK(std::abs(F_second(d.sigma0, u, p) - 2.0 * d.a2) <= 1e-10);
            // sigma0 sits on the strip coordinate (theta + 2 pi) / (2 p pi)
            double s = d.sigma0.real() + u / (2 * pi * p) * d.sigma0.imag();
            CHECK(s == doctest::Approx((d.theta + 2 * pi) / (2 * p * pi)).epsilon(1e-14));
            CHECK(d.T_E.real() == 0.0);
            CHECK(d.T_E.imag() < 0.0);
        }
}

TEST_CASE("the two forms of F agree inside U_0")
{
    Sampler s(99);
    for (int i = 0; i < 100; ++i) {
        double u = std::array{0.2, 0.5, 0.9}[size_t(s.pick(3))];
        int p = 1 + s.pick(3);
        cplx z(s.uniform(0.02, 0.98) / p, s.uniform(-0.4, 0.4));
        z -= u / (2 * pi * p) * z.imag();
        CHECK(std::abs(F_eval(z, u, p) - F_eval_original(z, u, p)) <= 1e-10);
    }
    CHECK_THROWS_AS(F_eval(cplx(0.6, 0.0), 0.5, 2), std::domain_error);
    CHECK_THROWS_AS(F_eval(cplx(-0.01, 0.0), 0.5, 2), std::domain_error);
    CHECK(F_eval(0.0, 0.5, 2) == F_at_zero(0.5, 2));
}

TEST_CASE("F_prime against finite differences")
{
    Sampler s(1234);
    const double h = 1e-5;
    for (int i = 0; i < 100; ++i) {
        double u = std::array{0.2, 0.5, 0.9}[size_t(s.pick(3))];
        int p = 1 + s.pick(3);
        cplx z(s.uniform(0.05, 0.95) / p, s.uniform(-0.3, 0.3));
        z -= u / (2 * pi * p) * z.imag();
        cplx fd = (F_eval(z + h, u, p) - F_eval(z - h, u, p)) / (2 * h);
        cplx fp = F_prime(z, u, p);
        CHECK(std::abs(fd - fp) <= 1e-6 * std::max(1.0, std::abs(fp)));
        cplx fd2 = (F_prime(z + h, u, p) - F_prime(z - h, u, p)) / (2 * h);
        CHECK(rel(fd2, F_second(z, u, p)) <= 1e-6);
    }
}

TEST_CASE("Taylor remainder is cubic at the saddle")
{
    for (double u : {0.2, 0.5, 0.9}) {
        SaddleData d = saddle_data(u, 2);
        const cplx dir = std::polar(1.0, 0.6);
        auto rem = [&](double h) {
            cplx z = d.sigma0 + h * dir;
            return std::abs(F_eval(z, u, 2) - d.F_sigma0 - d.a2 * (h * dir) * (h * dir));
        };
        double r1 = rem(1e-2), r3 = rem(2.5e-3);
        double slope = std::log(r1 / r3) / std::log(4.0);
        CHECK(slope >= 2.8);
        CHECK(slope <= 3.2);
    }
}

TEST_CASE("Re F(0) lies between 0 and Re F(sigma0)")
{
    for (double u : {0.2, 0.5, 0.9})
        for (int p : {1, 2, 3}) {
            SaddleData d = saddle_data(u, p);
            cplx F0 = F_at_zero(u, p);
            CHECK(F0.real() > 0.0);
            CHECK(F0.real() < d.F_sigma0.real());
            cplx g = d.xi() * (d.F_sigma0 - F0);
            CHECK(std::abs(g.real()) <= 1e-10);
            CHECK(g.imag() > 0.0);
        }
}

TEST_CASE("Phi_m shifts F")
{
    const double u = 0.5;
    const int p = 3;
    SaddleData d = saddle_data(u, p);
    for (int m = 0; m < p; ++m) {
        CHECK(std::abs(Phi_m(d.sigma(m), m, u, p) - d.F_sigma0) < 1e-12);
        cplx PW = 2.0 * m * pi * I / d.xi();
        CHECK(std::abs(Phi_m(PW, m, u, p) - F_at_zero(u, p)) < 1e-12);
    }
    cplx z(0.1, 0.05);
    CHECK(Phi_m(z, 0, u, p) == F_eval(z, u, p));
    CHECK_THROWS_AS(Phi_m(z, 1, u, p), std::domain_error);
}

TEST_CASE("saddle prefactor: two routes")
{
    for (double u : {0.2, 0.5, 0.9}) {
        CHECK(std::abs(saddle_prefactor(u) - saddle_prefactor_closed(u)) <= 1e-12);
        CHECK(saddle_prefactor(u).real() > 0.0);
    }
}

TEST_CASE("theorem_rhs at p = 1 has no dual factor")
{
    EvalContext c(0.5, 1, 101);
    SaddleData d = saddle_data(0.5, 1);
    cplx n_xi = 101.0 / c.xi();
    cplx L = std::log(saddle_prefactor(0.5) / (2 * std::sinh(0.25)) * std::sqrt(n_xi)) + n_xi * d.S_E;
    CHECK(std::abs(lc_ratio(theorem_rhs(c), LogComplex::from_log(L)) - 1.0) < 1e-12);
}

TEST_CASE("theorem_rhs growth")
{
    for (int p : {1, 2}) {
        SaddleData d = saddle_data(0.5, p);
        double target = (d.S_E / d.xi()).real();
        EvalContext a(0.5, p, 400), b(0.5, p, 800);
        double La = (theorem_rhs(a) / jones_dual(a)).logmag;
        double Lb = (theorem_rhs(b) / jones_dual(b)).logmag;
        CHECK((Lb - La) / 400 == doctest::Approx(target).epsilon(0.01));
        if (p == 1)
            CHECK(Lb / 800 == doctest::Approx(target).epsilon(0.01));
    }
}

TEST_CASE("theorem_ratio tends to 1 like 1/N")
{
    cplx r101 = theorem_ratio(EvalContext(0.5, 2, 101));
    CHECK(std::abs(r101 - cplx(1.0182440311, -0.0008196747)) < 1e-9);
    CHECK(std::abs(r101 - 1.0) < 0.1);

    const double ref[] = {0.00872073, 0.00427707, 0.00211934};
    double prev = std::abs(r101 - 1.0);
    int i = 0;
    for (int N : {201, 401, 801}) {
        double e = std::abs(theorem_ratio(EvalContext(0.5, 2, N)) - 1.0);
        CHECK(e == doctest::Approx(ref[i++]).epsilon(1e-5));
        CHECK(e < prev);
        CHECK(e / prev >= 0.3);
        CHECK(e / prev <= 0.8);
        prev = e;
    }
    CHECK(prev < 0.02);

    CHECK(std::abs(theorem_ratio(EvalContext(0.5, 1, 101)) - 1.0) < 0.1);
    CHECK_THROWS_AS(theorem_ratio(EvalContext(0.5, 2, 100)), std::invalid_argument);
    CHECK(std::isfinite(theorem_ratio(EvalContext(0.5, 2, 100), true).real()));
}
