#include "fig8/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fig8 {

namespace {

constexpr double ninf = -std::numeric_limits<double>::infinity();
constexpr double zeta2 = pi * pi / 6.0;

// cos + i sin, reduced to within pi/4 of a quarter turn so that phases
// which are multiples of pi/2 (as stored) give exact axis points.
cplx cis(double t)
{
    double n = std::nearbyint(t / (pi / 2));
    double f = std::fma(-n, pi / 2, t);
    double c = std::cos(f), s = std::sin(f);
    switch (static_cast<long long>(n) & 3) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
    }
}

void renormalize(ScaledComplex& z)
{
    double m = std::max(std::abs(z.mant.real()), std::abs(z.mant.imag()));
    if (m == 0.0) {
        z.exp2 = 0;
        return;
    }
    int e = 0;
    std::frexp(m, &e);
    z.mant = {std::ldexp(z.mant.real(), -e), std::ldexp(z.mant.imag(), -e)};
    z.exp2 += e;
}

cplx ldexp_c(cplx z, std::int64_t e)
{
    if (e < -2200)
        return {0.0, 0.0};
    int k = static_cast<int>(e);
    return {std::ldexp(z.real(), k), std::ldexp(z.imag(), k)};
}

// B_{2k}/(2k+1)! for k = 1..15
constexpr double bern_coef[] = {
    2.77777777777777777778e-2,
    -2.77777777777777777778e-4,
    4.72411186696900982615e-6,
    -9.18577307466196355085e-8,
    1.8978869988970999072e-9,
    -4.06476164514422552681e-11,
    8.92169102045645255522e-13,
    -1.99392958607210756872e-14,
    4.51898002961991819165e-16,
    -1.03565176121812470145e-17,
    2.39521862102618674574e-19,
    -5.58178587432500933628e-21,
    1.30915075541832128581e-22,
    -3.08741980242674029324e-24,
    7.31597565270220342036e-26,
};

cplx li2_power(cplx w)
{
    cplx sum = 0.0, wn = w;
    for (int n = 1; n < 400; ++n) {
        cplx t = wn / double(n * n);
        sum += t;
        if (std::abs(t) < 1e-18 * std::abs(sum))
            break;
        wn *= w;
    }
    return sum;
}

// Series in u = -log(1-w); converges for |u| < 2pi, used for |u| <~ 1.3
cplx li2_bernoulli(cplx w)
{
    cplx u = -std::log(1.0 - w);
    cplx u2 = u * u;
    cplx sum = u - 0.25 * u2;
    cplx un = u * u2;
    for (double c : bern_coef) {
        cplx t = c * un;
        sum += t;
        if (std::abs(t) < 1e-18 * std::abs(sum))
            break;
        un *= u2;
    }
    return sum;
}

// |v| <= 1 and Re v <= 1/2
cplx li2_inner(cplx v)
{
    if (std::abs(v) <= 0.5)
        return li2_power(v);
    return li2_bernoulli(v);
}

// |v| <= 1; reflect into Re v <= 1/2 first
cplx li2_inner_or_reflect(cplx v)
{
    if (v.real() > 0.5)
        return zeta2 - std::log(v) * std::log(1.0 - v) - li2_inner(1.0 - v);
    return li2_inner(v);
}

void require_strip(cplx z, const char* who)
{
    if (!(z.real() > 0.0 && z.real() < 1.0))
        throw std::domain_error(std::string(who) + ": need 0 < Re z < 1");
}

} // namespace

double normalize_phase(double x)
{
    if (!std::isfinite(x))
        throw std::domain_error("normalize_phase: non-finite angle");
    double r = std::remainder(x, 2 * pi);
    if (r <= -pi)
        r += 2 * pi;
    if (r > pi)
        r -= 2 * pi;
    return r;
}

LogComplex LogComplex::zero() { return {ninf, 0.0}; }

bool LogComplex::is_zero() const { return logmag == ninf; }

LogComplex LogComplex::from(cplx z)
{
    if (z == cplx(0.0, 0.0))
        return zero();
    return {std::log(std::abs(z)), normalize_phase(std::arg(z))};
}

LogComplex LogComplex::from_log(cplx L)
{
    if (L.real() == ninf)
        return zero();
    return {L.real(), normalize_phase(L.imag())};
}

cplx LogComplex::value() const
{
    if (is_zero())
        return {0.0, 0.0};
    return std::exp(logmag) * cis(phase);
}

LogComplex operator*(const LogComplex& a, const LogComplex& b)
{
    if (a.is_zero() || b.is_zero())
        return LogComplex::zero();
    return {a.logmag + b.logmag, normalize_phase(a.phase + b.phase)};
}

LogComplex operator/(const LogComplex& a, const LogComplex& b)
{
    if (b.is_zero())
        throw std::domain_error("LogComplex: division by zero");
    if (a.is_zero())
        return a;
    return {a.logmag - b.logmag, normalize_phase(a.phase - b.phase)};
}

LogComplex lc_pow(const LogComplex& a, double e)
{
    if (a.is_zero())
        return a;
    return {a.logmag * e, normalize_phase(a.phase * e)};
}

cplx lc_ratio(const LogComplex& a, const LogComplex& b)
{
    return (a / b).value();
}

LogComplex lc_sum(const std::vector<LogComplex>& terms)
{
    if (terms.empty())
        throw std::invalid_argument("lc_sum: empty sequence");
    double top = ninf;
    for (const auto& t : terms)
        top = std::max(top, t.logmag);
    if (top == ninf)
        return LogComplex::zero();
    cplx s = 0.0;
    for (const auto& t : terms)
        if (!t.is_zero())
            s += std::exp(t.logmag - top) * cis(t.phase);
    if (s == cplx(0.0, 0.0))
        return LogComplex::zero();
    LogComplex r = LogComplex::from(s);
    r.logmag += top;
    return r;
}

ScaledComplex ScaledComplex::from(cplx z)
{
    ScaledComplex r{z, 0};
    renormalize(r);
    return r;
}

ScaledComplex ScaledComplex::from_log(const LogComplex& z)
{
    if (z.is_zero())
        return {};
    double n = std::floor(z.logmag / ln2);
    double rem = std::fma(-n, ln2, z.logmag);
    ScaledComplex r{std::exp(rem) * cis(z.phase), static_cast<std::int64_t>(n)};
    renormalize(r);
    return r;
}

LogComplex ScaledComplex::to_log() const
{
    if (is_zero())
        return LogComplex::zero();
    LogComplex r = LogComplex::from(mant);
    r.logmag += double(exp2) * ln2;
    return r;
}

ScaledComplex& ScaledComplex::operator*=(const ScaledComplex& o)
{
    if (is_zero() || o.is_zero()) {
        *this = {};
        return *this;
    }
    mant *= o.mant;
    exp2 += o.exp2;
    renormalize(*this);
    return *this;
}

ScaledComplex& ScaledComplex::operator+=(const ScaledComplex& o)
{
    if (o.is_zero())
        return *this;
    if (is_zero()) {
        *this = o;
        return *this;
    }
    if (exp2 >= o.exp2) {
        mant += ldexp_c(o.mant, o.exp2 - exp2);
    } else {
        mant = ldexp_c(mant, exp2 - o.exp2) + o.mant;
        exp2 = o.exp2;
    }
    renormalize(*this);
    return *this;
}

cplx cexpm1(cplx z)
{
    double a = z.real(), b = z.imag();
    double s = std::sin(0.5 * b);
    return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

cplx one_minus_exp(cplx a) { return -cexpm1(a); }

cplx log_one_minus_exp(cplx a)
{
    if (a.real() <= 0.0)
        return std::log(-cexpm1(a));
    // 1 - e^a = e^a (e^{-a} - 1), then back to the principal branch
    cplx r = a + std::log(cexpm1(-a));
    return {r.real(), normalize_phase(r.imag())};
}

LogComplex lc_sinh(cplx z)
{
    if (std::abs(z.real()) < 20.0)
        return LogComplex::from(std::sinh(z));
    if (z.real() > 0.0)
        return LogComplex::from_log(z - ln2 + std::log(-cexpm1(-2.0 * z)));
    return LogComplex::from_log(-z - ln2 + cplx(0.0, pi) + std::log(-cexpm1(2.0 * z)));
}

cplx li2(cplx w)
{
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
        throw std::domain_error("li2: non-finite argument");
    if (w.imag() == 0.0 && w.real() > 1.0)
        throw std::domain_error("li2: argument on the branch cut (1, inf)");
    if (w == cplx(1.0, 0.0))
        return zeta2;
    double r = std::abs(w);
    if (r <= 0.5)
        return li2_power(w);
    if (r > 1.0) {
        cplx l = std::log(-w);
        return -li2_inner_or_reflect(1.0 / w) - zeta2 - 0.5 * l * l;
    }
    return li2_inner_or_reflect(w);
}

cplx l0_closed(cplx z)
{
    require_strip(z, "l0_closed");
    return cplx(0.0, -2 * pi) / one_minus_exp(cplx(0.0, -2 * pi) * z);
}

cplx l1_closed(cplx z)
{
    require_strip(z, "l1_closed");
    return std::log(one_minus_exp(cplx(0.0, 2 * pi) * z));
}

cplx l2_closed(cplx z)
{
    require_strip(z, "l2_closed");
    return li2(std::exp(cplx(0.0, 2 * pi) * z));
}

} // namespace fig8
