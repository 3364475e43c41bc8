#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace fig8 {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double ln2 = std::numbers::ln2;
inline constexpr cplx I{0.0, 1.0};

// Reduce an angle into (-pi, pi].  Throws std::domain_error on NaN/inf.
double normalize_phase(double x);

// Nonzero complex number stored as (log|z|, arg z).  logmag == -inf is zero.
struct LogComplex {
    double logmag = 0.0;
    double phase = 0.0;

    static LogComplex zero();
    static LogComplex one() { return {0.0, 0.0}; }
    static LogComplex from(cplx z);
    // e^L for a complex exponent L; never overflows.
    static LogComplex from_log(cplx L);

    bool is_zero() const;
    // log of the value, Im in (-pi, pi]; -inf real part for zero
    cplx log() const { return {logmag, phase}; }
    // Back to native complex.  Overflows to inf if logmag > ~709.
    cplx value() const;
};

LogComplex operator*(const LogComplex& a, const LogComplex& b);
LogComplex operator/(const LogComplex& a, const LogComplex& b);
LogComplex lc_pow(const LogComplex& a, double e);

// a/b as an ordinary complex number (only the ratio needs to be in range)
cplx lc_ratio(const LogComplex& a, const LogComplex& b);

// Sum by factoring out the largest logmag.  Throws on an empty sequence.
LogComplex lc_sum(const std::vector<LogComplex>& terms);

// Complex mantissa times 2^exp2.  Rescaling by powers of two is exact, so
// long sums of huge terms keep full double precision relative to the
// largest term; this is what the polynomial kernels accumulate in.
struct ScaledComplex {
    cplx mant{0.0, 0.0};
    std::int64_t exp2 = 0;

    static ScaledComplex from(cplx z);
    static ScaledComplex from_log(const LogComplex& z);
    bool is_zero() const { return mant == cplx(0.0, 0.0); }
    LogComplex to_log() const;

    ScaledComplex& operator*=(const ScaledComplex& o);
    ScaledComplex& operator+=(const ScaledComplex& o);
};

// Elementary helpers with the principal branch where one is implied.
cplx cexpm1(cplx z);                  // e^z - 1 without cancellation near 0
cplx one_minus_exp(cplx a);           // 1 - e^a
cplx log_one_minus_exp(cplx a);       // principal log of 1 - e^a, safe for huge Re a
LogComplex lc_sinh(cplx z);

// Principal dilogarithm.  Throws std::domain_error for real w > 1.
cplx li2(cplx w);

// Closed forms of the three contour integrals, valid for 0 < Re z < 1.
cplx l0_closed(cplx z);
cplx l1_closed(cplx z);
cplx l2_closed(cplx z);

} // namespace fig8
