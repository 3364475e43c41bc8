#pragma once

#include "fig8/qdilog.hpp"

#include <cstdint>
#include <random>

namespace fig8 {

// Seeded draws that do not depend on the standard library's distribution
// implementations, so a seed reproduces the same points everywhere.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : eng_(seed) {}

    double uniform(double a, double b) { return a + (b - a) * double(eng_() >> 11) * 0x1.0p-53; }
    int pick(int n) { return int(eng_() % std::uint64_t(n)); }

private:
    std::mt19937_64 eng_;
};

// (u, p, N) from {0.2, 0.5, 0.9} x {1, 2, 3} x {31, 40, 97}
EvalContext sample_context(Sampler& s);

// admissible points for the three E_N identities
cplx sample_strip_point(Sampler& s, double margin = 0.05, double im = 0.5);
cplx sample_gamma_half_point(Sampler& s, const EvalContext& ctx);
cplx sample_unit_shift_point(Sampler& s, const EvalContext& ctx);

} // namespace fig8
