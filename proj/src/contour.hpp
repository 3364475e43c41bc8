#pragma once

// Globally adaptive Gauss-Kronrod (7/15) integration over a union of
// parameterized pieces.  Internal to the library.

#include "fig8/numkernel.hpp"

#include <functional>
#include <vector>

namespace fig8::detail {

struct Piece {
    std::function<cplx(double)> f;   // integrand already multiplied by the jacobian
    std::vector<double> breaks;      // initial partition, increasing
};

struct ContourResult {
    cplx value;
    double error;
    int intervals;
};

// Throws QuadratureError when `tol` cannot be met within max_intervals.
ContourResult integrate_pieces(const std::vector<Piece>& pieces, double tol, int max_intervals);

// Initial partition of [1, x_max]: uniform near 1, geometric further out.
std::vector<double> ray_breaks(double x_max, int panels_per_unit);

// Smallest X with bound(X) <= target (bound decreasing in X).
double solve_cutoff(const std::function<double(double)>& bound, double target);

} // namespace fig8::detail
