#pragma once

#include <functional>
#include <vector>

namespace aggrekin {

using real_fn = std::function<double(double)>;

/// 5-point Gauss-Legendre quadrature of f over [a, b].
double gauss_legendre_5(const real_fn& f, double a, double b);

/// Adaptive Gauss-Kronrod (G7/K15) quadrature of f over [a, b].
/// Subdivides until the embedded error estimate is below
/// max(abs_tol, rel_tol * |result|) on every panel.
double adaptive_gauss_kronrod(const real_fn& f, double a, double b,
                              double abs_tol = 1e-12, double rel_tol = 1e-12);

// Antiderivative table F(x) = \int_0^x f, memoized on a uniform grid over
// [xmin, xmax] and evaluated by monotone (Fritsch-Carlson) cubic
// interpolation, so F' stays consistent with f between knots.
class AntiderivativeTable {
public:
    AntiderivativeTable(real_fn f, double xmin, double xmax, int n_points = 16384);

    double operator()(double x) const;
    double xmin() const { return xmin_; }
    double xmax() const { return xmax_; }

private:
    double xmin_ = 0.0;
    double xmax_ = 0.0;
    double dx_ = 0.0;
    std::vector<double> value_;  // F at knots
    std::vector<double> deriv_;  // interpolation slopes at knots
    real_fn f_;                  // for evaluation outside the table
};

} // namespace aggrekin
