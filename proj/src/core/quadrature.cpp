#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aggrekin {

namespace {

// 5-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGL5Node[5] = {
    -0.9061798459386639928, -0.5384693101056830910, 0.0,
    0.5384693101056830910, 0.9061798459386639928};
constexpr double kGL5Weight[5] = {
    0.2369268850561890875, 0.4786286704993664680, 0.5688888888888888889,
    0.4786286704993664680, 0.2369268850561890875};

// Kronrod 15 nodes on [0, 1] side (symmetric), Gauss 7 embedded.
constexpr double kK15Node[8] = {
    0.9914553711208126392, 0.9491079123427585245, 0.8648644233597690728,
    0.7415311855993944399, 0.5860872354676911303, 0.4058451513773971669,
    0.2077849550078984676, 0.0};
constexpr double kK15Weight[8] = {
    0.0229353220105292250, 0.0630920926299785533, 0.1047900103222501838,
    0.1406532597155259187, 0.1690047266392679028, 0.1903505780647854099,
    0.2044329400752988924, 0.2094821410847278280};
constexpr double kG7Weight[4] = {
    0.1294849661688696933, 0.2797053914892766679, 0.3818300505051189449,
    0.4179591836734693878};

struct PanelResult {
    double kronrod;
    double error;
};

PanelResult gk15(const real_fn& f, double a, double b)
{
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double fx[15];
    for (int i = 0; i < 7; ++i) {
        fx[i] = f(mid - half * kK15Node[i]);
        fx[14 - i] = f(mid + half * kK15Node[i]);
    }
    fx[7] = f(mid);

    double k = kK15Weight[7] * fx[7];
    for (int i = 0; i < 7; ++i) {
        k += kK15Weight[i] * (fx[i] + fx[14 - i]);
    }
    // Gauss-7 uses the odd Kronrod nodes (indices 1, 3, 5) plus the center.
    double g = kG7Weight[3] * fx[7];
    for (int i = 0; i < 3; ++i) {
        g += kG7Weight[i] * (fx[2 * i + 1] + fx[13 - 2 * i]);
    }
    return {k * half, std::abs((k - g) * half)};
}

void gk_recurse(const real_fn& f, double a, double b, double abs_tol,
                double rel_tol, int depth, double& sum)
{
    const PanelResult r = gk15(f, a, b);
    const double tol = std::max(abs_tol, rel_tol * std::abs(r.kronrod));
    if (r.error <= tol || depth >= 48 || b - a < 1e-14 * (1.0 + std::abs(a))) {
        sum += r.kronrod;
        return;
    }
    const double mid = 0.5 * (a + b);
    gk_recurse(f, a, mid, 0.5 * abs_tol, rel_tol, depth + 1, sum);
    gk_recurse(f, mid, b, 0.5 * abs_tol, rel_tol, depth + 1, sum);
}

} // namespace

double gauss_legendre_5(const real_fn& f, double a, double b)
{
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < 5; ++i) {
        sum += kGL5Weight[i] * f(mid + half * kGL5Node[i]);
    }
    return sum * half;
}

double adaptive_gauss_kronrod(const real_fn& f, double a, double b,
                              double abs_tol, double rel_tol)
{
    if (a == b) return 0.0;
    double sum = 0.0;
    gk_recurse(f, a, b, abs_tol, rel_tol, 0, sum);
    return sum;
}

AntiderivativeTable::AntiderivativeTable(real_fn f, double xmin, double xmax,
                                         int n_points)
    : xmin_(xmin), xmax_(xmax), f_(std::move(f))
{
    if (!(xmax > xmin) || n_points < 2) {
        throw std::invalid_argument("AntiderivativeTable: bad range");
    }
    const int n = n_points;
    dx_ = (xmax_ - xmin_) / (n - 1);
    value_.resize(n);
    deriv_.resize(n);

    // Accumulate panel integrals, then shift so F(0) = 0.
    std::vector<double> acc(n);
    acc[0] = 0.0;
    for (int i = 1; i < n; ++i) {
        const double a = xmin_ + (i - 1) * dx_;
        acc[i] = acc[i - 1] + adaptive_gauss_kronrod(f_, a, a + dx_, 1e-14, 1e-13);
    }
    double at_zero = 0.0;
    if (xmin_ <= 0.0 && 0.0 <= xmax_) {
        const int k = std::clamp(int((0.0 - xmin_) / dx_), 0, n - 2);
        const double a = xmin_ + k * dx_;
        at_zero = acc[k] + adaptive_gauss_kronrod(f_, a, 0.0, 1e-14, 1e-13);
    }
    for (int i = 0; i < n; ++i) value_[i] = acc[i] - at_zero;

    // Fritsch-Carlson monotone slopes from the secants.
    std::vector<double> sec(n - 1);
    for (int i = 0; i + 1 < n; ++i) sec[i] = (value_[i + 1] - value_[i]) / dx_;
    deriv_[0] = sec[0];
    deriv_[n - 1] = sec[n - 2];
    for (int i = 1; i + 1 < n; ++i) {
        if (sec[i - 1] * sec[i] <= 0.0) {
            deriv_[i] = 0.0;
        } else {
            deriv_[i] = 2.0 * sec[i - 1] * sec[i] / (sec[i - 1] + sec[i]);
        }
    }
}

double AntiderivativeTable::operator()(double x) const
{
    if (x < xmin_ || x > xmax_) {
        // Outside the table: integrate the missing stretch directly.
        const double edge = x < xmin_ ? xmin_ : xmax_;
        const double base = x < xmin_ ? value_.front() : value_.back();
        return base + adaptive_gauss_kronrod(f_, edge, x, 1e-13, 1e-12);
    }
    const int n = int(value_.size());
    int k = std::clamp(int((x - xmin_) / dx_), 0, n - 2);
    const double t = (x - (xmin_ + k * dx_)) / dx_;
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
    const double h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t);
    const double h11 = t * t * (t - 1);
    return h00 * value_[k] + h10 * dx_ * deriv_[k] + h01 * value_[k + 1] +
           h11 * dx_ * deriv_[k + 1];
}

} // namespace aggrekin
