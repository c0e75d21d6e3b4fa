#pragma once

#include <functional>
#include <memory>
#include <string>

#include "quadrature.hpp"

namespace aggrekin {

// Velocity nonlinearity a together with its antiderivative A (A(0) = 0).
// alpha bounds a' on the relevant range; attractive means a is nondecreasing.
struct VelocityLaw {
    std::string name;
    real_fn a;
    real_fn A;
    double alpha = 0.0;
    bool attractive = true;

    // a(x) = x, A(x) = x^2/2.
    static VelocityLaw identity();
    // a(x) = (2/pi) atan(k x), A(x) = (2/(pi k)) (k x atan(k x) - ln(1+k^2 x^2)/2).
    static VelocityLaw atan_law(double k);
    // Repulsive mirror: a(x) = -(2/pi) atan(k x).
    static VelocityLaw neg_atan_law(double k);
    // a ≡ 0 (transport-free).
    static VelocityLaw zero();

    // Custom a; A is built by adaptive Gauss-Kronrod from 0, memoized on a
    // lookup table with monotone cubic interpolation over [-range, range].
    static VelocityLaw from_function(std::string name, real_fn a, double alpha,
                                     bool attractive, double range);
};

// Central-difference check that dA/dx ~ a at sampled points.
// Returns the worst relative mismatch over [-range, range].
double antiderivative_mismatch(const VelocityLaw& law, double range, int samples = 257);

} // namespace aggrekin
