#include "velocity_law.hpp"

#include <cmath>
#include <numbers>

namespace aggrekin {

VelocityLaw VelocityLaw::identity()
{
    VelocityLaw law;
    law.name = "id";
    law.a = [](double x) { return x; };
    law.A = [](double x) { return 0.5 * x * x; };
    law.alpha = 1.0;
    law.attractive = true;
    return law;
}

VelocityLaw VelocityLaw::atan_law(double k)
{
    const double c = 2.0 / std::numbers::pi;
    VelocityLaw law;
    law.name = "atan:" + std::to_string(k);
    law.a = [c, k](double x) { return c * std::atan(k * x); };
    law.A = [c, k](double x) {
        const double kx = k * x;
        return (c / k) * (kx * std::atan(kx) - 0.5 * std::log1p(kx * kx));
    };
    law.alpha = c * k; // a'(0) = 2k/pi is the maximum
    law.attractive = true;
    return law;
}

VelocityLaw VelocityLaw::neg_atan_law(double k)
{
    VelocityLaw base = atan_law(k);
    VelocityLaw law;
    law.name = "neg_atan:" + std::to_string(k);
    law.a = [f = base.a](double x) { return -f(x); };
    law.A = [F = base.A](double x) { return -F(x); };
    law.alpha = base.alpha; // Lipschitz constant of a
    law.attractive = false;
    return law;
}

VelocityLaw VelocityLaw::zero()
{
    VelocityLaw law;
    law.name = "zero";
    law.a = [](double) { return 0.0; };
    law.A = [](double) { return 0.0; };
    law.alpha = 0.0;
    law.attractive = true;
    return law;
}

VelocityLaw VelocityLaw::from_function(std::string name, real_fn a, double alpha,
                                       bool attractive, double range)
{
    auto table = std::make_shared<AntiderivativeTable>(a, -range, range);
    VelocityLaw law;
    law.name = std::move(name);
    law.a = std::move(a);
    law.A = [table](double x) { return (*table)(x); };
    law.alpha = alpha;
    law.attractive = attractive;
    return law;
}

double antiderivative_mismatch(const VelocityLaw& law, double range, int samples)
{
    const double h = 1e-5 * std::max(1.0, range);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double x = -range + 2.0 * range * i / (samples - 1);
        const double slope = (law.A(x + h) - law.A(x - h)) / (2.0 * h);
        const double ref = law.a(x);
        const double scale = std::max({std::abs(ref), std::abs(slope), 1e-6});
        worst = std::max(worst, std::abs(slope - ref) / scale);
    }
    return worst;
}

} // namespace aggrekin
