#include "isc/pvt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace isc {

double largest_rk_root(double A, double B)
{
    // depressed form Z = t + 1/3 of Z^3 - Z^2 + a1 Z + a0
    const double a1 = A - B - B * B;
    const double a0 = -A * B;
    const double p = a1 - 1.0 / 3.0;
    const double q = -2.0 / 27.0 + a1 / 3.0 + a0;
    const double disc = 0.25 * q * q + p * p * p / 27.0;

    double t;
    if (disc > 0.0) {
        const double s = std::sqrt(disc);
        t = std::cbrt(-0.5 * q + s) + std::cbrt(-0.5 * q - s);
    } else if (p < 0.0) {
        const double r = 2.0 * std::sqrt(-p / 3.0);
        double arg = 3.0 * q / (p * r);
        arg = std::clamp(arg, -1.0, 1.0);
        t = r * std::cos(std::acos(arg) / 3.0);
    } else {
        t = 0.0;  // p = q = 0: triple root
    }
    double z = t + 1.0 / 3.0;
    if (!std::isfinite(z))
        throw Error(ErrorCode::no_real_root,
                    "RK cubic produced a non-finite root (A=" + std::to_string(A) +
                        ", B=" + std::to_string(B) + ")");

    // Newton polish; the closed form loses digits near multiple roots
    for (int it = 0; it < 4; ++it) {
        const double f = rk_cubic(z, A, B);
        const double df = (3.0 * z - 2.0) * z + a1;
        if (f == 0.0 || df == 0.0) break;
        const double step = f / df;
        if (!std::isfinite(step) || std::abs(step) > 1e-3 * std::max(1.0, std::abs(z))) break;
        z -= step;
    }
    return z;
}

void throw_degenerate_temperature(const ComponentProps& c, double t)
{
    throw Error(ErrorCode::degenerate_temperature,
                "K-value of " + c.name + " evaluated at T = kv5 (" + std::to_string(t) + " F)");
}

void throw_missing_critical(const ComponentProps& c)
{
    throw Error(ErrorCode::missing_critical_props,
                "component " + c.name + " needs positive critical pressure and temperature");
}

void throw_pore_space_exhausted(double phi, double phi_coke)
{
    std::ostringstream os;
    os << "coke volume fraction " << phi_coke << " fills porosity " << phi;
    throw Error(ErrorCode::pore_space_exhausted, os.str());
}

}  // namespace isc
