#pragma once

#include <cmath>

namespace hotm {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kDegToRad = kPi / 180.0;

// Earth gravitational model and drag parameters used throughout.
struct Constants {
    double mu = 398600.4415;         // km^3/s^2
    double re = 6378.1363;           // km
    double j2 = 1.082626e-3;
    double j3 = -2.532411e-6;
    double j4 = -1.619898e-6;
    double cd = 2.2;
    double area_to_mass = 0.0094736; // m^2/kg
    double omega_e = 7.2921159e-5;   // rad/s
};

// Length, velocity and time factors that bring all propagated quantities to
// the same order of magnitude. States are stored physically (km, s, rad);
// scaling is applied at the integrator boundary and in map coefficients.
struct Scaling {
    double length;
    double velocity;
    double time;

    explicit Scaling(const Constants& c)
        : length(c.re), velocity(std::sqrt(c.mu / c.re)), time(std::sqrt(c.re * c.re * c.re / c.mu)) {}

    double angular_momentum() const { return length * velocity; }
    double angular_rate() const { return 1.0 / time; }
};

inline double wrap_two_pi(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    return a;
}

// Wrap to (-pi, pi].
inline double wrap_pi(double a) {
    a = std::fmod(a, kTwoPi);
    if (a <= -kPi) a += kTwoPi;
    if (a > kPi) a -= kTwoPi;
    return a;
}

} // namespace hotm
