#pragma once

#include <array>
#include <cmath>
#include <string>
#include <type_traits>

#include "hotm/constants.hpp"
#include "hotm/errors.hpp"
#include "hotm/linalg.hpp"

namespace hotm::elements {

enum class Set { Coe, Mee, Hill, Cyl, CylHz, Ideal, EccHill };

inline const char* set_name(Set s) {
    switch (s) {
        case Set::Coe: return "coe";
        case Set::Mee: return "mee";
        case Set::Hill: return "hill";
        case Set::Cyl: return "cyl";
        case Set::CylHz: return "cylhz";
        case Set::Ideal: return "ideal";
        case Set::EccHill: return "ecchill";
    }
    return "?";
}

inline Set set_from_name(const std::string& n) {
    if (n == "coe") return Set::Coe;
    if (n == "mee") return Set::Mee;
    if (n == "hill") return Set::Hill;
    if (n == "cyl") return Set::Cyl;
    if (n == "cylhz") return Set::CylHz;
    if (n == "ideal") return Set::Ideal;
    if (n == "ecchill") return Set::EccHill;
    throw ConfigError("unknown element set: " + n);
}

struct CartesianState {
    Vec3<double> r; // km
    Vec3<double> v; // km/s
};

// Classical orbital elements (a, e, i, raan, argp, nu); angles in radians.
struct CoeState {
    double a, e, i, raan, argp, nu;
};

// Modified equinoctial elements (p, f, g, h, k, L).
struct MeeState {
    double p, f, g, h, k, L;
};

// Hill / polar-nodal variables (r, u, raan, rdot, H, Hz).
struct HillState {
    double r, u, raan, rdot, H, Hz;
};

// Cylindrical coordinates and rates (rho, phi, z, rhodot, phidot, zdot).
struct CylState {
    double rho, phi, z, rhodot, phidot, zdot;
};

// Cylindrical with the polar angular momentum replacing the azimuth rate.
struct CylHzState {
    double rho, phi, z, rhodot, Hz, zdot;
};

// Rotation taking departure-frame coordinates to inertial ones; fixed from
// the initial osculating (raan, i, u) of a propagation and carried with the
// ideal state rather than re-derived.
struct DepartureFrame {
    Mat3<double> m = Mat3<double>::identity();

    static DepartureFrame from_initial(double raan0, double i0, double u0) {
        return {Mat3<double>::rot_z(raan0) * Mat3<double>::rot_x(i0) * Mat3<double>::rot_z(u0)};
    }
};

// Ideal elements: quaternion of the ideal frame relative to the departure
// frame, angular momentum, eccentricity-vector components C and S, and the
// in-plane angle theta.
struct IdealState {
    double l1, l2, l3, l4, H, C, S, theta;
    DepartureFrame frame;
};

// Eccentric Hill variables (H, Hz, fh=e cos argp, gh=e sin argp, raan, u).
struct EccHillState {
    double H, Hz, fh, gh, raan, u;
};

template <Set S>
struct Traits;

template <>
struct Traits<Set::Coe> {
    using State = CoeState;
    static constexpr int dim = 6;
    static constexpr int fast_index = 5;
    static constexpr const char* names[6] = {"a", "e", "i", "Ω", "ω", "ν"};
    static std::array<double, 6> scales(const Scaling& s) { return {s.length, 1, 1, 1, 1, 1}; }
    static std::array<double, 6> to_array(const State& x) { return {x.a, x.e, x.i, x.raan, x.argp, x.nu}; }
    static State from_array(const std::array<double, 6>& a) { return {a[0], a[1], a[2], a[3], a[4], a[5]}; }
};

template <>
struct Traits<Set::Mee> {
    using State = MeeState;
    static constexpr int dim = 6;
    static constexpr int fast_index = 5;
    static constexpr const char* names[6] = {"p", "f", "g", "h", "k", "L"};
    static std::array<double, 6> scales(const Scaling& s) { return {s.length, 1, 1, 1, 1, 1}; }
    static std::array<double, 6> to_array(const State& x) { return {x.p, x.f, x.g, x.h, x.k, x.L}; }
    static State from_array(const std::array<double, 6>& a) { return {a[0], a[1], a[2], a[3], a[4], a[5]}; }
};

template <>
struct Traits<Set::Hill> {
    using State = HillState;
    static constexpr int dim = 6;
    static constexpr int fast_index = 1;
    static constexpr const char* names[6] = {"r", "u", "Ω", "rdot", "H", "Hz"};
    static std::array<double, 6> scales(const Scaling& s) {
        return {s.length, 1, 1, s.velocity, s.angular_momentum(), s.angular_momentum()};
    }
    static std::array<double, 6> to_array(const State& x) { return {x.r, x.u, x.raan, x.rdot, x.H, x.Hz}; }
    static State from_array(const std::array<double, 6>& a) { return {a[0], a[1], a[2], a[3], a[4], a[5]}; }
};

template <>
struct Traits<Set::Cyl> {
    using State = CylState;
    static constexpr int dim = 6;
    static constexpr int fast_index = -1;
    static constexpr const char* names[6] = {"ρ", "φ", "z", "ρdot", "φdot", "zdot"};
    static std::array<double, 6> scales(const Scaling& s) {
        return {s.length, 1, s.length, s.velocity, s.angular_rate(), s.velocity};
    }
    static std::array<double, 6> to_array(const State& x) {
        return {x.rho, x.phi, x.z, x.rhodot, x.phidot, x.zdot};
    }
    static State from_array(const std::array<double, 6>& a) { return {a[0], a[1], a[2], a[3], a[4], a[5]}; }
};

template <>
struct Traits<Set::CylHz> {
    using State = CylHzState;
    static constexpr int dim = 6;
    static constexpr int fast_index = -1;
    static constexpr const char* names[6] = {"ρ", "φ", "z", "ρdot", "Hz", "zdot"};
    static std::array<double, 6> scales(const Scaling& s) {
        return {s.length, 1, s.length, s.velocity, s.angular_momentum(), s.velocity};
    }
    static std::array<double, 6> to_array(const State& x) {
        return {x.rho, x.phi, x.z, x.rhodot, x.Hz, x.zdot};
    }
    static State from_array(const std::array<double, 6>& a) { return {a[0], a[1], a[2], a[3], a[4], a[5]}; }
};

template <>
struct Traits<Set::Ideal> {
    using State = IdealState;
    static constexpr int dim = 8;
    static constexpr int fast_index = 7;
    static constexpr const char* names[8] = {"λ1", "λ2", "λ3", "λ4",
                                             "H",        "C",        "S",        "θ"};
    static std::array<double, 8> scales(const Scaling& s) {
        return {1, 1, 1, 1, s.angular_momentum(), s.velocity, s.velocity, 1};
    }
    static std::array<double, 8> to_array(const State& x) {
        return {x.l1, x.l2, x.l3, x.l4, x.H, x.C, x.S, x.theta};
    }
    static State from_array(const std::array<double, 8>& a, const DepartureFrame& f = {}) {
        return {a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7], f};
    }
};

template <>
struct Traits<Set::EccHill> {
    using State = EccHillState;
    static constexpr int dim = 6;
    static constexpr int fast_index = 5;
    static constexpr const char* names[6] = {"H", "Hz", "f̂", "ĝ", "Ω", "u"};
    static std::array<double, 6> scales(const Scaling& s) {
        return {s.angular_momentum(), s.angular_momentum(), 1, 1, 1, 1};
    }
    static std::array<double, 6> to_array(const State& x) {
        return {x.H, x.Hz, x.fh, x.gh, x.raan, x.u};
    }
    static State from_array(const std::array<double, 6>& a) { return {a[0], a[1], a[2], a[3], a[4], a[5]}; }
};

inline int set_dim(Set s) { return s == Set::Ideal ? 8 : 6; }
inline int set_fast_index(Set s) {
    switch (s) {
        case Set::Coe:
        case Set::Mee:
        case Set::EccHill: return 5;
        case Set::Hill: return 1;
        case Set::Ideal: return 7;
        default: return -1;
    }
}
inline const char* element_name(Set s, int i) {
    switch (s) {
        case Set::Coe: return Traits<Set::Coe>::names[i];
        case Set::Mee: return Traits<Set::Mee>::names[i];
        case Set::Hill: return Traits<Set::Hill>::names[i];
        case Set::Cyl: return Traits<Set::Cyl>::names[i];
        case Set::CylHz: return Traits<Set::CylHz>::names[i];
        case Set::Ideal: return Traits<Set::Ideal>::names[i];
        case Set::EccHill: return Traits<Set::EccHill>::names[i];
    }
    return "?";
}

inline std::array<double, 8> set_scales(Set s, const Scaling& sc) {
    std::array<double, 8> out{1, 1, 1, 1, 1, 1, 1, 1};
    auto fill6 = [&](std::array<double, 6> v) {
        for (int i = 0; i < 6; ++i) out[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)];
    };
    switch (s) {
        case Set::Coe: fill6(Traits<Set::Coe>::scales(sc)); break;
        case Set::Mee: fill6(Traits<Set::Mee>::scales(sc)); break;
        case Set::Hill: fill6(Traits<Set::Hill>::scales(sc)); break;
        case Set::Cyl: fill6(Traits<Set::Cyl>::scales(sc)); break;
        case Set::CylHz: fill6(Traits<Set::CylHz>::scales(sc)); break;
        case Set::EccHill: fill6(Traits<Set::EccHill>::scales(sc)); break;
        case Set::Ideal: out = Traits<Set::Ideal>::scales(sc); break;
    }
    return out;
}

// Runtime-tagged state for the harness and CLI; the departure frame rides
// along for ideal elements, the epoch for bookkeeping.
struct AnyState {
    Set set = Set::Coe;
    std::array<double, 8> x{};
    DepartureFrame frame;
    double epoch = 0.0;
};

// Invoke f with the compile-time set tag matching the runtime tag.
template <class F>
decltype(auto) dispatch(Set s, F&& f) {
    switch (s) {
        case Set::Coe: return f(std::integral_constant<Set, Set::Coe>{});
        case Set::Mee: return f(std::integral_constant<Set, Set::Mee>{});
        case Set::Hill: return f(std::integral_constant<Set, Set::Hill>{});
        case Set::Cyl: return f(std::integral_constant<Set, Set::Cyl>{});
        case Set::CylHz: return f(std::integral_constant<Set, Set::CylHz>{});
        case Set::Ideal: return f(std::integral_constant<Set, Set::Ideal>{});
        case Set::EccHill: return f(std::integral_constant<Set, Set::EccHill>{});
    }
    throw ConfigError("bad element set tag");
}

} // namespace hotm::elements
