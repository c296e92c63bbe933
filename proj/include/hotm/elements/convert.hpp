#pragma once

#include <cmath>

#include "hotm/elements/states.hpp"
#include "hotm/errors.hpp"

namespace hotm::elements {

inline constexpr double kEccSingular = 1e-12;
inline constexpr double kIncSingular = 1e-12;

// ---------------------------------------------------------------------------
// Cartesian hub
// ---------------------------------------------------------------------------

inline CartesianState to_cartesian(const CoeState& s, double mu) {
    if (s.e >= 1.0) throw SingularityError("coe: parabolic or hyperbolic orbit");
    const double p = s.a * (1.0 - s.e * s.e);
    const double r = p / (1.0 + s.e * std::cos(s.nu));
    const double u = s.argp + s.nu;
    const Mat3<double> rot = Mat3<double>::rot_z(s.raan) * Mat3<double>::rot_x(s.i);
    const double sqmu_p = std::sqrt(mu / p);
    const Vec3<double> rv = rot * Vec3<double>{r * std::cos(u), r * std::sin(u), 0.0};
    // perifocal velocity rotated by argp into the node frame
    const double vr = sqmu_p * s.e * std::sin(s.nu);
    const double vt = sqmu_p * (1.0 + s.e * std::cos(s.nu));
    const Vec3<double> vv = rot * Vec3<double>{vr * std::cos(u) - vt * std::sin(u),
                                               vr * std::sin(u) + vt * std::cos(u), 0.0};
    return {rv, vv};
}

inline CoeState coe_from_cartesian(const CartesianState& c, double mu) {
    const double r = norm(c.r);
    const double v2 = dot(c.v, c.v);
    const Vec3<double> hv = cross(c.r, c.v);
    const double H = norm(hv);
    const double energy = 0.5 * v2 - mu / r;
    if (energy >= 0.0) throw SingularityError("coe: parabolic or hyperbolic orbit");
    const double a = -0.5 * mu / energy;
    const Vec3<double> ev = (1.0 / mu) * ((v2 - mu / r) * c.r - dot(c.r, c.v) * c.v);
    const double e = norm(ev);
    const double cosi = hv.z / H;
    const double sini = std::sqrt(std::max(0.0, 1.0 - cosi * cosi));
    if (e < kEccSingular) throw SingularityError("coe: argp undefined at e = 0");
    if (sini < kIncSingular) throw SingularityError("coe: raan undefined at sin(i) = 0");
    const double i = std::atan2(sini, cosi);
    const double raan = std::atan2(hv.x, -hv.y);
    const Vec3<double> nhat{std::cos(raan), std::sin(raan), 0.0};
    const Vec3<double> hhat = (1.0 / H) * hv;
    const Vec3<double> mhat = cross(hhat, nhat);
    const double argp = std::atan2(dot(ev, mhat), dot(ev, nhat));
    const Vec3<double> ehat = (1.0 / e) * ev;
    const Vec3<double> qhat = cross(hhat, ehat);
    const double nu = std::atan2(dot(c.r, qhat), dot(c.r, ehat));
    return {a, e, i, wrap_two_pi(raan), wrap_two_pi(argp), wrap_two_pi(nu)};
}

inline CartesianState to_cartesian(const MeeState& s, double mu) {
    const double cl = std::cos(s.L), sl = std::sin(s.L);
    const double w = 1.0 + s.f * cl + s.g * sl;
    if (!(w > 0.0)) throw SingularityError("mee: nonpositive 1 + f cosL + g sinL");
    const double s2 = 1.0 + s.h * s.h + s.k * s.k;
    const double a2 = s.h * s.h - s.k * s.k;
    const double r = s.p / w;
    const double sq = std::sqrt(mu / s.p);
    Vec3<double> rv{(r / s2) * (cl + a2 * cl + 2.0 * s.h * s.k * sl),
                    (r / s2) * (sl - a2 * sl + 2.0 * s.h * s.k * cl),
                    (2.0 * r / s2) * (s.h * sl - s.k * cl)};
    Vec3<double> vv{-(sq / s2) * (sl + a2 * sl - 2.0 * s.h * s.k * cl + s.g - 2.0 * s.f * s.h * s.k + a2 * s.g),
                    -(sq / s2) * (-cl + a2 * cl + 2.0 * s.h * s.k * sl - s.f + 2.0 * s.g * s.h * s.k + a2 * s.f),
                    (2.0 * sq / s2) * (s.h * cl + s.k * sl + s.f * s.h + s.g * s.k)};
    return {rv, vv};
}

inline MeeState mee_from_cartesian(const CartesianState& c, double mu) {
    const double r = norm(c.r);
    const Vec3<double> hv = cross(c.r, c.v);
    const double H = norm(hv);
    const Vec3<double> hhat = (1.0 / H) * hv;
    if (1.0 + hhat.z < kIncSingular) throw SingularityError("mee: singular at i = 180 deg");
    const double h = -hhat.y / (1.0 + hhat.z);
    const double k = hhat.x / (1.0 + hhat.z);
    const double v2 = dot(c.v, c.v);
    if (0.5 * v2 - mu / r >= 0.0) throw SingularityError("mee: parabolic or hyperbolic orbit");
    const Vec3<double> ev = (1.0 / mu) * ((v2 - mu / r) * c.r - dot(c.r, c.v) * c.v);
    const double s2 = 1.0 + h * h + k * k;
    const Vec3<double> fhat{(1.0 + h * h - k * k) / s2, 2.0 * h * k / s2, -2.0 * k / s2};
    const Vec3<double> ghat{2.0 * h * k / s2, (1.0 - h * h + k * k) / s2, 2.0 * h / s2};
    const double f = dot(ev, fhat);
    const double g = dot(ev, ghat);
    const double L = wrap_two_pi(std::atan2(dot(c.r, ghat), dot(c.r, fhat)));
    return {H * H / mu, f, g, h, k, L};
}

inline CartesianState to_cartesian(const HillState& s, double mu) {
    (void)mu;
    const double cosi = s.Hz / s.H;
    if (std::fabs(cosi) > 1.0 + 1e-12) throw SingularityError("hill: |Hz| exceeds H");
    const double sini = std::sqrt(std::max(0.0, 1.0 - cosi * cosi));
    const double i = std::atan2(sini, cosi);
    const Mat3<double> rot = Mat3<double>::rot_z(s.raan) * Mat3<double>::rot_x(i);
    const double vt = s.H / s.r;
    const Vec3<double> rv = rot * Vec3<double>{s.r * std::cos(s.u), s.r * std::sin(s.u), 0.0};
    const Vec3<double> vv = rot * Vec3<double>{s.rdot * std::cos(s.u) - vt * std::sin(s.u),
                                               s.rdot * std::sin(s.u) + vt * std::cos(s.u), 0.0};
    return {rv, vv};
}

inline HillState hill_from_cartesian(const CartesianState& c, double mu) {
    (void)mu;
    const double r = norm(c.r);
    const Vec3<double> hv = cross(c.r, c.v);
    const double H = norm(hv);
    const double Hz = hv.z;
    const double G = std::sqrt(std::max(0.0, H * H - Hz * Hz));
    if (G / H < kIncSingular) throw SingularityError("hill: raan undefined at sin(i) = 0");
    const double raan = std::atan2(hv.x, -hv.y);
    const double cosu = (c.r.x * std::cos(raan) + c.r.y * std::sin(raan)) / r;
    const double sinu = c.r.z * H / (r * G);
    return {r, wrap_two_pi(std::atan2(sinu, cosu)), wrap_two_pi(raan), dot(c.r, c.v) / r, H, Hz};
}

inline CartesianState to_cartesian(const CylState& s, double mu) {
    (void)mu;
    const double cp = std::cos(s.phi), sp = std::sin(s.phi);
    return {{s.rho * cp, s.rho * sp, s.z},
            {s.rhodot * cp - s.rho * s.phidot * sp, s.rhodot * sp + s.rho * s.phidot * cp, s.zdot}};
}

inline CylState cyl_from_cartesian(const CartesianState& c, double re_hint = 6378.1363) {
    const double rho = std::hypot(c.r.x, c.r.y);
    if (rho < 1e-9 * re_hint) throw SingularityError("cyl: azimuth undefined on the polar axis");
    const double phi = wrap_two_pi(std::atan2(c.r.y, c.r.x));
    const double rhodot = (c.r.x * c.v.x + c.r.y * c.v.y) / rho;
    const double phidot = (c.r.x * c.v.y - c.r.y * c.v.x) / (rho * rho);
    return {rho, phi, c.r.z, rhodot, phidot, c.v.z};
}

inline CartesianState to_cartesian(const CylHzState& s, double mu) {
    return to_cartesian(CylState{s.rho, s.phi, s.z, s.rhodot, s.Hz / (s.rho * s.rho), s.zdot}, mu);
}

inline CylHzState cylhz_from_cartesian(const CartesianState& c, double re_hint = 6378.1363) {
    const CylState s = cyl_from_cartesian(c, re_hint);
    return {s.rho, s.phi, s.z, s.rhodot, s.phidot * s.rho * s.rho, s.zdot};
}

inline CartesianState to_cartesian(const EccHillState& s, double mu) {
    const double wh = 1.0 + s.fh * std::cos(s.u) + s.gh * std::sin(s.u);
    if (!(wh > 0.0)) throw SingularityError("ecchill: nonpositive 1 + fh cos(u) + gh sin(u)");
    const double r = s.H * s.H / (mu * wh);
    const double rdot = (mu / s.H) * (s.fh * std::sin(s.u) - s.gh * std::cos(s.u));
    return to_cartesian(HillState{r, s.u, s.raan, rdot, s.H, s.Hz}, mu);
}

inline EccHillState ecchill_from_cartesian(const CartesianState& c, double mu) {
    const HillState h = hill_from_cartesian(c, mu);
    const double x = h.H * h.H / (mu * h.r) - 1.0; // e cos nu
    const double y = h.rdot * h.H / mu;            // e sin nu
    const double fh = x * std::cos(h.u) + y * std::sin(h.u);
    const double gh = x * std::sin(h.u) - y * std::cos(h.u);
    return {h.H, h.Hz, fh, gh, h.raan, h.u};
}

// Rotation taking orbital-plane coordinates of the ideal frame to inertial.
inline Mat3<double> quaternion_matrix(double l1, double l2, double l3, double l4) {
    return {{1.0 - 2.0 * (l2 * l2 + l3 * l3), 2.0 * (l1 * l2 - l3 * l4), 2.0 * (l1 * l3 + l2 * l4),
             2.0 * (l1 * l2 + l3 * l4), 1.0 - 2.0 * (l1 * l1 + l3 * l3), 2.0 * (l2 * l3 - l1 * l4),
             2.0 * (l1 * l3 - l2 * l4), 2.0 * (l2 * l3 + l1 * l4), 1.0 - 2.0 * (l1 * l1 + l2 * l2)}};
}

// Ideal-to-inertial rotation. Composes the departure-frame attitude with the
// quaternion of the ideal frame.
inline Mat3<double> ideal_frames(const IdealState& s) {
    const double n2 = s.l1 * s.l1 + s.l2 * s.l2 + s.l3 * s.l3 + s.l4 * s.l4;
    if (std::fabs(n2 - 1.0) > 1e-9) throw SingularityError("ideal: quaternion is not unit");
    return s.frame.m * quaternion_matrix(s.l1, s.l2, s.l3, s.l4);
}

inline CartesianState to_cartesian(const IdealState& s, double mu) {
    const double p = s.H * s.H / mu;
    const double denom = s.H / p + s.C * std::cos(s.theta) + s.S * std::sin(s.theta);
    if (!(denom > 0.0)) throw SingularityError("ideal: nonpositive orbit equation denominator");
    const double r = s.H / denom;
    const double rdot = s.C * std::sin(s.theta) - s.S * std::cos(s.theta);
    const double vt = s.H / r;
    const Mat3<double> rot = ideal_frames(s);
    const Vec3<double> rv = rot * Vec3<double>{r * std::cos(s.theta), r * std::sin(s.theta), 0.0};
    const Vec3<double> vv = rot * Vec3<double>{rdot * std::cos(s.theta) - vt * std::sin(s.theta),
                                               rdot * std::sin(s.theta) + vt * std::cos(s.theta), 0.0};
    return {rv, vv};
}

// Canonical extraction for a given departure frame: the ideal frame's node
// relative to the departure plane fixes the in-plane Euler angle to zero;
// theta absorbs the remaining freedom.
inline IdealState ideal_from_cartesian(const CartesianState& c, double mu, const DepartureFrame& frame) {
    const Vec3<double> hv = cross(c.r, c.v);
    const double H = norm(hv);
    const Vec3<double> hd = frame.m.transposed_times((1.0 / H) * hv);
    const double sini = std::hypot(hd.x, hd.y);
    double l1 = 0.0, l2 = 0.0, l3 = 0.0, l4 = 1.0;
    if (sini >= kIncSingular) {
        const double half_i = 0.5 * std::atan2(sini, hd.z);
        const double raan_i = std::atan2(hd.x, -hd.y);
        l1 = std::sin(half_i) * std::cos(0.5 * raan_i);
        l2 = std::sin(half_i) * std::sin(0.5 * raan_i);
        l3 = std::cos(half_i) * std::sin(0.5 * raan_i);
        l4 = std::cos(half_i) * std::cos(0.5 * raan_i);
    }
    const Mat3<double> q = quaternion_matrix(l1, l2, l3, l4);
    const Vec3<double> r_ideal = q.transposed_times(frame.m.transposed_times(c.r));
    const double theta = wrap_two_pi(std::atan2(r_ideal.y, r_ideal.x));
    const double r = norm(c.r);
    const double rdot = dot(c.r, c.v) / r;
    const double p = H * H / mu;
    const double C = (H / r - H / p) * std::cos(theta) + rdot * std::sin(theta);
    const double S = (H / r - H / p) * std::sin(theta) - rdot * std::cos(theta);
    return {l1, l2, l3, l4, H, C, S, theta, frame};
}

// ---------------------------------------------------------------------------
// Closed-form shortcuts
// ---------------------------------------------------------------------------

inline MeeState coe_to_mee(const CoeState& s) {
    const double t = std::tan(0.5 * s.i);
    return {s.a * (1.0 - s.e * s.e),
            s.e * std::cos(s.argp + s.raan),
            s.e * std::sin(s.argp + s.raan),
            t * std::cos(s.raan),
            t * std::sin(s.raan),
            wrap_two_pi(s.raan + s.argp + s.nu)};
}

inline CoeState mee_to_coe(const MeeState& s) {
    const double e = std::hypot(s.f, s.g);
    if (e < kEccSingular) throw SingularityError("coe: argp undefined at e = 0");
    const double tk = std::hypot(s.h, s.k);
    if (tk < kIncSingular) throw SingularityError("coe: raan undefined at sin(i) = 0");
    const double raan = std::atan2(s.k, s.h);
    const double lp = std::atan2(s.g, s.f); // argp + raan
    return {s.p / (1.0 - e * e), e,
            std::atan2(2.0 * tk, 1.0 - tk * tk),
            wrap_two_pi(raan), wrap_two_pi(lp - raan), wrap_two_pi(s.L - lp)};
}

// Well defined even at sin(i) = 0, where the input angles are taken at face
// value (the even-zonal dynamics keep them meaningful).
inline HillState coe_to_hill(const CoeState& s, double mu) {
    if (s.e >= 1.0) throw SingularityError("hill: parabolic or hyperbolic orbit");
    const double p = s.a * (1.0 - s.e * s.e);
    const double H = std::sqrt(mu * p);
    return {p / (1.0 + s.e * std::cos(s.nu)), wrap_two_pi(s.argp + s.nu), wrap_two_pi(s.raan),
            std::sqrt(mu / p) * s.e * std::sin(s.nu), H, H * std::cos(s.i)};
}

inline EccHillState coe_to_ecchill(const CoeState& s, double mu) {
    if (s.e >= 1.0) throw SingularityError("ecchill: parabolic or hyperbolic orbit");
    const double p = s.a * (1.0 - s.e * s.e);
    const double H = std::sqrt(mu * p);
    return {H, H * std::cos(s.i), s.e * std::cos(s.argp), s.e * std::sin(s.argp),
            wrap_two_pi(s.raan), wrap_two_pi(s.argp + s.nu)};
}

inline EccHillState hill_to_ecchill(const HillState& s, double mu) {
    const double x = s.H * s.H / (mu * s.r) - 1.0;
    const double y = s.rdot * s.H / mu;
    return {s.H, s.Hz, x * std::cos(s.u) + y * std::sin(s.u), x * std::sin(s.u) - y * std::cos(s.u),
            s.raan, s.u};
}

inline HillState ecchill_to_hill(const EccHillState& s, double mu) {
    const double wh = 1.0 + s.fh * std::cos(s.u) + s.gh * std::sin(s.u);
    if (!(wh > 0.0)) throw SingularityError("hill: nonpositive orbit equation denominator");
    return {s.H * s.H / (mu * wh), s.u, s.raan, (mu / s.H) * (s.fh * std::sin(s.u) - s.gh * std::cos(s.u)),
            s.H, s.Hz};
}

// ---------------------------------------------------------------------------
// Tagged conversions
// ---------------------------------------------------------------------------

inline CartesianState to_cartesian(const AnyState& s, double mu) {
    switch (s.set) {
        case Set::Coe: return to_cartesian(Traits<Set::Coe>::from_array({s.x[0], s.x[1], s.x[2], s.x[3], s.x[4], s.x[5]}), mu);
        case Set::Mee: return to_cartesian(Traits<Set::Mee>::from_array({s.x[0], s.x[1], s.x[2], s.x[3], s.x[4], s.x[5]}), mu);
        case Set::Hill: return to_cartesian(Traits<Set::Hill>::from_array({s.x[0], s.x[1], s.x[2], s.x[3], s.x[4], s.x[5]}), mu);
        case Set::Cyl: return to_cartesian(Traits<Set::Cyl>::from_array({s.x[0], s.x[1], s.x[2], s.x[3], s.x[4], s.x[5]}), mu);
        case Set::CylHz: return to_cartesian(Traits<Set::CylHz>::from_array({s.x[0], s.x[1], s.x[2], s.x[3], s.x[4], s.x[5]}), mu);
        case Set::Ideal: return to_cartesian(Traits<Set::Ideal>::from_array(s.x, s.frame), mu);
        case Set::EccHill: return to_cartesian(Traits<Set::EccHill>::from_array({s.x[0], s.x[1], s.x[2], s.x[3], s.x[4], s.x[5]}), mu);
    }
    throw ConfigError("bad element set tag");
}

inline AnyState from_cartesian(Set set, const CartesianState& c, double mu,
                               const DepartureFrame& frame = {}, double re_hint = 6378.1363) {
    AnyState out;
    out.set = set;
    out.frame = frame;
    auto put6 = [&](std::array<double, 6> v) {
        for (int i = 0; i < 6; ++i) out.x[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)];
    };
    switch (set) {
        case Set::Coe: put6(Traits<Set::Coe>::to_array(coe_from_cartesian(c, mu))); break;
        case Set::Mee: put6(Traits<Set::Mee>::to_array(mee_from_cartesian(c, mu))); break;
        case Set::Hill: put6(Traits<Set::Hill>::to_array(hill_from_cartesian(c, mu))); break;
        case Set::Cyl: put6(Traits<Set::Cyl>::to_array(cyl_from_cartesian(c, re_hint))); break;
        case Set::CylHz: put6(Traits<Set::CylHz>::to_array(cylhz_from_cartesian(c, re_hint))); break;
        case Set::Ideal: out.x = Traits<Set::Ideal>::to_array(ideal_from_cartesian(c, mu, frame)); break;
        case Set::EccHill: put6(Traits<Set::EccHill>::to_array(ecchill_from_cartesian(c, mu))); break;
    }
    return out;
}

// Initial state of a test case in any set, built from classical elements.
// COE inputs at sin(i) = 0 reach Hill / EccHill through the closed forms, so
// the even-zonal special case stays representable.
inline AnyState initial_state(Set set, const CoeState& coe, double mu) {
    AnyState out;
    out.set = set;
    auto put6 = [&](std::array<double, 6> v) {
        for (int i = 0; i < 6; ++i) out.x[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)];
    };
    switch (set) {
        case Set::Coe: put6(Traits<Set::Coe>::to_array(coe)); break;
        case Set::Mee: put6(Traits<Set::Mee>::to_array(coe_to_mee(coe))); break;
        case Set::Hill: put6(Traits<Set::Hill>::to_array(coe_to_hill(coe, mu))); break;
        case Set::EccHill: put6(Traits<Set::EccHill>::to_array(coe_to_ecchill(coe, mu))); break;
        case Set::Cyl: put6(Traits<Set::Cyl>::to_array(cyl_from_cartesian(to_cartesian(coe, mu)))); break;
        case Set::CylHz: put6(Traits<Set::CylHz>::to_array(cylhz_from_cartesian(to_cartesian(coe, mu)))); break;
        case Set::Ideal: {
            out.frame = DepartureFrame::from_initial(coe.raan, coe.i, coe.argp + coe.nu);
            out.x = Traits<Set::Ideal>::to_array(
                ideal_from_cartesian(to_cartesian(coe, mu), mu, out.frame));
            break;
        }
    }
    return out;
}

inline AnyState convert(const AnyState& s, Set to, double mu, const DepartureFrame& frame = {}) {
    if (s.set == to) return s;
    // closed-form shortcuts
    if (s.set == Set::Coe && to == Set::Mee) {
        AnyState out = initial_state(Set::Mee, Traits<Set::Coe>::from_array({s.x[0], s.x[1], s.x[2], s.x[3], s.x[4], s.x[5]}), mu);
        out.epoch = s.epoch;
        return out;
    }
    if (s.set == Set::Mee && to == Set::Coe) {
        AnyState out;
        out.set = Set::Coe;
        auto c = mee_to_coe(Traits<Set::Mee>::from_array({s.x[0], s.x[1], s.x[2], s.x[3], s.x[4], s.x[5]}));
        auto a = Traits<Set::Coe>::to_array(c);
        for (int i = 0; i < 6; ++i) out.x[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)];
        out.epoch = s.epoch;
        return out;
    }
    if (s.set == Set::Hill && to == Set::EccHill) {
        auto e = hill_to_ecchill(Traits<Set::Hill>::from_array({s.x[0], s.x[1], s.x[2], s.x[3], s.x[4], s.x[5]}), mu);
        AnyState out;
        out.set = Set::EccHill;
        auto a = Traits<Set::EccHill>::to_array(e);
        for (int i = 0; i < 6; ++i) out.x[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)];
        out.epoch = s.epoch;
        return out;
    }
    if (s.set == Set::EccHill && to == Set::Hill) {
        auto h = ecchill_to_hill(Traits<Set::EccHill>::from_array({s.x[0], s.x[1], s.x[2], s.x[3], s.x[4], s.x[5]}), mu);
        AnyState out;
        out.set = Set::Hill;
        auto a = Traits<Set::Hill>::to_array(h);
        for (int i = 0; i < 6; ++i) out.x[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)];
        out.epoch = s.epoch;
        return out;
    }
    AnyState out = from_cartesian(to, to_cartesian(s, mu), mu, frame);
    out.epoch = s.epoch;
    return out;
}

// ---------------------------------------------------------------------------
// Physical invariants (test support and fixed-point constraints)
// ---------------------------------------------------------------------------

inline double specific_energy(const CartesianState& c, double mu) {
    return 0.5 * dot(c.v, c.v) - mu / norm(c.r);
}

inline double angular_momentum(const CartesianState& c) { return norm(cross(c.r, c.v)); }

inline double polar_angular_momentum(const CartesianState& c) { return cross(c.r, c.v).z; }

} // namespace hotm::elements
