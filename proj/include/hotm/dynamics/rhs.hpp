#pragma once

#include <array>
#include <cmath>

#include "hotm/da/poly.hpp"
#include "hotm/elements/convert.hpp"
#include "hotm/elements/states.hpp"
#include "hotm/errors.hpp"
#include "hotm/forces/model.hpp"

namespace hotm::dynamics {

using elements::DepartureFrame;
using elements::Set;
using elements::Traits;
using forces::ForceModel;

inline constexpr double kDivisorTol = 1e-14;

// Gauss' planetary equations for the classical elements; the f_n / sin(i)
// quotients use the analytically reduced normal force so even-zonal runs at
// zero inclination stay regular.
template <class T>
std::array<T, 6> rhs_coe(const std::array<T, 6>& x, const ForceModel& fm) {
    using std::sin, std::cos, std::sqrt;
    const T& a = x[0];
    const T& e = x[1];
    const T& inc = x[2];
    const T& argp = x[4];
    const T& nu = x[5];
    if (std::fabs(da::constant_part(e)) < kDivisorTol)
        throw SingularityError("rhs_coe: eccentricity below divisor threshold");
    const T p = a * (1.0 - e * e);
    if (!(da::constant_part(p) > 0.0)) throw SingularityError("rhs_coe: nonpositive semi-latus rectum");
    const T cosnu = cos(nu), sinnu = sin(nu);
    const T r = p / (1.0 + e * cosnu);
    const T u = argp + nu;
    const T sinu = sin(u), cosu = cos(u);
    const T sini = sin(inc), cosi = cos(inc);
    const T sqrt_mup = sqrt(fm.mu * p);
    const T sq_mu_over_p = sqrt_mup / p; // sqrt(mu/p)
    const auto f = forces::rtn_forces(fm, r, sinu, cosu, sini, cosi, sq_mu_over_p * (e * sinnu),
                                      sq_mu_over_p * (1.0 + e * cosnu), true);

    std::array<T, 6> d = {
        2.0 * (a * a) / sqrt_mup * (e * (sinnu * f.fr) + (p / r) * f.ft),
        (1.0 / sqrt_mup) * (p * (sinnu * f.fr) + ((p + r) * cosnu + e * r) * f.ft),
        r * cosu / sqrt_mup * f.fn,
        r * sinu / sqrt_mup * f.fn_over_sini,
        (1.0 / (e * sqrt_mup)) * (-(p * (cosnu * f.fr)) + (p + r) * (sinnu * f.ft)) -
            r * (cosi * sinu) / sqrt_mup * f.fn_over_sini,
        sqrt_mup / (r * r) + (1.0 / (e * sqrt_mup)) * (p * (cosnu * f.fr) - (p + r) * (sinnu * f.ft)),
    };
    return d;
}

// Lagrange planetary equations in modified equinoctial elements driven by
// the J2 disturbing-function partials.
template <class T>
std::array<T, 6> rhs_mee_lagrange(const std::array<T, 6>& x, const ForceModel& fm) {
    using std::sin, std::cos, std::sqrt;
    const T& p = x[0];
    const T& f = x[1];
    const T& g = x[2];
    const T& h = x[3];
    const T& k = x[4];
    const T& L = x[5];
    if (!(da::constant_part(p) > 0.0)) throw SingularityError("rhs_mee: nonpositive p");
    const T cl = cos(L), sl = sin(L);
    const T w = 1.0 + f * cl + g * sl;
    if (!(da::constant_part(w) > 0.0)) throw SingularityError("rhs_mee: nonpositive w");
    const T s2 = 1.0 + h * h + k * k;
    const auto R = forces::j2_mee_partials(fm.zonal, p, f, g, h, k, L);
    const T sqrt_mup = sqrt(fm.mu * p);
    const T sqp_mu = p / sqrt_mup; // sqrt(p/mu)

    const T hRh_kRk = h * R.dh + k * R.dk;
    const T gRf_fRg_RL = g * R.df - f * R.dg - R.dL;
    std::array<T, 6> d = {
        2.0 * sqp_mu * (-(g * R.df) + f * R.dg + R.dL),
        (1.0 / sqrt_mup) * (2.0 * (p * (g * R.dp)) - (1.0 - f * f - g * g) * R.dg -
                            0.5 * (g * s2) * hRh_kRk + (f + (1.0 + w) * cl) * R.dL),
        (1.0 / sqrt_mup) * (-2.0 * (p * (f * R.dp)) + (1.0 - f * f - g * g) * R.df +
                            0.5 * (f * s2) * hRh_kRk + (g + (1.0 + w) * sl) * R.dL),
        s2 / (2.0 * sqrt_mup) * (h * gRf_fRg_RL - 0.5 * (s2 * R.dk)),
        s2 / (2.0 * sqrt_mup) * (k * gRf_fRg_RL + 0.5 * (s2 * R.dh)),
        sqrt_mup * (w / p) * (w / p) + s2 / (2.0 * sqrt_mup) * hRh_kRk,
    };
    return d;
}

// Gauss form in modified equinoctial elements (any perturbation given in the
// radial/transverse/normal frame).
template <class T>
std::array<T, 6> rhs_mee_gauss(const std::array<T, 6>& x, const ForceModel& fm) {
    using std::sin, std::cos, std::sqrt;
    const T& p = x[0];
    const T& f = x[1];
    const T& g = x[2];
    const T& h = x[3];
    const T& k = x[4];
    const T& L = x[5];
    if (!(da::constant_part(p) > 0.0)) throw SingularityError("rhs_mee: nonpositive p");
    const T cl = cos(L), sl = sin(L);
    const T w = 1.0 + f * cl + g * sl;
    if (!(da::constant_part(w) > 0.0)) throw SingularityError("rhs_mee: nonpositive w");
    const T s2 = 1.0 + h * h + k * k;
    const T r = p / w;
    const T t2 = h * h + k * k;
    if (da::constant_part(t2) < kDivisorTol * kDivisorTol)
        throw SingularityError("rhs_mee_gauss: argument of latitude undefined at zero inclination");
    const T t = sqrt(t2);
    const T sini = 2.0 * t / s2;
    const T cosi = (1.0 - t2) / s2;
    const T cosu = (cl * h + sl * k) / t;
    const T sinu = (sl * h - cl * k) / t;
    const T sqp_mu = sqrt(p / fm.mu);
    const T sq_mu_over_p = 1.0 / sqp_mu;
    const auto fo = forces::rtn_forces(fm, r, sinu, cosu, sini, cosi, sq_mu_over_p * (f * sl - g * cl),
                                       sq_mu_over_p * w, false);
    const T hsl_kcl = h * sl - k * cl;
    std::array<T, 6> d = {
        2.0 * (p / w) * (sqp_mu * fo.ft),
        sqp_mu * (sl * fo.fr + ((w + 1.0) * cl + f) * (fo.ft / w) - hsl_kcl * (g / w) * fo.fn),
        sqp_mu * (-(cl * fo.fr) + ((w + 1.0) * sl + g) * (fo.ft / w) + hsl_kcl * (f / w) * fo.fn),
        sqp_mu * (s2 * fo.fn) / (2.0 * w) * cl,
        sqp_mu * (s2 * fo.fn) / (2.0 * w) * sl,
        sqrt(fm.mu * p) * (w / p) * (w / p) + (1.0 / w) * (sqp_mu * (hsl_kcl * fo.fn)),
    };
    return d;
}

// Hamilton's equations in Hill variables for the J2-only problem.
template <class T>
std::array<T, 6> rhs_hill_hamiltonian(const std::array<T, 6>& x, const ForceModel& fm) {
    using std::sin, std::cos;
    const T& r = x[0];
    const T& u = x[1];
    const T& rdot = x[3];
    const T& H = x[4];
    const T& Hz = x[5];
    if (!(da::constant_part(r) > 0.0) || !(da::constant_part(H) > 0.0))
        throw SingularityError("rhs_hill: nonpositive r or H");
    const double j2 = fm.zonal.j[0];
    const double mj2re2 = fm.mu * j2 * fm.re * fm.re;
    const T sinu = sin(u), cosu = cos(u);
    const T sin2u = sinu * sinu;
    const T inv_r = 1.0 / r;
    const T inv_r3 = inv_r * (inv_r * inv_r);
    const T inv_H = 1.0 / H;
    const T hz_h2 = (Hz * inv_H) * (Hz * inv_H);
    std::array<T, 6> d = {
        rdot,
        H * (inv_r * inv_r) + 3.0 * mj2re2 * ((Hz * Hz) * sin2u) * (inv_r3 * (inv_H * (inv_H * inv_H))),
        -3.0 * mj2re2 * (Hz * sin2u) * (inv_r3 * (inv_H * inv_H)),
        (H * H) * inv_r3 - fm.mu * (inv_r * inv_r) +
            1.5 * mj2re2 * (inv_r3 * inv_r) * (3.0 * (sin2u * (1.0 - hz_h2)) - 1.0),
        -3.0 * mj2re2 * inv_r3 * (cosu * (sinu * (1.0 - hz_h2))),
        0.0 * r,
    };
    return d;
}

// Gauss' planetary equations in Hill variables.
template <class T>
std::array<T, 6> rhs_hill_gauss(const std::array<T, 6>& x, const ForceModel& fm) {
    using std::sin, std::cos, std::sqrt;
    const T& r = x[0];
    const T& u = x[1];
    const T& rdot = x[3];
    const T& H = x[4];
    const T& Hz = x[5];
    if (!(da::constant_part(r) > 0.0) || !(da::constant_part(H) > 0.0))
        throw SingularityError("rhs_hill: nonpositive r or H");
    const T g2 = H * H - Hz * Hz;
    if (da::constant_part(g2) < kDivisorTol * kDivisorTol * da::constant_part(H * H))
        throw SingularityError("rhs_hill_gauss: singular at zero inclination");
    const T G = sqrt(g2);
    const T sini = G / H;
    const T cosi = Hz / H;
    const T sinu = sin(u), cosu = cos(u);
    const auto f = forces::rtn_forces(fm, r, sinu, cosu, sini, cosi, rdot, H / r, true);
    const T inv_r = 1.0 / r;
    std::array<T, 6> d = {
        rdot,
        H * (inv_r * inv_r) - r * (cosi * sinu) / H * f.fn_over_sini,
        r * sinu / H * f.fn_over_sini,
        -fm.mu * (inv_r * inv_r) + (H * H) * (inv_r * (inv_r * inv_r)) + f.fr,
        r * f.ft,
        r * (cosi * f.ft) - r * (sini * (cosu * f.fn)),
    };
    return d;
}

// Cylindrical coordinates; gravity carries the Keplerian part, drag adds an
// azimuthal component while staying independent of the azimuth itself.
namespace detail {
template <class T>
struct CylForces {
    T f_rho, f_phi, f_z;
};

template <class T>
CylForces<T> cyl_forces(const ForceModel& fm, const T& rho, const T& z, const T& rhodot,
                        const T& rho_phidot, const T& zdot) {
    const auto g = forces::zonal_cylindrical(fm.zonal, rho, z);
    CylForces<T> out{g.f_rho, 0.0 * rho, g.f_z};
    if (fm.drag) {
        using std::sqrt;
        const forces::DragConfig& d = *fm.drag;
        const Vec3<T> v_rel{rhodot, rho_phidot - d.omega_e * rho, zdot};
        const T alt = sqrt(rho * rho + z * z) - fm.re;
        const Vec3<T> a = forces::drag_accel(d, forces::density(d.table, alt), v_rel);
        out.f_rho += a.x;
        out.f_phi += a.y;
        out.f_z += a.z;
    }
    return out;
}
} // namespace detail

template <class T>
std::array<T, 6> rhs_cyl(const std::array<T, 6>& x, const ForceModel& fm) {
    const T& rho = x[0];
    const T& z = x[2];
    const T& rhodot = x[3];
    const T& phidot = x[4];
    const T& zdot = x[5];
    if (da::constant_part(rho) < kDivisorTol * fm.re)
        throw SingularityError("rhs_cyl: radius below divisor threshold");
    const auto f = detail::cyl_forces(fm, rho, z, rhodot, rho * phidot, zdot);
    std::array<T, 6> d = {
        rhodot,
        phidot,
        zdot,
        rho * (phidot * phidot) + f.f_rho,
        -2.0 * (rhodot * phidot) / rho + f.f_phi / rho,
        f.f_z,
    };
    return d;
}

template <class T>
std::array<T, 6> rhs_cylhz(const std::array<T, 6>& x, const ForceModel& fm) {
    const T& rho = x[0];
    const T& z = x[2];
    const T& rhodot = x[3];
    const T& Hz = x[4];
    const T& zdot = x[5];
    if (da::constant_part(rho) < kDivisorTol * fm.re)
        throw SingularityError("rhs_cylhz: radius below divisor threshold");
    const T inv_rho = 1.0 / rho;
    const auto f = detail::cyl_forces(fm, rho, z, rhodot, Hz * inv_rho, zdot);
    std::array<T, 6> d = {
        rhodot,
        Hz * (inv_rho * inv_rho),
        zdot,
        (Hz * Hz) * (inv_rho * (inv_rho * inv_rho)) + f.f_rho,
        rho * f.f_phi,
        f.f_z,
    };
    return d;
}

// Ideal elements: perturbations evaluated in inertial axes and rotated into
// the orbital frame through the departure frame, the quaternion and the
// in-plane angle.
template <class T>
std::array<T, 8> rhs_ideal(const std::array<T, 8>& x, const ForceModel& fm,
                           const DepartureFrame& frame) {
    using std::sin, std::cos;
    const T& l1 = x[0];
    const T& l2 = x[1];
    const T& l3 = x[2];
    const T& l4 = x[3];
    const T& H = x[4];
    const T& C = x[5];
    const T& S = x[6];
    const T& theta = x[7];
    if (!(da::constant_part(H) > 0.0)) throw SingularityError("rhs_ideal: nonpositive H");
    const T p = (H * H) / fm.mu;
    const T ct = cos(theta), st = sin(theta);
    const T denom = H / p + C * ct + S * st;
    if (!(da::constant_part(denom) > 0.0)) throw SingularityError("rhs_ideal: nonpositive orbit denominator");
    const T r = H / denom;
    const T rdot = C * st - S * ct;
    const T vt = H / r;

    // ideal-frame basis vectors in inertial axes
    const Mat3<T> q{{1.0 - 2.0 * (l2 * l2 + l3 * l3), 2.0 * (l1 * l2 - l3 * l4), 2.0 * (l1 * l3 + l2 * l4),
                     2.0 * (l1 * l2 + l3 * l4), 1.0 - 2.0 * (l1 * l1 + l3 * l3), 2.0 * (l2 * l3 - l1 * l4),
                     2.0 * (l1 * l3 - l2 * l4), 2.0 * (l2 * l3 + l1 * l4), 1.0 - 2.0 * (l1 * l1 + l2 * l2)}};
    const Vec3<T> r_ideal{r * ct, r * st, 0.0 * r};
    auto md = [&frame](const Vec3<T>& v) -> Vec3<T> {
        const auto& m = frame.m.m;
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z, m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    };
    auto md_t = [&frame](const Vec3<T>& v) -> Vec3<T> {
        const auto& m = frame.m.m;
        return {m[0] * v.x + m[3] * v.y + m[6] * v.z, m[1] * v.x + m[4] * v.y + m[7] * v.z,
                m[2] * v.x + m[5] * v.y + m[8] * v.z};
    };
    const Vec3<T> r_in = md(q * r_ideal);
    Vec3<T> f_in = forces::zonal_cartesian(fm.zonal, r_in.x, r_in.y, r_in.z);
    if (fm.drag) {
        using std::sqrt;
        const Vec3<T> v_ideal{rdot * ct - vt * st, rdot * st + vt * ct, 0.0 * r};
        const Vec3<T> v_in = md(q * v_ideal);
        const T alt = sqrt(dot(r_in, r_in)) - fm.re;
        const Vec3<T> a = forces::drag_accel_cartesian(*fm.drag, r_in, v_in, alt);
        f_in = f_in + a;
    }
    // inertial -> departure -> ideal -> orbital (rotate by -theta in plane)
    const Vec3<T> f_ideal = q.transposed_times(md_t(f_in));
    const T fr = f_ideal.x * ct + f_ideal.y * st;
    const T ft = -(f_ideal.x * st) + f_ideal.y * ct;
    const T fn = f_ideal.z;

    const T rf_2h = r * fn / (2.0 * H);
    std::array<T, 8> d = {
        rf_2h * (l4 * ct - l3 * st),
        rf_2h * (l4 * st + l3 * ct),
        rf_2h * (l1 * st - l2 * ct),
        rf_2h * (-(l1 * ct) - l2 * st),
        r * ft,
        (1.0 + r / p) * (ft * ct) + fr * st,
        (1.0 + r / p) * (ft * st) - fr * ct,
        H / (r * r),
    };
    return d;
}

// Eccentric Hill variables, written so that only sin^2(i) appears for even
// zonal degrees plus drag; regular at zero inclination in that case.
template <class T>
std::array<T, 6> rhs_ecchill(const std::array<T, 6>& x, const ForceModel& fm) {
    using std::sin, std::cos;
    const T& H = x[0];
    const T& Hz = x[1];
    const T& fh = x[2];
    const T& gh = x[3];
    const T& u = x[5];
    if (!(da::constant_part(H) > 0.0)) throw SingularityError("rhs_ecchill: nonpositive H");
    const T sinu = sin(u), cosu = cos(u);
    const T wh = 1.0 + fh * cosu + gh * sinu;
    if (!(da::constant_part(wh) > 0.0)) throw SingularityError("rhs_ecchill: nonpositive orbit denominator");
    const T inv_H = 1.0 / H;
    const T r_ = (H * H) / (fm.mu * wh);
    const T cosi = Hz * inv_H;
    const T sini2 = (H - Hz) * (H + Hz) * (inv_H * inv_H);
    const auto f = forces::rtn_forces_smooth(fm, r_, sinu, cosu, sini2, cosi,
                                             fm.mu * inv_H * (fh * sinu - gh * cosu), H / r_);
    const T r_over_H = r_ * inv_H;
    std::array<T, 6> d = {
        r_ * f.ft,
        r_over_H * (Hz * f.ft - ((H - Hz) * (H + Hz) * inv_H) * (cosu * f.fn_over_sini)),
        r_over_H * (wh * (sinu * f.fr) + ((wh + 1.0) * cosu + fh) * f.ft +
                    gh * (Hz * (sinu * (f.fn_over_sini * inv_H)))),
        r_over_H * (-(wh * (cosu * f.fr)) + ((wh + 1.0) * sinu + gh) * f.ft -
                    fh * (Hz * (sinu * (f.fn_over_sini * inv_H)))),
        r_ * sinu * inv_H * f.fn_over_sini,
        H / (r_ * r_) - r_ * (Hz * sinu) * (inv_H * inv_H) * f.fn_over_sini,
    };
    return d;
}

// Time-parameterized right-hand side of a set, choosing the printed
// formulation that matches the enabled perturbations: the J2-only problem
// uses the disturbing-function forms for MEE and Hill, everything else the
// Gauss forms.
template <Set S, class T>
std::array<T, Traits<S>::dim> rhs_time(const std::array<T, Traits<S>::dim>& x, const ForceModel& fm,
                                       const DepartureFrame& frame = {}) {
    if constexpr (S == Set::Coe) {
        (void)frame;
        return rhs_coe(x, fm);
    } else if constexpr (S == Set::Mee) {
        (void)frame;
        return fm.j2_only() ? rhs_mee_lagrange(x, fm) : rhs_mee_gauss(x, fm);
    } else if constexpr (S == Set::Hill) {
        (void)frame;
        return fm.j2_only() ? rhs_hill_hamiltonian(x, fm) : rhs_hill_gauss(x, fm);
    } else if constexpr (S == Set::Cyl) {
        (void)frame;
        return rhs_cyl(x, fm);
    } else if constexpr (S == Set::CylHz) {
        (void)frame;
        return rhs_cylhz(x, fm);
    } else if constexpr (S == Set::Ideal) {
        return rhs_ideal(x, fm, frame);
    } else {
        (void)frame;
        return rhs_ecchill(x, fm);
    }
}

} // namespace hotm::dynamics
