#pragma once

#include <array>
#include <cmath>

#include "hotm/constants.hpp"
#include "hotm/da/poly.hpp"
#include "hotm/errors.hpp"
#include "hotm/linalg.hpp"

namespace hotm::forces {

// Axially symmetric gravity field: mu, equatorial radius and the zonal
// coefficients J2..J4 (zero disables a degree).
struct ZonalField {
    double mu = 0.0;
    double re = 0.0;
    std::array<double, 3> j{0.0, 0.0, 0.0}; // J2, J3, J4

    bool any() const { return j[0] != 0.0 || j[1] != 0.0 || j[2] != 0.0; }
    bool odd_degrees() const { return j[1] != 0.0; }
};

// Legendre polynomial P_n(s) by recurrence, n in {2,3,4}.
template <class T>
T legendre(int n, const T& s) {
    if (n < 2 || n > 4) throw DaError("legendre: unsupported degree");
    T p0 = s * 0.0 + 1.0; // one in the scalar algebra of s
    T p1 = s;
    T p = p1;
    for (int m = 2; m <= n; ++m) {
        p = ((2 * m - 1) * (s * p1) - (m - 1) * p0) * (1.0 / m);
        p0 = p1;
        p1 = p;
    }
    return p;
}

// dP_n/ds via (2n-1) P_{n-1} + P'_{n-2}.
template <class T>
T legendre_prime(int n, const T& s) {
    if (n < 2 || n > 4) throw DaError("legendre_prime: unsupported degree");
    switch (n) {
        case 2: return 3.0 * s;
        case 3: return 7.5 * (s * s) - 1.5;
        default: return s * (17.5 * (s * s) - 7.5);
    }
}

// P'_n(s)/s for even n (P'_n is odd, so this is a polynomial in s^2); used
// where equations of motion cancel a sin(i) against f_n analytically.
template <class T>
T legendre_prime_over_s(int n, const T& s) {
    switch (n) {
        case 2: return T(3.0 + 0.0 * s);
        case 4: return 17.5 * (s * s) - 7.5;
        default: throw DaError("legendre_prime_over_s: only even degrees");
    }
}

// Perturbing acceleration of the zonal field in the radial / transverse /
// normal frame at radius r, argument of latitude u, inclination i
// (sin(latitude) = sin i sin u). fn_over_sini carries f_n with one sin(i)
// removed; for odd zonals that division is genuine and fails near i = 0.
template <class T>
struct RtnAccel {
    T fr, ft, fn, fn_over_sini;
};

template <class T>
RtnAccel<T> zonal_rtn(const ZonalField& fld, const T& r, const T& sinu, const T& cosu, const T& sini,
                      const T& cosi, bool need_fn_over_sini = false) {
    using std::sqrt;
    const T zero = 0.0 * r;
    RtnAccel<T> acc{zero, zero, zero, zero};
    if (!fld.any()) return acc;
    const T s = sini * sinu;
    const T inv_r = 1.0 / r;
    const T base = fld.mu * (inv_r * inv_r);
    T re_over_r_n = (fld.re * inv_r) * (fld.re * inv_r); // (Re/r)^n starting at n=2
    for (int n = 2; n <= 4; ++n) {
        const double jn = fld.j[static_cast<std::size_t>(n - 2)];
        if (jn != 0.0) {
            const T common = jn * (base * re_over_r_n);
            acc.fr += (n + 1) * (common * legendre(n, s));
            const T pn_prime = legendre_prime(n, s);
            acc.ft -= common * (pn_prime * (sini * cosu));
            acc.fn -= common * (pn_prime * cosi);
            if (need_fn_over_sini) {
                if (n % 2 == 0) {
                    acc.fn_over_sini -= common * (legendre_prime_over_s(n, s) * (sinu * cosi));
                } else {
                    if (std::fabs(da::constant_part(sini)) < 1e-14)
                        throw SingularityError("zonal_rtn: odd zonal f_n/sin(i) at zero inclination");
                    acc.fn_over_sini -= common * (pn_prime * (cosi / sini));
                }
            }
        }
        re_over_r_n = re_over_r_n * (fld.re * inv_r);
    }
    return acc;
}

// Variant used by element sets that only know sin^2(i) smoothly (Hill-type
// momenta, where sin i = sqrt(H^2 - Hz^2)/H is not differentiable at the
// equator). Even zonal degrees are assembled as polynomials in sin^2(i), so
// the result stays regular there; odd degrees genuinely need sin(i) and fail
// near zero inclination.
template <class T>
struct RtnSmoothAccel {
    T fr, ft, fn_over_sini;
};

template <class T>
RtnSmoothAccel<T> zonal_rtn_smooth(const ZonalField& fld, const T& r, const T& sinu, const T& cosu,
                                   const T& sini2, const T& cosi) {
    using std::sqrt;
    const T zero = 0.0 * r;
    RtnSmoothAccel<T> acc{zero, zero, zero};
    if (!fld.any()) return acc;
    const T s2 = sini2 * (sinu * sinu);
    const T inv_r = 1.0 / r;
    const T base = fld.mu * (inv_r * inv_r);
    const T re2 = (fld.re * inv_r) * (fld.re * inv_r);

    if (fld.j[0] != 0.0) {
        const T common = fld.j[0] * (base * re2);
        acc.fr += 3.0 * (common * (0.5 * (3.0 * s2 - 1.0)));
        acc.ft -= common * (3.0 * (sinu * cosu)) * sini2;
        acc.fn_over_sini -= common * (3.0 * (sinu * cosi));
    }
    if (fld.j[1] != 0.0) {
        if (da::constant_part(sini2) < 1e-28)
            throw SingularityError("zonal_rtn_smooth: odd zonal at zero inclination");
        const T sini = sqrt(sini2);
        const T s = sini * sinu;
        const T common = fld.j[1] * (base * (re2 * (fld.re * inv_r)));
        const T p3p = 7.5 * s2 - 1.5;
        acc.fr += 4.0 * (common * (s * (2.5 * s2 - 1.5)));
        acc.ft -= common * (p3p * (sini * cosu));
        acc.fn_over_sini -= common * (p3p * (cosi / sini));
    }
    if (fld.j[2] != 0.0) {
        const T re4 = re2 * re2;
        const T common = fld.j[2] * (base * re4);
        acc.fr += 5.0 * (common * (0.125 * (35.0 * (s2 * s2) - 30.0 * s2 + 3.0)));
        const T q4 = 17.5 * s2 - 7.5; // P4'(s)/s
        acc.ft -= common * (q4 * (sinu * cosu)) * sini2;
        acc.fn_over_sini -= common * (q4 * (sinu * cosi));
    }
    return acc;
}

// Perturbing zonal acceleration in inertial Cartesian axes (no Keplerian
// part): minus the gradient of the disturbing potential.
template <class T>
Vec3<T> zonal_cartesian(const ZonalField& fld, const T& x, const T& y, const T& z) {
    using std::sqrt;
    const T r2 = x * x + y * y + z * z;
    const T r = sqrt(r2);
    const T inv_r = 1.0 / r;
    const T s = z * inv_r;
    // dR/dr and dR/ds of R = mu/r sum Jn (Re/r)^n Pn(s)
    T dRdr = 0.0 * x;
    T dRds = 0.0 * x;
    T re_over_r_n = (fld.re * inv_r) * (fld.re * inv_r);
    const T mu_r2 = fld.mu * (inv_r * inv_r);
    for (int n = 2; n <= 4; ++n) {
        const double jn = fld.j[static_cast<std::size_t>(n - 2)];
        if (jn != 0.0) {
            dRdr -= (n + 1) * jn * (mu_r2 * (re_over_r_n * legendre(n, s)));
            dRds += jn * (fld.mu * inv_r) * (re_over_r_n * legendre_prime(n, s));
        }
        re_over_r_n = re_over_r_n * (fld.re * inv_r);
    }
    // grad r = (x,y,z)/r ; grad s = (-z x, -z y, r^2 - z^2)/r^3
    const T inv_r3 = inv_r * (inv_r * inv_r);
    Vec3<T> g;
    g.x = -(dRdr * (x * inv_r) + dRds * (-(z * x) * inv_r3));
    g.y = -(dRdr * (y * inv_r) + dRds * (-(z * y) * inv_r3));
    g.z = -(dRdr * (z * inv_r) + dRds * ((r2 - z * z) * inv_r3));
    return g;
}

// Full gravitational acceleration (Keplerian plus zonal) in cylindrical
// axes; the azimuthal component vanishes by axial symmetry.
template <class T>
struct CylAccel {
    T f_rho, f_z; // f_phi = 0
};

template <class T>
CylAccel<T> zonal_cylindrical(const ZonalField& fld, const T& rho, const T& z) {
    using std::sqrt;
    const T r2 = rho * rho + z * z;
    const T r = sqrt(r2);
    const T inv_r = 1.0 / r;
    const T s = z * inv_r;
    // dV/dr = mu/r^2 + dR/dr, dV/ds = dR/ds
    T dVdr = fld.mu * (inv_r * inv_r);
    T dRds = 0.0 * rho;
    T re_over_r_n = (fld.re * inv_r) * (fld.re * inv_r);
    const T mu_r2 = fld.mu * (inv_r * inv_r);
    for (int n = 2; n <= 4; ++n) {
        const double jn = fld.j[static_cast<std::size_t>(n - 2)];
        if (jn != 0.0) {
            dVdr -= (n + 1) * jn * (mu_r2 * (re_over_r_n * legendre(n, s)));
            dRds += jn * (fld.mu * inv_r) * (re_over_r_n * legendre_prime(n, s));
        }
        re_over_r_n = re_over_r_n * (fld.re * inv_r);
    }
    const T inv_r3 = inv_r * (inv_r * inv_r);
    CylAccel<T> acc;
    acc.f_rho = -(dVdr * (rho * inv_r) + dRds * (-(z * rho) * inv_r3));
    acc.f_z = -(dVdr * (z * inv_r) + dRds * ((rho * rho) * inv_r3));
    return acc;
}

// Partial derivatives of the J2 disturbing function with respect to the
// modified equinoctial elements, in the sign convention of the planetary
// equations that consume them.
template <class T>
struct MeePartials {
    T dp, df, dg, dh, dk, dL;
};

template <class T>
MeePartials<T> j2_mee_partials(const ZonalField& fld, const T& p, const T& f, const T& g, const T& h,
                               const T& k, const T& L) {
    using std::sin, std::cos;
    const double j2 = fld.j[0];
    const T sinL = sin(L), cosL = cos(L);
    const T w = 1.0 + f * cosL + g * sinL;
    const T s2 = 1.0 + h * h + k * k;
    const T r = p / w;
    const T inv_r = 1.0 / r;
    const T sphi = 2.0 * (h * sinL - k * cosL) / s2;
    const T p2 = 0.5 * (3.0 * (sphi * sphi) - 1.0);
    const T p2p = 3.0 * sphi;
    const T re_r2 = (fld.re * inv_r) * (fld.re * inv_r);
    const T mu_wr = fld.mu / (w * r);

    MeePartials<T> d;
    d.dp = 3.0 * fld.mu / (w * (r * r)) * j2 * (re_r2 * p2);
    d.df = -3.0 * (mu_wr * cosL) * j2 * (re_r2 * p2);
    d.dg = -3.0 * (mu_wr * sinL) * j2 * (re_r2 * p2);
    const T s4 = s2 * s2;
    d.dh = -2.0 * fld.mu * inv_r / s4 * ((1.0 - h * h + k * k) * sinL + 2.0 * (h * (k * cosL))) * j2 *
           (re_r2 * p2p);
    d.dk = 2.0 * fld.mu * inv_r / s4 * ((1.0 + h * h - k * k) * cosL + 2.0 * (h * (k * sinL))) * j2 *
           (re_r2 * p2p);
    d.dL = -2.0 * fld.mu * inv_r / s2 * (h * cosL + k * sinL) * j2 * (re_r2 * p2p) -
           3.0 * mu_wr * (g * cosL - f * sinL) * j2 * (re_r2 * p2);
    return d;
}

} // namespace hotm::forces
