#pragma once

#include <optional>

#include "hotm/constants.hpp"
#include "hotm/forces/drag.hpp"
#include "hotm/forces/zonal.hpp"

namespace hotm::forces {

// Complete perturbation set of a propagation: central body, enabled zonal
// degrees, and optional drag.
struct ForceModel {
    double mu = 0.0;
    double re = 0.0;
    ZonalField zonal;
    std::optional<DragConfig> drag;

    bool j2_only() const { return zonal.j[1] == 0.0 && zonal.j[2] == 0.0 && !drag; }
    bool conservative() const { return !drag; }

    static ForceModel from_constants(const Constants& c, bool j3j4, bool with_drag,
                                     DensityTable table = {}) {
        ForceModel fm;
        fm.mu = c.mu;
        fm.re = c.re;
        fm.zonal.mu = c.mu;
        fm.zonal.re = c.re;
        fm.zonal.j = {c.j2, j3j4 ? c.j3 : 0.0, j3j4 ? c.j4 : 0.0};
        if (with_drag) {
            DragConfig d;
            d.cd = c.cd;
            d.area_to_mass_km2 = c.area_to_mass * 1e-6; // m^2/kg -> km^2/kg
            d.omega_e = c.omega_e;
            d.table = std::move(table);
            fm.drag = std::move(d);
        }
        return fm;
    }

    static ForceModel kepler(const Constants& c) {
        ForceModel fm;
        fm.mu = c.mu;
        fm.re = c.re;
        fm.zonal.mu = c.mu;
        fm.zonal.re = c.re;
        return fm;
    }
};

// Total perturbing acceleration in the radial/transverse/normal frame for
// the Gauss-type planetary equations. In-plane velocity components feed the
// drag term; the relative-velocity normal component r w_e sin(i) cos(u)
// carries an explicit sin(i), so fn_over_sini stays regular for even zonals
// plus drag.
// Companion of zonal_rtn_smooth with the drag terms folded in; used by the
// eccentric Hill equations, which never form sin(i) itself.
template <class T>
RtnSmoothAccel<T> rtn_forces_smooth(const ForceModel& fm, const T& r, const T& sinu, const T& cosu,
                                    const T& sini2, const T& cosi, const T& v_radial,
                                    const T& v_transverse) {
    RtnSmoothAccel<T> acc = zonal_rtn_smooth(fm.zonal, r, sinu, cosu, sini2, cosi);
    if (fm.drag) {
        using std::sqrt;
        const DragConfig& d = *fm.drag;
        const T vt = v_transverse - d.omega_e * (r * cosi);
        const T vn2 = (d.omega_e * d.omega_e) * ((r * r) * ((cosu * cosu) * sini2));
        const T vmag = sqrt(v_radial * v_radial + vt * vt + vn2);
        const T rho = density(d.table, r - fm.re);
        const T coeff = -0.5 * d.cd * d.area_to_mass_km2 * (rho * vmag);
        acc.fr += coeff * v_radial;
        acc.ft += coeff * vt;
        acc.fn_over_sini += coeff * (d.omega_e * (r * cosu));
    }
    return acc;
}

template <class T>
RtnAccel<T> rtn_forces(const ForceModel& fm, const T& r, const T& sinu, const T& cosu, const T& sini,
                       const T& cosi, const T& v_radial, const T& v_transverse,
                       bool need_fn_over_sini = false) {
    RtnAccel<T> acc = zonal_rtn(fm.zonal, r, sinu, cosu, sini, cosi, need_fn_over_sini);
    if (fm.drag) {
        using std::sqrt;
        const DragConfig& d = *fm.drag;
        const Vec3<T> v_rel{v_radial, v_transverse - d.omega_e * (r * cosi),
                            d.omega_e * (r * (sini * cosu))};
        const T rho = density(d.table, r - fm.re);
        const Vec3<T> a = drag_accel(d, rho, v_rel);
        acc.fr += a.x;
        acc.ft += a.y;
        acc.fn += a.z;
        if (need_fn_over_sini) {
            const T coeff = -0.5 * d.cd * d.area_to_mass_km2 * (rho * sqrt(dot(v_rel, v_rel)));
            acc.fn_over_sini += coeff * (d.omega_e * (r * cosu));
        }
    }
    return acc;
}

} // namespace hotm::forces
