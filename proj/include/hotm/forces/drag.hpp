#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hotm/da/poly.hpp"
#include "hotm/errors.hpp"
#include "hotm/linalg.hpp"

namespace hotm::forces {

// Harris-Priester density rows: altitude [km] against the minimum/maximum
// density columns. Densities are stored in kg/km^3; the data file carries
// them in g/km^3 as published.
struct DensityTable {
    std::vector<double> h_km;
    std::vector<double> rho_min; // kg/km^3
    std::vector<double> rho_max; // kg/km^3

    double mean(std::size_t i) const { return 0.5 * (rho_min[i] + rho_max[i]); }

    static DensityTable load_csv(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("density table not found: " + path);
        DensityTable t;
        std::string line;
        if (!std::getline(in, line)) throw ConfigError("density table empty: " + path);
        if (line.find("h_km") == std::string::npos)
            throw ConfigError("density table header must be h_km,rho_min,rho_max");
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ss(line);
            double h, mn, mx;
            char c1, c2;
            if (!(ss >> h >> c1 >> mn >> c2 >> mx)) throw ConfigError("bad density table row: " + line);
            if (!t.h_km.empty() && h <= t.h_km.back())
                throw ConfigError("density table altitudes must increase");
            t.h_km.push_back(h);
            t.rho_min.push_back(mn * 1e-3); // g/km^3 -> kg/km^3
            t.rho_max.push_back(mx * 1e-3);
        }
        if (t.h_km.size() < 2) throw ConfigError("density table too short");
        return t;
    }
};

// Mean (min/max averaged) density with exponential interpolation between the
// bracketing altitude rows. The bracket is chosen by the constant part so DA
// altitudes expand about a single segment.
template <class T>
T density(const DensityTable& tab, const T& altitude_km) {
    const double h0 = da::constant_part(altitude_km);
    if (h0 < tab.h_km.front() || h0 > tab.h_km.back())
        throw SingularityError("density: altitude outside table span");
    std::size_t i = 0;
    while (i + 2 < tab.h_km.size() && tab.h_km[i + 1] <= h0) ++i;
    const double hi = tab.h_km[i], hj = tab.h_km[i + 1];
    const double ri = tab.mean(i), rj = tab.mean(i + 1);
    const double scale_height = (hj - hi) / std::log(ri / rj);
    using std::exp;
    return ri * exp((hi - altitude_km) * (1.0 / scale_height));
}

// Drag configuration: ballistic parameters, the rotation rate of the
// atmosphere and the density table.
struct DragConfig {
    double cd = 0.0;
    double area_to_mass_km2 = 0.0; // km^2/kg
    double omega_e = 0.0;          // rad/s
    DensityTable table;
};

// -1/2 rho Cd A/m |V_rel| V_rel for a relative velocity already expressed in
// some orthonormal frame.
template <class T>
Vec3<T> drag_accel(const DragConfig& cfg, const T& density_kg_km3, const Vec3<T>& v_rel) {
    using std::sqrt;
    const T v2 = dot(v_rel, v_rel);
    if (da::constant_part(v2) == 0.0) return {v_rel.x * 0.0, v_rel.y * 0.0, v_rel.z * 0.0};
    const T coeff = -0.5 * cfg.cd * cfg.area_to_mass_km2 * (density_kg_km3 * sqrt(v2));
    return coeff * v_rel;
}

// Drag acceleration from an inertial Cartesian state; the atmosphere rotates
// with the Earth about z.
template <class T>
Vec3<T> drag_accel_cartesian(const DragConfig& cfg, const Vec3<T>& r, const Vec3<T>& v,
                             const T& altitude_km) {
    const Vec3<T> v_rel{v.x + cfg.omega_e * r.y, v.y - cfg.omega_e * r.x, v.z};
    return drag_accel(cfg, density(cfg.table, altitude_km), v_rel);
}

} // namespace hotm::forces
