#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "hotm/da/poly.hpp"
#include "hotm/errors.hpp"
#include "hotm/ode/rk87_tableau.hpp"

namespace hotm::ode {

struct IntegratorConfig {
    double abs_tol = 1e-12;   // per-step tolerance on the embedded difference, scaled units
    double initial_step = 0.05;
    double min_step = 1e-13;
    double max_step = std::numeric_limits<double>::infinity();
    std::int64_t max_steps = 10'000'000;
};

struct StepStats {
    std::int64_t accepted = 0;
    std::int64_t rejected = 0;
    std::int64_t rhs_evals = 0;

    StepStats& operator+=(const StepStats& o) {
        accepted += o.accepted;
        rejected += o.rejected;
        rhs_evals += o.rhs_evals;
        return *this;
    }
};

namespace detail {

// Error norm for step control: for DA states only the constant part counts,
// which keeps the step sequence of a DA run identical to the pointwise run.
template <class T, std::size_t N>
double error_norm(const std::array<T, N>& e) {
    double m = 0.0;
    for (const T& v : e) m = std::max(m, std::fabs(da::constant_part(v)));
    return m;
}

} // namespace detail

// One attempted Runge-Kutta 8(7) step from (s, y) with size h. Returns the
// 8th-order solution and the constant-part norm of the embedded difference.
template <class T, std::size_t N, class RHS>
std::array<T, N> rk87_step(RHS&& f, double s, const std::array<T, N>& y, double h, double& err_norm,
                           StepStats& stats) {
    using Tab = Rk87Tableau;
    std::vector<std::array<T, N>> k;
    k.reserve(Tab::stages);
    k.push_back(f(s, y));
    for (int i = 1; i < Tab::stages; ++i) {
        std::array<T, N> yi = y;
        for (int j = 0; j < i; ++j) {
            const double w = h * Tab::a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (w == 0.0) continue;
            for (std::size_t n = 0; n < N; ++n) yi[n] += w * k[static_cast<std::size_t>(j)][n];
        }
        k.push_back(f(s + Tab::c[static_cast<std::size_t>(i)] * h, yi));
    }
    stats.rhs_evals += Tab::stages;

    std::array<T, N> y8 = y;
    for (int j = 0; j < Tab::stages; ++j) {
        const double w = h * Tab::b8[static_cast<std::size_t>(j)];
        if (w == 0.0) continue;
        for (std::size_t n = 0; n < N; ++n) y8[n] += w * k[static_cast<std::size_t>(j)][n];
    }

    std::array<double, N> e{};
    for (int j = 0; j < Tab::stages; ++j) {
        const double w = h * (Tab::b8[static_cast<std::size_t>(j)] - Tab::b7[static_cast<std::size_t>(j)]);
        if (w == 0.0) continue;
        for (std::size_t n = 0; n < N; ++n) e[n] += w * da::constant_part(k[static_cast<std::size_t>(j)][n]);
    }
    err_norm = 0.0;
    for (double v : e) err_norm = std::max(err_norm, std::fabs(v));
    return y8;
}

template <class T, std::size_t N>
struct OdeResult {
    std::array<T, N> y;
    StepStats stats;
};

// Adaptive integration of y' = f(s, y) from s0 to s1 (s1 > s0). The final
// step is clamped so the integration lands exactly on s1.
template <class T, std::size_t N, class RHS>
OdeResult<T, N> integrate(RHS&& f, std::array<T, N> y, double s0, double s1,
                          const IntegratorConfig& cfg = {}) {
    if (!(s1 > s0)) throw IntegrationError("integrate: s1 must exceed s0");
    StepStats stats;
    double s = s0;
    double h = std::min({cfg.initial_step, cfg.max_step, s1 - s0});
    while (s < s1) {
        if (stats.accepted + stats.rejected >= cfg.max_steps)
            throw IntegrationError("integrate: step budget exhausted");
        const bool last = (s + h >= s1);
        const double hs = last ? (s1 - s) : h;
        double err = 0.0;
        std::array<T, N> ynew = rk87_step(f, s, y, hs, err, stats);
        if (err <= cfg.abs_tol) {
            ++stats.accepted;
            y = std::move(ynew);
            s = last ? s1 : s + hs;
            const double grow = (err > 0.0) ? 0.9 * std::pow(cfg.abs_tol / err, 1.0 / 8.0) : 5.0;
            h = std::min(std::min(hs * std::clamp(grow, 0.2, 5.0), cfg.max_step), 10.0 * (s1 - s0));
        } else {
            ++stats.rejected;
            const double shrink = std::max(0.9 * std::pow(cfg.abs_tol / err, 1.0 / 8.0), 0.1);
            h = hs * shrink;
            if (h < cfg.min_step) throw IntegrationError("integrate: step size underflow");
        }
    }
    return {std::move(y), stats};
}

// Fixed-step mode used by convergence-order checks.
template <class T, std::size_t N, class RHS>
std::array<T, N> integrate_fixed(RHS&& f, std::array<T, N> y, double s0, double s1, int nsteps) {
    StepStats stats;
    const double h = (s1 - s0) / nsteps;
    for (int i = 0; i < nsteps; ++i) {
        double err = 0.0;
        y = rk87_step(f, s0 + i * h, y, h, err, stats);
    }
    return y;
}

} // namespace hotm::ode
