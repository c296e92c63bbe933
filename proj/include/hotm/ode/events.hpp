#pragma once

#include <array>
#include <cmath>
#include <functional>

#include "hotm/ode/rk87.hpp"

namespace hotm::ode {

// Scalar event g(y) with its rate computed from the state derivative.
// direction +1 detects -/+ crossings, -1 detects +/-, 0 any.
template <std::size_t N>
struct Event {
    std::function<double(const std::array<double, N>&)> value;
    int direction = +1;
    double tol = 1e-12;
    // Crossing detection is armed only once |g| has exceeded this, so a
    // trajectory starting on the section does not trigger immediately.
    double arm_threshold = 1e-9;
};

template <std::size_t N>
Event<N> component_event(std::size_t index, int direction = +1, double tol = 1e-12) {
    Event<N> e;
    e.value = [index](const std::array<double, N>& y) { return y[index]; };
    e.direction = direction;
    e.tol = tol;
    return e;
}

template <std::size_t N>
struct EventResult {
    double s = 0.0;
    std::array<double, N> y{};
    StepStats stats;
};

// March until g changes sign in the requested direction, then polish the
// crossing with Newton iterations on the integrated trajectory restarted
// from the bracketing step.
template <std::size_t N, class RHS>
EventResult<N> integrate_to_event(RHS&& f, std::array<double, N> y, double s0, double s_max,
                                  const Event<N>& ev, const IntegratorConfig& cfg = {}) {
    StepStats stats;
    double s = s0;
    double h = std::min(cfg.initial_step, s_max - s0);
    double g_prev = ev.value(y);
    std::array<double, N> y_prev = y;
    double s_prev = s;
    bool armed = std::fabs(g_prev) > ev.arm_threshold;

    while (s < s_max) {
        if (stats.accepted + stats.rejected >= cfg.max_steps)
            throw IntegrationError("integrate_to_event: step budget exhausted");
        const double hs = std::min(h, s_max - s);
        double err = 0.0;
        std::array<double, N> ynew = rk87_step(f, s, y, hs, err, stats);
        if (err > cfg.abs_tol) {
            ++stats.rejected;
            h = hs * std::max(0.9 * std::pow(cfg.abs_tol / err, 1.0 / 8.0), 0.1);
            if (h < cfg.min_step) throw IntegrationError("integrate_to_event: step size underflow");
            continue;
        }
        ++stats.accepted;
        s_prev = s;
        y_prev = y;
        y = ynew;
        s += hs;
        const double g = ev.value(y);
        const bool crossed = armed && g_prev * g <= 0.0 && g != g_prev &&
                             (ev.direction == 0 || (ev.direction > 0 ? g > g_prev : g < g_prev));
        if (crossed) {
            // Newton on s*, restarting each trial from the bracket start.
            double t = s_prev + (s - s_prev) * g_prev / (g_prev - g);
            std::array<double, N> yt = y;
            for (int it = 0; it < 30; ++it) {
                if (t <= s_prev) t = s_prev + 1e-3 * (s - s_prev);
                auto r = integrate(f, y_prev, s_prev, t, cfg);
                stats += r.stats;
                yt = r.y;
                const double gt = ev.value(yt);
                if (std::fabs(gt) <= ev.tol) return {t, yt, stats};
                const auto dy = f(t, yt);
                double gdot = 0.0;
                {
                    // Numerical rate of g along the flow via directional
                    // derivative; exact for component events.
                    const double eps = 1e-7;
                    std::array<double, N> yp = yt;
                    for (std::size_t n = 0; n < N; ++n) yp[n] += eps * dy[n];
                    gdot = (ev.value(yp) - gt) / eps;
                }
                if (gdot == 0.0) throw IntegrationError("integrate_to_event: stationary event function");
                t -= gt / gdot;
            }
            throw IntegrationError("integrate_to_event: refinement did not converge");
        }
        if (!armed && std::fabs(g) > ev.arm_threshold) armed = true;
        g_prev = g;
        const double grow = (err > 0.0) ? 0.9 * std::pow(cfg.abs_tol / err, 1.0 / 8.0) : 5.0;
        h = std::min(hs * std::clamp(grow, 0.2, 5.0), cfg.max_step);
    }
    throw IntegrationError("integrate_to_event: no sign change found in search horizon");
}

} // namespace hotm::ode
