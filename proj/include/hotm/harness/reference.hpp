#pragma once

#include <vector>

#include "hotm/dynamics/systems.hpp"
#include "hotm/elements/convert.hpp"
#include "hotm/ode/events.hpp"

namespace hotm::harness {

using elements::AnyState;
using elements::Set;
using elements::Traits;
using forces::ForceModel;

// Numerical reference propagated in modified equinoctial elements to a list
// of increasing epochs, returned as Cartesian states. Segments continue from
// one another, so the total cost is one long integration.
inline std::vector<elements::CartesianState> mee_reference(const AnyState& start, const ForceModel& fm,
                                                           const Constants& consts,
                                                           const std::vector<double>& epochs_s,
                                                           const ode::IntegratorConfig& icfg = {}) {
    const Scaling sc(consts);
    const AnyState mee0 = elements::convert(start, Set::Mee, consts.mu);
    const auto scales = Traits<Set::Mee>::scales(sc);
    std::array<double, 6> y{};
    for (int i = 0; i < 6; ++i)
        y[static_cast<std::size_t>(i)] = mee0.x[static_cast<std::size_t>(i)] / scales[static_cast<std::size_t>(i)];

    dynamics::ScaledTimeSystem<Set::Mee, double> sys(fm, sc);
    std::vector<elements::CartesianState> out;
    out.reserve(epochs_s.size());
    double t_scaled = 0.0;
    for (double epoch : epochs_s) {
        const double target = epoch / sc.time;
        if (target > t_scaled) {
            auto r = ode::integrate(sys, y, t_scaled, target, icfg);
            y = r.y;
            t_scaled = target;
        }
        AnyState s;
        s.set = Set::Mee;
        for (int i = 0; i < 6; ++i)
            s.x[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i)] * scales[static_cast<std::size_t>(i)];
        out.push_back(elements::to_cartesian(s, consts.mu));
    }
    return out;
}

// Numerical reference of the section states themselves: the same element set
// and the same independent variable as the map, one revolution at a time.
// For the cylindrical sets the section states are found by event detection
// on ascending z = 0 crossings.
inline std::vector<std::array<double, 8>> section_reference(const AnyState& start, const ForceModel& fm,
                                                            const Constants& consts, int n,
                                                            const ode::IntegratorConfig& icfg = {}) {
    const Scaling sc(consts);
    std::vector<std::array<double, 8>> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    out.push_back(start.x);

    elements::dispatch(start.set, [&](auto tag) {
        constexpr Set S = decltype(tag)::value;
        constexpr int Dim = Traits<S>::dim;
        const auto scales = Traits<S>::scales(sc);
        if constexpr (S == Set::Cyl || S == Set::CylHz) {
            std::array<double, static_cast<std::size_t>(Dim)> y{};
            for (int i = 0; i < Dim; ++i)
                y[static_cast<std::size_t>(i)] =
                    start.x[static_cast<std::size_t>(i)] / scales[static_cast<std::size_t>(i)];
            dynamics::ScaledTimeSystem<S, double> sys(fm, sc);
            const elements::CartesianState cart = elements::to_cartesian(start, consts.mu);
            const double a = -0.5 * consts.mu / elements::specific_energy(cart, consts.mu);
            const double t_rev = kTwoPi * std::sqrt(a * a * a / consts.mu) / sc.time;
            auto ev = ode::component_event<static_cast<std::size_t>(Dim)>(2, +1, 1e-12);
            double t = 0.0;
            for (int rev = 1; rev <= n; ++rev) {
                auto r = ode::integrate_to_event(sys, y, t, t + 1.8 * t_rev, ev, icfg);
                y = r.y;
                t = r.s;
                std::array<double, 8> rec{};
                for (int i = 0; i < Dim; ++i)
                    rec[static_cast<std::size_t>(i)] =
                        y[static_cast<std::size_t>(i)] * scales[static_cast<std::size_t>(i)];
                out.push_back(rec);
            }
        } else {
            std::array<double, static_cast<std::size_t>(Dim) + 1> y{};
            for (int i = 0; i < Dim; ++i)
                y[static_cast<std::size_t>(i)] =
                    start.x[static_cast<std::size_t>(i)] / scales[static_cast<std::size_t>(i)];
            y[static_cast<std::size_t>(Dim)] = 0.0;
            dynamics::ScaledFastSystem<S, double> sys(fm, sc, start.frame);
            for (int rev = 1; rev <= n; ++rev) {
                auto r = ode::integrate(sys, y, 0.0, kTwoPi, icfg);
                y = r.y;
                std::array<double, 8> rec{};
                for (int i = 0; i < Dim; ++i)
                    rec[static_cast<std::size_t>(i)] =
                        y[static_cast<std::size_t>(i)] * scales[static_cast<std::size_t>(i)];
                out.push_back(rec);
            }
        }
    });
    return out;
}

} // namespace hotm::harness
