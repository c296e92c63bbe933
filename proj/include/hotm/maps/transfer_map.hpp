#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "hotm/constants.hpp"
#include "hotm/da/domain.hpp"
#include "hotm/da/map.hpp"
#include "hotm/dynamics/systems.hpp"
#include "hotm/elements/convert.hpp"
#include "hotm/ode/events.hpp"
#include "hotm/ode/rk87.hpp"

namespace hotm::maps {

using elements::AnyState;
using elements::DepartureFrame;
using elements::Set;
using elements::Traits;
using forces::ForceModel;

// One-revolution transfer map of an element set about an expansion point:
// polynomial images of the state and of the elapsed time (stroboscopic) or
// of the nodal period (Poincare), all in scaled units, plus the estimated
// displacement domain for a target truncation error.
struct TransferMap {
    Set set = Set::EccHill;
    bool poincare = false;
    int order = 5;
    int dim = 6;
    double mu = 0.0;
    double re = 0.0;
    double time_scale = 0.0;
    std::array<double, 8> scales{};   // per-element physical scale factors
    std::array<double, 8> center{};   // scaled expansion centers of the DA variables
    std::array<double, 8> ref_point{}; // physical state whose flow is the constant part
    DepartureFrame frame;             // ideal elements only
    std::vector<da::Poly> state;      // dim components over dim variables
    da::Poly time;                    // elapsed scaled time / scaled nodal period
    da::DomainEstimate domain;        // per-variable radii (state components only)

    int fast_index() const { return poincare ? -1 : elements::set_fast_index(set); }

    // Scaled displacement of a physical state from the expansion centers; the
    // fast variable is wrapped onto the section sheet nearest the center.
    std::array<double, 8> displacement(const std::array<double, 8>& x_physical) const {
        std::array<double, 8> d{};
        for (int i = 0; i < dim; ++i)
            d[static_cast<std::size_t>(i)] =
                x_physical[static_cast<std::size_t>(i)] / scales[static_cast<std::size_t>(i)] -
                center[static_cast<std::size_t>(i)];
        const int f = fast_index();
        if (f >= 0) d[static_cast<std::size_t>(f)] = wrap_pi(d[static_cast<std::size_t>(f)]);
        return d;
    }

    // Evaluate all state components plus time at a scaled displacement.
    void evaluate(const std::array<double, 8>& delta, std::array<double, 8>& x_physical_out,
                  double& dt_seconds_out) const {
        std::span<const double> d(delta.data(), static_cast<std::size_t>(dim));
        for (int i = 0; i < dim; ++i)
            x_physical_out[static_cast<std::size_t>(i)] =
                state[static_cast<std::size_t>(i)].evaluate(d) * scales[static_cast<std::size_t>(i)];
        dt_seconds_out = time.evaluate(d) * time_scale;
    }
};

struct BuildOptions {
    int order = 5;
    double domain_eps = 1e-9;
    ode::IntegratorConfig integrator{};
    // Expansion-center overrides in physical units, keyed by variable index.
    std::vector<std::pair<int, double>> center_overrides;
};

namespace detail {

template <Set S>
std::array<double, 8> pack8(const std::array<double, Traits<S>::dim>& x) {
    std::array<double, 8> out{};
    for (int i = 0; i < Traits<S>::dim; ++i) out[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)];
    return out;
}

} // namespace detail

// Build the stroboscopic map: DA-integrate the reparameterized dynamics over
// one 2*pi advance of the set's fast variable, starting from DA variables
// centered on the (possibly overridden) expansion point.
template <Set S>
TransferMap build_stroboscopic(const typename Traits<S>::State& x0, const ForceModel& fm,
                               const Constants& consts, const BuildOptions& opt = {},
                               const DepartureFrame& frame = {}) {
    static_assert(Traits<S>::fast_index >= 0, "set has no fast variable; use the Poincare builder");
    constexpr int Dim = Traits<S>::dim;
    constexpr int Fast = Traits<S>::fast_index;
    const Scaling sc(consts);
    const auto scales = Traits<S>::scales(sc);
    const auto x0a = Traits<S>::to_array(x0);

    std::array<double, static_cast<std::size_t>(Dim)> center{};
    for (int i = 0; i < Dim; ++i)
        center[static_cast<std::size_t>(i)] =
            x0a[static_cast<std::size_t>(i)] / scales[static_cast<std::size_t>(i)];
    for (const auto& [idx, value] : opt.center_overrides) {
        if (idx < 0 || idx >= Dim) throw ConfigError("center override index out of range");
        center[static_cast<std::size_t>(idx)] = value / scales[static_cast<std::size_t>(idx)];
    }

    auto ctx = da::Context::make(opt.order, Dim);
    std::array<da::Poly, static_cast<std::size_t>(Dim) + 1> y{};
    for (int i = 0; i < Dim; ++i)
        y[static_cast<std::size_t>(i)] = da::Poly::variable(ctx, i, center[static_cast<std::size_t>(i)]);
    y[static_cast<std::size_t>(Dim)] = da::Poly(ctx, 0.0); // elapsed scaled time

    dynamics::ScaledFastSystem<S, da::Poly> sys(fm, sc, frame);
    auto res = ode::integrate(sys, y, 0.0, kTwoPi, opt.integrator);

    TransferMap map;
    map.set = S;
    map.poincare = false;
    map.order = opt.order;
    map.dim = Dim;
    map.mu = consts.mu;
    map.re = consts.re;
    map.time_scale = sc.time;
    map.frame = frame;
    for (int i = 0; i < Dim; ++i) {
        map.scales[static_cast<std::size_t>(i)] = scales[static_cast<std::size_t>(i)];
        map.center[static_cast<std::size_t>(i)] = center[static_cast<std::size_t>(i)];
        map.ref_point[static_cast<std::size_t>(i)] =
            center[static_cast<std::size_t>(i)] * scales[static_cast<std::size_t>(i)];
    }
    map.state.assign(res.y.begin(), res.y.begin() + Dim);
    map.time = res.y[static_cast<std::size_t>(Dim)];
    map.domain = da::estimate_domain(da::PolyMap(map.state), opt.domain_eps);
    (void)Fast;
    return map;
}

// Numeric nodal period of a state on the ascending equatorial section,
// located with the Keplerian period as first guess.
template <Set S>
double nodal_period(const typename Traits<S>::State& x0, const ForceModel& fm, const Constants& consts,
                    const ode::IntegratorConfig& icfg = {}) {
    static_assert(S == Set::Cyl || S == Set::CylHz);
    constexpr int Dim = Traits<S>::dim;
    const Scaling sc(consts);
    const auto scales = Traits<S>::scales(sc);
    const auto x0a = Traits<S>::to_array(x0);
    std::array<double, static_cast<std::size_t>(Dim)> y{};
    for (int i = 0; i < Dim; ++i)
        y[static_cast<std::size_t>(i)] = x0a[static_cast<std::size_t>(i)] / scales[static_cast<std::size_t>(i)];

    const elements::CartesianState cart = elements::to_cartesian(
        AnyState{S, detail::pack8<S>(x0a), {}, 0.0}, consts.mu);
    const double a = -0.5 * consts.mu / elements::specific_energy(cart, consts.mu);
    const double t_kepler = kTwoPi * std::sqrt(a * a * a / consts.mu) / sc.time;

    dynamics::ScaledTimeSystem<S, double> sys(fm, sc);
    auto ev = ode::component_event<static_cast<std::size_t>(Dim)>(2, +1, 1e-12); // scaled z
    auto r = ode::integrate_to_event(sys, y, 0.0, 1.8 * t_kepler, ev, icfg);
    return r.s; // scaled
}

// Build the Poincare map on the ascending z = 0 section for the cylindrical
// sets: propagate with the DA nodal period as extra parameter, solve the
// section condition for the period polynomial by partial inversion, and
// substitute it back.
template <Set S>
TransferMap build_poincare(const typename Traits<S>::State& x0, const ForceModel& fm,
                           const Constants& consts, const BuildOptions& opt = {}) {
    static_assert(S == Set::Cyl || S == Set::CylHz);
    constexpr int Dim = Traits<S>::dim;
    const Scaling sc(consts);
    const auto scales = Traits<S>::scales(sc);
    const auto x0a = Traits<S>::to_array(x0);
    if (std::fabs(x0a[2]) > 1e-9 * consts.re)
        throw SingularityError("build_poincare: expansion point must lie on z = 0");
    if (!(x0a[5] > 0.0))
        throw SingularityError("build_poincare: expansion point must cross ascending");

    const double tn0 = nodal_period<S>(x0, fm, consts, opt.integrator); // scaled

    std::array<double, static_cast<std::size_t>(Dim)> center{};
    for (int i = 0; i < Dim; ++i)
        center[static_cast<std::size_t>(i)] =
            x0a[static_cast<std::size_t>(i)] / scales[static_cast<std::size_t>(i)];
    for (const auto& [idx, value] : opt.center_overrides) {
        if (idx < 0 || idx >= Dim) throw ConfigError("center override index out of range");
        center[static_cast<std::size_t>(idx)] = value / scales[static_cast<std::size_t>(idx)];
    }

    // Variables 0..Dim-1: state displacements; variable Dim: period displacement.
    auto ctx = da::Context::make(opt.order, Dim + 1);
    std::array<da::Poly, static_cast<std::size_t>(Dim)> y{};
    for (int i = 0; i < Dim; ++i)
        y[static_cast<std::size_t>(i)] = da::Poly::variable(ctx, i, center[static_cast<std::size_t>(i)]);
    const da::Poly tn = da::Poly::variable(ctx, Dim, tn0);

    dynamics::ScaledTimeSystem<S, da::Poly> base(fm, sc);
    // d y / d tau = T_n * f(y), tau in [0, 1]
    auto sys = [&](double tau, const std::array<da::Poly, static_cast<std::size_t>(Dim)>& yy) {
        auto d = base(tau, yy);
        for (auto& c : d) c = c * tn;
        return d;
    };
    auto res = ode::integrate(sys, y, 0.0, 1.0, opt.integrator);

    // Solve z_f(delta, delta_T) = 0 for delta_T(delta).
    std::array<int, 1> zvar = {Dim};
    da::PolyMap zmap(std::vector<da::Poly>{res.y[2]});
    da::PolyMap t_tail = da::partial_invert(zmap, std::span<const int>(zvar.data(), 1), 1e-9);

    // Recompose the final state with the period polynomial substituted.
    auto pctx = t_tail.context();
    std::vector<da::Poly> inner;
    inner.reserve(static_cast<std::size_t>(Dim) + 1);
    for (int i = 0; i < Dim; ++i) inner.push_back(da::Poly::variable(pctx, i));
    inner.push_back(t_tail[0]);

    TransferMap map;
    map.set = S;
    map.poincare = true;
    map.order = opt.order;
    map.dim = Dim;
    map.mu = consts.mu;
    map.re = consts.re;
    map.time_scale = sc.time;
    for (int i = 0; i < Dim; ++i) {
        map.scales[static_cast<std::size_t>(i)] = scales[static_cast<std::size_t>(i)];
        map.center[static_cast<std::size_t>(i)] = center[static_cast<std::size_t>(i)];
        map.ref_point[static_cast<std::size_t>(i)] =
            center[static_cast<std::size_t>(i)] * scales[static_cast<std::size_t>(i)];
    }
    map.state.reserve(static_cast<std::size_t>(Dim));
    for (int i = 0; i < Dim; ++i) map.state.push_back(da::compose(res.y[static_cast<std::size_t>(i)], inner));
    map.time = t_tail[0] + tn0;
    map.domain = da::estimate_domain(da::PolyMap(map.state), opt.domain_eps);
    return map;
}

// Runtime-tagged builder.
inline TransferMap build_map(Set set, const AnyState& x0, const ForceModel& fm, const Constants& consts,
                             const BuildOptions& opt = {}) {
    if (x0.set != set) throw ConfigError("build_map: state is in a different element set");
    return elements::dispatch(set, [&](auto tag) -> TransferMap {
        constexpr Set S = decltype(tag)::value;
        std::array<double, Traits<S>::dim> xa{};
        for (int i = 0; i < Traits<S>::dim; ++i) xa[static_cast<std::size_t>(i)] = x0.x[static_cast<std::size_t>(i)];
        if constexpr (S == Set::Cyl || S == Set::CylHz) {
            return build_poincare<S>(Traits<S>::from_array(xa), fm, consts, opt);
        } else if constexpr (S == Set::Ideal) {
            return build_stroboscopic<S>(Traits<S>::from_array(x0.x, x0.frame), fm, consts, opt, x0.frame);
        } else {
            return build_stroboscopic<S>(Traits<S>::from_array(xa), fm, consts, opt);
        }
    });
}

// Domain re-estimation at a different target error.
inline da::DomainEstimate accuracy_domain(const TransferMap& map, double eps) {
    return da::estimate_domain(da::PolyMap(map.state), eps);
}

} // namespace hotm::maps
