#pragma once

#include <array>

#include "hotm/constants.hpp"
#include "hotm/dynamics/rhs.hpp"

namespace hotm::dynamics {

// Right-hand side in scaled units with scaled time as independent variable.
// States are scaled component-wise; the physics itself runs in km and
// seconds.
template <Set S, class T>
struct ScaledTimeSystem {
    static constexpr int N = Traits<S>::dim;
    const ForceModel* fm;
    DepartureFrame frame;
    std::array<double, static_cast<std::size_t>(N)> scale;
    double time_scale;

    ScaledTimeSystem(const ForceModel& model, const Scaling& sc, const DepartureFrame& fr = {})
        : fm(&model), frame(fr), time_scale(sc.time) {
        auto s = Traits<S>::scales(sc);
        for (int i = 0; i < N; ++i) scale[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(i)];
    }

    std::array<T, static_cast<std::size_t>(N)> operator()(double, const std::array<T, static_cast<std::size_t>(N)>& y) const {
        std::array<T, static_cast<std::size_t>(N)> x = y;
        for (int i = 0; i < N; ++i) x[static_cast<std::size_t>(i)] *= scale[static_cast<std::size_t>(i)];
        auto d = rhs_time<S>(x, *fm, frame);
        for (int i = 0; i < N; ++i)
            d[static_cast<std::size_t>(i)] *= time_scale / scale[static_cast<std::size_t>(i)];
        return d;
    }
};

// Same dynamics parameterized by the set's fast angular variable, with the
// scaled elapsed time appended as an extra state. Integrating the fast
// variable itself (at unit rate) keeps its perturbed initial value flowing
// through the trigonometry.
template <Set S, class T>
struct ScaledFastSystem {
    static constexpr int Dim = Traits<S>::dim;
    static constexpr int N = Dim + 1;
    static constexpr int Fast = Traits<S>::fast_index;
    static_assert(Fast >= 0, "set has no fast variable");

    const ForceModel* fm;
    DepartureFrame frame;
    std::array<double, static_cast<std::size_t>(Dim)> scale;
    double time_scale;

    ScaledFastSystem(const ForceModel& model, const Scaling& sc, const DepartureFrame& fr = {})
        : fm(&model), frame(fr), time_scale(sc.time) {
        auto s = Traits<S>::scales(sc);
        for (int i = 0; i < Dim; ++i) scale[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(i)];
    }

    std::array<T, static_cast<std::size_t>(N)> operator()(double, const std::array<T, static_cast<std::size_t>(N)>& y) const {
        std::array<T, static_cast<std::size_t>(Dim)> x;
        for (int i = 0; i < Dim; ++i)
            x[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i)] * scale[static_cast<std::size_t>(i)];
        auto dxdt = rhs_time<S>(x, *fm, frame);
        const T& fast_rate = dxdt[static_cast<std::size_t>(Fast)];
        if (!(da::constant_part(fast_rate) > 0.0))
            throw SingularityError("fast-variable rate is not positive along the trajectory");
        const T dt_ds = 1.0 / fast_rate;
        std::array<T, static_cast<std::size_t>(N)> out = y; // shape/context carrier
        for (int i = 0; i < Dim; ++i) {
            if (i == Fast) continue;
            out[static_cast<std::size_t>(i)] =
                dxdt[static_cast<std::size_t>(i)] * dt_ds * (1.0 / scale[static_cast<std::size_t>(i)]);
        }
        out[static_cast<std::size_t>(Fast)] = 0.0 * y[static_cast<std::size_t>(Fast)] + 1.0;
        out[static_cast<std::size_t>(N - 1)] = dt_ds * (1.0 / time_scale);
        return out;
    }
};

} // namespace hotm::dynamics
