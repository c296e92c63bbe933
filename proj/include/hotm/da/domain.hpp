#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "hotm/da/map.hpp"

namespace hotm::da {

// Displacement radii within which a truncated expansion keeps its estimated
// truncation error below a target. Radii are per variable, in the units of
// the expansion variables; infinity marks directions the polynomial depends
// on at most linearly.
struct DomainEstimate {
    std::vector<double> radii;
    double eps = 0.0;

    double min_radius() const {
        double r = std::numeric_limits<double>::infinity();
        for (double v : radii) r = std::min(r, v);
        return r;
    }
};

namespace detail {

// Fit log S_j = alpha + beta*j over the orders with nonzero norm and solve
//   sum_{j>k} exp(alpha + beta j) r^j <= eps
// for r. With q = exp(beta)*r the tail is A q^{k+1} / (1 - q), monotone in q
// on (0,1), so bisection on q suffices.
inline double radius_from_order_norms(const std::vector<double>& s, double eps) {
    const int k = static_cast<int>(s.size()) - 1;
    std::vector<std::pair<int, double>> pts;
    for (int j = 1; j <= k; ++j)
        if (s[static_cast<std::size_t>(j)] > 0.0) pts.emplace_back(j, std::log(s[static_cast<std::size_t>(j)]));
    bool nonlinear = false;
    for (int j = 2; j <= k; ++j)
        if (s[static_cast<std::size_t>(j)] > 0.0) nonlinear = true;
    if (!nonlinear) return std::numeric_limits<double>::infinity();

    double alpha, beta;
    if (pts.size() == 1) {
        alpha = pts[0].second;
        beta = 0.0;
    } else {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (auto& [j, y] : pts) {
            sx += j;
            sy += y;
            sxx += double(j) * j;
            sxy += j * y;
        }
        const double nn = double(pts.size());
        beta = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
        alpha = (sy - beta * sx) / nn;
    }

    const double a = std::exp(alpha);
    auto tail = [&](double q) { return a * std::pow(q, k + 1) / (1.0 - q); };
    double lo = 0.0, hi = 1.0 - 1e-12;
    if (tail(hi) <= eps) return std::numeric_limits<double>::infinity();
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (tail(mid) <= eps ? lo : hi) = mid;
    }
    return lo / std::exp(beta);
}

} // namespace detail

// Radius per variable for one polynomial: the tail is extrapolated from the
// order-wise 1-norms of the monomials that involve that variable.
inline std::vector<double> estimate_domain_radii(const Poly& p, double eps) {
    std::vector<double> r(static_cast<std::size_t>(p.context()->nvars()));
    for (int v = 0; v < p.context()->nvars(); ++v)
        r[static_cast<std::size_t>(v)] = detail::radius_from_order_norms(p.order_norms_for_variable(v), eps);
    return r;
}

// Component-wise minimum over a map.
inline DomainEstimate estimate_domain(const PolyMap& m, double eps) {
    if (m.context()->order() < 3) throw DaError("estimate_domain: order must be >= 3");
    DomainEstimate d;
    d.eps = eps;
    d.radii.assign(static_cast<std::size_t>(m.context()->nvars()), std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < m.dim(); ++i) {
        auto r = estimate_domain_radii(m[i], eps);
        for (std::size_t v = 0; v < r.size(); ++v) d.radii[v] = std::min(d.radii[v], r[v]);
    }
    return d;
}

inline DomainEstimate estimate_domain(const Poly& p, double eps) {
    if (p.context()->order() < 3) throw DaError("estimate_domain: order must be >= 3");
    DomainEstimate d;
    d.eps = eps;
    d.radii = estimate_domain_radii(p, eps);
    return d;
}

} // namespace hotm::da
