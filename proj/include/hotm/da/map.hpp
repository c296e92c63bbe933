#pragma once

#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "hotm/da/poly.hpp"
#include "hotm/linalg.hpp"

namespace hotm::da {

// An ordered vector of polynomials over one shared context.
class PolyMap {
public:
    PolyMap() = default;
    explicit PolyMap(std::vector<Poly> comps) : comps_(std::move(comps)) {
        for (const Poly& p : comps_)
            if (p.context().get() != comps_.front().context().get())
                throw DaError("PolyMap: components must share one context");
    }

    static PolyMap identity(const ContextPtr& ctx) {
        std::vector<Poly> c;
        c.reserve(static_cast<std::size_t>(ctx->nvars()));
        for (int v = 0; v < ctx->nvars(); ++v) c.push_back(Poly::variable(ctx, v));
        return PolyMap(std::move(c));
    }

    std::size_t dim() const { return comps_.size(); }
    const Poly& operator[](std::size_t i) const { return comps_[i]; }
    Poly& operator[](std::size_t i) { return comps_[i]; }
    const std::vector<Poly>& components() const { return comps_; }
    const ContextPtr& context() const { return comps_.front().context(); }

    std::vector<double> evaluate(std::span<const double> delta) const {
        std::vector<double> out(comps_.size());
        for (std::size_t i = 0; i < comps_.size(); ++i) out[i] = comps_[i].evaluate(delta);
        return out;
    }

private:
    std::vector<Poly> comps_;
};

namespace detail {

// Powers cache inner[i]^e for e = 0..k, built lazily per component.
class PowerCache {
public:
    PowerCache(const std::vector<Poly>& inner, int order)
        : inner_(inner), order_(order), pw_(inner.size()) {}

    const Poly& get(std::size_t var, int e) {
        auto& col = pw_[var];
        if (col.empty()) {
            col.reserve(static_cast<std::size_t>(order_) + 1);
            col.push_back(Poly(inner_[var].context(), 1.0));
            col.push_back(inner_[var]);
        }
        while (static_cast<int>(col.size()) <= e) col.push_back(col.back() * inner_[var]);
        return col[static_cast<std::size_t>(e)];
    }

private:
    const std::vector<Poly>& inner_;
    int order_;
    std::vector<std::vector<Poly>> pw_;
};

} // namespace detail

// Substitute inner components for the outer map's variables. The inner
// components must have zero constant parts (they stand for displacements);
// the result lives in the inner context.
inline Poly compose(const Poly& outer, const std::vector<Poly>& inner) {
    const auto& octx = outer.context();
    if (static_cast<int>(inner.size()) != octx->nvars())
        throw DaError("compose: inner component count must equal outer variable count");
    const ContextPtr& ictx = inner.front().context();
    for (const Poly& p : inner) {
        if (p.context().get() != ictx.get()) throw DaError("compose: inner context mismatch");
        if (p.constant_part() != 0.0) throw DaError("compose: inner constant parts must vanish");
    }
    detail::PowerCache cache(inner, ictx->order());
    Poly result(ictx, 0.0);
    for (std::size_t m = 0; m < outer.size(); ++m) {
        const double c = outer.coefficient(m);
        if (c == 0.0) continue;
        const auto& e = octx->exponents(m);
        Poly term(ictx, c);
        bool any = false;
        for (int v = 0; v < octx->nvars(); ++v) {
            const int p = e[static_cast<std::size_t>(v)];
            if (p == 0) continue;
            term = term * cache.get(static_cast<std::size_t>(v), p);
            any = true;
        }
        if (!any) {
            result += c;
        } else {
            result += term;
        }
    }
    return result;
}

inline PolyMap compose(const PolyMap& outer, const PolyMap& inner) {
    std::vector<Poly> out;
    out.reserve(outer.dim());
    for (std::size_t i = 0; i < outer.dim(); ++i) out.push_back(compose(outer[i], inner.components()));
    return PolyMap(std::move(out));
}

// Solve the parametric implicit system c(x, p) = 0 for x as a Taylor
// polynomial in p. The variables listed in x_indices play the role of x
// (their count must equal the component count of c); the remaining
// variables are the parameters, kept in their original relative order.
// Requires c's constant parts to vanish (the expansion point solves the
// system) and a nonsingular Jacobian dc/dx there. The returned map has one
// component per x variable over a fresh parameter-only context.
inline PolyMap partial_invert(const PolyMap& c, std::span<const int> x_indices,
                              double residual_tol = 1e-10) {
    const ContextPtr& ctx = c.context();
    const int n = static_cast<int>(x_indices.size());
    const int m = ctx->nvars() - n;
    if (static_cast<std::size_t>(n) != c.dim())
        throw DaError("partial_invert: component count must match x variable count");
    if (m < 1) throw DaError("partial_invert: no parameter variables left");

    std::vector<bool> is_x(static_cast<std::size_t>(ctx->nvars()), false);
    for (int xi : x_indices) {
        if (xi < 0 || xi >= ctx->nvars() || is_x[static_cast<std::size_t>(xi)])
            throw DaError("partial_invert: bad x variable list");
        is_x[static_cast<std::size_t>(xi)] = true;
    }
    for (std::size_t i = 0; i < c.dim(); ++i)
        if (std::fabs(c[i].constant_part()) > residual_tol)
            throw DaError("partial_invert: expansion point does not solve the system");

    // Jacobian dc/dx from the linear coefficients.
    std::vector<double> jac(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Exponents e{};
            e[static_cast<std::size_t>(x_indices[static_cast<std::size_t>(j)])] = 1;
            jac[static_cast<std::size_t>(i) * n + j] = c[static_cast<std::size_t>(i)].coefficient(e);
        }

    ContextPtr pctx = Context::make(ctx->order(), m);

    // Inner substitution [x := current iterate, p := identity], refined by
    // x <- x - L^-1 * c(x(p), p); each sweep gains one order.
    std::vector<Poly> inner;
    inner.reserve(static_cast<std::size_t>(ctx->nvars()));
    std::vector<int> x_slot(static_cast<std::size_t>(ctx->nvars()), -1);
    {
        int pv = 0, xv = 0;
        for (int v = 0; v < ctx->nvars(); ++v) {
            if (is_x[static_cast<std::size_t>(v)]) {
                inner.push_back(Poly(pctx, 0.0));
                x_slot[static_cast<std::size_t>(v)] = xv++;
            } else {
                inner.push_back(Poly::variable(pctx, pv++));
            }
        }
    }

    std::vector<Poly> x_cur(static_cast<std::size_t>(n), Poly(pctx, 0.0));
    for (int sweep = 0; sweep < ctx->order(); ++sweep) {
        for (int v = 0; v < ctx->nvars(); ++v)
            if (x_slot[static_cast<std::size_t>(v)] >= 0)
                inner[static_cast<std::size_t>(v)] = x_cur[static_cast<std::size_t>(x_slot[static_cast<std::size_t>(v)])];
        std::vector<Poly> resid;
        resid.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) resid.push_back(compose(c[static_cast<std::size_t>(i)], inner));
        // x_cur -= L^-1 resid, coefficient-wise.
        const std::size_t nm = pctx->size();
        std::vector<double> rhs(static_cast<std::size_t>(n) * nm);
        for (int i = 0; i < n; ++i)
            for (std::size_t q = 0; q < nm; ++q)
                rhs[q * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] =
                    resid[static_cast<std::size_t>(i)].coefficient(q);
        // Solve L * y = resid for every monomial column.
        for (std::size_t q = 0; q < nm; ++q) {
            std::vector<double> a = jac;
            solve_dense(n, a.data(), rhs.data() + q * static_cast<std::size_t>(n), 1);
        }
        for (int i = 0; i < n; ++i)
            for (std::size_t q = 0; q < nm; ++q)
                x_cur[static_cast<std::size_t>(i)].coefficient(q) -=
                    rhs[q * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)];
    }
    for (Poly& p : x_cur) p.flush();
    return PolyMap(std::move(x_cur));
}

inline PolyMap partial_invert(const PolyMap& c, int n_x, double residual_tol = 1e-10) {
    std::vector<int> idx(static_cast<std::size_t>(n_x));
    for (int i = 0; i < n_x; ++i) idx[static_cast<std::size_t>(i)] = i;
    return partial_invert(c, idx, residual_tol);
}

// One line per nonzero monomial: "e0 e1 ... e_{v-1} | coefficient" in graded
// lexicographic order with 17 significant digits (value-exact reload).
inline std::string dump(const Poly& p) {
    std::string out;
    char buf[64];
    const auto& ctx = p.context();
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.coefficient(i) == 0.0) continue;
        const auto& e = ctx->exponents(i);
        for (int v = 0; v < ctx->nvars(); ++v) {
            std::snprintf(buf, sizeof buf, "%d ", int(e[static_cast<std::size_t>(v)]));
            out += buf;
        }
        std::snprintf(buf, sizeof buf, "| %.16e\n", p.coefficient(i));
        out += buf;
    }
    return out;
}

inline std::string dump(const PolyMap& m) {
    std::string out;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        out += "component " + std::to_string(i) + "\n";
        out += dump(m[i]);
    }
    return out;
}

} // namespace hotm::da
