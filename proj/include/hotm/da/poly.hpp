#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "hotm/da/context.hpp"
#include "hotm/errors.hpp"

namespace hotm::da {

// Coefficients smaller than this (after multiplications and elementary
// functions) are flushed to exact zero to stop numerically-dead terms from
// spreading through the basis.
inline constexpr double kCoeffFlush = 1e-16;

// A multivariate Taylor polynomial truncated at the context's total degree.
// Values are immutable in spirit: arithmetic returns new polynomials and all
// mutation is function-local, so instances can be shared across threads.
class Poly {
public:
    Poly() = default;

    explicit Poly(ContextPtr ctx) : ctx_(std::move(ctx)), c_(ctx_->size(), 0.0) {}

    Poly(ContextPtr ctx, double constant) : Poly(std::move(ctx)) { c_[0] = constant; }

    // center + delta_index
    static Poly variable(ContextPtr ctx, int index, double center = 0.0) {
        if (index < 0 || index >= ctx->nvars()) throw DaError("variable: index out of range");
        Poly p(std::move(ctx));
        p.c_[0] = center;
        Exponents e{};
        e[static_cast<std::size_t>(index)] = 1;
        p.c_[p.ctx_->index_of(e)] = 1.0;
        return p;
    }

    const ContextPtr& context() const { return ctx_; }
    bool valid() const { return static_cast<bool>(ctx_); }
    std::size_t size() const { return c_.size(); }

    double constant_part() const { return c_[0]; }
    double coefficient(std::size_t i) const { return c_[i]; }
    double& coefficient(std::size_t i) { return c_[i]; }

    double coefficient(const Exponents& e) const { return c_[ctx_->index_of(e)]; }

    // --- arithmetic ---------------------------------------------------------

    Poly& operator+=(const Poly& o) {
        check_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        check_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Poly& operator+=(double s) { c_[0] += s; return *this; }
    Poly& operator-=(double s) { c_[0] -= s; return *this; }
    Poly& operator*=(double s) {
        for (double& v : c_) v *= s;
        return *this;
    }
    Poly& operator/=(double s) { return (*this) *= (1.0 / s); }

    friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
    friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }
    friend Poly operator+(Poly a, double s) { a += s; return a; }
    friend Poly operator+(double s, Poly a) { a += s; return a; }
    friend Poly operator-(Poly a, double s) { a -= s; return a; }
    friend Poly operator-(double s, const Poly& a) {
        Poly r = -a;
        r += s;
        return r;
    }
    friend Poly operator*(Poly a, double s) { a *= s; return a; }
    friend Poly operator*(double s, Poly a) { a *= s; return a; }
    friend Poly operator/(Poly a, double s) { a /= s; return a; }
    friend Poly operator-(const Poly& a) {
        Poly r = a;
        for (double& v : r.c_) v = -v;
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_same(b);
        Poly r(a.ctx_);
        // Walk the sparser factor on the outside; its pairing rows list every
        // admissible partner with the precomputed product index.
        const Poly& u = (a.nonzeros() <= b.nonzeros()) ? a : b;
        const Poly& v = (&u == &a) ? b : a;
        const auto& pairs = a.ctx_->pairs();
        const auto& begin = a.ctx_->pair_begin();
        double* out = r.c_.data();
        const double* vc = v.c_.data();
        for (std::size_t ia = 0; ia < u.c_.size(); ++ia) {
            const double ca = u.c_[ia];
            if (ca == 0.0) continue;
            const std::uint32_t e = begin[ia + 1];
            for (std::uint32_t t = begin[ia]; t < e; ++t) {
                const auto& p = pairs[t];
                out[p.ir] += ca * vc[p.ib];
            }
        }
        r.flush();
        return r;
    }

    friend Poly operator/(const Poly& a, const Poly& b) { return a * reciprocal(b); }
    friend Poly operator/(double s, const Poly& b) { return reciprocal(b) * s; }

    Poly& operator*=(const Poly& o) { *this = (*this) * o; return *this; }
    Poly& operator/=(const Poly& o) { *this = (*this) / o; return *this; }

    // --- calculus -----------------------------------------------------------

    Poly derived(int var) const {
        check_var(var);
        Poly r(ctx_);
        for (const auto& t : ctx_->derive_table(var)) r.c_[t.dst] += t.factor * c_[t.src];
        return r;
    }

    // Antiderivative with zero constant of integration; terms that would
    // exceed the truncation order are dropped.
    Poly antiderived(int var) const {
        check_var(var);
        Poly r(ctx_);
        for (const auto& t : ctx_->antiderive_table(var)) r.c_[t.dst] += t.factor * c_[t.src];
        return r;
    }

    // --- evaluation ---------------------------------------------------------

    double evaluate(std::span<const double> delta) const {
        if (static_cast<int>(delta.size()) != ctx_->nvars()) throw DaError("evaluate: bad displacement size");
        double powers[kMaxVars][64];
        const int k = ctx_->order();
        for (int v = 0; v < ctx_->nvars(); ++v) {
            powers[v][0] = 1.0;
            for (int p = 1; p <= k; ++p) powers[v][p] = powers[v][p - 1] * delta[static_cast<std::size_t>(v)];
        }
        double s = 0.0;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0.0) continue;
            double m = c_[i];
            const auto& e = ctx_->exponents(i);
            for (int v = 0; v < ctx_->nvars(); ++v)
                if (e[static_cast<std::size_t>(v)]) m *= powers[v][e[static_cast<std::size_t>(v)]];
            s += m;
        }
        return s;
    }

    // 1-norm of the coefficients of each total degree 0..k.
    std::vector<double> order_norms() const {
        std::vector<double> s(static_cast<std::size_t>(ctx_->order()) + 1, 0.0);
        for (std::size_t i = 0; i < c_.size(); ++i)
            s[static_cast<std::size_t>(ctx_->degree(i))] += std::fabs(c_[i]);
        return s;
    }

    // Same, restricted to monomials that involve the given variable.
    std::vector<double> order_norms_for_variable(int var) const {
        check_var(var);
        std::vector<double> s(static_cast<std::size_t>(ctx_->order()) + 1, 0.0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (ctx_->exponents(i)[static_cast<std::size_t>(var)] == 0) continue;
            s[static_cast<std::size_t>(ctx_->degree(i))] += std::fabs(c_[i]);
        }
        return s;
    }

    std::size_t nonzeros() const {
        std::size_t n = 0;
        for (double v : c_)
            if (v != 0.0) ++n;
        return n;
    }

    double max_abs_coefficient() const {
        double m = 0.0;
        for (double v : c_) m = std::max(m, std::fabs(v));
        return m;
    }

    void flush() {
        for (double& v : c_)
            if (std::fabs(v) < kCoeffFlush) v = 0.0;
    }

    // --- elementary functions ------------------------------------------------
    // All are computed as the univariate Taylor series of f about the constant
    // part, composed with the nilpotent part by Horner's scheme; exact through
    // the truncation order.

    friend Poly horner_series(const Poly& a, std::span<const double> coeff) {
        Poly w = a;
        w.c_[0] = 0.0;
        Poly r(a.ctx_, coeff[coeff.size() - 1]);
        for (int j = static_cast<int>(coeff.size()) - 2; j >= 0; --j) {
            r = r * w;
            r += coeff[static_cast<std::size_t>(j)];
        }
        r.flush();
        return r;
    }

    friend Poly sin(const Poly& a) {
        const int k = a.ctx_->order();
        std::vector<double> c(static_cast<std::size_t>(k) + 1);
        double fact = 1.0;
        for (int j = 0; j <= k; ++j) {
            if (j > 0) fact *= j;
            c[static_cast<std::size_t>(j)] = std::sin(a.c_[0] + j * 1.5707963267948966) / fact;
        }
        return horner_series(a, c);
    }

    friend Poly cos(const Poly& a) {
        const int k = a.ctx_->order();
        std::vector<double> c(static_cast<std::size_t>(k) + 1);
        double fact = 1.0;
        for (int j = 0; j <= k; ++j) {
            if (j > 0) fact *= j;
            c[static_cast<std::size_t>(j)] = std::cos(a.c_[0] + j * 1.5707963267948966) / fact;
        }
        return horner_series(a, c);
    }

    friend Poly exp(const Poly& a) {
        const int k = a.ctx_->order();
        std::vector<double> c(static_cast<std::size_t>(k) + 1);
        const double e0 = std::exp(a.c_[0]);
        double fact = 1.0;
        for (int j = 0; j <= k; ++j) {
            if (j > 0) fact *= j;
            c[static_cast<std::size_t>(j)] = e0 / fact;
        }
        return horner_series(a, c);
    }

    friend Poly log(const Poly& a) {
        if (!(a.c_[0] > 0.0)) throw DaError("log: constant part must be positive");
        const int k = a.ctx_->order();
        std::vector<double> c(static_cast<std::size_t>(k) + 1);
        c[0] = std::log(a.c_[0]);
        double ip = 1.0; // a0^-j accumulator
        for (int j = 1; j <= k; ++j) {
            ip /= a.c_[0];
            c[static_cast<std::size_t>(j)] = ((j % 2) ? 1.0 : -1.0) * ip / j;
        }
        return horner_series(a, c);
    }

    friend Poly sqrt(const Poly& a) {
        if (!(a.c_[0] > 0.0)) throw DaError("sqrt: constant part must be positive");
        const int k = a.ctx_->order();
        std::vector<double> c(static_cast<std::size_t>(k) + 1);
        const double s0 = std::sqrt(a.c_[0]);
        c[0] = s0;
        double binom = 1.0, ip = 1.0;
        for (int j = 1; j <= k; ++j) {
            binom *= (0.5 - (j - 1)) / j;
            ip /= a.c_[0];
            c[static_cast<std::size_t>(j)] = s0 * binom * ip;
        }
        return horner_series(a, c);
    }

    friend Poly reciprocal(const Poly& a) {
        if (a.c_[0] == 0.0) throw DaError("reciprocal: zero constant part");
        const int k = a.ctx_->order();
        std::vector<double> c(static_cast<std::size_t>(k) + 1);
        double v = 1.0 / a.c_[0];
        for (int j = 0; j <= k; ++j) {
            c[static_cast<std::size_t>(j)] = v;
            v *= -1.0 / a.c_[0];
        }
        return horner_series(a, c);
    }

    // Integer power by binary exponentiation (exact in the algebra).
    friend Poly pown(const Poly& a, int n) {
        if (n < 0) return pown(reciprocal(a), -n);
        Poly r(a.ctx_, 1.0);
        Poly base = a;
        int e = n;
        while (e > 0) {
            if (e & 1) r = r * base;
            base = (e >>= 1) ? base * base : base;
        }
        return r;
    }

    friend Poly pow(const Poly& a, double alpha) {
        if (!(a.c_[0] > 0.0)) throw DaError("pow: constant part must be positive");
        const int k = a.ctx_->order();
        std::vector<double> c(static_cast<std::size_t>(k) + 1);
        double coeff = std::pow(a.c_[0], alpha);
        for (int j = 0; j <= k; ++j) {
            c[static_cast<std::size_t>(j)] = coeff;
            coeff *= (alpha - j) / ((j + 1) * a.c_[0]);
        }
        return horner_series(a, c);
    }

    friend Poly atan(const Poly& a) {
        // atan(a) = atan(a0) + atan(t), t = (a - a0) / (1 + a*a0); t has zero
        // constant part so the Maclaurin series applies.
        const double a0 = a.c_[0];
        Poly t = (a - a0) / (1.0 + a * a0);
        const int k = a.ctx_->order();
        std::vector<double> c(static_cast<std::size_t>(k) + 1, 0.0);
        for (int j = 1; j <= k; j += 2) c[static_cast<std::size_t>(j)] = ((j / 2) % 2 ? -1.0 : 1.0) / j;
        Poly r = horner_series(t, c);
        r += std::atan(a0);
        return r;
    }

    friend Poly atan2(const Poly& y, const Poly& x) {
        y.check_same(x);
        const double x0 = x.c_[0], y0 = y.c_[0];
        if (x0 == 0.0 && y0 == 0.0) throw DaError("atan2: both constant parts zero");
        // Local rotation identity: atan2(y,x) = atan2(y0,x0) + atan(u) with
        // u = (y*x0 - x*y0) / (x*x0 + y*y0); u(0) = 0 and the denominator's
        // constant part is x0^2 + y0^2 > 0.
        Poly u = (y * x0 - x * y0) / (x * x0 + y * y0);
        const int k = y.ctx_->order();
        std::vector<double> c(static_cast<std::size_t>(k) + 1, 0.0);
        for (int j = 1; j <= k; j += 2) c[static_cast<std::size_t>(j)] = ((j / 2) % 2 ? -1.0 : 1.0) / j;
        Poly r = horner_series(u, c);
        r += std::atan2(y0, x0);
        return r;
    }

private:
    void check_same(const Poly& o) const {
        if (ctx_.get() != o.ctx_.get()) throw DaError("polynomial context mismatch");
    }
    void check_var(int var) const {
        if (var < 0 || var >= ctx_->nvars()) throw DaError("variable index out of range");
    }

    ContextPtr ctx_;
    std::vector<double> c_;
};

inline double constant_part(const Poly& p) { return p.constant_part(); }
inline double constant_part(double x) { return x; }

} // namespace hotm::da
