#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "hotm/errors.hpp"

namespace hotm::da {

// Maximum number of independent variables a context supports. Eight covers
// the largest element set plus an extra map parameter.
inline constexpr int kMaxVars = 9;

using Exponents = std::array<std::uint8_t, kMaxVars>;

// Shared immutable description of a truncated polynomial algebra: the
// monomial basis of all exponent tuples with total degree <= order over
// nvars variables, in graded lexicographic order, plus the index tables
// that make multiplication and differentiation table-driven.
//
// Contexts are built once and shared read-only; every operation on
// polynomials of this context is thread-safe.
class Context {
public:
    Context(int order, int nvars) : order_(order), nvars_(nvars) {
        if (order < 1) throw DaError("Context: order must be >= 1");
        if (nvars < 1 || nvars > kMaxVars) throw DaError("Context: bad variable count");
        enumerate_monomials();
        build_index();
        build_multiplication_table();
        build_derivative_tables();
    }

    int order() const { return order_; }
    int nvars() const { return nvars_; }
    std::size_t size() const { return exps_.size(); }

    const Exponents& exponents(std::size_t i) const { return exps_[i]; }
    int degree(std::size_t i) const { return deg_[i]; }

    // First monomial index of each total degree; degree d occupies
    // [degree_begin(d), degree_begin(d+1)).
    std::size_t degree_begin(int d) const { return deg_begin_[static_cast<std::size_t>(d)]; }

    std::size_t index_of(const Exponents& e) const {
        auto it = index_.find(pack(e));
        if (it == index_.end()) throw DaError("Context: exponent tuple not in basis");
        return it->second;
    }

    // Multiplication pairing grouped by left factor: for each monomial ia,
    // pairs_ of (ib, ir) spans [pair_begin_[ia], pair_begin_[ia+1]).
    struct Pair {
        std::uint32_t ib;
        std::uint32_t ir;
    };
    const std::vector<Pair>& pairs() const { return pairs_; }
    const std::vector<std::uint32_t>& pair_begin() const { return pair_begin_; }

    struct DerivEntry {
        std::uint32_t src;
        std::uint32_t dst;
        double factor;
    };
    const std::vector<DerivEntry>& derive_table(int var) const { return derive_[static_cast<std::size_t>(var)]; }
    const std::vector<DerivEntry>& antiderive_table(int var) const { return antiderive_[static_cast<std::size_t>(var)]; }

    static std::shared_ptr<const Context> make(int order, int nvars) {
        return std::make_shared<const Context>(order, nvars);
    }

private:
    static std::uint64_t pack(const Exponents& e) {
        std::uint64_t k = 0;
        for (int v = 0; v < kMaxVars - 1; ++v) k = (k << 7) | e[static_cast<std::size_t>(v)];
        return (k << 7) | e[kMaxVars - 1];
    }

    void enumerate_monomials() {
        Exponents e{};
        recurse(e, 0, 0);
        std::sort(exps_.begin(), exps_.end(), [this](const Exponents& a, const Exponents& b) {
            int da = 0, db = 0;
            for (int v = 0; v < nvars_; ++v) {
                da += a[static_cast<std::size_t>(v)];
                db += b[static_cast<std::size_t>(v)];
            }
            if (da != db) return da < db;
            return a > b; // within a degree: lexicographic, leading variable first
        });
        deg_.resize(exps_.size());
        deg_begin_.assign(static_cast<std::size_t>(order_) + 2, 0);
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            int d = 0;
            for (int v = 0; v < nvars_; ++v) d += exps_[i][static_cast<std::size_t>(v)];
            deg_[i] = d;
        }
        for (int d = 0, i = 0; d <= order_ + 1; ++d) {
            while (i < static_cast<int>(exps_.size()) && deg_[static_cast<std::size_t>(i)] < d) ++i;
            deg_begin_[static_cast<std::size_t>(d)] = static_cast<std::size_t>(i);
        }
    }

    void recurse(Exponents& e, int var, int used) {
        if (var == nvars_) {
            exps_.push_back(e);
            return;
        }
        for (int p = 0; p + used <= order_; ++p) {
            e[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(p);
            recurse(e, var + 1, used + p);
        }
        e[static_cast<std::size_t>(var)] = 0;
    }

    void build_index() {
        index_.reserve(exps_.size() * 2);
        for (std::size_t i = 0; i < exps_.size(); ++i) index_.emplace(pack(exps_[i]), i);
    }

    void build_multiplication_table() {
        pair_begin_.assign(exps_.size() + 1, 0);
        for (std::size_t ia = 0; ia < exps_.size(); ++ia) {
            pair_begin_[ia] = static_cast<std::uint32_t>(pairs_.size());
            const int da = deg_[ia];
            const std::size_t blimit = degree_begin(order_ - da + 1);
            for (std::size_t ib = 0; ib < blimit; ++ib) {
                Exponents sum{};
                for (int v = 0; v < nvars_; ++v)
                    sum[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(
                        exps_[ia][static_cast<std::size_t>(v)] + exps_[ib][static_cast<std::size_t>(v)]);
                pairs_.push_back({static_cast<std::uint32_t>(ib), static_cast<std::uint32_t>(index_of(sum))});
            }
        }
        pair_begin_[exps_.size()] = static_cast<std::uint32_t>(pairs_.size());
    }

    void build_derivative_tables() {
        derive_.resize(static_cast<std::size_t>(nvars_));
        antiderive_.resize(static_cast<std::size_t>(nvars_));
        for (int v = 0; v < nvars_; ++v) {
            for (std::size_t i = 0; i < exps_.size(); ++i) {
                const int p = exps_[i][static_cast<std::size_t>(v)];
                if (p > 0) {
                    Exponents e = exps_[i];
                    e[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(p - 1);
                    derive_[static_cast<std::size_t>(v)].push_back(
                        {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(index_of(e)), double(p)});
                }
                if (deg_[i] < order_) {
                    Exponents e = exps_[i];
                    e[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(p + 1);
                    antiderive_[static_cast<std::size_t>(v)].push_back(
                        {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(index_of(e)), 1.0 / double(p + 1)});
                }
            }
        }
    }

    int order_;
    int nvars_;
    std::vector<Exponents> exps_;
    std::vector<int> deg_;
    std::vector<std::size_t> deg_begin_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
    std::vector<Pair> pairs_;
    std::vector<std::uint32_t> pair_begin_;
    std::vector<std::vector<DerivEntry>> derive_;
    std::vector<std::vector<DerivEntry>> antiderive_;
};

using ContextPtr = std::shared_ptr<const Context>;

} // namespace hotm::da
