#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "hotm/errors.hpp"

namespace hotm {

// Minimal fixed-size vector/matrix helpers, generic over the scalar type so
// they work for both doubles and DA polynomials.

template <class T>
struct Vec3 {
    T x, y, z;
};

template <class T>
Vec3<T> operator+(const Vec3<T>& a, const Vec3<T>& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
}

template <class T>
Vec3<T> operator-(const Vec3<T>& a, const Vec3<T>& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
}

template <class T, class S>
Vec3<T> operator*(const S& s, const Vec3<T>& v) {
    return {s * v.x, s * v.y, s * v.z};
}

template <class T>
T dot(const Vec3<T>& a, const Vec3<T>& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <class T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

template <class T>
T norm(const Vec3<T>& a) {
    using std::sqrt;
    return sqrt(dot(a, a));
}

// 3x3 rotation matrix, row-major.
template <class T>
struct Mat3 {
    std::array<T, 9> m;

    static Mat3 identity() { return {{T(1), T(0), T(0), T(0), T(1), T(0), T(0), T(0), T(1)}}; }

    // Active rotations mapping frame coordinates to the parent frame.
    static Mat3 rot_z(const T& a) {
        using std::sin, std::cos;
        T c = cos(a), s = sin(a);
        return {{c, -s, T(0), s, c, T(0), T(0), T(0), T(1)}};
    }
    static Mat3 rot_x(const T& a) {
        using std::sin, std::cos;
        T c = cos(a), s = sin(a);
        return {{T(1), T(0), T(0), T(0), c, -s, T(0), s, c}};
    }

    Vec3<T> operator*(const Vec3<T>& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                T s = m[3 * i] * o.m[j] + m[3 * i + 1] * o.m[3 + j] + m[3 * i + 2] * o.m[6 + j];
                r.m[3 * i + j] = s;
            }
        return r;
    }

    Mat3 transposed() const {
        return {{m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]}};
    }

    Vec3<T> transposed_times(const Vec3<T>& v) const {
        return {m[0] * v.x + m[3] * v.y + m[6] * v.z,
                m[1] * v.x + m[4] * v.y + m[7] * v.z,
                m[2] * v.x + m[5] * v.y + m[8] * v.z};
    }
};

// Dense in-place Gaussian elimination with partial pivoting for the small
// systems that appear in map inversion and Newton steps (n <= 8).
// a is row-major n x n, b holds nrhs columns of length n stacked column-wise.
inline void solve_dense(int n, double* a, double* b, int nrhs = 1) {
    constexpr double kPivotTol = 1e-300;
    std::array<int, 8> perm{};
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::fabs(a[perm[col] * n + col]);
        for (int r = col + 1; r < n; ++r) {
            double v = std::fabs(a[perm[r] * n + col]);
            if (v > best) { best = v; piv = r; }
        }
        if (best < kPivotTol) throw DaError("solve_dense: singular matrix");
        std::swap(perm[col], perm[piv]);
        const int prow = perm[col];
        for (int r = col + 1; r < n; ++r) {
            const int row = perm[r];
            const double f = a[row * n + col] / a[prow * n + col];
            a[row * n + col] = 0.0;
            for (int c = col + 1; c < n; ++c) a[row * n + c] -= f * a[prow * n + c];
            for (int k = 0; k < nrhs; ++k) b[k * n + row] -= f * b[k * n + prow];
        }
    }
    for (int k = 0; k < nrhs; ++k) {
        std::array<double, 8> x{};
        for (int i = n - 1; i >= 0; --i) {
            const int row = perm[i];
            double s = b[k * n + row];
            for (int c = i + 1; c < n; ++c) s -= a[row * n + c] * x[c];
            x[i] = s / a[row * n + i];
        }
        for (int i = 0; i < n; ++i) b[k * n + i] = x[i];
    }
}

} // namespace hotm
