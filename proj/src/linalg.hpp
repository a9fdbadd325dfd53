// linalg.hpp — tiny dense 4x4 solve used by the steady-state and low-T
// solvers. Direct elimination with partial pivoting is plenty at this size.

#pragma once

#include <cmath>

#include "strainheat/spectrum.hpp"
#include "strainheat/steady_state.hpp"

namespace strainheat::detail {

// Gaussian elimination with partial pivoting. `scale` sets the singularity
// threshold; pass the largest magnitude of the untouched system.
inline Vec4 solve4(Mat4 a, Vec4 b, double scale) {
    const double tiny = 1e-13 * scale;
    std::array<int, 4> perm = {0, 1, 2, 3};
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r) {
            if (std::fabs(a[perm[r]][col]) > std::fabs(a[perm[pivot]][col])) {
                pivot = r;
            }
        }
        std::swap(perm[col], perm[pivot]);
        const double p = a[perm[col]][col];
        if (!(std::fabs(p) > tiny)) {
            throw SingularGeneratorError(
                "rate matrix is singular beyond normalization "
                "(disconnected level graph)");
        }
        for (int r = col + 1; r < 4; ++r) {
            const double f = a[perm[r]][col] / p;
            if (f == 0.0) continue;
            for (int c = col + 1; c < 4; ++c) a[perm[r]][c] -= f * a[perm[col]][c];
            a[perm[r]][col] = 0.0;
            b[perm[r]] -= f * b[perm[col]];
        }
    }
    Vec4 x{};
    for (int row = 3; row >= 0; --row) {
        double s = b[perm[row]];
        for (int c = row + 1; c < 4; ++c) s -= a[perm[row]][c] * x[c];
        x[row] = s / a[perm[row]][row];
    }
    return x;
}

inline Vec4 mat_vec(const Mat4& m, const Vec4& v) {
    Vec4 out{};
    for (int i = 0; i < 4; ++i) {
        out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2] + m[i][3] * v[3];
    }
    return out;
}

inline double max_abs(const Mat4& m) {
    double s = 0.0;
    for (const auto& row : m)
        for (double v : row) s = std::fmax(s, std::fabs(v));
    return s;
}

inline double inf_norm(const Mat4& m) {
    double n = 0.0;
    for (const auto& row : m) {
        double s = 0.0;
        for (double v : row) s += std::fabs(v);
        n = std::fmax(n, s);
    }
    return n;
}

}  // namespace strainheat::detail
