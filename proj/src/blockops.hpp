#pragma once

// Dense row-major operations on nb x nb blocks (nb <= 12).

#include <algorithm>
#include <cmath>
#include <utility>

namespace isc::blk {

inline constexpr int kMaxBlock = 12;

// c -= a * b
inline void gemm_sub(double* c, const double* a, const double* b, int n)
{
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const double aik = a[i * n + k];
            if (aik == 0.0) continue;
            const double* bk = b + k * n;
            double* ci = c + i * n;
            for (int j = 0; j < n; ++j) ci[j] -= aik * bk[j];
        }
}

// c = a * b
inline void gemm(double* c, const double* a, const double* b, int n)
{
    for (int q = 0; q < n * n; ++q) c[q] = 0.0;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const double aik = a[i * n + k];
            const double* bk = b + k * n;
            double* ci = c + i * n;
            for (int j = 0; j < n; ++j) ci[j] += aik * bk[j];
        }
}

// y -= a * x
inline void gemv_sub(double* y, const double* a, const double* x, int n)
{
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += a[i * n + j] * x[j];
        y[i] -= s;
    }
}

// y = a * x
inline void gemv(double* y, const double* a, const double* x, int n)
{
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += a[i * n + j] * x[j];
        y[i] = s;
    }
}

// Gauss-Jordan inverse with partial pivoting. Returns the failing column,
// or -1 on success. A pivot is rejected below rel_tol times the largest
// entry of the block.
// Scaled partial pivoting: the pivot for column k is the row maximising
// |w(i,k)| / rowmax(i), where rowmax is taken from the original block. A
// pivot is usable when that ratio exceeds rel_tol. Returns the row or -1.
inline int pick_pivot(const double* w, const double* rowmax, int n, int k, double rel_tol)
{
    int p = -1;
    double best = rel_tol;
    for (int i = k; i < n; ++i) {
        if (!(rowmax[i] > 0.0)) continue;
        const double r = std::abs(w[i * n + k]) / rowmax[i];
        if (r > best) {
            best = r;
            p = i;
        }
    }
    return p;
}

inline void row_max(const double* a, int n, double* rowmax)
{
    for (int i = 0; i < n; ++i) {
        double m = 0.0;
        for (int j = 0; j < n; ++j) m = std::max(m, std::abs(a[i * n + j]));
        rowmax[i] = m;
    }
}

// Returns the failing column, or -1 when inv holds the inverse of a.
inline int invert(const double* a, double* inv, int n, double rel_tol = 1e-13)
{
    double w[kMaxBlock * kMaxBlock], rowmax[kMaxBlock];
    for (int q = 0; q < n * n; ++q) {
        w[q] = a[q];
        inv[q] = 0.0;
    }
    row_max(a, n, rowmax);
    for (int i = 0; i < n; ++i) inv[i * n + i] = 1.0;
    for (int k = 0; k < n; ++k) {
        const int p = pick_pivot(w, rowmax, n, k, rel_tol);
        if (p < 0) return k;
        const double piv = w[p * n + k];
        if (p != k) {
            for (int j = 0; j < n; ++j) {
                std::swap(w[p * n + j], w[k * n + j]);
                std::swap(inv[p * n + j], inv[k * n + j]);
            }
            std::swap(rowmax[p], rowmax[k]);
        }
        for (int j = 0; j < n; ++j) {
            w[k * n + j] /= piv;
            inv[k * n + j] /= piv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            const double f = w[i * n + k];
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                w[i * n + j] -= f * w[k * n + j];
                inv[i * n + j] -= f * inv[k * n + j];
            }
        }
    }
    return -1;
}

}  // namespace isc::blk
