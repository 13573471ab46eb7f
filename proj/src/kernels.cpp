#include "isc/kernels.hpp"

#include <algorithm>
#include <vector>

namespace isc::kernels {

namespace {

double chunk_dot(const double* a, const double* b, std::size_t lo, std::size_t hi)
{
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += a[i] * b[i];
    return s;
}

void block_row(const BlockPattern& p, const double* a, const double* x, double* y, int r)
{
    const int nb = p.nb;
    double* yr = y + static_cast<std::size_t>(r) * nb;
    for (int i = 0; i < nb; ++i) yr[i] = 0.0;
    for (int k = p.rowptr[r]; k < p.rowptr[r + 1]; ++k) {
        const double* blk = a + static_cast<std::size_t>(k) * nb * nb;
        const double* xc = x + static_cast<std::size_t>(p.col[k]) * nb;
        for (int i = 0; i < nb; ++i) {
            double s = 0.0;
            for (int j = 0; j < nb; ++j) s += blk[i * nb + j] * xc[j];
            yr[i] += s;
        }
    }
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n, int threads)
{
    const std::size_t nchunk = (n + kChunk - 1) / kChunk;
    std::vector<double> part(nchunk);
    const long long nc = static_cast<long long>(nchunk);
#pragma omp parallel for schedule(static) num_threads(threads)
    for (long long c = 0; c < nc; ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
        part[c] = chunk_dot(a, b, lo, std::min(n, lo + kChunk));
    }
    double s = 0.0;
    for (double v : part) s += v;
    return s;
}

double dot_serial(const double* a, const double* b, std::size_t n)
{
    double s = 0.0;
    for (std::size_t lo = 0; lo < n; lo += kChunk) s += chunk_dot(a, b, lo, std::min(n, lo + kChunk));
    return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n, int threads)
{
    const long long nn = static_cast<long long>(n);
#pragma omp parallel for schedule(static) num_threads(threads)
    for (long long i = 0; i < nn; ++i) y[i] += alpha * x[i];
}

void axpy_serial(double alpha, const double* x, double* y, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void bsr_mv(const BlockPattern& p, const double* a, const double* x, double* y, int threads)
{
#pragma omp parallel for schedule(static) num_threads(threads)
    for (int r = 0; r < p.nrow; ++r) block_row(p, a, x, y, r);
}

void bsr_mv_serial(const BlockPattern& p, const double* a, const double* x, double* y)
{
    for (int r = 0; r < p.nrow; ++r) block_row(p, a, x, y, r);
}

}  // namespace isc::kernels
