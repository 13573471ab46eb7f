#pragma once

// Vector and block-sparse kernels used by the Krylov solver. Each has an
// OpenMP version and a serial reference; both reduce in fixed 1024-entry
// chunks so results do not depend on the thread count.

#include <cstddef>

#include "isc/system.hpp"

namespace isc::kernels {

inline constexpr std::size_t kChunk = 1024;

double dot(const double* a, const double* b, std::size_t n, int threads);
double dot_serial(const double* a, const double* b, std::size_t n);

// y += alpha x
void axpy(double alpha, const double* x, double* y, std::size_t n, int threads);
void axpy_serial(double alpha, const double* x, double* y, std::size_t n);

// y = A x for a block CSR matrix
void bsr_mv(const BlockPattern& p, const double* a, const double* x, double* y, int threads);
void bsr_mv_serial(const BlockPattern& p, const double* a, const double* x, double* y);

}  // namespace isc::kernels
