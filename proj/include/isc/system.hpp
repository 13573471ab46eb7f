#pragma once

// Cell-block sparse Jacobian with a bordered well part.

#include <vector>

#include "isc/model.hpp"

namespace isc {

// Block CSR pattern. Row r holds the diagonal, the grid neighbours of r and,
// for every well, the other perforated cells of that well (fill created when
// the bhp border is eliminated).
struct BlockPattern {
    int nrow = 0;
    int nb = 0;
    std::vector<int> rowptr;
    std::vector<int> col;
    std::vector<int> diag;     // position of (r, r)
    std::vector<int> conn_ab;  // per grid connection: position of (a, b)
    std::vector<int> conn_ba;  // per grid connection: position of (b, a)

    int nnzb() const { return static_cast<int>(col.size()); }
    // -1 when (r, c) is not stored
    int find(int r, int c) const;
};

BlockPattern make_pattern(const Model& m);

// Coupling of one well to its perforated cells:
//   rows of cell k:  d F_cell / d bhp  = B[k]
//   well row:        d F_well / d u_k  = C[k],  d F_well / d bhp = D
struct WellBorder {
    std::vector<double> B;  // perf-major, nb per perforation
    std::vector<double> C;
    double D = 1.0;
    double F = 0.0;  // well-equation residual
};

struct LinearSystem {
    const BlockPattern* pattern = nullptr;
    int nb = 0;
    std::vector<double> a;  // nnzb blocks, row-major nb x nb (row = equation, col = unknown)
    std::vector<double> f;  // residual, ncell x nb
    std::vector<WellBorder> wells;

    LinearSystem() = default;
    LinearSystem(const BlockPattern& p, const Model& m);

    double* block(int k) { return a.data() + static_cast<std::size_t>(k) * nb * nb; }
    const double* block(int k) const { return a.data() + static_cast<std::size_t>(k) * nb * nb; }
    double* rhs(int r) { return f.data() + static_cast<std::size_t>(r) * nb; }
};

}  // namespace isc
