#pragma once

// Linear solve of the bordered Newton system:
//   1. the bhp border is folded into the cell blocks (Schur complement),
//   2. every block row is left-scaled so its diagonal block becomes I
//      (Gauss-Jordan with partial pivoting, in place),
//   3. right-preconditioned BiCGSTAB.

#include <vector>

#include "isc/deck.hpp"
#include "isc/system.hpp"

namespace isc {

// Subdomains for the preconditioner: contiguous ranges of rows.
std::vector<std::vector<int>> contiguous_subdomains(int nrow, int parts);

// Folds the well border into a and b, b = -F on entry. Throws
// SingularCellBlock when a well row has D = 0.
void eliminate_wells(LinearSystem& sys, const std::vector<std::vector<int>>& well_cells,
                     std::vector<double>& b);
// bhp updates from the cell update
std::vector<double> recover_bhp(const LinearSystem& sys,
                                const std::vector<std::vector<int>>& well_cells,
                                const std::vector<double>& du);

// In-place left scaling of each block row by the inverse of its diagonal
// block, applied to the matrix and to b.
void decouple(const BlockPattern& p, std::vector<double>& a, std::vector<double>& b, int threads);
// Reference: forms each inverse explicitly and multiplies.
void decouple_serial(const BlockPattern& p, std::vector<double>& a, std::vector<double>& b);

// Block ILU(0) on (overlapping) subdomains.
class Preconditioner {
public:
    Preconditioner(const BlockPattern& p, PreconditionerKind kind,
                   const std::vector<std::vector<int>>& subdomains);
    ~Preconditioner();
    Preconditioner(Preconditioner&&) noexcept;
    Preconditioner& operator=(Preconditioner&&) noexcept;

    void setup(const std::vector<double>& a, int threads);
    // out = M^-1 in
    void apply(const double* in, double* out, int threads) const;
    PreconditionerKind kind() const { return kind_; }

private:
    struct Sub;
    const BlockPattern* p_;
    PreconditionerKind kind_;
    std::vector<Sub> subs_;
};

struct LinearStats {
    int iterations = 0;
    int restarts = 0;
    double residual = 0.0;  // final ||b - A x|| / ||b||
};

// Solves A x = b; x starts at zero. serial selects the reference kernels.
LinearStats bicgstab(const BlockPattern& p, const std::vector<double>& a,
                     const std::vector<double>& b, std::vector<double>& x, const Preconditioner& m,
                     double tol, int maxit, int threads, bool serial = false);

// Whole pipeline on an assembled system (the system is overwritten).
class LinearSolver {
public:
    LinearSolver(const BlockPattern& p, std::vector<std::vector<int>> well_cells,
                 const SolverSpec& spec, const std::vector<std::vector<int>>& subdomains);

    // du, dbhp solve J [du; dbhp] = -F
    LinearStats solve(LinearSystem& sys, std::vector<double>& du, std::vector<double>& dbhp,
                      int threads, bool serial = false);

private:
    const BlockPattern* p_;
    std::vector<std::vector<int>> well_cells_;
    double tol_;
    int maxit_;
    Preconditioner prec_;
    std::vector<double> b_;
};

}  // namespace isc
