#pragma once

#include <gmpxx.h>

#include <complex>
#include <span>
#include <vector>

#include "pickdirichlet/kernel_evaluator.hpp"

namespace pickdirichlet {

using ComplexMatrix = std::vector<std::vector<std::complex<double>>>;

// Square matrix validated and symmetrized on ingestion: entries must satisfy
// entries[i][j] = conj(entries[j][i]) within 1e-12 of the larger modulus.
class HermitianMatrix {
public:
    explicit HermitianMatrix(ComplexMatrix entries);

    std::size_t dim() const { return entries_.size(); }
    std::complex<double> at(std::size_t i, std::size_t j) const {
        return entries_[i][j];
    }
    const ComplexMatrix& entries() const { return entries_; }
    double frobenius_norm() const;

private:
    ComplexMatrix entries_;
};

// Signature of a Hermitian matrix under a tolerance: an eigenvalue counts
// positive if > tol, negative if < -tol, zero otherwise.
struct InertiaResult {
    std::size_t n_plus = 0;
    std::size_t n_zero = 0;
    std::size_t n_minus = 0;
    double tol_used = 0.0;
};

// Eigenvalues by cyclic Jacobi rotations; off-diagonal residual at
// termination < 1e-13 * ||M||_F. ConvergenceError after 50 sweeps.
std::vector<double> hermitian_eigenvalues(const HermitianMatrix& m);

double default_inertia_tol(const HermitianMatrix& m); // 1e-9 * max(1, ||M||_F)

InertiaResult hermitian_inertia(const HermitianMatrix& m, double tol);

struct McqResult {
    bool passes = false;
    InertiaResult inertia;
};

// The one-positive-eigenvalue test on [1/k(lambda_i, lambda_j)]. A genuine
// complete Pick kernel must pass on every finite point set. Entries are
// evaluated to a bound well under tol; ZeroKernelError when some kernel value
// is within tol of 0.
McqResult mcq_test(const KernelEvaluator& kernel,
                   std::span<const std::complex<double>> points, double tol);

// Kernel matrix with base row/column at index 0 rescaled so row and column 0
// become identically one: K'_ij = K_ij K_00 / (K_i0 K_0j). ZeroKernelError
// when some K_i0 vanishes.
ComplexMatrix normalize_kernel_matrix(const ComplexMatrix& k);

struct FeasibilityResult {
    bool feasible = false;
    double min_eigenvalue = 0.0;
};

// Builds the mN x mN block matrix [ k(lambda_i, lambda_j) (I_m - W_i W_j^*) ]
// and tests positive semi-definiteness: feasible iff the minimum eigenvalue
// is >= -tol. The interpolating multiplier itself is not constructed.
FeasibilityResult pick_feasibility(const KernelEvaluator& kernel,
                                   std::span<const std::complex<double>> points,
                                   const std::vector<ComplexMatrix>& targets,
                                   double tol);

// Exact inertia of a symmetric rational matrix by LDL-style congruence
// elimination; available when all entries are exactly rational (e.g. kernel
// matrices at integer s + u~). tol_used is 0.
InertiaResult rational_symmetric_inertia(std::vector<std::vector<mpq_class>> m);

} // namespace pickdirichlet
