#include "pickdirichlet/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pickdirichlet {

namespace {

void require_distinct(std::span<const std::complex<double>> points) {
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j])
                throw DomainError("evaluation points must be distinct");
}

double frobenius(const ComplexMatrix& a) {
    double s = 0.0;
    for (const auto& row : a)
        for (const auto& x : row) s += std::norm(x);
    return std::sqrt(s);
}

} // namespace

HermitianMatrix::HermitianMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
    const std::size_t n = entries_.size();
    for (const auto& row : entries_)
        if (row.size() != n) throw ShapeError("Hermitian matrix must be square");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const std::complex<double> upper = entries_[i][j];
            const std::complex<double> lower = entries_[j][i];
            const double scale = std::max(std::abs(upper), std::abs(lower));
            if (std::abs(upper - std::conj(lower)) > 1e-12 * std::max(scale, 1.0))
                throw DomainError("matrix is not Hermitian at (" + std::to_string(i) +
                                  ", " + std::to_string(j) + ")");
            const std::complex<double> sym = 0.5 * (upper + std::conj(lower));
            entries_[i][j] = (i == j) ? std::complex<double>(sym.real(), 0.0) : sym;
            entries_[j][i] = std::conj(entries_[i][j]);
        }
    }
}

double HermitianMatrix::frobenius_norm() const { return frobenius(entries_); }

std::vector<double> hermitian_eigenvalues(const HermitianMatrix& m) {
    ComplexMatrix a = m.entries();
    const std::size_t n = a.size();
    if (n == 0) return {};
    if (n == 1) return {a[0][0].real()};

    const double fro = std::max(frobenius(a), 1e-300);
    const double stop = 1e-13 * fro;
    constexpr int max_sweeps = 50;

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(a[i][j]);
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_norm() <= stop) {
            std::vector<double> eig(n);
            for (std::size_t i = 0; i < n; ++i) eig[i] = a[i][i].real();
            std::sort(eig.begin(), eig.end());
            return eig;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const std::complex<double> g = a[p][q];
                const double gm = std::abs(g);
                if (gm <= 1e-300) continue;

                // Phase-rotate the pivot to a real 2x2 problem, then apply the
                // classical rotation: J = diag(1, e^{-i phi}) * [[c, s],[-s, c]].
                const std::complex<double> phase = g / gm; // e^{i phi}
                const double alpha = a[p][p].real();
                const double beta = a[q][q].real();
                const double tau = (beta - alpha) / (2.0 * gm);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                const std::complex<double> jqp = -s * std::conj(phase);
                const std::complex<double> jqq = c * std::conj(phase);

                for (std::size_t r = 0; r < n; ++r) {
                    const std::complex<double> arp = a[r][p];
                    const std::complex<double> arq = a[r][q];
                    a[r][p] = arp * c + arq * jqp;
                    a[r][q] = arp * s + arq * jqq;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const std::complex<double> apr = a[p][r];
                    const std::complex<double> aqr = a[q][r];
                    a[p][r] = c * apr + std::conj(jqp) * aqr;
                    a[q][r] = s * apr + std::conj(jqq) * aqr;
                }
                a[p][q] = a[q][p] = 0.0;
                a[p][p] = std::complex<double>(a[p][p].real(), 0.0);
                a[q][q] = std::complex<double>(a[q][q].real(), 0.0);
            }
        }
    }
    throw ConvergenceError("Jacobi eigenvalue sweep limit (50) reached");
}

double default_inertia_tol(const HermitianMatrix& m) {
    return 1e-9 * std::max(1.0, m.frobenius_norm());
}

InertiaResult hermitian_inertia(const HermitianMatrix& m, double tol) {
    if (tol < 0.0) throw DomainError("inertia tolerance must be >= 0");
    InertiaResult r;
    r.tol_used = tol;
    for (double lambda : hermitian_eigenvalues(m)) {
        if (lambda > tol)
            ++r.n_plus;
        else if (lambda < -tol)
            ++r.n_minus;
        else
            ++r.n_zero;
    }
    return r;
}

McqResult mcq_test(const KernelEvaluator& kernel,
                   std::span<const std::complex<double>> points, double tol) {
    if (points.empty()) throw DomainError("mcq_test needs at least one point");
    if (tol <= 0.0) throw DomainError("mcq_test requires tol > 0");
    require_distinct(points);

    const std::size_t n = points.size();
    const double entry_target = tol / (4.0 * static_cast<double>(n));
    ComplexMatrix m(n, std::vector<std::complex<double>>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const KernelValue r = kernel.reciprocal(points[i], points[j], entry_target);
            if (std::abs(r.value) >= 1.0 / tol)
                throw ZeroKernelError("kernel value within tol of 0 at a point pair");
            m[i][j] = r.value;
            m[j][i] = std::conj(r.value);
        }
    }

    McqResult result;
    result.inertia = hermitian_inertia(HermitianMatrix(std::move(m)), tol);
    result.passes = result.inertia.n_plus == 1;
    return result;
}

ComplexMatrix normalize_kernel_matrix(const ComplexMatrix& k) {
    const std::size_t n = k.size();
    if (n == 0) throw ShapeError("normalize_kernel_matrix needs a non-empty matrix");
    for (const auto& row : k)
        if (row.size() != n) throw ShapeError("kernel matrix must be square");
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(k[i][0]) == 0.0 || std::abs(k[0][i]) == 0.0)
            throw ZeroKernelError("kernel vanishes against the base point at index " +
                                  std::to_string(i));

    ComplexMatrix out(n, std::vector<std::complex<double>>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out[i][j] = k[i][j] * k[0][0] / (k[i][0] * k[0][j]);
    return out;
}

FeasibilityResult pick_feasibility(const KernelEvaluator& kernel,
                                   std::span<const std::complex<double>> points,
                                   const std::vector<ComplexMatrix>& targets,
                                   double tol) {
    if (tol <= 0.0) throw DomainError("pick_feasibility requires tol > 0");
    if (points.size() != targets.size())
        throw ShapeError("one target matrix is required per point");
    if (points.empty()) throw DomainError("pick_feasibility needs at least one point");
    require_distinct(points);

    const std::size_t block = targets.front().size();
    double max_target_norm = 0.0;
    for (const ComplexMatrix& w : targets) {
        if (w.size() != block) throw ShapeError("target blocks must share one size");
        for (const auto& row : w) {
            if (row.size() != block) throw ShapeError("target blocks must be square");
            for (const auto& x : row) max_target_norm = std::max(max_target_norm, std::abs(x));
        }
    }
    if (block == 0) throw ShapeError("target blocks must be non-empty");

    const std::size_t n = points.size();
    const double entry_scale =
        1.0 + static_cast<double>(block) * max_target_norm * max_target_norm;
    const double entry_target =
        tol / (4.0 * static_cast<double>(n * block) * entry_scale);

    ComplexMatrix h(n * block, std::vector<std::complex<double>>(n * block));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const KernelValue kij = kernel.value(points[i], points[j], entry_target);
            for (std::size_t a = 0; a < block; ++a) {
                for (std::size_t b = 0; b < block; ++b) {
                    // (I - W_i W_j^*)_{ab}
                    std::complex<double> entry = (a == b) ? 1.0 : 0.0;
                    for (std::size_t c = 0; c < block; ++c)
                        entry -= targets[i][a][c] * std::conj(targets[j][b][c]);
                    h[i * block + a][j * block + b] = kij.value * entry;
                    h[j * block + b][i * block + a] =
                        std::conj(kij.value * entry);
                }
            }
        }
    }

    const std::vector<double> eig = hermitian_eigenvalues(HermitianMatrix(std::move(h)));
    FeasibilityResult r;
    r.min_eigenvalue = eig.front();
    r.feasible = r.min_eigenvalue >= -tol;
    return r;
}

InertiaResult rational_symmetric_inertia(std::vector<std::vector<mpq_class>> m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw ShapeError("matrix must be square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (m[i][j] != m[j][i]) throw DomainError("matrix is not symmetric");

    InertiaResult r;
    r.tol_used = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (sgn(m[k][k]) == 0) {
            // Prefer a nonzero diagonal pivot below; otherwise fold a nonzero
            // off-diagonal entry onto the diagonal by a congruence row+col add.
            std::size_t swap_row = k;
            for (std::size_t i = k + 1; i < n && swap_row == k; ++i)
                if (sgn(m[i][i]) != 0) swap_row = i;
            if (swap_row != k) {
                for (std::size_t j = 0; j < n; ++j) std::swap(m[k][j], m[swap_row][j]);
                for (std::size_t i = 0; i < n; ++i) std::swap(m[i][k], m[i][swap_row]);
            } else {
                std::size_t partner = k;
                for (std::size_t i = k + 1; i < n && partner == k; ++i)
                    if (sgn(m[k][i]) != 0) partner = i;
                if (partner == k) {
                    ++r.n_zero; // row and column k vanish on the trailing block
                    continue;
                }
                for (std::size_t j = 0; j < n; ++j) m[k][j] += m[partner][j];
                for (std::size_t i = 0; i < n; ++i) m[i][k] += m[i][partner];
            }
        }

        const mpq_class pivot = m[k][k];
        if (sgn(pivot) > 0)
            ++r.n_plus;
        else
            ++r.n_minus;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (sgn(m[i][k]) == 0) continue;
            const mpq_class f = m[i][k] / pivot;
            for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
            m[i][k] = 0;
        }
        for (std::size_t j = k + 1; j < n; ++j) m[k][j] = 0;
    }
    return r;
}

} // namespace pickdirichlet
