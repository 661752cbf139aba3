#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "pickdirichlet/dirichlet_series.hpp"

namespace pickdirichlet {

// A Dirichlet kernel k(s,u) = sum a_n n^{-s-u~}: the coefficient series a
// (normalized so a_1 = 1, with the applied scale recorded) plus the inverse
// coefficient series c with convolve(a, c) = delta up to truncation.
// The inverse is computed lazily, once, and shared between copies.
class KernelSpec {
public:
    explicit KernelSpec(DirichletSeries a,
                        std::optional<double> abscissa_hint = std::nullopt,
                        double real_zero_tol = 1e-12);

    // For pipelines that already hold the inverse series (kernel families,
    // embedding coefficients). Validates convolve(a, c) = delta.
    static KernelSpec with_known_inverse(DirichletSeries a, DirichletSeries c,
                                         std::optional<double> abscissa_hint = std::nullopt);

    const DirichletSeries& coefficients() const { return a_; }
    const DirichletSeries& inverse_coefficients() const;

    std::size_t depth() const { return a_.depth(); }
    ScalarMode mode() const { return a_.mode(); }
    // Factor divided out of the input to reach a_1 = 1.
    const Scalar& scale() const { return scale_; }
    std::optional<double> abscissa_hint() const { return abscissa_hint_; }

private:
    struct InverseCache {
        std::once_flag flag;
        std::optional<DirichletSeries> c;
    };

    DirichletSeries a_;
    Scalar scale_;
    std::optional<double> abscissa_hint_;
    std::shared_ptr<InverseCache> cache_;
};

struct PickViolation {
    std::size_t n;
    Scalar c_n;
};

// Outcome of the coefficient test. A positive verdict certifies c_n <= 0
// only for 2 <= n <= depth; a violation found at some depth persists at
// every larger depth.
struct PickVerdict {
    bool is_complete_pick = false;
    std::optional<PickViolation> first_violation;
    std::size_t depth = 0;
    // Set for the degenerate one-dimensional kernel k == 1 (a = delta).
    bool dimension_warning = false;
};

// Positivity tolerance for real64 verdicts: 1e-10 * max(1, max |a_n|).
double default_violation_tol(const KernelSpec& spec);

// Theorem-by-coefficients test: complete Pick iff c_n <= 0 for all
// 2 <= n <= depth. Returns the smallest violating index if any. In real64
// mode, c_n > tol counts as a violation; exact sign is used in rational mode.
PickVerdict check_complete_pick(const KernelSpec& spec,
                                std::optional<double> tol = std::nullopt);

// Coefficients of 1 - 1/k over the basis n^{-s}: alpha_1 = 0 and
// alpha_n = -c_n for n >= 2. All alpha_n >= 0 iff the Pick verdict is
// positive at the same depth.
DirichletSeries alpha_coefficients(const KernelSpec& spec);

struct GrowthFailure {
    enum class Kind { power_inequality, convolution_identity };
    Kind kind;
    std::size_t n = 0;
    std::size_t k = 0;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct GrowthReport {
    std::size_t n_max = 0;
    std::size_t k_max = 0;
    std::size_t depth = 0;
    std::size_t pairs_checked = 0;
    std::size_t identities_checked = 0;
    double tol_used = 0.0;
    std::vector<GrowthFailure> failures;

    bool ok() const { return failures.empty(); }
};

// Verifies, for a kernel passing the Pick test, the growth inequality
// a_{n^k} >= |c_n|^k over all pairs with 2 <= n <= n_max, 1 <= k <= k_max,
// n^k <= depth, and the identity a_n = sum_{d | n, d < n} a_d |c_{n/d}| for
// 2 <= n <= n_max. Exact comparisons in rational mode; real64 comparisons
// carry a small scaled tolerance, reported in the result.
GrowthReport growth_certificate(const KernelSpec& spec, std::size_t n_max,
                                std::size_t k_max);

} // namespace pickdirichlet
