#pragma once

// Damped Newton for F_k(u) = 0 on a radial background, amplitude continuation,
// Fredholm-window probes of the linearization and the Einstein intersection check.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sigmak/operator.hpp"

namespace sigmak {

struct SolverParams {
    double tol = 1e-10;        ///< sup-norm residual target
    int max_iter = 25;
    double min_step = 1.0 / 64.0;
    bool cone_guard = true;    ///< halve steps that leave Gamma_k^+ at any node

    void validate() const;
};

struct SolveReport {
    bool converged = false;
    int iterations = 0;                    ///< accepted Newton updates
    std::vector<double> residual_history;  ///< sup-norm over equation nodes, initial value first
    GridFunction u;
    double decay_estimate = 0.0;           ///< decay_rate(u - boundary value); NaN if unavailable
    bool cone_ok = false;                  ///< every iterate had its spectra in Gamma_k^+
    double beta = 0.0;
    int n = 0;
    int k = 0;
    std::string message;
};

/// Sup-norm of a residual over the equation nodes 0..N-1.
double equation_residual_norm(const GridFunction& f);

/// Newton iteration u <- u + s delta with L(u) delta = -F(u). The far node is
/// pinned to p.boundary_value(), and u0 is first shifted by a constant to meet
/// it; the center is reflected. Non-convergence is
/// reported, not thrown; only invalid input throws.
SolveReport newton_solve(const SigmaProblem& p, const SolverParams& params, const GridFunction& u0);

/// Everything but the warp amplitude, which continuation() walks.
struct ContinuationTemplate {
    int n = 3;
    int k = 1;
    double beta = 1.0;
    GridPtr grid;
};

struct ContinuationResult {
    std::vector<SolveReport> reports;
    std::optional<double> failed_amplitude;
};

/// Solves on perturbed backgrounds for each amplitude in turn, warm-starting
/// from the previous solution. Amplitudes must be sorted by |a|. Stops at the
/// first failure.
ContinuationResult continuation(const ContinuationTemplate& tmpl, std::span<const double> amplitudes,
                                const SolverParams& params);

struct ProbeReport {
    double gamma = 0.0;
    double weighted_norm = 0.0;  ///< sup of x^{-gamma} |v|
    double log_slope = 0.0;      ///< slope of v x^{-gamma} against log x on the tail
    bool log_flag = false;       ///< |log_slope| > 0.5
    bool singular = false;
    bool dirichlet = false;      ///< far-end condition used (otherwise weighted Neumann)
    std::string message;
};

/// Smooth cutoff: 0 for t <= 1, 1 for t >= 2.
double probe_cutoff(double t);

/// Solves L_k(0) v = c_kn (gamma_+ - gamma_-) x^gamma chi and looks for
/// logarithmic growth of v x^{-gamma}. The source is normalised so that the
/// log coefficient is exactly 1 at an indicial root. For gamma > gamma_- the
/// far end uses w_N = w_{N-1} (w = v x^{-gamma}); at or below gamma_- it uses v(T) = 0.
ProbeReport fredholm_probe(const SigmaProblem& p, double gamma);

struct IntersectionParams {
    GridPtr grid;
    double tol = 1e-8;
};

struct SigmaRow {
    int k = 0;
    double mean = 0.0;
    double deviation = 0.0;  ///< max over nodes of |sigma_k - mean|
    double worst_t = 0.0;
    double model = 0.0;      ///< (-1)^k beta_k^0
    bool constant = false;
    bool matches_model = false;
};

struct IntersectionReport {
    int n = 0;
    std::vector<SigmaRow> rows;
    bool all_constant = false;
    bool matches_model = false;
    std::optional<int> failing_k;
    double failing_t = 0.0;
    std::vector<double> eigenvalues;
    double eigen_spread = 0.0;
    bool einstein = false;
    std::string message;
};

/// Tabulates sigma_k(A_g) for k = 1..n+1 on the grid. When every one is
/// constant, the eigenvalues are recovered from the constants through the
/// characteristic polynomial and tested for equality.
IntersectionReport intersection_check(const WarpedBackground& bg, const IntersectionParams& params);

/// Same check on given profiles: sigma_by_k[k-1][i] is sigma_k at node t[i].
IntersectionReport intersection_check_profiles(int n, std::span<const double> t,
                                               const std::vector<std::vector<double>>& sigma_by_k, double tol);

}  // namespace sigmak
