#include "sigmak/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sigmak/errors.hpp"

namespace sigmak {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double estimate_decay(const GridFunction& u, double boundary_value) {
    std::vector<double> shifted(u.values().begin(), u.values().end());
    for (double& v : shifted) v -= boundary_value;
    try {
        return decay_rate(GridFunction(u.grid_ptr(), std::move(shifted)));
    } catch (const DecayEstimateError&) {
        return kNaN;
    }
}

// u + s * delta on the equation nodes; the boundary node is untouched.
GridFunction step(const GridFunction& u, const std::vector<double>& delta, double s) {
    std::vector<double> v(u.values().begin(), u.values().end());
    for (std::size_t i = 0; i < delta.size(); ++i) v[i] += s * delta[i];
    return {u.grid_ptr(), std::move(v)};
}

}  // namespace

void SolverParams::validate() const {
    if (!(tol > 0.0)) throw DomainError("SolverParams: tol must be positive");
    if (max_iter < 1) throw DomainError("SolverParams: max_iter must be at least 1");
    if (!(min_step > 0.0 && min_step <= 1.0)) throw DomainError("SolverParams: min_step must lie in (0, 1]");
}

double equation_residual_norm(const GridFunction& f) {
    double r = 0.0;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) r = std::max(r, std::abs(f[i]));
    return r;
}

SolveReport newton_solve(const SigmaProblem& p, const SolverParams& params, const GridFunction& u0) {
    params.validate();
    if (u0.size() != p.grid().size()) throw DomainError("newton_solve: u0 is not sampled on the problem grid");
    for (double v : u0.values()) {
        if (!std::isfinite(v)) throw DomainError("newton_solve: u0 is not finite");
    }

    const double ub = p.boundary_value();
    // Shift the guess by a constant so it meets the far boundary value.
    const GridFunction start = u0.axpy(ub - u0.back(), GridFunction::constant(u0.grid_ptr(), 1.0));
    SolveReport report{.residual_history = {}, .u = start.with_value(start.size() - 1, ub), .message = {}};
    report.beta = p.beta();
    report.n = p.n();
    report.k = p.k();

    GridFunction& u = report.u;
    GridFunction f = residual(p, u);
    double r = equation_residual_norm(f);
    report.residual_history.push_back(r);
    report.cone_ok = spectra_in_cone(p, u);

    while (r > params.tol && report.iterations < params.max_iter) {
        std::vector<double> delta;
        try {
            const auto lin = linearize(p, u);
            std::vector<double> rhs(f.values().begin(), f.values().end() - 1);
            for (double& v : rhs) v = -v;
            delta = lin.solve(rhs);
        } catch (const SingularLinearizationError& e) {
            report.message = e.what();
            break;
        }

        // First step length, halving from 1, that lowers the sup-norm residual.
        bool accepted = false;
        for (double s = 1.0; s >= params.min_step; s *= 0.5) {
            GridFunction cand = step(u, delta, s);
            if (params.cone_guard && !spectra_in_cone(p, cand)) continue;
            GridFunction fc(cand.grid_ptr());
            try {
                fc = residual(p, cand);
            } catch (const EvaluationError&) {
                continue;
            }
            const double rc = equation_residual_norm(fc);
            if (rc < r) {
                u = std::move(cand);
                f = std::move(fc);
                r = rc;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            report.message = "line search stalled below minimum step at iteration " +
                             std::to_string(report.iterations);
            break;
        }
        ++report.iterations;
        report.residual_history.push_back(r);
        report.cone_ok = report.cone_ok && spectra_in_cone(p, u);
    }

    report.converged = r <= params.tol;
    if (!report.converged && report.message.empty()) {
        report.message = "maximum iterations reached";
    }
    report.decay_estimate = estimate_decay(u, ub);
    return report;
}

ContinuationResult continuation(const ContinuationTemplate& tmpl, std::span<const double> amplitudes,
                                const SolverParams& params) {
    if (!tmpl.grid) throw DomainError("continuation: template has no grid");
    for (std::size_t i = 1; i < amplitudes.size(); ++i) {
        if (std::abs(amplitudes[i]) < std::abs(amplitudes[i - 1])) {
            throw DomainError("continuation: amplitudes must be sorted by |a|");
        }
    }
    ContinuationResult result;
    std::optional<GridFunction> previous;
    for (double a : amplitudes) {
        std::optional<SigmaProblem> problem;
        try {
            problem.emplace(tmpl.k, tmpl.beta, WarpedBackground::perturbed(tmpl.n, a), tmpl.grid);
        } catch (const DomainError&) {
            result.failed_amplitude = a;
            break;
        }
        const GridFunction u0 = previous ? *previous : GridFunction(tmpl.grid);
        auto report = newton_solve(*problem, params, u0);
        const bool ok = report.converged;
        previous = report.u;
        result.reports.push_back(std::move(report));
        if (!ok) {
            result.failed_amplitude = a;
            break;
        }
    }
    return result;
}

double probe_cutoff(double t) {
    auto g = [](double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; };
    const double up = g(t - 1.0);
    const double down = g(2.0 - t);
    if (up + down == 0.0) return t >= 2.0 ? 1.0 : 0.0;
    return up / (up + down);
}

ProbeReport fredholm_probe(const SigmaProblem& p, double gamma) {
    ProbeReport rep;
    rep.gamma = gamma;
    const auto& grid = p.grid();
    const auto normal = normal_operator_coeffs(p);
    const auto roots = indicial_roots(p.n(), p.k(), p.beta());
    const double normalisation = normal.second * (roots.gamma_plus - roots.gamma_minus);

    const GridFunction zero(p.grid_ptr());
    const auto lin = linearize(p, zero);
    const std::size_t equations = lin.size();
    std::vector<double> rhs(equations);
    for (std::size_t i = 0; i < equations; ++i) {
        rhs[i] = normalisation * std::exp(-gamma * grid.t(i)) * probe_cutoff(grid.t(i));
    }

    rep.dirichlet = gamma <= roots.gamma_minus + 1e-9;
    std::vector<double> v;
    try {
        if (rep.dirichlet) {
            v = lin.solve(rhs);
            v.push_back(0.0);
        } else {
            rhs.push_back(0.0);
            v = lin.with_closing_row(-std::exp(-gamma * grid.step()), 1.0).solve(rhs);
        }
    } catch (const SingularLinearizationError& e) {
        rep.singular = true;
        rep.weighted_norm = std::numeric_limits<double>::infinity();
        rep.message = e.what();
        return rep;
    }

    GridFunction sol(p.grid_ptr(), v);
    rep.weighted_norm = weighted_sup_norm(sol, gamma, 0);

    const std::size_t first = (3 * (v.size() - 1)) / 4;
    std::vector<double> lx, w;
    for (std::size_t i = first; i < v.size(); ++i) {
        lx.push_back(-grid.t(i));
        w.push_back(v[i] * std::exp(gamma * grid.t(i)));
    }
    rep.log_slope = fit_slope(lx, w);
    rep.log_flag = std::abs(rep.log_slope) > 0.5;
    return rep;
}

IntersectionReport intersection_check_profiles(int n, std::span<const double> t,
                                               const std::vector<std::vector<double>>& sigma_by_k, double tol) {
    if (n < 2) throw DomainError("intersection_check: n must be >= 2");
    if (sigma_by_k.size() != static_cast<std::size_t>(n) + 1) {
        throw DomainError("intersection_check: need one profile per k = 1..n+1");
    }
    IntersectionReport rep;
    rep.n = n;
    rep.all_constant = true;
    rep.matches_model = true;
    std::vector<double> means;
    for (int k = 1; k <= n + 1; ++k) {
        const auto& prof = sigma_by_k[static_cast<std::size_t>(k - 1)];
        if (prof.size() != t.size() || prof.empty()) throw DomainError("intersection_check: profile length mismatch");
        SigmaRow row;
        row.k = k;
        double sum = 0.0;
        for (double s : prof) sum += s;
        row.mean = sum / static_cast<double>(prof.size());
        for (std::size_t i = 0; i < prof.size(); ++i) {
            const double dev = std::abs(prof[i] - row.mean);
            if (dev > row.deviation) {
                row.deviation = dev;
                row.worst_t = t[i];
            }
        }
        row.model = (k % 2 == 0 ? 1.0 : -1.0) * beta0(n, k);
        row.constant = row.deviation <= tol;
        row.matches_model = row.constant && std::abs(row.mean - row.model) <= tol;
        if (!row.constant && !rep.failing_k) {
            rep.failing_k = k;
            rep.failing_t = row.worst_t;
        }
        rep.all_constant = rep.all_constant && row.constant;
        rep.matches_model = rep.matches_model && row.matches_model;
        means.push_back(row.mean);
        rep.rows.push_back(row);
    }

    if (!rep.all_constant) {
        rep.matches_model = false;
        rep.message = "sigma_" + std::to_string(*rep.failing_k) + " is not constant (worst at t=" +
                      std::to_string(rep.failing_t) + ")";
        return rep;
    }
    try {
        const Spectrum eigs = eigs_from_sigmas(means);
        rep.eigenvalues.assign(eigs.values().begin(), eigs.values().end());
        rep.eigen_spread = rep.eigenvalues.back() - rep.eigenvalues.front();
        rep.einstein = rep.eigen_spread <= tol;
        rep.message = rep.einstein ? "all eigenvalues coincide" : "constant but distinct eigenvalues";
    } catch (const NonRealSpectrumError& e) {
        rep.message = e.what();
    }
    return rep;
}

IntersectionReport intersection_check(const WarpedBackground& bg, const IntersectionParams& params) {
    if (!params.grid) throw DomainError("intersection_check: no grid");
    const auto& grid = *params.grid;
    const int n = bg.n();
    std::vector<std::vector<double>> prof(static_cast<std::size_t>(n) + 1, std::vector<double>(grid.size()));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto a = i == 0 ? schouten_eigs_center(bg) : schouten_eigs_warped(bg, grid.t(i));
        for (int k = 1; k <= n + 1; ++k) {
            prof[static_cast<std::size_t>(k - 1)][i] = sigma_k_radial(a.lam_r, a.lam_t, n, k);
        }
    }
    return intersection_check_profiles(n, grid.t_nodes(), prof, params.tol);
}

}  // namespace sigmak
