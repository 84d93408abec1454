#include "sigmak/operator.hpp"

#include <cmath>
#include <string>

#include "sigmak/errors.hpp"

namespace sigmak {

SigmaProblem::SigmaProblem(int k, double beta, WarpedBackground background, GridPtr grid)
    : k_(k), beta_(beta), bg_(std::move(background)), grid_(std::move(grid)) {
    if (!grid_) throw DomainError("SigmaProblem: null grid");
    if (k_ < 1 || k_ > bg_.n() + 1) {
        throw DomainError("SigmaProblem: need 1 <= k <= n+1 (k=" + std::to_string(k_) + ")");
    }
    if (!(beta_ > 0.0) || !std::isfinite(beta_)) {
        throw DomainError("SigmaProblem: beta must be positive and finite");
    }
    const std::size_t nodes = grid_->size();
    lam_r_.resize(nodes);
    lam_t_.resize(nodes);
    log_warp_.assign(nodes, 0.0);
    const auto center = schouten_eigs_center(bg_);
    lam_r_[0] = center.lam_r;
    lam_t_[0] = center.lam_t;
    for (std::size_t i = 1; i < nodes; ++i) {
        const double t = grid_->t(i);
        const auto a = schouten_eigs_warped(bg_, t);
        lam_r_[i] = a.lam_r;
        lam_t_[i] = a.lam_t;
        log_warp_[i] = bg_.log_warp_derivative(t);
    }
}

double SigmaProblem::boundary_value() const { return std::log(beta0(n(), k_) / beta_) / (2.0 * k_); }

SigmaProblem SigmaProblem::with_beta(double beta) const {
    SigmaProblem copy(*this);
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw DomainError("SigmaProblem: beta must be positive and finite");
    }
    copy.beta_ = beta;
    return copy;
}

NodeSpectra node_spectra(const SigmaProblem& p, const GridFunction& u) {
    if (u.size() != p.grid().size()) throw DomainError("node_spectra: u is not sampled on the problem grid");
    const auto du = d1(u);
    const auto ddu = d2(u);
    const std::size_t nodes = u.size();
    NodeSpectra s{std::vector<double>(nodes), std::vector<double>(nodes)};
    const auto lam_r = p.lam_r();
    const auto lam_t = p.lam_t();
    const auto w = p.log_warp();
    s.radial[0] = ddu[0] - lam_r[0];
    s.tangential[0] = ddu[0] - lam_t[0];
    for (std::size_t i = 1; i < nodes; ++i) {
        const double half_sq = 0.5 * du[i] * du[i];
        s.radial[i] = ddu[i] - half_sq - lam_r[i];
        s.tangential[i] = du[i] * w[i] + half_sq - lam_t[i];
    }
    return s;
}

bool spectra_in_cone(const SigmaProblem& p, const GridFunction& u) {
    const auto s = node_spectra(p, u);
    const std::size_t equations = u.size() - 1;
    std::vector<double> v(static_cast<std::size_t>(p.n()) + 1);
    for (std::size_t i = 0; i < equations; ++i) {
        v.assign(v.size(), s.tangential[i]);
        v[0] = s.radial[i];
        if (!std::isfinite(s.radial[i]) || !std::isfinite(s.tangential[i])) return false;
        if (cone_membership(Spectrum(v), p.k()).tag != Cone::Plus) return false;
    }
    return true;
}

GridFunction residual(const SigmaProblem& p, const GridFunction& u) {
    const auto s = node_spectra(p, u);
    const int n = p.n();
    const int k = p.k();
    const double beta = p.beta();
    std::vector<double> out(u.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = sigma_k_radial(s.radial[i], s.tangential[i], n, k) - beta * std::exp(2.0 * k * u[i]);
        if (!std::isfinite(out[i])) {
            throw EvaluationError("residual: non-finite value at node " + std::to_string(i) +
                                  " (t=" + std::to_string(p.grid().t(i)) + ")");
        }
    }
    return {u.grid_ptr(), std::move(out)};
}

LinearCoefficients linear_coefficients(const SigmaProblem& p, const GridFunction& u) {
    const auto s = node_spectra(p, u);
    const auto du = d1(u);
    const int n = p.n();
    const int k = p.k();
    const std::size_t equations = u.size() - 1;
    const auto w = p.log_warp();
    LinearCoefficients c{std::vector<double>(equations), std::vector<double>(equations),
                         std::vector<double>(equations)};
    for (std::size_t i = 0; i < equations; ++i) {
        // Reilly pairing: d sigma_k = T_r db_r + n T_t db_t with
        // T_r = sigma_{k-1}(b_t x n), T_t = sigma_{k-1}(b_r, b_t x (n-1)).
        const double t_r = sigma_k_radial(s.tangential[i], s.tangential[i], n - 1, k - 1);
        const double t_t = sigma_k_radial(s.radial[i], s.tangential[i], n - 1, k - 1);
        c.zeroth[i] = -2.0 * k * p.beta() * std::exp(2.0 * k * u[i]);
        if (i == 0) {
            // db_r = db_t = phi''(0) at the center.
            c.second[i] = t_r + n * t_t;
            c.first[i] = 0.0;
        } else {
            // db_r = phi'' - u' phi',  db_t = (phi'/phi + u') phi'.
            c.second[i] = t_r;
            c.first[i] = -t_r * du[i] + n * t_t * (w[i] + du[i]);
        }
        if (!std::isfinite(c.second[i]) || !std::isfinite(c.first[i]) || !std::isfinite(c.zeroth[i])) {
            throw EvaluationError("linearize: non-finite coefficient at node " + std::to_string(i));
        }
    }
    return c;
}

TridiagonalOperator::TridiagonalOperator(std::vector<double> sub, std::vector<double> diag,
                                         std::vector<double> super, double weight_gamma)
    : sub_(std::move(sub)), diag_(std::move(diag)), super_(std::move(super)), weight_(weight_gamma) {
    if (diag_.empty() || sub_.size() != diag_.size() || super_.size() != diag_.size()) {
        throw DomainError("TridiagonalOperator: band lengths must match and be non-empty");
    }
}

std::vector<double> TridiagonalOperator::apply(std::span<const double> phi) const {
    const std::size_t n = size();
    if (phi.size() != n && phi.size() != n + 1) {
        throw DomainError("TridiagonalOperator::apply: expected " + std::to_string(n) + " or " +
                          std::to_string(n + 1) + " values");
    }
    auto at = [&](std::size_t j) { return j < phi.size() ? phi[j] : 0.0; };
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = diag_[i] * phi[i] + super_[i] * at(i + 1);
        if (i > 0) v += sub_[i] * phi[i - 1];
        out[i] = v;
    }
    return out;
}

std::vector<double> TridiagonalOperator::solve(std::span<const double> rhs) const {
    const std::size_t n = size();
    if (rhs.size() != n) throw DomainError("TridiagonalOperator::solve: rhs size mismatch");
    std::vector<double> c(n), d(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double pivot = diag_[i] - (i > 0 ? sub_[i] * c[i - 1] : 0.0);
        if (pivot == 0.0 || !std::isfinite(pivot)) {
            throw SingularLinearizationError("linearization not invertible: zero pivot at row " +
                                             std::to_string(i));
        }
        c[i] = super_[i] / pivot;
        d[i] = (rhs[i] - (i > 0 ? sub_[i] * d[i - 1] : 0.0)) / pivot;
    }
    std::vector<double> x(n);
    x[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
    return x;
}

TridiagonalOperator TridiagonalOperator::with_closing_row(double sub, double diag) const {
    auto s = sub_;
    auto d = diag_;
    auto u = super_;
    s.push_back(sub);
    d.push_back(diag);
    u.push_back(0.0);
    return {std::move(s), std::move(d), std::move(u), weight_};
}

TridiagonalOperator linearize(const SigmaProblem& p, const GridFunction& u) {
    const auto c = linear_coefficients(p, u);
    const double h = p.grid().step();
    const double h2 = h * h;
    const std::size_t n = c.second.size();
    std::vector<double> sub(n, 0.0), diag(n), super(n);
    // Center row: reflected stencil 2 (phi_1 - phi_0) / h^2.
    diag[0] = -2.0 * c.second[0] / h2 + c.zeroth[0];
    super[0] = 2.0 * c.second[0] / h2;
    for (std::size_t i = 1; i < n; ++i) {
        sub[i] = c.second[i] / h2 - c.first[i] / (2.0 * h);
        diag[i] = -2.0 * c.second[i] / h2 + c.zeroth[i];
        super[i] = c.second[i] / h2 + c.first[i] / (2.0 * h);
    }
    return {std::move(sub), std::move(diag), std::move(super), 0.0};
}

IndicialData indicial_roots(int n, int k, double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("indicial_roots: beta must be positive");
    const double c = c_kn(n, k);
    const double half = 0.5 * n;
    const double product = 2.0 * k * beta / c;
    const double plus = half + std::sqrt(half * half + product);
    // gamma_- gamma_+ = -product; avoids cancellation in half - radical.
    return {-product / plus, plus, c, {c, -n * c, -2.0 * k * beta}};
}

NormalOperatorCoeffs normal_operator_coeffs(const SigmaProblem& p) {
    const double c = c_kn(p.n(), p.k());
    return {c, -p.n() * c, -2.0 * p.k() * p.beta()};
}

}  // namespace sigmak
