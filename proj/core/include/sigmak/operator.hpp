#pragma once

// The sigma_k-Yamabe residual F_k(u) = sigma_k(b(u)) - beta e^{2ku} for radial u,
// its exact discrete linearization, and the indicial data of the normal operator.
//
// For a radial conformal factor u(t) the spectrum of
//     grad^2 u - du (x) du + |du|^2 g / 2 - A_g
// is (b_r, b_t x n) with
//     b_r = u'' - u'^2/2 - lam_r,
//     b_t = u' phi'/phi + u'^2/2 - lam_t,
// and sigma_k of it is evaluated in closed form.

#include <array>
#include <span>
#include <vector>

#include "sigmak/geometry.hpp"
#include "sigmak/grid.hpp"

namespace sigmak {

/// One sigma_k-Yamabe problem: order k, constant beta > 0, background, grid.
/// Background curvature is tabulated on the grid at construction.
class SigmaProblem {
public:
    SigmaProblem(int k, double beta, WarpedBackground background, GridPtr grid);

    [[nodiscard]] int n() const noexcept { return bg_.n(); }
    [[nodiscard]] int k() const noexcept { return k_; }
    [[nodiscard]] double beta() const noexcept { return beta_; }
    [[nodiscard]] const WarpedBackground& background() const noexcept { return bg_; }
    [[nodiscard]] const RadialGrid& grid() const noexcept { return *grid_; }
    [[nodiscard]] const GridPtr& grid_ptr() const noexcept { return grid_; }

    [[nodiscard]] std::span<const double> lam_r() const noexcept { return lam_r_; }
    [[nodiscard]] std::span<const double> lam_t() const noexcept { return lam_t_; }
    /// phi'/phi at each node; the center entry is unused and stored as 0.
    [[nodiscard]] std::span<const double> log_warp() const noexcept { return log_warp_; }

    /// Limit of u at the conformal boundary, ln(beta_k^0 / beta) / (2k):
    /// the value at which beta e^{2ku} matches sigma_k of the hyperbolic end.
    [[nodiscard]] double boundary_value() const;

    [[nodiscard]] SigmaProblem with_beta(double beta) const;

private:
    int k_;
    double beta_;
    WarpedBackground bg_;
    GridPtr grid_;
    std::vector<double> lam_r_, lam_t_, log_warp_;
};

/// Spectra (b_r, b_t x n) at every node.
struct NodeSpectra {
    std::vector<double> radial;
    std::vector<double> tangential;
};

NodeSpectra node_spectra(const SigmaProblem& p, const GridFunction& u);

/// true iff every equation node (0..N-1) has its spectrum in Gamma_k^+.
bool spectra_in_cone(const SigmaProblem& p, const GridFunction& u);

/// F_k at every node. The center uses the limit u' phi'/phi -> u''(0); the
/// last node uses the one-sided stencils. Throws EvaluationError naming the
/// first node with a non-finite value.
GridFunction residual(const SigmaProblem& p, const GridFunction& u);

/// Continuous-form coefficients a2 phi'' + a1 phi' + a0 phi of the linearization
/// at each equation node 0..N-1. At the center phi' terms are folded into a2.
struct LinearCoefficients {
    std::vector<double> second;
    std::vector<double> first;
    std::vector<double> zeroth;
};

LinearCoefficients linear_coefficients(const SigmaProblem& p, const GridFunction& u);

/// Banded operator on the N equation nodes 0..N-1. Row i couples to nodes
/// i-1, i, i+1; super()[N-1] couples the last row to node N, which carries the
/// far-end boundary value.
class TridiagonalOperator {
public:
    TridiagonalOperator(std::vector<double> sub, std::vector<double> diag, std::vector<double> super,
                        double weight_gamma = 0.0);

    [[nodiscard]] std::size_t size() const noexcept { return diag_.size(); }
    [[nodiscard]] std::span<const double> sub() const noexcept { return sub_; }
    [[nodiscard]] std::span<const double> diag() const noexcept { return diag_; }
    [[nodiscard]] std::span<const double> super() const noexcept { return super_; }
    /// Weight exponent of the space the operator is considered on; bookkeeping only.
    [[nodiscard]] double weight_gamma() const noexcept { return weight_; }

    /// Applies the operator to phi given on size() or size()+1 nodes
    /// (a missing boundary node counts as 0).
    [[nodiscard]] std::vector<double> apply(std::span<const double> phi) const;
    /// Thomas algorithm with the boundary node held at 0. Throws
    /// SingularLinearizationError on a zero pivot.
    [[nodiscard]] std::vector<double> solve(std::span<const double> rhs) const;
    /// Operator with one extra row (sub, diag) closing the system at the boundary node.
    [[nodiscard]] TridiagonalOperator with_closing_row(double sub, double diag) const;

private:
    std::vector<double> sub_, diag_, super_;
    double weight_;
};

/// Exact Frechet derivative of residual() at u on nodes 0..N-1, with the same stencils.
TridiagonalOperator linearize(const SigmaProblem& p, const GridFunction& u);

struct IndicialData {
    double gamma_minus = 0.0;
    double gamma_plus = 0.0;
    double ckn = 0.0;
    /// (c_kn, -n c_kn, -2k beta): coefficients of gamma^2, gamma, 1.
    std::array<double, 3> poly{};
};

/// Roots n/2 -+ sqrt(n^2/4 + 2k beta / c_kn) of c_kn (gamma^2 - n gamma) - 2k beta.
IndicialData indicial_roots(int n, int k, double beta);

/// Radial normal operator a (s d_s)^2 + b (s d_s) + c.
struct NormalOperatorCoeffs {
    double second = 0.0;
    double first = 0.0;
    double constant = 0.0;

    /// s^{-gamma} N(s^gamma).
    [[nodiscard]] double on_power(double gamma) const { return second * gamma * gamma + first * gamma + constant; }
};

NormalOperatorCoeffs normal_operator_coeffs(const SigmaProblem& p);

}  // namespace sigmak
