#pragma once

// Warped-product conformally compact backgrounds dt^2 + phi(t)^2 g_{S^n}
// on the (n+1)-ball and their Schouten tensors.

#include <string_view>

#include "sigmak/symfunc.hpp"

namespace sigmak {

enum class WarpFamily {
    Hyperbolic,  // phi = sinh t
    Perturbed,   // phi = sinh t + a t^3 exp(-t^2)
};

std::string_view to_string(WarpFamily f);
/// "hyperbolic" or "perturbed"; throws DomainError otherwise.
WarpFamily warp_family_from_string(std::string_view name);

class WarpedBackground {
public:
    /// Throws DomainError if n < 2, a is not finite, or phi fails to stay positive.
    WarpedBackground(int n, WarpFamily family, double amplitude = 0.0);

    static WarpedBackground hyperbolic(int n) { return {n, WarpFamily::Hyperbolic, 0.0}; }
    static WarpedBackground perturbed(int n, double a) { return {n, WarpFamily::Perturbed, a}; }

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] int dimension() const noexcept { return n_ + 1; }
    [[nodiscard]] WarpFamily family() const noexcept { return family_; }
    [[nodiscard]] double amplitude() const noexcept { return a_; }

    [[nodiscard]] double phi(double t) const;
    [[nodiscard]] double dphi(double t) const;
    [[nodiscard]] double ddphi(double t) const;
    /// phi'(t)^2 - 1 without cancellation near the center.
    [[nodiscard]] double dphi_sq_minus_one(double t) const;
    /// phi'(t)/phi(t), the tangential Hessian factor of a radial function.
    [[nodiscard]] double log_warp_derivative(double t) const;
    /// phi'''(0); the center curvature is isotropic with Schouten eigenvalue -phi'''(0)/2.
    [[nodiscard]] double center_third_derivative() const;

private:
    int n_;
    WarpFamily family_;
    double a_;
};

/// Radial eigenvalue and the tangential eigenvalue (multiplicity n) of A_g.
struct SchoutenEigs {
    double lam_r = 0.0;
    double lam_t = 0.0;
    double t = 0.0;
    int n = 2;

    [[nodiscard]] Spectrum spectrum() const;
};

struct ModelConstants {
    int n = 0;
    int k = 0;
    double beta0 = 0.0;
    double ckn = 0.0;
};

/// 2^{-k} C(n+1, k): sigma_k(-A_g) on hyperbolic space.
double beta0(int n, int k);
/// 2^{1-k} sum_{j<k} (-1)^j C(n+1, k-1-j), the scalar value of T_{k-1}(-A_g)
/// on a Poincare-Einstein metric. Equals 2^{1-k} C(n, k-1).
double c_kn(int n, int k);
/// The closed form 2^{1-k} C(n, k) that is sometimes quoted for c_kn; it only
/// agrees with c_kn when 2k = n + 1. Kept for the identities table.
double c_kn_printed(int n, int k);
ModelConstants model_constants(int n, int k);

/// Closed-form warped-product Schouten eigenvalues at t > 0.
SchoutenEigs schouten_eigs_warped(const WarpedBackground& bg, double t);
/// t -> 0 limit of schouten_eigs_warped.
SchoutenEigs schouten_eigs_center(const WarpedBackground& bg);

/// Value, first and second t-derivatives of a radial function at one point.
struct RadialJet {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// Spectrum of A_{e^{2u} g} measured against g:
/// radial  lam_r - u'' + u'^2/2,  tangential  lam_t - u' phi'/phi - u'^2/2.
Spectrum conformal_schouten_eigs(const SchoutenEigs& a, const RadialJet& u, double log_warp_derivative);

/// |lam_r - lam_t| <= tol.
bool is_einstein(const SchoutenEigs& a, double tol);

}  // namespace sigmak
