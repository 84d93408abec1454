#include "sigmak/geometry.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "sigmak/errors.hpp"

namespace sigmak {

namespace {

// Bump psi(t) = t^3 exp(-t^2) and its first two derivatives. Odd in t, so the
// perturbed warp stays smooth at the center.
double bump(double t) { return t * t * t * std::exp(-t * t); }
double dbump(double t) {
    const double t2 = t * t;
    return (3.0 * t2 - 2.0 * t2 * t2) * std::exp(-t2);
}
double ddbump(double t) {
    const double t2 = t * t;
    return t * (6.0 - 14.0 * t2 + 4.0 * t2 * t2) * std::exp(-t2);
}

void check_order(int n, int k, const char* what) {
    if (n < 1 || k < 1 || k > n + 1) {
        throw DomainError(std::string(what) + ": need 1 <= k <= n+1 (n=" + std::to_string(n) +
                          ", k=" + std::to_string(k) + ")");
    }
}

}  // namespace

std::string_view to_string(WarpFamily f) {
    switch (f) {
        case WarpFamily::Hyperbolic: return "hyperbolic";
        case WarpFamily::Perturbed: return "perturbed";
    }
    return "unknown";
}

WarpFamily warp_family_from_string(std::string_view name) {
    if (name == "hyperbolic") return WarpFamily::Hyperbolic;
    if (name == "perturbed") return WarpFamily::Perturbed;
    throw DomainError("unknown warp family '" + std::string(name) + "'");
}

WarpedBackground::WarpedBackground(int n, WarpFamily family, double amplitude)
    : n_(n), family_(family), a_(family == WarpFamily::Hyperbolic ? 0.0 : amplitude) {
    if (n_ < 2) throw DomainError("WarpedBackground: boundary dimension n must be >= 2");
    if (!std::isfinite(amplitude)) throw DomainError("WarpedBackground: amplitude is not finite");
    if (a_ != 0.0) {
        // The bump is negligible beyond t = 8; sinh dominates from there on.
        for (int i = 1; i <= 8000; ++i) {
            const double t = 1e-3 * i;
            if (!(phi(t) > 0.0)) {
                throw DomainError("WarpedBackground: warp is not positive at t=" + std::to_string(t) +
                                  " for amplitude " + std::to_string(a_));
            }
        }
    }
}

double WarpedBackground::phi(double t) const { return std::sinh(t) + a_ * bump(t); }
double WarpedBackground::dphi(double t) const { return std::cosh(t) + a_ * dbump(t); }
double WarpedBackground::ddphi(double t) const { return std::sinh(t) + a_ * ddbump(t); }

double WarpedBackground::dphi_sq_minus_one(double t) const {
    const double s = std::sinh(t);
    const double dp = a_ * dbump(t);
    return s * s + dp * (2.0 * std::cosh(t) + dp);
}

double WarpedBackground::log_warp_derivative(double t) const { return dphi(t) / phi(t); }

double WarpedBackground::center_third_derivative() const { return 1.0 + 6.0 * a_; }

Spectrum SchoutenEigs::spectrum() const {
    std::vector<double> v(static_cast<std::size_t>(n) + 1, lam_t);
    v[0] = lam_r;
    return Spectrum(std::move(v));
}

double beta0(int n, int k) {
    check_order(n, k, "beta0");
    return std::ldexp(binomial(n + 1, k), -k);
}

double c_kn(int n, int k) {
    check_order(n, k, "c_kn");
    double sum = 0.0;
    for (int j = 0; j < k; ++j) sum += (j % 2 == 0 ? 1.0 : -1.0) * binomial(n + 1, k - 1 - j);
    return std::ldexp(sum, 1 - k);
}

double c_kn_printed(int n, int k) {
    check_order(n, k, "c_kn_printed");
    return std::ldexp(binomial(n, k), 1 - k);
}

ModelConstants model_constants(int n, int k) { return {n, k, beta0(n, k), c_kn(n, k)}; }

SchoutenEigs schouten_eigs_warped(const WarpedBackground& bg, double t) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw DomainError("schouten_eigs_warped: need finite t > 0, got " + std::to_string(t));
    }
    const double n = bg.n();
    const double p = bg.phi(t);
    if (!(p > 0.0)) throw DomainError("schouten_eigs_warped: warp is not positive");
    const double radial_curv = bg.ddphi(t) / p;
    const double tangential_curv = bg.dphi_sq_minus_one(t) / (p * p);
    const double ric_r = -n * radial_curv;
    const double ric_t = -radial_curv - (n - 1.0) * tangential_curv;
    const double scal = ric_r + n * ric_t;
    const double shift = scal / (2.0 * n);
    return {(ric_r - shift) / (n - 1.0), (ric_t - shift) / (n - 1.0), t, bg.n()};
}

SchoutenEigs schouten_eigs_center(const WarpedBackground& bg) {
    const double lam = -0.5 * bg.center_third_derivative();
    return {lam, lam, 0.0, bg.n()};
}

Spectrum conformal_schouten_eigs(const SchoutenEigs& a, const RadialJet& u, double log_warp_derivative) {
    const double half_sq = 0.5 * u.d1 * u.d1;
    std::vector<double> v(static_cast<std::size_t>(a.n) + 1,
                          a.lam_t - u.d1 * log_warp_derivative - half_sq);
    v[0] = a.lam_r - u.d2 + half_sq;
    return Spectrum(std::move(v));
}

bool is_einstein(const SchoutenEigs& a, double tol) { return std::abs(a.lam_r - a.lam_t) <= tol; }

}  // namespace sigmak
