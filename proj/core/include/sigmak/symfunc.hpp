#pragma once

// Elementary symmetric functions, Newton transforms and the Gamma_k cones.
//
// Everything here is a pure function of its arguments. A spectrum is an
// unordered list of m real eigenvalues; matrices are real symmetric m x m.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace sigmak {

/// Eigenvalues of a symmetric form measured against a background metric.
class Spectrum {
public:
    explicit Spectrum(std::vector<double> values);

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }

    [[nodiscard]] Spectrum negated() const;
    [[nodiscard]] Spectrum sorted() const;

private:
    std::vector<double> values_;
};

/// Real symmetric matrix. Construction rejects any entry pair with
/// a(i,j) != a(j,i) bit for bit.
class SymMatrix {
public:
    explicit SymMatrix(Eigen::MatrixXd entries);

    static SymMatrix identity(int m);
    static SymMatrix diagonal(std::span<const double> d);
    /// (A + A^T)/2 for a square A, the only way to build from nearly symmetric data.
    static SymMatrix symmetrized(const Eigen::MatrixXd& a);

    [[nodiscard]] int size() const noexcept { return static_cast<int>(a_.rows()); }
    [[nodiscard]] double operator()(int i, int j) const { return a_(i, j); }
    [[nodiscard]] const Eigen::MatrixXd& matrix() const noexcept { return a_; }
    [[nodiscard]] double frobenius_norm() const { return a_.norm(); }

private:
    Eigen::MatrixXd a_;
};

enum class Cone { Plus, Minus, Neither };

struct ConeLabel {
    Cone tag = Cone::Neither;
    int k = 1;
};

/// C(n, k) as a double; 0 outside 0 <= k <= n.
double binomial(int n, int k);

/// All of sigma_0..sigma_m by the degree-graded product recurrence.
std::vector<double> elementary_symmetric(std::span<const double> s);

/// k-th elementary symmetric polynomial; sigma_0 = 1. Throws DomainError unless 0 <= k <= m.
double sigma_k(std::span<const double> s, int k);
double sigma_k(const Spectrum& s, int k);

/// sigma_k of the spectrum (r, t, ..., t) with t repeated `mult` times, in closed form:
/// C(mult,k-1) r t^{k-1} + C(mult,k) t^k.
double sigma_k_radial(double r, double t, int mult, int k);

/// Partial derivatives of sigma_k with respect to each entry, i.e. sigma_{k-1}
/// of the spectrum with that entry removed (the diagonal of T_{k-1}(diag s)).
std::vector<double> sigma_k_gradient(std::span<const double> s, int k);

/// sigma_k of the eigenvalues of B. Sums of principal minors for m <= 6,
/// symmetric eigensolver otherwise.
double sigma_k_matrix(const SymMatrix& b, int k);

/// T_q(B) = sigma_q I - sigma_{q-1} B + ... + (-1)^q B^q via T_q = sigma_q I - B T_{q-1}.
SymMatrix newton_transform(const SymMatrix& b, int q);

/// <T_{k-1}(B), Bdot>, the derivative of sigma_k along Bdot.
double reilly_derivative(const SymMatrix& b, const SymMatrix& bdot, int k);

/// PLUS iff sigma_j(s) > 0 for j = 1..k, MINUS iff the same holds for -s.
ConeLabel cone_membership(const Spectrum& s, int k);

/// Real roots, with multiplicity and sorted ascending, of
/// lambda^m - sigma_1 lambda^{m-1} + ... + (-1)^m sigma_m.
/// Throws NonRealSpectrumError if a root is off the real axis by more than
/// 1e-8 (1 + max|sigma_j|).
Spectrum eigs_from_sigmas(std::span<const double> sigmas);

}  // namespace sigmak
