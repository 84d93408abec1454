#include "sigmak/symfunc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "sigmak/errors.hpp"

namespace sigmak {

namespace {

void require_finite(std::span<const double> v, const char* what) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw DomainError(std::string(what) + ": non-finite entry");
        }
    }
}

void check_order(int k, std::size_t m, const char* what) {
    if (k < 0 || static_cast<std::size_t>(k) > m) {
        throw DomainError(std::string(what) + ": order " + std::to_string(k) +
                          " outside [0, " + std::to_string(m) + "]");
    }
}

// Sum of all k x k principal minors.
double principal_minor_sum(const Eigen::MatrixXd& a, int k) {
    const int m = static_cast<int>(a.rows());
    if (k == 0) return 1.0;
    double total = 0.0;
    std::vector<int> idx;
    idx.reserve(static_cast<std::size_t>(k));
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        if (std::popcount(mask) != k) continue;
        idx.clear();
        for (int i = 0; i < m; ++i) {
            if (mask & (1u << i)) idx.push_back(i);
        }
        Eigen::MatrixXd sub(k, k);
        for (int r = 0; r < k; ++r) {
            for (int c = 0; c < k; ++c) sub(r, c) = a(idx[r], idx[c]);
        }
        total += sub.determinant();
    }
    return total;
}

std::vector<double> matrix_sigmas(const SymMatrix& b) {
    const int m = b.size();
    if (m <= 6) {
        std::vector<double> out(static_cast<std::size_t>(m) + 1);
        for (int k = 0; k <= m; ++k) out[k] = principal_minor_sum(b.matrix(), k);
        return out;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b.matrix(), Eigen::EigenvaluesOnly);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + m);
    return elementary_symmetric(ev);
}

// Monic polynomial lambda^m - s1 lambda^{m-1} + ..., coefficients highest degree first.
std::vector<double> char_poly(std::span<const double> sigmas) {
    std::vector<double> c(sigmas.size() + 1);
    c[0] = 1.0;
    for (std::size_t j = 0; j < sigmas.size(); ++j) {
        c[j + 1] = (j % 2 == 0 ? -1.0 : 1.0) * sigmas[j];
    }
    return c;
}

std::vector<double> derivative(const std::vector<double>& c) {
    const std::size_t deg = c.size() - 1;
    if (deg == 0) return {0.0};
    std::vector<double> d(deg);
    for (std::size_t j = 0; j < deg; ++j) d[j] = c[j] * static_cast<double>(deg - j);
    return d;
}

double horner(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (double a : c) v = v * x + a;
    return v;
}

// Newton refinement of a simple root of c near x0; returns x0 if it does not help.
double polish(const std::vector<double>& c, double x0, double radius) {
    const auto dc = derivative(c);
    double x = x0;
    double fx = std::abs(horner(c, x));
    for (int it = 0; it < 8 && fx > 0.0; ++it) {
        const double d = horner(dc, x);
        if (d == 0.0) break;
        const double next = x - horner(c, x) / d;
        const double fn = std::abs(horner(c, next));
        if (!(fn < fx) || std::abs(next - x0) > radius) break;
        x = next;
        fx = fn;
    }
    return x;
}

}  // namespace

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return std::round(r);
}

Spectrum::Spectrum(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw DomainError("Spectrum: need at least one eigenvalue");
    require_finite(values_, "Spectrum");
}

Spectrum Spectrum::negated() const {
    std::vector<double> v(values_);
    for (double& x : v) x = -x;
    return Spectrum(std::move(v));
}

Spectrum Spectrum::sorted() const {
    std::vector<double> v(values_);
    std::sort(v.begin(), v.end());
    return Spectrum(std::move(v));
}

SymMatrix::SymMatrix(Eigen::MatrixXd entries) : a_(std::move(entries)) {
    if (a_.rows() < 1 || a_.rows() != a_.cols()) {
        throw DomainError("SymMatrix: need a non-empty square matrix");
    }
    for (Eigen::Index i = 0; i < a_.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < a_.cols(); ++j) {
            if (a_(i, j) != a_(j, i)) throw DomainError("SymMatrix: entries are not symmetric");
        }
    }
    if (!a_.allFinite()) throw DomainError("SymMatrix: non-finite entry");
}

SymMatrix SymMatrix::identity(int m) {
    if (m < 1) throw DomainError("SymMatrix::identity: m must be positive");
    return SymMatrix(Eigen::MatrixXd::Identity(m, m));
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d.size()),
                                              static_cast<Eigen::Index>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) a(i, i) = d[i];
    return SymMatrix(std::move(a));
}

SymMatrix SymMatrix::symmetrized(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) throw DomainError("SymMatrix::symmetrized: matrix is not square");
    Eigen::MatrixXd s = 0.5 * (a + a.transpose());
    return SymMatrix(std::move(s));
}

std::vector<double> elementary_symmetric(std::span<const double> s) {
    std::vector<double> e(s.size() + 1, 0.0);
    e[0] = 1.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j >= 1; --j) e[j] += s[i] * e[j - 1];
    }
    return e;
}

double sigma_k(std::span<const double> s, int k) {
    check_order(k, s.size(), "sigma_k");
    if (k == 0) return 1.0;
    // Only the first k+1 levels are needed.
    std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
    e[0] = 1.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const std::size_t top = std::min<std::size_t>(i + 1, static_cast<std::size_t>(k));
        for (std::size_t j = top; j >= 1; --j) e[j] += s[i] * e[j - 1];
    }
    return e[static_cast<std::size_t>(k)];
}

double sigma_k(const Spectrum& s, int k) { return sigma_k(s.values(), k); }

double sigma_k_radial(double r, double t, int mult, int k) {
    check_order(k, static_cast<std::size_t>(mult) + 1, "sigma_k_radial");
    if (k == 0) return 1.0;
    return binomial(mult, k - 1) * r * std::pow(t, k - 1) + binomial(mult, k) * std::pow(t, k);
}

std::vector<double> sigma_k_gradient(std::span<const double> s, int k) {
    check_order(k, s.size(), "sigma_k_gradient");
    std::vector<double> grad(s.size(), 0.0);
    if (k == 0) return grad;
    std::vector<double> rest;
    rest.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        rest.clear();
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (j != i) rest.push_back(s[j]);
        }
        grad[i] = sigma_k(rest, k - 1);
    }
    return grad;
}

double sigma_k_matrix(const SymMatrix& b, int k) {
    check_order(k, static_cast<std::size_t>(b.size()), "sigma_k_matrix");
    if (b.size() <= 6) return principal_minor_sum(b.matrix(), k);
    return matrix_sigmas(b)[static_cast<std::size_t>(k)];
}

SymMatrix newton_transform(const SymMatrix& b, int q) {
    const int m = b.size();
    check_order(q, static_cast<std::size_t>(m), "newton_transform");
    Eigen::MatrixXd t = Eigen::MatrixXd::Identity(m, m);
    if (q == 0) return SymMatrix(std::move(t));
    const auto sig = matrix_sigmas(b);
    for (int j = 1; j <= q; ++j) {
        t = sig[static_cast<std::size_t>(j)] * Eigen::MatrixXd::Identity(m, m) - b.matrix() * t;
    }
    return SymMatrix::symmetrized(t);
}

double reilly_derivative(const SymMatrix& b, const SymMatrix& bdot, int k) {
    if (b.size() != bdot.size()) {
        throw DomainError("reilly_derivative: dimension mismatch (" + std::to_string(b.size()) +
                          " vs " + std::to_string(bdot.size()) + ")");
    }
    if (k < 1 || k > b.size()) {
        throw DomainError("reilly_derivative: order " + std::to_string(k) + " outside [1, m]");
    }
    const SymMatrix t = newton_transform(b, k - 1);
    return (t.matrix().array() * bdot.matrix().array()).sum();
}

ConeLabel cone_membership(const Spectrum& s, int k) {
    if (k < 1 || static_cast<std::size_t>(k) > s.size()) {
        throw DomainError("cone_membership: order " + std::to_string(k) + " outside [1, m]");
    }
    const auto plus = elementary_symmetric(s.values());
    const auto minus = elementary_symmetric(s.negated().values());
    bool in_plus = true;
    bool in_minus = true;
    for (int j = 1; j <= k; ++j) {
        in_plus = in_plus && plus[j] > 0.0;
        in_minus = in_minus && minus[j] > 0.0;
    }
    if (in_plus) return {Cone::Plus, k};
    if (in_minus) return {Cone::Minus, k};
    return {Cone::Neither, k};
}

Spectrum eigs_from_sigmas(std::span<const double> sigmas) {
    const int m = static_cast<int>(sigmas.size());
    if (m < 1) throw DomainError("eigs_from_sigmas: empty input");
    require_finite(sigmas, "eigs_from_sigmas");

    double scale = 1.0;
    for (double s : sigmas) scale = std::max(scale, 1.0 + std::abs(s));
    const double imag_tol = 1e-8 * scale;

    const auto poly = char_poly(sigmas);

    std::vector<std::complex<double>> z;
    if (m == 1) {
        z.emplace_back(sigmas[0], 0.0);
    } else {
        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(m, m);
        for (int i = 1; i < m; ++i) comp(i, i - 1) = 1.0;
        for (int i = 0; i < m; ++i) comp(i, m - 1) = -poly[static_cast<std::size_t>(m - i)];
        Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
        if (es.info() != Eigen::Success) {
            throw NonRealSpectrumError("eigs_from_sigmas: companion eigensolver did not converge");
        }
        for (int i = 0; i < m; ++i) z.push_back(es.eigenvalues()[i]);
    }

    // A p-fold root shows up as p eigenvalues scattered by ~eps^{1/p} around it.
    // Their centroid is well conditioned, so clusters are merged first.
    struct Root {
        std::complex<double> value;
        int multiplicity;
    };
    std::vector<Root> roots;
    std::vector<bool> used(z.size(), false);
    const double eps = std::numeric_limits<double>::epsilon();
    for (int p = m; p >= 2; --p) {
        const double radius = 16.0 * std::pow(eps * scale, 1.0 / p);
        for (std::size_t seed = 0; seed < z.size(); ++seed) {
            if (used[seed]) continue;
            std::vector<std::size_t> cand;
            for (std::size_t j = 0; j < z.size(); ++j) {
                if (!used[j]) cand.push_back(j);
            }
            if (static_cast<int>(cand.size()) < p) break;
            std::sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) {
                return std::abs(z[a] - z[seed]) < std::abs(z[b] - z[seed]);
            });
            cand.resize(static_cast<std::size_t>(p));
            std::complex<double> c = 0.0;
            for (auto j : cand) c += z[j];
            c /= static_cast<double>(p);
            double spread = 0.0;
            for (auto j : cand) spread = std::max(spread, std::abs(z[j] - c));
            if (spread <= radius * (1.0 + std::abs(c))) {
                for (auto j : cand) used[j] = true;
                roots.push_back({c, p});
            }
        }
    }
    for (std::size_t j = 0; j < z.size(); ++j) {
        if (!used[j]) roots.push_back({z[j], 1});
    }

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(m));
    for (const auto& r : roots) {
        if (std::abs(r.value.imag()) > imag_tol) {
            throw NonRealSpectrumError("eigs_from_sigmas: non-real spectrum (root " +
                                       std::to_string(r.value.real()) + " + " +
                                       std::to_string(r.value.imag()) + "i)");
        }
        // A root of multiplicity p is a simple root of the (p-1)th derivative.
        auto q = poly;
        for (int d = 1; d < r.multiplicity; ++d) q = derivative(q);
        const double radius = 16.0 * std::pow(eps * scale, 1.0 / r.multiplicity) *
                              (1.0 + std::abs(r.value.real()));
        const double x = polish(q, r.value.real(), radius);
        for (int d = 0; d < r.multiplicity; ++d) out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return Spectrum(std::move(out));
}

}  // namespace sigmak
