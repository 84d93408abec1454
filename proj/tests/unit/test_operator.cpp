#include <catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>

#include "oracles.hpp"
#include "sigmak/errors.hpp"
#include "sigmak/operator.hpp"

using namespace sigmak;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

SigmaProblem hyperbolic_problem(int n, int k, double T = 16.0, int N = 4000) {
    return {k, beta0(n, k), WarpedBackground::hyperbolic(n), make_grid(T, N)};
}

double sup_head(const GridFunction& f) {
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) m = std::max(m, std::abs(f[i]));
    return m;
}

}  // namespace

TEST_CASE("problem construction", "[operator]") {
    const auto g = make_grid(16.0, 400);
    CHECK_THROWS_AS(SigmaProblem(0, 1.0, WarpedBackground::hyperbolic(3), g), DomainError);
    CHECK_THROWS_AS(SigmaProblem(5, 1.0, WarpedBackground::hyperbolic(3), g), DomainError);
    CHECK_THROWS_AS(SigmaProblem(2, 0.0, WarpedBackground::hyperbolic(3), g), DomainError);
    CHECK_THROWS_AS(SigmaProblem(2, -1.0, WarpedBackground::hyperbolic(3), g), DomainError);
    CHECK_THROWS_AS(SigmaProblem(2, 1.0, WarpedBackground::hyperbolic(3), nullptr), DomainError);

    const SigmaProblem p(2, beta0(3, 2), WarpedBackground::hyperbolic(3), g);
    CHECK(p.boundary_value() == 0.0);
    const auto q = p.with_beta(beta0(3, 2) * std::exp(4.0 * 0.1));
    CHECK_THAT(q.boundary_value(), WithinAbs(-0.1, 1e-15));
    CHECK(q.lam_r().size() == g->size());
    CHECK_THROWS_AS(p.with_beta(-2.0), DomainError);
}

TEST_CASE("residual on the hyperbolic background", "[operator]") {
    for (int n = 2; n <= 5; ++n) {
        for (int k = 1; k <= n + 1; ++k) {
            const auto p = hyperbolic_problem(n, k, 12.0, 1000);
            const GridFunction zero(p.grid_ptr());
            CHECK(residual(p, zero).sup_norm() <= 1e-12);

            const double delta = 0.25;
            const auto shifted = residual(p.with_beta(p.beta() + delta), zero);
            for (double v : shifted.values()) CHECK_THAT(v, WithinAbs(-delta, 1e-12));

            const double c = 0.07;
            const auto lifted = residual(p, GridFunction::constant(p.grid_ptr(), c));
            for (double v : lifted.values()) {
                CHECK_THAT(v, WithinAbs(p.beta() * (1.0 - std::exp(2.0 * k * c)), 1e-12));
            }
        }
    }
}

TEST_CASE("residual reports non-finite nodes", "[operator]") {
    const auto p = hyperbolic_problem(3, 2, 16.0, 400);
    const auto huge = GridFunction::constant(p.grid_ptr(), 800.0);
    CHECK_THROWS_MATCHES(residual(p, huge), EvaluationError, Catch::Matchers::MessageMatches(ContainsSubstring("node 0")));
}

TEST_CASE("linearization at the model solution", "[operator]") {
    for (auto [n, k] : {std::pair{3, 1}, {3, 2}, {4, 3}, {2, 3}}) {
        const auto p = hyperbolic_problem(n, k, 16.0, 800);
        const auto lin = linearize(p, GridFunction(p.grid_ptr()));
        const double c = c_kn(n, k);
        const double h = p.grid().step();
        const double zeroth = -2.0 * k * p.beta();
        REQUIRE(lin.size() == 800);
        CHECK_THAT(lin.diag()[0], WithinRel(-2.0 * (n + 1) * c / (h * h) + zeroth, 1e-13));
        CHECK_THAT(lin.super()[0], WithinRel(2.0 * (n + 1) * c / (h * h), 1e-13));
        for (std::size_t i = 1; i < lin.size(); ++i) {
            const double t = p.grid().t(i);
            const double first = n * c * std::cosh(t) / std::sinh(t);
            CHECK_THAT(lin.sub()[i], WithinRel(c / (h * h) - first / (2 * h), 1e-12));
            CHECK_THAT(lin.diag()[i], WithinRel(-2.0 * c / (h * h) + zeroth, 1e-12));
            CHECK_THAT(lin.super()[i], WithinRel(c / (h * h) + first / (2 * h), 1e-12));
        }
    }
}

TEST_CASE("k = 1 linearization is the Laplacian shift", "[operator]") {
    const auto bg = WarpedBackground::perturbed(3, 0.2);
    const auto g = make_grid(10.0, 500);
    const SigmaProblem p(1, 1.7, bg, g);
    oracle::Rng rng(41);
    const auto u = oracle::random_profile(g, rng, 0.1);
    const auto c = linear_coefficients(p, u);
    const auto du = d1(u);
    // sigma_1 = b_r + n b_t linearizes to phi'' + (n phi'/phi + (n-1) u') phi'.
    for (std::size_t i = 1; i < c.second.size(); ++i) {
        CHECK_THAT(c.second[i], WithinAbs(1.0, 1e-15));
        CHECK_THAT(c.first[i], WithinAbs(3.0 * bg.log_warp_derivative(g->t(i)) + 2.0 * du[i], 1e-12));
    }
    CHECK(c.second[0] == 4.0);
}

TEST_CASE("linearization matches the finite-difference Jacobian", "[operator][oracle]") {
    oracle::Rng rng(42);
    const auto g = make_grid(16.0, 400);
    for (int trial = 0; trial < 10; ++trial) {
        const SigmaProblem p(2, beta0(3, 2), WarpedBackground::perturbed(3, 0.01), g);
        const auto u = oracle::random_profile(g, rng, 0.05);
        const auto dir = oracle::random_profile(g, rng, 1.0);
        const auto exact = linearize(p, u).apply(dir.values());
        const auto fd = oracle::fd_directional(p, u, dir, 1e-5);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < exact.size(); ++i) {
            num = std::max(num, std::abs(exact[i] - fd[i]));
            den = std::max(den, std::abs(exact[i]));
        }
        CHECK(num <= 1e-6 * den);
    }
}

TEST_CASE("linearization defect is second order", "[operator][property]") {
    oracle::Rng rng(43);
    const auto g = make_grid(16.0, 400);
    const SigmaProblem p(2, beta0(3, 2), WarpedBackground::perturbed(3, 0.01), g);
    for (int trial = 0; trial < 20; ++trial) {
        const auto u = oracle::random_profile(g, rng, 0.05);
        const auto dir = oracle::random_profile(g, rng, 0.5);
        const auto f0 = residual(p, u);
        const auto l = linearize(p, u).apply(dir.values());
        auto defect = [&](double eps) {
            const auto f = residual(p, u.axpy(eps, dir));
            double m = 0.0;
            for (std::size_t i = 0; i < l.size(); ++i) m = std::max(m, std::abs(f[i] - f0[i] - eps * l[i]));
            return m / dir.sup_norm();
        };
        const double ratio = defect(1e-3) / defect(1e-4);
        CHECK(ratio >= 85.0);
        CHECK(ratio <= 115.0);
    }
}

TEST_CASE("ellipticity inside the cone", "[operator][property]") {
    oracle::Rng rng(44);
    const auto g = make_grid(16.0, 400);
    int inside = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const int k = 1 + trial % 4;
        const SigmaProblem p(k, beta0(3, k), WarpedBackground::perturbed(3, 0.01), g);
        const auto u = oracle::random_profile(g, rng, 0.3);
        if (!spectra_in_cone(p, u)) continue;
        ++inside;
        const auto c = linear_coefficients(p, u);
        for (double a : c.second) CHECK(a > 0.0);
    }
    CHECK(inside > 10);
}

TEST_CASE("tridiagonal solves", "[operator]") {
    oracle::Rng rng(45);
    const int n = 30;
    auto sub = oracle::random_vector(n, rng, -1.0, 1.0);
    auto diag = oracle::random_vector(n, rng, 3.0, 4.0);
    auto super = oracle::random_vector(n, rng, -1.0, 1.0);
    const TridiagonalOperator op(sub, diag, super, 0.0);
    const auto x = oracle::random_vector(n, rng, -1.0, 1.0);
    const auto y = op.apply(x);
    const auto back = op.solve(y);
    for (int i = 0; i < n; ++i) CHECK_THAT(back[i], WithinAbs(x[i], 1e-13));

    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        dense(i, i) = diag[i];
        if (i > 0) dense(i, i - 1) = sub[i];
        if (i + 1 < n) dense(i, i + 1) = super[i];
    }
    const Eigen::VectorXd want = dense.lu().solve(Eigen::Map<const Eigen::VectorXd>(y.data(), n));
    for (int i = 0; i < n; ++i) CHECK_THAT(back[i], WithinAbs(want(i), 1e-12));

    const auto closed = op.with_closing_row(-0.5, 1.0);
    CHECK(closed.size() == n + 1);

    CHECK_THROWS_AS(op.solve(std::vector<double>(n + 1)), DomainError);
    CHECK_THROWS_AS(op.apply(std::vector<double>(n + 2)), DomainError);
    diag[0] = 0.0;
    const TridiagonalOperator singular(sub, diag, super, 0.0);
    CHECK_THROWS_MATCHES(singular.solve(std::vector<double>(n, 1.0)), SingularLinearizationError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("linearization not invertible")));
    CHECK_THROWS_AS(TridiagonalOperator({1.0}, {1.0, 2.0}, {1.0}, 0.0), DomainError);
}

TEST_CASE("indicial roots", "[operator]") {
    auto r = indicial_roots(3, 1, 2.0);
    CHECK_THAT(r.gamma_minus, WithinAbs(-1.0, 1e-14));
    CHECK_THAT(r.gamma_plus, WithinAbs(4.0, 1e-14));
    r = indicial_roots(3, 2, beta0(3, 2));
    CHECK_THAT(r.gamma_minus, WithinAbs(-1.0, 1e-14));
    CHECK_THAT(r.gamma_plus, WithinAbs(4.0, 1e-14));
    r = indicial_roots(3, 1, 4.0);
    CHECK_THAT(r.gamma_minus, WithinAbs(1.5 - std::sqrt(2.25 + 8.0), 1e-14));
    CHECK_THAT(r.gamma_plus, WithinAbs(1.5 + std::sqrt(2.25 + 8.0), 1e-14));
    CHECK_THROWS_AS(indicial_roots(3, 1, 0.0), DomainError);

    for (int n = 1; n <= 12; ++n) {
        for (int k = 1; k <= n + 1; ++k) {
            const auto m = indicial_roots(n, k, beta0(n, k));
            CHECK_THAT(m.gamma_minus, WithinAbs(-1.0, 1e-12));
            CHECK_THAT(m.gamma_plus, WithinAbs(n + 1.0, 1e-12));
            for (double beta : {0.1, 1.0, 7.5}) {
                const auto q = indicial_roots(n, k, beta);
                const double c = c_kn(n, k);
                CHECK(q.gamma_minus < 0.0);
                CHECK(q.gamma_plus > 0.0);
                for (double gm : {q.gamma_minus, q.gamma_plus}) {
                    const double value = c * (gm * gm - n * gm) - 2.0 * k * beta;
                    CHECK(std::abs(value) <= 1e-12 * 2.0 * k * beta);
                }
            }
        }
    }
}

TEST_CASE("normal operator", "[operator]") {
    const auto g = make_grid(16.0, 200);
    const auto a = normal_operator_coeffs(SigmaProblem(1, 2.0, WarpedBackground::hyperbolic(3), g));
    CHECK(a.second == 1.0);
    CHECK(a.first == -3.0);
    CHECK(a.constant == -4.0);
    const SigmaProblem p(2, 1.5, WarpedBackground::hyperbolic(3), g);
    const auto b = normal_operator_coeffs(p);
    CHECK(b.second == 1.5);
    CHECK(b.first == -4.5);
    CHECK(b.constant == -6.0);
    const auto r = indicial_roots(3, 2, 1.5);
    CHECK_THAT(b.on_power(r.gamma_plus), WithinAbs(0.0, 1e-12));
    CHECK_THAT(b.on_power(r.gamma_minus), WithinAbs(0.0, 1e-12));
}

TEST_CASE("indicial powers are annihilated to leading order", "[operator][property]") {
    // Continuous coefficients at u = 0 applied to exact derivatives of x^gamma.
    for (auto [n, k] : {std::pair{3, 1}, {3, 2}, {4, 3}}) {
        const auto p = hyperbolic_problem(n, k, 8.0, 800);
        const auto c = linear_coefficients(p, GridFunction(p.grid_ptr()));
        const auto roots = indicial_roots(n, k, p.beta());
        auto relative_image = [&](double gamma) {
            std::vector<double> lx, ly;
            for (std::size_t i = 1; i < c.second.size(); ++i) {
                const double t = p.grid().t(i);
                if (t < 8.0 - std::log(10.0)) continue;
                // L(x^gamma) / x^gamma with d/dt x^gamma = -gamma x^gamma.
                const double v = c.second[i] * gamma * gamma - c.first[i] * gamma + c.zeroth[i];
                lx.push_back(-t);
                ly.push_back(std::log(std::abs(v)));
            }
            return fit_slope(lx, ly);
        };
        CHECK(relative_image(roots.gamma_plus) >= 1.0);
        CHECK(relative_image(roots.gamma_minus) >= 1.0);
        const double mid = 0.5 * (roots.gamma_minus + roots.gamma_plus);
        CHECK_THAT(relative_image(mid), WithinAbs(0.0, 1e-3));
    }
}

TEST_CASE("coefficients approach the Einstein operator", "[operator][property]") {
    const auto bg = WarpedBackground::perturbed(3, 0.01);
    const auto g = make_grid(8.0, 800);
    const SigmaProblem p(2, beta0(3, 2), bg, g);
    const auto c = linear_coefficients(p, GridFunction(g));
    const double ckn = c_kn(3, 2);
    for (std::size_t i = 200; i < c.second.size(); ++i) {
        const double t = g->t(i);
        // O(x^3) with a bounded constant.
        const double inv_x3 = std::exp(3.0 * t);
        CHECK(std::abs(c.second[i] - ckn) * inv_x3 <= 10.0);
        CHECK(std::abs(c.first[i] - 3.0 * ckn * bg.log_warp_derivative(t)) * inv_x3 <= 10.0);
    }
}
