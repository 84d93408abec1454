#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "sigmak/errors.hpp"
#include "sigmak/grid.hpp"

using namespace sigmak;
using Catch::Matchers::WithinAbs;

namespace {

double max_error(const GridFunction& approx, const std::function<double(double)>& exact, std::size_t from = 0) {
    double e = 0.0;
    for (std::size_t i = from; i < approx.size(); ++i) {
        e = std::max(e, std::abs(approx[i] - exact(approx.grid().t(i))));
    }
    return e;
}

}  // namespace

TEST_CASE("radial grid layout", "[grid]") {
    const RadialGrid g(16.0, 4000);
    CHECK(g.size() == 4001);
    CHECK_THAT(g.step() * g.intervals(), WithinAbs(16.0, 1e-14));
    CHECK(g.t(0) == 0.0);
    CHECK(g.x(0) == 1.0);
    for (std::size_t i = 1; i < g.size(); ++i) {
        CHECK(g.t(i) > g.t(i - 1));
        CHECK(g.x(i) < g.x(i - 1));
        CHECK(g.x(i) > 0.0);
    }
    CHECK_THROWS_AS(RadialGrid(0.0, 100), DomainError);
    CHECK_THROWS_AS(RadialGrid(16.0, 15), DomainError);
    CHECK_THROWS_AS(GridFunction(make_grid(1.0, 16), std::vector<double>(3)), DomainError);
}

TEST_CASE("difference stencils", "[grid]") {
    const auto g = make_grid(16.0, 4000);

    const auto quad = GridFunction::sample(g, [](double t) { return t * t; });
    for (double v : d2(quad).values()) CHECK_THAT(v, WithinAbs(2.0, 1e-6));

    const auto c = GridFunction::constant(g, 3.5);
    CHECK(d1(c).sup_norm() == 0.0);
    CHECK(d2(c).sup_norm() == 0.0);

    const auto s = GridFunction::sample(g, [](double t) { return std::sin(t); });
    CHECK(max_error(d1(s), [](double t) { return std::cos(t); }, 1) <= 1e-5);

    const auto co = GridFunction::sample(g, [](double t) { return std::cos(t); });
    CHECK(max_error(d1(co), [](double t) { return -std::sin(t); }) <= 1e-5);
    CHECK(max_error(d2(co), [](double t) { return -std::cos(t); }) <= 2e-5);
}

TEST_CASE("stencils converge at second order", "[grid][property]") {
    auto f = [](double t) { return std::exp(-0.5 * t * t) * std::cos(t); };
    auto df = [](double t) { return -std::exp(-0.5 * t * t) * (t * std::cos(t) + std::sin(t)); };
    auto ddf = [](double t) {
        return std::exp(-0.5 * t * t) * ((t * t - 2.0) * std::cos(t) + 2.0 * t * std::sin(t));
    };
    for (int n : {200, 400, 800}) {
        const auto coarse = GridFunction::sample(make_grid(6.0, n), f);
        const auto fine = GridFunction::sample(make_grid(6.0, 2 * n), f);
        const double r1 = max_error(d1(coarse), df) / max_error(d1(fine), df);
        const double r2 = max_error(d2(coarse), ddf) / max_error(d2(fine), ddf);
        CHECK(r1 >= 3.6);
        CHECK(r1 <= 4.4);
        CHECK(r2 >= 3.6);
        CHECK(r2 <= 4.4);
    }
}

TEST_CASE("weighted sup norm", "[grid]") {
    const auto g = make_grid(16.0, 4000);
    for (double gamma : {-1.0, 0.5, 4.0}) {
        const auto f = GridFunction::sample(g, [&](double t) { return std::exp(-gamma * t); });
        CHECK_THAT(weighted_sup_norm(f, gamma, 0), WithinAbs(1.0, 1e-12));
        const auto faster = GridFunction::sample(g, [&](double t) { return std::exp(-(gamma + 1.0) * t); });
        CHECK_THAT(weighted_sup_norm(faster, gamma, 0), WithinAbs(1.0, 1e-12));
        CHECK(weighted_sup_norm(faster, gamma, 0) <= 1.0);
    }
    CHECK_THROWS_AS(weighted_sup_norm(GridFunction(g), 0.0, 3), DomainError);
}

TEST_CASE("weighted norm under a shift of weight", "[grid][property]") {
    const auto g = make_grid(12.0, 6000);
    auto f = [](double t) { return std::exp(-3.0 * t) * (1.0 + 0.5 * std::cos(t)) + 0.2 * std::exp(-t * t); };
    for (double delta : {-0.5, 0.25, 1.0}) {
        const auto base = GridFunction::sample(g, f);
        const auto shifted = GridFunction::sample(g, [&](double t) { return f(t) * std::exp(-delta * t); });
        const double gamma = 1.5;
        CHECK_THAT(weighted_sup_norm(shifted, gamma + delta, 0), WithinAbs(weighted_sup_norm(base, gamma, 0), 1e-6));
        // With derivatives the shift mixes orders: equivalence up to (1 + |delta|)^j.
        for (int j = 1; j <= 2; ++j) {
            const double a = weighted_sup_norm(shifted, gamma + delta, j);
            const double b = weighted_sup_norm(base, gamma, j);
            const double c = std::pow(1.0 + std::abs(delta), j);
            CHECK(a <= c * b * (1 + 1e-6));
            CHECK(b <= c * a * (1 + 1e-6));
        }
    }
}

TEST_CASE("decay rate", "[grid]") {
    const auto g = make_grid(16.0, 4000);
    const auto x4 = GridFunction::sample(g, [](double t) { return std::exp(-4.0 * t); });
    CHECK_THAT(decay_rate(x4), WithinAbs(4.0, 1e-3));
    const auto two_term = GridFunction::sample(g, [](double t) {
        const double x = std::exp(-t);
        return x * x * x * x * (1.0 + 0.1 * x);
    });
    CHECK_THAT(decay_rate(two_term), WithinAbs(4.0, 2e-2));
    for (double c : {-3.0, 1e-9, 7e5}) {
        const auto scaled = GridFunction::sample(g, [&](double t) { return c * std::exp(-4.0 * t); });
        CHECK_THAT(decay_rate(scaled), WithinAbs(decay_rate(x4), 1e-12));
    }
    CHECK_THROWS_AS(decay_rate(GridFunction(g)), DecayEstimateError);
    const auto cliff = GridFunction::sample(g, [](double t) { return t < 11.0 ? 1.0 : 0.0; });
    CHECK_THROWS_AS(decay_rate(cliff), DecayEstimateError);
    CHECK_THROWS_AS(decay_rate(x4, 0.0), DomainError);
}

TEST_CASE("slope fit", "[grid]") {
    const std::vector<double> x{0, 1, 2, 3};
    const std::vector<double> y{1, 3, 5, 7};
    CHECK_THAT(fit_slope(x, y), WithinAbs(2.0, 1e-15));
    CHECK_THROWS_AS(fit_slope(std::vector<double>{1.0}, std::vector<double>{1.0}), DomainError);
    CHECK_THROWS_AS(fit_slope(std::vector<double>{1.0, 1.0}, std::vector<double>{1.0, 2.0}), DomainError);
}

TEST_CASE("csv output", "[grid]") {
    const auto g = make_grid(1.0, 16);
    const auto f = GridFunction::sample(g, [](double t) { return 1.0 / 3.0 + t; });
    std::ostringstream os;
    write_csv(os, f);
    const std::string s = os.str();
    CHECK(s.rfind("i,t,x,f\n", 0) == 0);
    CHECK(s.find('\r') == std::string::npos);
    CHECK(s.find("0,0,1,0.33333333333333331\n") != std::string::npos);
    std::size_t lines = 0;
    for (char ch : s) lines += ch == '\n';
    CHECK(lines == g->size() + 1);
}
