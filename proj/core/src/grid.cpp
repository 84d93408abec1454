#include "sigmak/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "sigmak/errors.hpp"

namespace sigmak {

RadialGrid::RadialGrid(double truncation, int intervals) : T_(truncation), N_(intervals) {
    if (!(truncation > 0.0) || !std::isfinite(truncation)) {
        throw DomainError("RadialGrid: truncation radius must be positive");
    }
    if (intervals < 16) throw DomainError("RadialGrid: need at least 16 intervals");
    h_ = T_ / N_;
    t_.resize(static_cast<std::size_t>(N_) + 1);
    x_.resize(t_.size());
    for (std::size_t i = 0; i < t_.size(); ++i) {
        t_[i] = static_cast<double>(i) * h_;
        x_[i] = std::exp(-t_[i]);
    }
    t_.back() = T_;
    x_.back() = std::exp(-T_);
}

GridPtr make_grid(double truncation, int intervals) {
    return std::make_shared<const RadialGrid>(truncation, intervals);
}

GridFunction::GridFunction(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (!grid_) throw DomainError("GridFunction: null grid");
    if (values_.size() != grid_->size()) {
        throw DomainError("GridFunction: " + std::to_string(values_.size()) + " values for " +
                          std::to_string(grid_->size()) + " nodes");
    }
}

GridFunction::GridFunction(GridPtr grid)
    : GridFunction(grid, std::vector<double>(grid ? grid->size() : 0, 0.0)) {}

GridFunction GridFunction::sample(GridPtr grid, const std::function<double(double)>& f) {
    std::vector<double> v(grid->size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid->t(i));
    return {std::move(grid), std::move(v)};
}

GridFunction GridFunction::constant(GridPtr grid, double c) {
    std::vector<double> v(grid->size(), c);
    return {std::move(grid), std::move(v)};
}

GridFunction GridFunction::with_value(std::size_t i, double v) const {
    auto copy = values_;
    copy.at(i) = v;
    return {grid_, std::move(copy)};
}

GridFunction GridFunction::axpy(double s, const GridFunction& other) const {
    if (other.size() != size()) throw DomainError("GridFunction::axpy: size mismatch");
    auto out = values_;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += s * other.values_[i];
    return {grid_, std::move(out)};
}

double GridFunction::sup_norm() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

GridFunction d1(const GridFunction& f) {
    const auto v = f.values();
    const std::size_t last = v.size() - 1;
    const double h = f.grid().step();
    std::vector<double> out(v.size());
    out[0] = 0.0;
    for (std::size_t i = 1; i < last; ++i) out[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
    out[last] = (3.0 * v[last] - 4.0 * v[last - 1] + v[last - 2]) / (2.0 * h);
    return {f.grid_ptr(), std::move(out)};
}

GridFunction d2(const GridFunction& f) {
    const auto v = f.values();
    const std::size_t last = v.size() - 1;
    const double h2 = f.grid().step() * f.grid().step();
    std::vector<double> out(v.size());
    out[0] = 2.0 * (v[1] - v[0]) / h2;
    for (std::size_t i = 1; i < last; ++i) out[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / h2;
    out[last] = (2.0 * v[last] - 5.0 * v[last - 1] + 4.0 * v[last - 2] - v[last - 3]) / h2;
    return {f.grid_ptr(), std::move(out)};
}

double weighted_sup_norm(const GridFunction& f, double gamma, int order) {
    if (order < 0 || order > 2) throw DomainError("weighted_sup_norm: order must be 0, 1 or 2");
    const auto& g = f.grid();
    std::vector<GridFunction> jets{f};
    if (order >= 1) jets.push_back(d1(f));
    if (order >= 2) jets.push_back(d2(f));
    double best = 0.0;
    for (const auto& jet : jets) {
        for (std::size_t i = 0; i < jet.size(); ++i) {
            // (x d_x)^j = (-d_t)^j; the sign is irrelevant under |.|.
            best = std::max(best, std::exp(gamma * g.t(i)) * std::abs(jet[i]));
        }
    }
    return best;
}

double fit_slope(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) throw DomainError("fit_slope: need >= 2 paired points");
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    if (sxx == 0.0) throw DomainError("fit_slope: abscissae are all equal");
    return sxy / sxx;
}

double decay_rate(const GridFunction& f, double window, double floor) {
    if (!(window > 0.0 && window <= 1.0)) throw DomainError("decay_rate: window must lie in (0, 1]");
    const auto v = f.values();
    const auto first = static_cast<std::size_t>(std::floor((1.0 - window) * static_cast<double>(v.size() - 1)));
    double peak = 0.0;
    for (std::size_t i = first; i < v.size(); ++i) peak = std::max(peak, std::abs(v[i]));
    if (!(peak > 0.0) || !std::isfinite(peak)) {
        throw DecayEstimateError("decay too fast to estimate: tail window vanishes");
    }
    const double threshold = floor * peak;
    std::vector<double> lx, lf;
    for (std::size_t i = first; i < v.size(); ++i) {
        const double a = std::abs(v[i]);
        if (a > 0.0 && a >= threshold && std::isnormal(a)) {
            lx.push_back(-f.grid().t(i));
            lf.push_back(std::log(a));
        }
    }
    if (lx.size() < 2) throw DecayEstimateError("decay too fast to estimate: tail window is below the floor");
    return fit_slope(lx, lf);
}

void write_csv(std::ostream& os, const GridFunction& f) {
    os << "i,t,x,f\n";
    char buf[96];
    for (std::size_t i = 0; i < f.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g\n", i, f.grid().t(i), f.grid().x(i), f[i]);
        os << buf;
    }
}

}  // namespace sigmak
