#pragma once

// Uniform radial lattice t_i = i h on [0, T] with boundary coordinate x = e^{-t}.
// In this coordinate x d/dx = -d/dt, so the uniformly degenerate vector field
// has constant coefficients on the grid.

#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

namespace sigmak {

class RadialGrid {
public:
    /// Throws DomainError unless T > 0 and N >= 16.
    RadialGrid(double truncation, int intervals);

    [[nodiscard]] double truncation() const noexcept { return T_; }
    [[nodiscard]] int intervals() const noexcept { return N_; }
    [[nodiscard]] double step() const noexcept { return h_; }
    /// Number of nodes, N + 1.
    [[nodiscard]] std::size_t size() const noexcept { return t_.size(); }

    [[nodiscard]] double t(std::size_t i) const { return t_[i]; }
    [[nodiscard]] double x(std::size_t i) const { return x_[i]; }
    [[nodiscard]] std::span<const double> t_nodes() const noexcept { return t_; }
    [[nodiscard]] std::span<const double> x_nodes() const noexcept { return x_; }

private:
    double T_;
    int N_;
    double h_;
    std::vector<double> t_;
    std::vector<double> x_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

GridPtr make_grid(double truncation, int intervals);

/// Samples on every node of a shared grid.
class GridFunction {
public:
    GridFunction(GridPtr grid, std::vector<double> values);
    /// All zeros.
    explicit GridFunction(GridPtr grid);

    static GridFunction sample(GridPtr grid, const std::function<double(double t)>& f);
    static GridFunction constant(GridPtr grid, double c);

    [[nodiscard]] const RadialGrid& grid() const noexcept { return *grid_; }
    [[nodiscard]] const GridPtr& grid_ptr() const noexcept { return grid_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] double back() const { return values_.back(); }

    /// Copy with one node replaced.
    [[nodiscard]] GridFunction with_value(std::size_t i, double v) const;
    /// this + s * other on the same grid.
    [[nodiscard]] GridFunction axpy(double s, const GridFunction& other) const;
    [[nodiscard]] double sup_norm() const;

private:
    GridPtr grid_;
    std::vector<double> values_;
};

/// First derivative in t: central differences inside, f'(0) = 0 by even
/// reflection at the center, one-sided second order at t = T.
GridFunction d1(const GridFunction& f);
/// Second derivative in t with the same boundary treatment as d1.
GridFunction d2(const GridFunction& f);

/// max_i max_{j <= order} x_i^{-gamma} |(x d/dx)^j f|_i, with x d/dx = -d/dt.
double weighted_sup_norm(const GridFunction& f, double gamma, int order);

/// Least-squares slope of log|f| against log x over the last `window` fraction
/// of nodes. Nodes with |f| < floor * (max |f| on that window) are skipped.
/// Throws DecayEstimateError when fewer than two nodes survive.
double decay_rate(const GridFunction& f, double window = 0.25, double floor = 1e-13);

/// Least-squares slope of ys against xs.
double fit_slope(std::span<const double> xs, std::span<const double> ys);

/// CSV with header "i,t,x,f", 17 significant digits, LF line endings.
void write_csv(std::ostream& os, const GridFunction& f);

}  // namespace sigmak
