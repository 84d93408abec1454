#pragma once

// JSON emission for reports. Numbers use 17 significant digits; non-finite
// values are written as null.

#include <iosfwd>
#include <span>
#include <string>

#include "sigmak/solver.hpp"

namespace sigmak {

/// "%.17g", or "null" when v is not finite.
std::string format_number(double v);

/// Object with exactly: converged, iterations, residual_history, beta, k, n,
/// decay_estimate, cone_ok.
void write_solve_report_json(std::ostream& os, const SolveReport& r);

/// {"n", "k", "beta", "gamma_minus", "gamma_plus", "probes": [...]}.
void write_probe_reports_json(std::ostream& os, const SigmaProblem& p, std::span<const ProbeReport> probes);

void write_intersection_json(std::ostream& os, const IntersectionReport& r);

}  // namespace sigmak
