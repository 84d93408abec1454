#include "sigmak/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace sigmak {

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out + "\"";
}

const char* boolean(bool b) { return b ? "true" : "false"; }

void number_array(std::ostream& os, std::span<const double> v) {
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << format_number(v[i]);
    os << ']';
}

}  // namespace

std::string format_number(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_solve_report_json(std::ostream& os, const SolveReport& r) {
    os << "{\n";
    os << "  \"converged\": " << boolean(r.converged) << ",\n";
    os << "  \"iterations\": " << r.iterations << ",\n";
    os << "  \"residual_history\": ";
    number_array(os, r.residual_history);
    os << ",\n";
    os << "  \"beta\": " << format_number(r.beta) << ",\n";
    os << "  \"k\": " << r.k << ",\n";
    os << "  \"n\": " << r.n << ",\n";
    os << "  \"decay_estimate\": " << format_number(r.decay_estimate) << ",\n";
    os << "  \"cone_ok\": " << boolean(r.cone_ok) << "\n";
    os << "}\n";
}

void write_probe_reports_json(std::ostream& os, const SigmaProblem& p, std::span<const ProbeReport> probes) {
    const auto roots = indicial_roots(p.n(), p.k(), p.beta());
    os << "{\n";
    os << "  \"n\": " << p.n() << ",\n";
    os << "  \"k\": " << p.k() << ",\n";
    os << "  \"beta\": " << format_number(p.beta()) << ",\n";
    os << "  \"gamma_minus\": " << format_number(roots.gamma_minus) << ",\n";
    os << "  \"gamma_plus\": " << format_number(roots.gamma_plus) << ",\n";
    os << "  \"probes\": [";
    for (std::size_t i = 0; i < probes.size(); ++i) {
        const auto& q = probes[i];
        os << (i ? ",\n" : "\n") << "    {\"gamma\": " << format_number(q.gamma)
           << ", \"weighted_norm\": " << format_number(q.weighted_norm)
           << ", \"log_slope\": " << format_number(q.log_slope) << ", \"log_flag\": " << boolean(q.log_flag)
           << ", \"singular\": " << boolean(q.singular) << ", \"dirichlet\": " << boolean(q.dirichlet);
        if (!q.message.empty()) os << ", \"message\": " << quoted(q.message);
        os << '}';
    }
    os << (probes.empty() ? "]\n" : "\n  ]\n") << "}\n";
}

void write_intersection_json(std::ostream& os, const IntersectionReport& r) {
    os << "{\n";
    os << "  \"n\": " << r.n << ",\n";
    os << "  \"sigmas\": [";
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const auto& s = r.rows[i];
        os << (i ? ",\n" : "\n") << "    {\"k\": " << s.k << ", \"mean\": " << format_number(s.mean)
           << ", \"deviation\": " << format_number(s.deviation) << ", \"worst_t\": " << format_number(s.worst_t)
           << ", \"model\": " << format_number(s.model) << ", \"constant\": " << boolean(s.constant)
           << ", \"matches_model\": " << boolean(s.matches_model) << '}';
    }
    os << "\n  ],\n";
    os << "  \"all_constant\": " << boolean(r.all_constant) << ",\n";
    os << "  \"matches_model\": " << boolean(r.matches_model) << ",\n";
    os << "  \"failing_k\": " << (r.failing_k ? std::to_string(*r.failing_k) : "null") << ",\n";
    os << "  \"failing_t\": " << (r.failing_k ? format_number(r.failing_t) : "null") << ",\n";
    os << "  \"eigenvalues\": ";
    number_array(os, r.eigenvalues);
    os << ",\n";
    os << "  \"eigen_spread\": " << format_number(r.eigen_spread) << ",\n";
    os << "  \"einstein\": " << boolean(r.einstein) << ",\n";
    os << "  \"message\": " << quoted(r.message) << "\n";
    os << "}\n";
}

}  // namespace sigmak
