#include "hypoindex/chern_pairing.hpp"

#include <cmath>

#include "hypoindex/error.hpp"
#include "hypoindex/fock_rep.hpp"
#include "hypoindex/winding_index.hpp"

namespace hypoindex {

EvenClass chern_of_line_power(int q) {
    if (q < 0) throw DomainError("chern_of_line_power: q must be non-negative");
    return {1.0, static_cast<double>(q)};
}

EvenClass todd_class() { return {1.0, 0.5}; }

double odd_chern_integral(const GammaLoop& loop, Complex shift) {
    return static_cast<double>(winding_about(loop, -shift));
}

double chern_contribution(const ContactInstance& inst, int q) {
    // Ch(u_q) has degree 1, so on a 3-manifold only the degree-2 part of
    // Ch(xi^q) Td(M) survives the pairing.
    const double weight = (chern_of_line_power(q) * todd_class()).degree2;
    const double odd = 2.0 * q + 1.0;
    double dlog_u = 0.0;
    for (const auto& loop : inst.loops) {
        // dlog u_q = dlog(2q + 1 - gamma) - dlog(2q + 1 + gamma); the first
        // factor winds like gamma - (2q + 1).
        dlog_u += odd_chern_integral(loop, Complex(-odd, 0.0)) - odd_chern_integral(loop, Complex(odd, 0.0));
    }
    return kOrientationSign * weight * kEulerDualityFactor * dlog_u;
}

CohomologicalIndexReport chern_index(const ContactInstance& inst) {
    CohomologicalIndexReport report;
    const int cutoff = k1_cutoff(inst.max_abs_gamma());
    for (int q = 0; q <= cutoff; ++q) {
        const double value = chern_contribution(inst, q);
        report.per_q_contributions.push_back({q, value});
        report.total_real += value;
    }
    report.total_rounded = std::llround(report.total_real);
    if (std::abs(report.total_real - static_cast<double>(report.total_rounded)) >= 1e-6) {
        throw NumericError("chern_index: pairing is not integral");
    }
    report.agreement = report.total_rounded == fredholm_index(inst).index;
    return report;
}

}  // namespace hypoindex
