#include "hypoindex/winding_index.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "hypoindex/error.hpp"

namespace hypoindex {

namespace {

std::string describe(const GammaLoop& loop, Complex center) {
    std::ostringstream s;
    s << "loop '" << loop.name << "' around " << center.real();
    if (center.imag() != 0.0) s << std::showpos << center.imag() << "i";
    return s.str();
}

}  // namespace

long long winding_about(const GammaLoop& loop, Complex center) {
    const auto& s = loop.samples;
    if (s.empty()) return 0;
    double total = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) {
        const std::size_t next = (j + 1) % s.size();
        if (s[j] == center) throw NumericError(describe(loop, center) + ": sample " + std::to_string(j) + " hits the center");
        const double step = angular_step(s[j], s[next], center);
        if (std::abs(step) >= std::numbers::pi) {
            throw NumericError(describe(loop, center) + ": ambiguous angular step at sample " + std::to_string(j));
        }
        total += step;
    }
    const double turns = total / (2.0 * std::numbers::pi);
    const double rounded = std::round(turns);
    // A closed loop sums to an exact multiple of 2 pi; anything else is a bug.
    if (std::abs(turns - rounded) > 1e-6) {
        throw NumericError(describe(loop, center) + ": angular sum is not a multiple of 2 pi");
    }
    return static_cast<long long>(rounded);
}

long long winding_number(const GammaLoop& loop, int k) {
    if (k % 2 == 0) throw DomainError("winding_number: k must be odd, got " + std::to_string(k));
    return winding_about(loop, Complex(k, 0.0));
}

WindingTable fredholm_index(const ContactInstance& inst) {
    WindingTable table;
    for (int k : relevant_odd_integers(inst)) {
        long long w = 0;
        for (const auto& loop : inst.loops) w += winding_number(loop, k);
        table.entries[k] = w;
        table.index += static_cast<long long>(k) * w;
    }
    return table;
}

Complex winding_quadrature_oracle(const GammaLoop& dense_loop, int k) {
    const auto& s = dense_loop.samples;
    const Complex center(k, 0.0);
    Complex sum = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) {
        const std::size_t next = (j + 1) % s.size();
        if (s[j] == center) throw NumericError(describe(dense_loop, center) + ": sample hits the pole");
        const Complex f0 = 1.0 / (s[j] - center);
        const Complex f1 = 1.0 / (s[next] - center);
        sum += 0.5 * (f0 + f1) * (s[next] - s[j]);
    }
    return sum / Complex(0.0, 2.0 * std::numbers::pi);
}

}  // namespace hypoindex
