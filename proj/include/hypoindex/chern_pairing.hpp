#pragma once

#include <vector>

#include "hypoindex/contact_data.hpp"

namespace hypoindex {

/// Even-degree characteristic class on a closed 3-manifold, truncated after
/// degree 2: degree0 + degree2 * e(xi).
struct EvenClass {
    double degree0 = 0.0;
    double degree2 = 0.0;

    friend EvenClass operator*(const EvenClass& a, const EvenClass& b) {
        return {a.degree0 * b.degree0, a.degree0 * b.degree2 + a.degree2 * b.degree0};
    }
    friend bool operator==(const EvenClass&, const EvenClass&) = default;
};

/// Ch((xi^{1,0})^q) = (1 + e)^q = 1 + q e.
EvenClass chern_of_line_power(int q);

/// Td(M) = Td(xi^{1,0}) = 1 + e / 2.
EvenClass todd_class();

/// Pairing of e(xi) with a closed 1-form, through 2[L] = PD(e(xi)).
inline constexpr double kEulerDualityFactor = 2.0;

/// Global sign tying the orientation of L to the co-orientation of xi. Fixed
/// so that the loop 1 + 0.5 e^{2 pi i t} has index +1 on both routes.
inline constexpr double kOrientationSign = 1.0;

/// (1 / 2 pi i) \oint_L dlog(shift + gamma): the winding of shift + gamma about 0.
double odd_chern_integral(const GammaLoop& loop, Complex shift);

struct ChernContribution {
    int q = 0;
    double value = 0.0;
};

struct CohomologicalIndexReport {
    std::vector<ChernContribution> per_q_contributions;
    double total_real = 0.0;
    long long total_rounded = 0;
    bool agreement = false;
};

/// Contribution of the q-th K^1 term,
/// \int_M [Ch(xi^q) Td(M)]_2 ^ Ch(u_q), summed over link components.
double chern_contribution(const ContactInstance& inst, int q);

/// Index from the Chern character of the symbol class paired with Td(M).
/// `agreement` compares against the winding-number route.
CohomologicalIndexReport chern_index(const ContactInstance& inst);

}  // namespace hypoindex
