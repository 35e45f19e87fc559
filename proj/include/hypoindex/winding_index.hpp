#pragma once

#include <map>

#include "hypoindex/contact_data.hpp"

namespace hypoindex {

/// Windings of gamma around each relevant odd integer, summed over link
/// components, and the index sum_k k * winding(k).
struct WindingTable {
    std::map<int, long long> entries;
    long long index = 0;
};

/// Discrete winding of the closed sample loop around `center`: the sum of
/// principal angular steps divided by 2 pi, counterclockwise positive.
/// Throws NumericError if a sample equals the center or a step reaches pi.
long long winding_about(const GammaLoop& loop, Complex center);

/// Winding of gamma around the odd integer k. Throws DomainError for even k.
long long winding_number(const GammaLoop& loop, int k);

/// Index of the operator described by a validated instance.
WindingTable fredholm_index(const ContactInstance& inst);

/// Trapezoid rule for (1/2 pi i) \oint dgamma / (gamma - k) on a densely sampled
/// loop, with dgamma taken as the chord between consecutive samples and the
/// integrand averaged at the endpoints. Only used to cross-check the discrete
/// winding; callers compare against the nearest integer.
Complex winding_quadrature_oracle(const GammaLoop& dense_loop, int k);

}  // namespace hypoindex
