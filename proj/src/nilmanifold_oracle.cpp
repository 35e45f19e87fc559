#include "hypoindex/nilmanifold_oracle.hpp"

#include <cmath>
#include <cstdlib>

#include "hypoindex/error.hpp"

namespace hypoindex {

namespace {

long long zeros(const SpectralBlock& block, double tol, bool conjugate) {
    long long count = 0;
    for (const auto& ev : block.eigenvalues) {
        if (std::abs(conjugate ? std::conj(ev) : ev) < tol) ++count;
    }
    return count * block.multiplicity;
}

}  // namespace

SpectralDecomposition decompose(Complex gamma, const Truncation& truncation) {
    if (truncation.n_max < 1 || truncation.q_max < 1 || truncation.lattice_max < 1) {
        throw DomainError("decompose: truncation parameters must be at least 1");
    }
    SpectralDecomposition dec{gamma, {}, truncation, kLatticeNormalization};
    const double c = dec.normalization_c;
    const int lm = truncation.lattice_max;
    dec.blocks.reserve(static_cast<std::size_t>((2 * lm + 1) * (2 * lm + 1) + 2 * truncation.n_max));

    for (int j = -lm; j <= lm; ++j) {
        for (int k = -lm; k <= lm; ++k) {
            SpectralBlock b;
            b.kind = SpectralBlock::Kind::Scalar;
            b.j = j;
            b.k = k;
            b.eigenvalues = {Complex(c * c * (j * j + k * k), 0.0)};
            dec.blocks.push_back(std::move(b));
        }
    }
    for (int m = 1; m <= truncation.n_max; ++m) {
        for (int sign : {1, -1}) {
            SpectralBlock b;
            b.kind = SpectralBlock::Kind::Fock;
            b.n = sign * m;
            b.multiplicity = m;
            const Complex g = sign > 0 ? gamma : -gamma;
            b.eigenvalues.reserve(static_cast<std::size_t>(truncation.q_max));
            for (int q = 0; q < truncation.q_max; ++q) b.eigenvalues.push_back(c * m * (2.0 * q + 1.0 - g));
            dec.blocks.push_back(std::move(b));
        }
    }
    return dec;
}

KernelDimensions kernel_dimensions(const SpectralDecomposition& dec, double tol) {
    KernelDimensions dims;
    for (const auto& block : dec.blocks) {
        dims.dim_ker += zeros(block, tol, false);
        dims.dim_coker += zeros(block, tol, true);
    }
    return dims;
}

AnalyticIndex analytic_index(Complex gamma, const Truncation& truncation, double tol) {
    const double q_needed = (std::abs(gamma.real()) - 1.0) / 2.0;
    if (q_needed >= truncation.q_max) {
        throw DomainError("analytic_index: q_max = " + std::to_string(truncation.q_max) +
                          " cannot resolve a possible zero mode at q = " + std::to_string(q_needed));
    }
    const SpectralDecomposition dec = decompose(gamma, truncation);
    NotFredholm breakdown;
    bool fock_kernel = false;
    for (const auto& block : dec.blocks) {
        if (block.kind != SpectralBlock::Kind::Fock) continue;
        const long long z = zeros(block, tol, false);
        breakdown.growth.push_back({block.n, z});
        fock_kernel = fock_kernel || z > 0;
    }
    const KernelDimensions dims = kernel_dimensions(dec, tol);
    if (fock_kernel) {
        breakdown.truncated = dims;
        return breakdown;
    }
    return dims.dim_ker - dims.dim_coker;
}

}  // namespace hypoindex
