#pragma once

#include <variant>
#include <vector>

#include "hypoindex/contact_data.hpp"

namespace hypoindex {

/// Spectrum of P = -X^2 - Y^2 + i gamma Z (constant gamma) on the compact
/// Heisenberg nilmanifold, block by block.
///
/// L^2 of the nilmanifold splits into characters (j, k) of the abelianisation,
/// where P acts by 4 pi^2 (j^2 + k^2), and |n| copies of the Fock
/// representation with t = 2 pi n for every nonzero integer n. In fock(n),
/// n > 0, the eigenvalue on z^q is 2 pi n (2q + 1 - gamma); fock(-n) is the
/// conjugate representation and sees 2q + 1 + gamma instead.
struct SpectralBlock {
    enum class Kind { Scalar, Fock };

    Kind kind = Kind::Scalar;
    int j = 0;  // Scalar
    int k = 0;  // Scalar
    int n = 0;  // Fock, nonzero
    std::vector<Complex> eigenvalues;
    int multiplicity = 1;
};

struct Truncation {
    int n_max = 20;
    int q_max = 40;  // eigenvalues per Fock block: q = 0..q_max-1
    int lattice_max = 20;
};

inline constexpr double kLatticeNormalization = 6.283185307179586;  // 2 pi
inline constexpr double kZeroModeTolerance = 1e-9;

struct SpectralDecomposition {
    Complex gamma;
    std::vector<SpectralBlock> blocks;
    Truncation truncation;
    double normalization_c = kLatticeNormalization;
};

/// Blocks are ordered: scalar (j, k) lexicographically, then fock(n) by |n|
/// with +n before -n. Throws DomainError for truncation parameters below 1.
SpectralDecomposition decompose(Complex gamma, const Truncation& truncation);

struct KernelDimensions {
    long long dim_ker = 0;
    long long dim_coker = 0;
};

/// Zero modes counted with multiplicity; the cokernel is the kernel of the
/// adjoint, whose block spectra are the complex conjugates.
KernelDimensions kernel_dimensions(const SpectralDecomposition& dec, double tol = kZeroModeTolerance);

struct ZeroModeCount {
    int n = 0;
    long long zero_modes = 0;
};

/// Returned when some Fock block has a zero eigenvalue: the kernel grows
/// without bound as n_max increases.
struct NotFredholm {
    std::vector<ZeroModeCount> growth;
    KernelDimensions truncated;
};

using AnalyticIndex = std::variant<long long, NotFredholm>;

/// dim ker - dim coker on the truncated decomposition, or NotFredholm.
/// Throws DomainError when q_max is too small to contain the possible zero
/// mode at q = (|Re gamma| - 1) / 2.
AnalyticIndex analytic_index(Complex gamma, const Truncation& truncation = {}, double tol = kZeroModeTolerance);

}  // namespace hypoindex
