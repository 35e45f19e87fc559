#pragma once

#include <vector>

#include <Eigen/Dense>

#include "hypoindex/contact_data.hpp"

namespace hypoindex {

using ComplexMatrix = Eigen::MatrixXcd;

/// The model operator -X^2 - Y^2 + i gamma Z at one point, or its opposite
/// (image under X -> X, Y -> Y, Z -> -Z).
struct ModelOperatorSpec {
    Complex gamma;
    bool opposite = false;
};

/// Truncation of an operator in the Bargmann-Fock representation pi_t to the
/// span of the first N basis monomials.
struct FockTruncation {
    double t = 1.0;
    int n = 0;
    ComplexMatrix matrix;

    /// Diagonal of the block on basis indices 0..size-1.
    std::vector<Complex> diagonal(int size) const;
};

struct LadderPair {
    ComplexMatrix creation;      // multiplication by z
    ComplexMatrix annihilation;  // d/dz
};

/// Truncated creation/annihilation in the basis z^q / sqrt(q!), where they are
/// mutual adjoints with entries sqrt(q+1).
LadderPair ladder_matrices(int n);

/// Image of the model operator under the scalar representation pi_(x,y).
double scalar_symbol(double x, double y);

/// Assembles -pi_t(X)^2 - pi_t(Y)^2 +/- i gamma pi_t(Z) from ladder matrices.
/// The top two rows and columns carry truncation artefacts.
FockTruncation model_rep_matrix(const ModelOperatorSpec& spec, double t, int n);

/// Closed form t (2q + 1 -/+ gamma) on the diagonal.
FockTruncation model_diagonal(const ModelOperatorSpec& spec, double t, int n);

/// True iff pi_(+1)(P) and pi_(+1)(P^op) are both invertible, i.e. gamma is not
/// an odd integer.
bool is_rockland(Complex gamma);

/// One summand [(xi^{1,0})^q, u_q] of the K^1 class of the symbol, with
/// u_q = (2q + 1 - gamma) / (2q + 1 + gamma) sampled along a loop.
struct KCocycleTerm {
    int q = 0;
    std::vector<Complex> automorphism_samples;

    GammaLoop as_loop() const;
};

/// Smallest Q with 2Q + 1 > max_abs.
int k1_cutoff(double max_abs);

/// Terms q = 0..Q for a loop, Q = k1_cutoff(loop.max_abs()). Pass q_max >= 0
/// to force a larger range (used to check that the tail is trivial).
std::vector<KCocycleTerm> k1_class_terms(const GammaLoop& loop, int q_max = -1);

}  // namespace hypoindex
