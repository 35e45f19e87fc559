#include "hypoindex/fock_rep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hypoindex/error.hpp"

namespace hypoindex {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_positive_t(double t, const char* op) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw DomainError(std::string(op) + ": t must be positive (negative t is the opposite operator)");
    }
}

Complex signed_gamma(const ModelOperatorSpec& spec) { return spec.opposite ? -spec.gamma : spec.gamma; }

}  // namespace

std::vector<Complex> FockTruncation::diagonal(int size) const {
    std::vector<Complex> d(static_cast<std::size_t>(size));
    for (int q = 0; q < size; ++q) d[static_cast<std::size_t>(q)] = matrix(q, q);
    return d;
}

LadderPair ladder_matrices(int n) {
    if (n < 2) throw DomainError("ladder_matrices: N must be at least 2");
    LadderPair p{ComplexMatrix::Zero(n, n), ComplexMatrix::Zero(n, n)};
    for (int q = 0; q + 1 < n; ++q) {
        const double entry = std::sqrt(static_cast<double>(q + 1));
        p.creation(q + 1, q) = entry;
        p.annihilation(q, q + 1) = entry;
    }
    return p;
}

double scalar_symbol(double x, double y) { return x * x + y * y; }

FockTruncation model_rep_matrix(const ModelOperatorSpec& spec, double t, int n) {
    require_positive_t(t, "model_rep_matrix");
    if (n < 4) throw DomainError("model_rep_matrix: N must be at least 4");

    const auto [z, d] = ladder_matrices(n);
    const double scale = std::sqrt(t / 2.0);
    const ComplexMatrix x = kI * scale * (z + d);
    const ComplexMatrix y = scale * (z - d);
    const ComplexMatrix zz = kI * t * ComplexMatrix::Identity(n, n);

    FockTruncation out{t, n, -(x * x) - y * y + kI * signed_gamma(spec) * zz};
    return out;
}

FockTruncation model_diagonal(const ModelOperatorSpec& spec, double t, int n) {
    require_positive_t(t, "model_diagonal");
    if (n < 2) throw DomainError("model_diagonal: N must be at least 2");
    const Complex g = signed_gamma(spec);
    FockTruncation out{t, n, ComplexMatrix::Zero(n, n)};
    for (int q = 0; q < n; ++q) out.matrix(q, q) = t * (static_cast<double>(2 * q + 1) - g);
    return out;
}

bool is_rockland(Complex gamma) {
    // |2q + 1 -/+ gamma| is minimised near q = (|Re gamma| - 1) / 2.
    const int q_last = static_cast<int>(std::ceil(std::abs(gamma) / 2.0)) + 1;
    double smallest = std::numeric_limits<double>::infinity();
    for (int q = 0; q <= q_last; ++q) {
        const double odd = 2.0 * q + 1.0;
        smallest = std::min({smallest, std::abs(odd - gamma), std::abs(odd + gamma)});
    }
    return smallest != 0.0;
}

GammaLoop KCocycleTerm::as_loop() const { return GammaLoop{"u_" + std::to_string(q), automorphism_samples}; }

int k1_cutoff(double max_abs) {
    int q = 0;
    while (2.0 * q + 1.0 <= max_abs) ++q;
    return q;
}

std::vector<KCocycleTerm> k1_class_terms(const GammaLoop& loop, int q_max) {
    const int last = q_max >= 0 ? q_max : k1_cutoff(loop.max_abs());
    std::vector<KCocycleTerm> terms;
    terms.reserve(static_cast<std::size_t>(last + 1));
    for (int q = 0; q <= last; ++q) {
        const double odd = 2.0 * q + 1.0;
        KCocycleTerm term{q, {}};
        term.automorphism_samples.reserve(loop.samples.size());
        for (std::size_t j = 0; j < loop.samples.size(); ++j) {
            const Complex g = loop.samples[j];
            const Complex num = odd - g;
            const Complex den = odd + g;
            if (num == 0.0 || den == 0.0) {
                throw NumericError("k1_class_terms: loop '" + loop.name + "' touches the odd integer " +
                                   std::to_string(den == 0.0 ? -(2 * q + 1) : 2 * q + 1) + " at sample " +
                                   std::to_string(j));
            }
            term.automorphism_samples.push_back(num / den);
        }
        terms.push_back(std::move(term));
    }
    return terms;
}

}  // namespace hypoindex
