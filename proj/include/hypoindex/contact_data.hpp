#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace hypoindex {

using Complex = std::complex<double>;

inline constexpr double kDefaultClearance = 1e-6;

/// Samples of the Z-coefficient along one component of the link. Closure is
/// implicit: sample n wraps to sample 0.
struct GammaLoop {
    std::string name;
    std::vector<Complex> samples;

    GammaLoop reversed() const;
    double max_abs() const;
};

enum class Orientation { CounterclockwisePositive };

/// A contact 3-manifold described through the half-Euler-class link L
/// (the user supplies L with 2[L] dual to e(xi)) and gamma restricted to L.
/// An empty loop list is the globally framed case e(xi) = 0.
struct ContactInstance {
    std::string manifold_label;
    std::vector<GammaLoop> loops;
    double clearance = kDefaultClearance;
    Orientation orientation = Orientation::CounterclockwisePositive;

    double max_abs_gamma() const;
};

namespace rules {
inline constexpr std::string_view kMinSamples = "minimum samples";
inline constexpr std::string_view kFinite = "finite samples";
inline constexpr std::string_view kClearance = "odd-integer clearance";
inline constexpr std::string_view kSegmentClearance = "segment clearance";
inline constexpr std::string_view kAdequacy = "sampling adequacy";
inline constexpr std::string_view kPositiveClearance = "positive clearance";
}  // namespace rules

struct Violation {
    std::string loop;
    int sample_index = -1;
    std::string rule;
    std::string message;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;
    double max_abs_gamma = 0.0;
    std::vector<int> relevant_odds;
};

/// Parses the JSON instance format. Structural checks only; see validate_instance.
/// Throws ParseError on syntax errors, missing or unknown keys and non-finite literals.
ContactInstance parse_instance(std::string_view text);

/// Inverse of parse_instance. Numbers are written in shortest round-trip form.
std::string serialize_instance(const ContactInstance& inst);

/// Never throws. Reports every violated invariant. Besides the per-sample
/// clearance, every chord between consecutive samples must stay at least
/// clearance / 2 away from each odd integer, so sample perturbations smaller
/// than that cannot change a winding.
ValidationReport validate_instance(const ContactInstance& inst);

/// All odd k with |k| <= ceil(max |gamma|), ascending. Empty for an empty link.
std::vector<int> relevant_odd_integers(const ContactInstance& inst);

/// Principal argument of (to - k) / (from - k), i.e. the signed angle swept
/// around k by the step from -> to.
double angular_step(Complex from, Complex to, Complex center);

}  // namespace hypoindex
