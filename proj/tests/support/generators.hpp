#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hypoindex/contact_data.hpp"

namespace hypoindex::testing {

using LoopFn = std::function<Complex(double)>;  // parameter in [0, 1)

inline GammaLoop sample_loop(const LoopFn& f, int n, std::string name = "L") {
    GammaLoop loop{std::move(name), {}};
    loop.samples.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) loop.samples.push_back(f(static_cast<double>(j) / n));
    return loop;
}

/// center + radius * e^{2 pi i turns s}
inline LoopFn circle(Complex center, double radius, int turns = 1) {
    return [=](double s) { return center + radius * std::polar(1.0, 2.0 * std::numbers::pi * turns * s); };
}

/// c0 + sum_m a_m e^{2 pi i m s} + b_m e^{-2 pi i m s}.
struct TrigPolynomial {
    Complex c0;
    std::vector<Complex> pos;
    std::vector<Complex> neg;

    Complex operator()(double s) const {
        Complex v = c0;
        for (std::size_t m = 0; m < pos.size(); ++m) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(m + 1) * s;
            v += pos[m] * std::polar(1.0, angle) + neg[m] * std::polar(1.0, -angle);
        }
        return v;
    }
};

template <class Rng>
TrigPolynomial random_trig_polynomial(Rng& rng, double center_range, double max_radius, int max_degree = 3) {
    std::uniform_real_distribution<double> centre(-center_range, center_range);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_int_distribution<int> degree(1, max_degree);
    TrigPolynomial p{{centre(rng), 0.5 * centre(rng)}, {}, {}};
    const int d = degree(rng);
    const double radius = max_radius * std::uniform_real_distribution<double>(0.2, 1.0)(rng);
    for (int m = 1; m <= d; ++m) {
        const double decay = radius / (m * m);
        p.pos.emplace_back(decay * unit(rng), decay * unit(rng));
        p.neg.emplace_back(decay * unit(rng), decay * unit(rng));
    }
    return p;
}

struct RandomInstance {
    ContactInstance instance;
    std::vector<TrigPolynomial> curves;  // smooth parametrisation of each loop
};

/// Random instance with 1..3 trigonometric-polynomial loops, resampled until it
/// validates, max |gamma| <= max_abs, and a 4096-point resampling of the same
/// curves keeps half the clearance.
template <class Rng>
RandomInstance random_instance_with_curves(Rng& rng, int samples = 256, double clearance = 0.1, double max_abs = 9.0) {
    std::uniform_int_distribution<int> count(1, 3);
    for (;;) {
        RandomInstance r{{"random", {}, clearance, Orientation::CounterclockwisePositive}, {}};
        const int loops = count(rng);
        for (int i = 0; i < loops; ++i) {
            r.curves.push_back(random_trig_polynomial(rng, 6.0, 4.0));
            r.instance.loops.push_back(sample_loop(r.curves.back(), samples, "L" + std::to_string(i)));
        }
        if (r.instance.max_abs_gamma() > max_abs || !validate_instance(r.instance).ok) continue;
        // The smooth curve between samples must stay clear too, otherwise the
        // sampled loop and the curve it came from can wind differently.
        ContactInstance dense{"dense", {}, clearance / 2.0, Orientation::CounterclockwisePositive};
        for (const auto& c : r.curves) dense.loops.push_back(sample_loop(c, 4096));
        if (validate_instance(dense).ok) return r;
    }
}

template <class Rng>
ContactInstance random_instance(Rng& rng, int samples = 256, double clearance = 0.1, double max_abs = 9.0) {
    return random_instance_with_curves(rng, samples, clearance, max_abs).instance;
}

/// Random loop with samples on the imaginary axis.
template <class Rng>
GammaLoop random_imaginary_loop(Rng& rng, int samples = 128) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const double c = 5.0 * unit(rng);
    const double a1 = 3.0 * unit(rng), b1 = 3.0 * unit(rng), a2 = unit(rng), b2 = unit(rng);
    return sample_loop(
        [=](double s) {
            const double th = 2.0 * std::numbers::pi * s;
            return Complex(0.0, c + a1 * std::cos(th) + b1 * std::sin(th) + a2 * std::cos(2 * th) + b2 * std::sin(2 * th));
        },
        samples, "imaginary");
}

inline ContactInstance single_loop_instance(GammaLoop loop, double clearance = kDefaultClearance) {
    return ContactInstance{"single", {std::move(loop)}, clearance, Orientation::CounterclockwisePositive};
}

}  // namespace hypoindex::testing
