#pragma once

#include "fockidx/algebra.hpp"

#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace fockidx {

struct ConstantPreset {
    Complex value;
};

/// offset + c * exp(-a s); the limit at infinity is `offset` (for a > 0).
struct ExpApproachPreset {
    Complex c;
    double a = 1.0;
    Complex offset{1.0, 0.0};
};

/// c / (1 + s) + d
struct RationalPreset {
    Complex c;
    Complex d;
};

/// Linear interpolation through knots (s_i, v_i) with s_0 = 0, strictly
/// increasing s_i, and constant v_last beyond the last knot.
struct PiecewiseLinearPreset {
    std::vector<std::pair<double, Complex>> knots;
};

/// Raw sampled values; must match the grid it is instantiated on.
struct SampledPreset {
    std::vector<Complex> samples;
    Complex tail;
};

using FunctionPreset = std::variant<ConstantPreset, ExpApproachPreset, RationalPreset,
                                    PiecewiseLinearPreset, SampledPreset>;

AlgebraElement sample(const FunctionPreset& preset, const GridSpec& grid);

/// Short human-readable description used in reports.
std::string describe(const FunctionPreset& preset);

/// Random preset drawn from the closed-form families (constant, exp_approach,
/// rational, piecewise_linear). Parameters have modulus O(1) and may be complex.
FunctionPreset random_preset(std::mt19937_64& rng);

/// Random real-valued preset with values in [0, 1].
FunctionPreset random_unit_interval_preset(std::mt19937_64& rng);

/// Random preset whose limit at infinity is exactly 1, real or complex.
FunctionPreset random_limit_one_preset(std::mt19937_64& rng);

}  // namespace fockidx
