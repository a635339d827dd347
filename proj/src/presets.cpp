#include "fockidx/presets.hpp"

#include <cmath>
#include <sstream>

namespace fockidx {

namespace {

Complex interpolate(const std::vector<std::pair<double, Complex>>& knots, double s) {
    if (s >= knots.back().first) return knots.back().second;
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (s <= knots[i].first) {
            const auto& [s0, v0] = knots[i - 1];
            const auto& [s1, v1] = knots[i];
            const double w = (s - s0) / (s1 - s0);
            return (1.0 - w) * v0 + w * v1;
        }
    }
    return knots.back().second;
}

struct Sampler {
    const GridSpec& grid;

    AlgebraElement operator()(const ConstantPreset& p) const {
        return AlgebraElement::constant(grid, p.value);
    }
    AlgebraElement operator()(const ExpApproachPreset& p) const {
        if (!(p.a > 0.0)) throw PreconditionError("exp_approach requires a > 0");
        return AlgebraElement::from_function(
            grid, [&](double s) { return p.offset + p.c * std::exp(-p.a * s); }, p.offset);
    }
    AlgebraElement operator()(const RationalPreset& p) const {
        return AlgebraElement::from_function(
            grid, [&](double s) { return p.c / (1.0 + s) + p.d; }, p.d);
    }
    AlgebraElement operator()(const PiecewiseLinearPreset& p) const {
        const auto& knots = p.knots;
        if (knots.empty() || knots.front().first != 0.0) {
            throw PreconditionError("piecewise_linear requires a first knot at s = 0");
        }
        for (std::size_t i = 1; i < knots.size(); ++i) {
            if (!(knots[i].first > knots[i - 1].first)) {
                throw PreconditionError("piecewise_linear knots must be strictly increasing");
            }
        }
        return AlgebraElement::from_function(
            grid, [&](double s) { return interpolate(knots, s); }, knots.back().second);
    }
    AlgebraElement operator()(const SampledPreset& p) const {
        return {grid, p.samples, p.tail};
    }
};

std::string fmt_complex(Complex z) {
    std::ostringstream out;
    out.precision(6);
    if (z.imag() == 0.0) {
        out << z.real();
    } else {
        out << "(" << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i)";
    }
    return out.str();
}

struct Describer {
    std::string operator()(const ConstantPreset& p) const { return fmt_complex(p.value); }
    std::string operator()(const ExpApproachPreset& p) const {
        return fmt_complex(p.offset) + "+" + fmt_complex(p.c) + "*exp(-" +
               fmt_complex(p.a) + "s)";
    }
    std::string operator()(const RationalPreset& p) const {
        return fmt_complex(p.c) + "/(1+s)+" + fmt_complex(p.d);
    }
    std::string operator()(const PiecewiseLinearPreset& p) const {
        return "piecewise_linear[" + std::to_string(p.knots.size()) + " knots]";
    }
    std::string operator()(const SampledPreset& p) const {
        return "sampled[" + std::to_string(p.samples.size()) + "]";
    }
};

Complex random_complex(std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    std::bernoulli_distribution complex_valued(0.5);
    const double re = u(rng);
    return complex_valued(rng) ? Complex{re, u(rng)} : Complex{re, 0.0};
}

}  // namespace

AlgebraElement sample(const FunctionPreset& preset, const GridSpec& grid) {
    return std::visit(Sampler{grid}, preset);
}

std::string describe(const FunctionPreset& preset) {
    return std::visit(Describer{}, preset);
}

FunctionPreset random_preset(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> family(0, 3);
    std::uniform_real_distribution<double> rate(0.2, 2.0);
    std::uniform_real_distribution<double> knot(0.5, 6.0);
    switch (family(rng)) {
    case 0: return ConstantPreset{random_complex(rng, 2.0)};
    case 1: return ExpApproachPreset{random_complex(rng, 2.0), rate(rng), random_complex(rng, 1.5)};
    case 2: return RationalPreset{random_complex(rng, 1.0), random_complex(rng, 1.5)};
    default: {
        const double s1 = knot(rng);
        return PiecewiseLinearPreset{{{0.0, random_complex(rng, 2.0)},
                                      {s1, random_complex(rng, 2.0)},
                                      {s1 + knot(rng), random_complex(rng, 2.0)}}};
    }
    }
}

FunctionPreset random_unit_interval_preset(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_real_distribution<double> rate(0.2, 2.0);
    std::uniform_int_distribution<int> family(0, 2);
    switch (family(rng)) {
    case 0: return ConstantPreset{Complex{u(rng), 0.0}};
    case 1: {
        // offset + c e^{-as} with offset, offset + c in [0, 1]
        const double offset = u(rng);
        const double start = u(rng);
        return ExpApproachPreset{Complex{start - offset, 0.0}, rate(rng), Complex{offset, 0.0}};
    }
    default: {
        const double s1 = 0.5 + 5.0 * u(rng);
        return PiecewiseLinearPreset{{{0.0, Complex{u(rng), 0.0}},
                                      {s1, Complex{u(rng), 0.0}},
                                      {s1 + 3.0 * u(rng) + 0.5, Complex{u(rng), 0.0}}}};
    }
    }
}

FunctionPreset random_limit_one_preset(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> family(0, 2);
    std::uniform_real_distribution<double> rate(0.3, 2.0);
    std::uniform_real_distribution<double> knot(0.5, 6.0);
    const Complex one{1.0, 0.0};
    switch (family(rng)) {
    case 0: return ExpApproachPreset{random_complex(rng, 2.0), rate(rng), one};
    case 1: {
        const double s1 = knot(rng);
        return PiecewiseLinearPreset{
            {{0.0, random_complex(rng, 2.0)}, {s1, random_complex(rng, 2.0)}, {s1 + knot(rng), one}}};
    }
    default: return ConstantPreset{one};
    }
}

}  // namespace fockidx
