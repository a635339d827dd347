#pragma once

// Discretized model of B = C0[0,inf) + C1: complex functions sampled on a
// uniform grid over [0, S] together with their limit at infinity.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fockidx {

using Complex = std::complex<double>;

inline constexpr double kTailTolerance = 1e-9;
inline constexpr double kPositivityTolerance = 1e-10;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GridMismatch : public Error {
public:
    GridMismatch() : Error("operands live on different grids") {}
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class UnsupportedParameter : public Error {
public:
    using Error::Error;
};

/// Uniform grid with step 1/m on [0, S]. Since the step divides 1, integer
/// shifts map grid points onto grid points.
class GridSpec {
public:
    GridSpec() = default;
    GridSpec(int step_denominator, int domain_end);

    int step_denominator() const noexcept { return m_; }
    int domain_end() const noexcept { return S_; }
    double step() const noexcept { return 1.0 / m_; }

    /// Number of samples, S*m + 1.
    std::size_t sample_count() const noexcept {
        return static_cast<std::size_t>(S_) * m_ + 1;
    }
    /// Length of the coordinate vector (samples followed by the tail).
    std::size_t dimension() const noexcept { return sample_count() + 1; }

    double point(std::size_t k) const noexcept {
        return static_cast<double>(k) / m_;
    }

    /// Number of grid steps covered by t; throws unless t >= 0 and t*m is integral.
    std::size_t steps_for(double t) const;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;

private:
    int m_ = 4;
    int S_ = 40;
};

/// An element of B. Immutable.
///
/// The element is "unresolved" when its last sample differs from the tail by
/// more than the tail tolerance: beyond S the grid model then misrepresents
/// the function. The flag is sticky through every operation.
class AlgebraElement {
public:
    /// `inherited_unresolved` marks results derived from unresolved inputs.
    AlgebraElement(GridSpec grid, std::vector<Complex> samples, Complex tail,
                   bool inherited_unresolved = false);

    static AlgebraElement constant(GridSpec grid, Complex value);
    static AlgebraElement from_function(GridSpec grid,
                                        const std::function<Complex(double)>& f,
                                        Complex tail);

    const GridSpec& grid() const noexcept { return grid_; }
    std::span<const Complex> samples() const noexcept { return samples_; }
    Complex tail() const noexcept { return tail_; }
    Complex operator[](std::size_t k) const { return samples_[k]; }
    std::size_t size() const noexcept { return samples_.size(); }

    /// Coordinate k of (samples..., tail); k == sample_count() is the tail.
    Complex coordinate(std::size_t k) const {
        return k < samples_.size() ? samples_[k] : tail_;
    }

    bool unresolved(double tail_tolerance = kTailTolerance) const;

private:
    GridSpec grid_;
    std::vector<Complex> samples_;
    Complex tail_;
    bool inherited_unresolved_ = false;
};

enum class PointwiseOp { add, sub, mul };

AlgebraElement constant(const GridSpec& grid, Complex value);
AlgebraElement pointwise(PointwiseOp op, const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement star(const AlgebraElement& b);

/// [shift(b, t)](s) = b(s + t); samples read past the end take the tail value.
AlgebraElement shift(const AlgebraElement& b, double t);
AlgebraElement shift_steps(const AlgebraElement& b, std::size_t steps);

double sup_norm(const AlgebraElement& b);
bool is_positive(const AlgebraElement& b, double tol = kPositivityTolerance);
Complex limit_at_infinity(const AlgebraElement& b);

/// Maximum entrywise distance between two elements (samples and tail).
double sup_distance(const AlgebraElement& a, const AlgebraElement& b);

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator*(Complex alpha, const AlgebraElement& b);
AlgebraElement operator-(const AlgebraElement& b);

/// Entrywise equality, including the tail.
bool identical(const AlgebraElement& a, const AlgebraElement& b);

/// Entrywise reciprocal; throws PreconditionError if any coordinate vanishes.
AlgebraElement reciprocal(const AlgebraElement& b);

/// True iff every sample and the tail have |imaginary part| <= tol.
bool is_real(const AlgebraElement& b, double tol = 1e-12);

}  // namespace fockidx
