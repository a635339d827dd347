#include "fockidx/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fockidx {

GridSpec::GridSpec(int step_denominator, int domain_end)
    : m_(step_denominator), S_(domain_end) {
    if (m_ < 1 || S_ < 1) {
        throw PreconditionError("grid requires m >= 1 and S >= 1 (got m=" +
                                std::to_string(m_) + ", S=" + std::to_string(S_) + ")");
    }
}

std::size_t GridSpec::steps_for(double t) const {
    const double scaled = t * m_;
    const double rounded = std::round(scaled);
    if (!std::isfinite(t) || t < 0.0 || std::abs(scaled - rounded) > 1e-9) {
        throw PreconditionError("shift " + std::to_string(t) +
                                " is not a nonnegative multiple of the grid step");
    }
    return static_cast<std::size_t>(rounded);
}

AlgebraElement::AlgebraElement(GridSpec grid, std::vector<Complex> samples, Complex tail,
                               bool inherited_unresolved)
    : grid_(grid), samples_(std::move(samples)), tail_(tail),
      inherited_unresolved_(inherited_unresolved) {
    if (samples_.size() != grid_.sample_count()) {
        throw PreconditionError("expected " + std::to_string(grid_.sample_count()) +
                                " samples, got " + std::to_string(samples_.size()));
    }
    auto finite = [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
    if (!finite(tail_) || !std::all_of(samples_.begin(), samples_.end(), finite)) {
        throw PreconditionError("algebra element has non-finite entries");
    }
}

AlgebraElement AlgebraElement::constant(GridSpec grid, Complex value) {
    return {grid, std::vector<Complex>(grid.sample_count(), value), value};
}

AlgebraElement AlgebraElement::from_function(GridSpec grid,
                                             const std::function<Complex(double)>& f,
                                             Complex tail) {
    std::vector<Complex> samples(grid.sample_count());
    for (std::size_t k = 0; k < samples.size(); ++k) samples[k] = f(grid.point(k));
    return {grid, std::move(samples), tail};
}

bool AlgebraElement::unresolved(double tail_tolerance) const {
    return inherited_unresolved_ || std::abs(samples_.back() - tail_) > tail_tolerance;
}

AlgebraElement constant(const GridSpec& grid, Complex value) {
    return AlgebraElement::constant(grid, value);
}

namespace {

template <typename F>
AlgebraElement combine(const AlgebraElement& a, const AlgebraElement& b, F f) {
    if (!(a.grid() == b.grid())) throw GridMismatch();
    std::vector<Complex> out(a.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = f(a[k], b[k]);
    return {a.grid(), std::move(out), f(a.tail(), b.tail()),
            a.unresolved() || b.unresolved()};
}

template <typename F>
AlgebraElement map(const AlgebraElement& a, F f) {
    std::vector<Complex> out(a.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = f(a[k]);
    return {a.grid(), std::move(out), f(a.tail()), a.unresolved()};
}

}  // namespace

AlgebraElement pointwise(PointwiseOp op, const AlgebraElement& a, const AlgebraElement& b) {
    switch (op) {
    case PointwiseOp::add: return combine(a, b, [](Complex x, Complex y) { return x + y; });
    case PointwiseOp::sub: return combine(a, b, [](Complex x, Complex y) { return x - y; });
    case PointwiseOp::mul: return combine(a, b, [](Complex x, Complex y) { return x * y; });
    }
    throw Error("unknown pointwise operation");
}

AlgebraElement star(const AlgebraElement& b) {
    return map(b, [](Complex z) { return std::conj(z); });
}

AlgebraElement shift_steps(const AlgebraElement& b, std::size_t steps) {
    const std::size_t n = b.size();
    std::vector<Complex> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = k + steps < n ? b[k + steps] : b.tail();
    return {b.grid(), std::move(out), b.tail(), b.unresolved()};
}

AlgebraElement shift(const AlgebraElement& b, double t) {
    return shift_steps(b, b.grid().steps_for(t));
}

double sup_norm(const AlgebraElement& b) {
    double best = std::abs(b.tail());
    for (Complex z : b.samples()) best = std::max(best, std::abs(z));
    return best;
}

bool is_positive(const AlgebraElement& b, double tol) {
    auto ok = [tol](Complex z) { return std::abs(z.imag()) <= tol && z.real() >= -tol; };
    return ok(b.tail()) && std::all_of(b.samples().begin(), b.samples().end(), ok);
}

Complex limit_at_infinity(const AlgebraElement& b) { return b.tail(); }

double sup_distance(const AlgebraElement& a, const AlgebraElement& b) {
    return sup_norm(a - b);
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
    return pointwise(PointwiseOp::add, a, b);
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
    return pointwise(PointwiseOp::sub, a, b);
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    return pointwise(PointwiseOp::mul, a, b);
}

AlgebraElement operator*(Complex alpha, const AlgebraElement& b) {
    return map(b, [alpha](Complex z) { return alpha * z; });
}

AlgebraElement operator-(const AlgebraElement& b) {
    return map(b, [](Complex z) { return -z; });
}

bool identical(const AlgebraElement& a, const AlgebraElement& b) {
    return a.grid() == b.grid() && a.tail() == b.tail() &&
           std::equal(a.samples().begin(), a.samples().end(), b.samples().begin());
}

AlgebraElement reciprocal(const AlgebraElement& b) {
    auto nonzero = [](Complex z) { return z != Complex{0.0, 0.0}; };
    if (!nonzero(b.tail()) || !std::all_of(b.samples().begin(), b.samples().end(), nonzero)) {
        throw PreconditionError("reciprocal of an element with a zero");
    }
    return map(b, [](Complex z) { return 1.0 / z; });
}

bool is_real(const AlgebraElement& b, double tol) {
    auto ok = [tol](Complex z) { return std::abs(z.imag()) <= tol; };
    return ok(b.tail()) && std::all_of(b.samples().begin(), b.samples().end(), ok);
}

}  // namespace fockidx
