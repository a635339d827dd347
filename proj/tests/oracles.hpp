#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's kernel, exponential or shift code: values are evaluated from
// closed forms or assembled index by index.

#include "fockidx/fock.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using fockidx::Complex;
using fockidx::GridSpec;
using Fn = std::function<Complex(double)>;

// coordinates (samples..., tail) of a closed-form function
inline std::vector<Complex> grid_values(const GridSpec& g, const Fn& f, Complex tail) {
    std::vector<Complex> out;
    for (std::size_t k = 0; k < g.sample_count(); ++k) out.push_back(f(k / double(g.step_denominator())));
    out.push_back(tail);
    return out;
}

inline std::vector<Complex> coords(const fockidx::AlgebraElement& a) {
    std::vector<Complex> out(a.samples().begin(), a.samples().end());
    out.push_back(a.tail());
    return out;
}

inline double max_gap(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_gap(const fockidx::AlgebraElement& a, const std::vector<Complex>& b) {
    return max_gap(coords(a), b);
}

// index of s + 1 in the coordinate vector; the tail absorbs everything past S
inline std::size_t plus_one(const GridSpec& g, std::size_t k) {
    const std::size_t n = g.sample_count();
    if (k >= n) return n;
    const std::size_t j = k + g.step_denominator();
    return j < n ? j : n;
}

// (Lb)(s) = conj(zeta(s)) b(s+1) zeta'(s) + (conj(beta(s)) + beta'(s)) b(s), entry by entry
inline Eigen::MatrixXcd kernel_matrix(const fockidx::FockUnit& u, const fockidx::FockUnit& v) {
    const GridSpec& g = u.grid();
    const auto zu = coords(u.zeta()), zv = coords(v.zeta());
    const auto bu = coords(u.beta()), bv = coords(v.beta());
    const std::size_t d = g.dimension();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (std::size_t k = 0; k < d; ++k) {
        m(k, plus_one(g, k)) += std::conj(zu[k]) * zv[k];
        m(k, k) += std::conj(bu[k]) + bv[k];
    }
    return m;
}

inline std::vector<Complex> apply(const Eigen::MatrixXcd& m, const std::vector<Complex>& b) {
    Eigen::VectorXcd x(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) x(i) = b[i];
    const Eigen::VectorXcd y = m * x;
    return {y.data(), y.data() + y.size()};
}

inline Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a) { return a.exp(); }

inline double max_row_sum(const Eigen::MatrixXcd& m) {
    return m.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace oracle
