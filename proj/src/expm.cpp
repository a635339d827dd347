#include "fockidx/fock.hpp"

#include <cmath>

namespace fockidx {

namespace {

double inf_norm(const Eigen::MatrixXcd& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace

// Scale A by 2^-s so that |A|/2^s <= 1/2, sum the Taylor series until the
// next term falls below rel_tol * 2^-s relative to the partial sum, then
// square s times. The per-step tolerance is tightened by 2^-s because each
// squaring roughly doubles the relative error.
Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& a, double rel_tol) {
    const Eigen::Index n = a.rows();
    Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(n, a.cols());
    const double norm = inf_norm(a);
    if (norm == 0.0) return result;

    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    const Eigen::MatrixXcd scaled = a * std::ldexp(1.0, -squarings);
    const double step_tol =
        std::max(rel_tol * std::ldexp(1.0, -squarings), std::numeric_limits<double>::epsilon());

    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
    for (int k = 1; k < 64; ++k) {
        term = (term * scaled) / static_cast<double>(k);
        result += term;
        if (inf_norm(term) <= step_tol * inf_norm(result)) break;
    }
    for (int i = 0; i < squarings; ++i) result = result * result;
    return result;
}

}  // namespace fockidx
