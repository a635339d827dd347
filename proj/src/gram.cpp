#include "fockidx/fock.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace fockidx {

GramMatrix::GramMatrix(std::vector<std::vector<AlgebraElement>> entries)
    : entries_(std::move(entries)) {
    if (entries_.empty()) throw PreconditionError("empty Gram matrix");
    for (const auto& row : entries_) {
        if (row.size() != entries_.size()) throw PreconditionError("Gram matrix is not square");
        for (const auto& e : row) {
            if (!(e.grid() == entries_.front().front().grid())) throw GridMismatch();
        }
    }
}

GramMatrix gram_matrix(const std::vector<FockUnit>& units, double t, const AlgebraElement& b,
                       double rel_tol) {
    if (!is_positive(b)) throw PreconditionError("Gram matrix requires a positive b");
    std::vector<std::vector<AlgebraElement>> entries(units.size());
    for (std::size_t i = 0; i < units.size(); ++i) {
        entries[i].reserve(units.size());
        for (std::size_t j = 0; j < units.size(); ++j) {
            entries[i].push_back(apply(semigroup(units[i], units[j], t, rel_tol), b));
        }
    }
    return GramMatrix(std::move(entries));
}

GramReport gram_psd_check(const GramMatrix& g, double tol) {
    const std::size_t n = g.size();
    const GridSpec& grid = g.grid();
    const std::size_t points = grid.dimension();
    GramReport report;
    report.min_eigenvalue = std::numeric_limits<double>::infinity();
    report.points.reserve(points);

    const auto dim = static_cast<Eigen::Index>(n);
    Eigen::MatrixXcd local(dim, dim);
    for (std::size_t k = 0; k < points; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                local(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    g(i, j).coordinate(k);
            }
        }
        const double asymmetry = (local - local.adjoint()).cwiseAbs().maxCoeff();
        const double scale = std::max(1.0, local.cwiseAbs().maxCoeff());
        if (asymmetry > tol * scale) {
            throw NonHermitian("Gram matrix is not Hermitian at grid point " + std::to_string(k));
        }
        const Eigen::MatrixXcd hermitian = 0.5 * (local + local.adjoint());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian, Eigen::EigenvaluesOnly);
        const double lowest = solver.eigenvalues().minCoeff();
        const bool is_tail = k + 1 == points;
        report.points.push_back({k, is_tail, is_tail ? 0.0 : grid.point(k), lowest});
        report.min_eigenvalue = std::min(report.min_eigenvalue, lowest);
    }
    report.psd = report.min_eigenvalue >= -tol;
    return report;
}

}  // namespace fockidx
