#include "fockidx/fock.hpp"

#include <string>

namespace fockidx {

FockUnit::FockUnit(AlgebraElement zeta, AlgebraElement beta)
    : zeta_(std::move(zeta)), beta_(std::move(beta)) {
    if (!(zeta_.grid() == beta_.grid())) throw GridMismatch();
}

FockUnit FockUnit::omega(const GridSpec& grid) {
    return {constant(grid, 0.0), constant(grid, 0.0)};
}

FockUnit FockUnit::xi(const GridSpec& grid) {
    return {constant(grid, 1.0), constant(grid, 0.0)};
}

bool identical(const FockUnit& a, const FockUnit& b) {
    return identical(a.zeta(), b.zeta()) && identical(a.beta(), b.beta());
}

NParticleVector left_action(const AlgebraElement& b, const NParticleVector& x) {
    return {x.n, shift_steps(b, x.n * b.grid().step_denominator()) * x.value};
}

AlgebraElement module_inner(const NParticleVector& x, const NParticleVector& y) {
    if (x.n != y.n) {
        throw PreconditionError("inner product of " + std::to_string(x.n) + "- and " +
                                std::to_string(y.n) + "-particle vectors");
    }
    return star(x.value) * y.value;
}

NParticleVector unit_component(const FockUnit& u, std::size_t n) {
    if (sup_norm(u.beta()) != 0.0) {
        throw UnsupportedParameter("n-particle components are only available for beta = 0 units");
    }
    const GridSpec& grid = u.grid();
    AlgebraElement value = constant(grid, 1.0);
    for (std::size_t k = 0; k < n; ++k) {
        value = value * shift_steps(u.zeta(), k * grid.step_denominator());
    }
    return {n, std::move(value)};
}

KernelOperator::KernelOperator(GridSpec grid, Eigen::MatrixXcd matrix)
    : grid_(grid), matrix_(std::move(matrix)) {
    const auto d = static_cast<Eigen::Index>(grid_.dimension());
    if (matrix_.rows() != d || matrix_.cols() != d) {
        throw PreconditionError("kernel matrix does not match the grid dimension");
    }
}

KernelOperator KernelOperator::identity(const GridSpec& grid) {
    const auto d = static_cast<Eigen::Index>(grid.dimension());
    return {grid, Eigen::MatrixXcd::Identity(d, d)};
}

KernelOperator KernelOperator::zero(const GridSpec& grid) {
    const auto d = static_cast<Eigen::Index>(grid.dimension());
    return {grid, Eigen::MatrixXcd::Zero(d, d)};
}

KernelOperator KernelOperator::multiplication(const AlgebraElement& a) {
    return {a.grid(), coordinates(a).asDiagonal()};
}

KernelOperator KernelOperator::multiply_output(const AlgebraElement& a) const {
    if (!(a.grid() == grid_)) throw GridMismatch();
    return {grid_, coordinates(a).asDiagonal() * matrix_};
}

KernelOperator KernelOperator::multiply_input(const AlgebraElement& a) const {
    if (!(a.grid() == grid_)) throw GridMismatch();
    return {grid_, matrix_ * coordinates(a).asDiagonal()};
}

KernelOperator KernelOperator::adjoint_kernel() const {
    return {grid_, matrix_.conjugate()};
}

KernelOperator& KernelOperator::operator+=(const KernelOperator& other) {
    if (!(other.grid_ == grid_)) throw GridMismatch();
    matrix_ += other.matrix_;
    return *this;
}

KernelOperator& KernelOperator::operator-=(const KernelOperator& other) {
    if (!(other.grid_ == grid_)) throw GridMismatch();
    matrix_ -= other.matrix_;
    return *this;
}

KernelOperator operator+(KernelOperator a, const KernelOperator& b) { return a += b; }
KernelOperator operator-(KernelOperator a, const KernelOperator& b) { return a -= b; }

KernelOperator operator*(Complex alpha, const KernelOperator& k) {
    return {k.grid(), alpha * k.matrix()};
}

KernelOperator compose(const KernelOperator& a, const KernelOperator& b) {
    if (!(a.grid() == b.grid())) throw GridMismatch();
    return {a.grid(), a.matrix() * b.matrix()};
}

Eigen::VectorXcd coordinates(const AlgebraElement& b) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(b.grid().dimension()));
    for (std::size_t k = 0; k < b.size(); ++k) v[static_cast<Eigen::Index>(k)] = b[k];
    v[v.size() - 1] = b.tail();
    return v;
}

AlgebraElement from_coordinates(const GridSpec& grid, const Eigen::VectorXcd& v,
                                bool inherited_unresolved) {
    if (v.size() != static_cast<Eigen::Index>(grid.dimension())) {
        throw PreconditionError("coordinate vector does not match the grid dimension");
    }
    std::vector<Complex> samples(v.data(), v.data() + v.size() - 1);
    return {grid, std::move(samples), v[v.size() - 1], inherited_unresolved};
}

KernelOperator kernel(const FockUnit& u, const FockUnit& v) {
    const GridSpec& grid = u.grid();
    if (!(v.grid() == grid)) throw GridMismatch();
    const std::size_t n = grid.sample_count();
    const std::size_t tail = n;
    const std::size_t step = static_cast<std::size_t>(grid.step_denominator());
    const auto d = static_cast<Eigen::Index>(grid.dimension());

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (std::size_t k = 0; k <= n; ++k) {
        const Complex shift_coeff = std::conj(u.zeta().coordinate(k)) * v.zeta().coordinate(k);
        const Complex diag_coeff = std::conj(u.beta().coordinate(k)) + v.beta().coordinate(k);
        // the tail row reads b(s + 1) from the tail as well
        const std::size_t shifted = (k < n && k + step < n) ? k + step : tail;
        const auto row = static_cast<Eigen::Index>(k);
        m(row, static_cast<Eigen::Index>(shifted)) += shift_coeff;
        m(row, row) += diag_coeff;
    }
    return {grid, std::move(m)};
}

KernelOperator exponential(const KernelOperator& generator, double t, double rel_tol) {
    if (!(t >= 0.0)) throw PreconditionError("semigroup time must be nonnegative");
    return {generator.grid(), matrix_exponential(t * generator.matrix(), rel_tol)};
}

KernelOperator semigroup(const FockUnit& u, const FockUnit& v, double t, double rel_tol) {
    return exponential(kernel(u, v), t, rel_tol);
}

AlgebraElement apply(const KernelOperator& k, const AlgebraElement& b) {
    if (!(k.grid() == b.grid())) throw GridMismatch();
    return from_coordinates(b.grid(), k.matrix() * coordinates(b), b.unresolved());
}

double operator_norm(const KernelOperator& k) {
    return k.matrix().cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace fockidx
