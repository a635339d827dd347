#pragma once

// Units u(zeta, beta) of the time-ordered product system over F = B (left
// action by the shift sigma_1), their generator kernels L^{u,v}, and the CPD
// semigroup K_t = exp(t L).

#include "fockidx/algebra.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace fockidx {

/// The continuous unit u(zeta, beta) with zeta in F = B and beta in B.
class FockUnit {
public:
    FockUnit(AlgebraElement zeta, AlgebraElement beta);

    /// The vacuum unit (0, 0).
    static FockUnit omega(const GridSpec& grid);
    /// The generator xi = (1, 0).
    static FockUnit xi(const GridSpec& grid);

    const AlgebraElement& zeta() const noexcept { return zeta_; }
    const AlgebraElement& beta() const noexcept { return beta_; }
    const GridSpec& grid() const noexcept { return zeta_.grid(); }

private:
    AlgebraElement zeta_;
    AlgebraElement beta_;
};

bool identical(const FockUnit& a, const FockUnit& b);

/// Element of the n-fold tensor power F^{(x)n}, which is B as a right module
/// with left action b.x = sigma_n(b) x.
struct NParticleVector {
    std::size_t n = 0;
    AlgebraElement value;
};

NParticleVector left_action(const AlgebraElement& b, const NParticleVector& x);
AlgebraElement module_inner(const NParticleVector& x, const NParticleVector& y);

/// n-particle component of a beta = 0 unit: value(s) = prod_{k<n} zeta(s+k).
/// Throws UnsupportedParameter when beta != 0.
NParticleVector unit_component(const FockUnit& u, std::size_t n);

/// Bounded linear map on B, stored as a dense matrix acting on the
/// coordinate vector (samples..., tail).
class KernelOperator {
public:
    KernelOperator(GridSpec grid, Eigen::MatrixXcd matrix);

    static KernelOperator identity(const GridSpec& grid);
    static KernelOperator zero(const GridSpec& grid);
    /// b -> a b
    static KernelOperator multiplication(const AlgebraElement& a);

    const GridSpec& grid() const noexcept { return grid_; }
    const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }

    /// b -> a * K(b)
    KernelOperator multiply_output(const AlgebraElement& a) const;
    /// b -> K(a * b)
    KernelOperator multiply_input(const AlgebraElement& a) const;
    /// b -> K(b*)*; realizes L^{y,x} from L^{x,y}.
    KernelOperator adjoint_kernel() const;

    KernelOperator& operator+=(const KernelOperator& other);
    KernelOperator& operator-=(const KernelOperator& other);

private:
    GridSpec grid_;
    Eigen::MatrixXcd matrix_;
};

KernelOperator operator+(KernelOperator a, const KernelOperator& b);
KernelOperator operator-(KernelOperator a, const KernelOperator& b);
KernelOperator operator*(Complex alpha, const KernelOperator& k);
/// Composition a * b = (b first, then a).
KernelOperator compose(const KernelOperator& a, const KernelOperator& b);

Eigen::VectorXcd coordinates(const AlgebraElement& b);
AlgebraElement from_coordinates(const GridSpec& grid, const Eigen::VectorXcd& v,
                                bool inherited_unresolved = false);

/// (L^{u,v} b)(s) = conj(zeta(s)) b(s+1) zeta'(s) + (conj(beta(s)) + beta'(s)) b(s).
KernelOperator kernel(const FockUnit& u, const FockUnit& v);

inline constexpr double kExpTolerance = 1e-12;

/// exp(A) by scaling and squaring with a truncated Taylor series.
Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& a, double rel_tol = kExpTolerance);

/// K_t^{u,v} = exp(t L^{u,v}); throws PreconditionError for t < 0.
KernelOperator semigroup(const FockUnit& u, const FockUnit& v, double t,
                         double rel_tol = kExpTolerance);
KernelOperator exponential(const KernelOperator& generator, double t,
                           double rel_tol = kExpTolerance);

AlgebraElement apply(const KernelOperator& k, const AlgebraElement& b);

/// Induced infinity-norm (max absolute row sum); this is the operator norm
/// for the sup norm on coordinates.
double operator_norm(const KernelOperator& k);

/// Square matrix over B.
class GramMatrix {
public:
    explicit GramMatrix(std::vector<std::vector<AlgebraElement>> entries);

    std::size_t size() const noexcept { return entries_.size(); }
    const AlgebraElement& operator()(std::size_t i, std::size_t j) const {
        return entries_[i][j];
    }
    const GridSpec& grid() const { return entries_.front().front().grid(); }

private:
    std::vector<std::vector<AlgebraElement>> entries_;
};

/// (i, j) entry K_t^{u_i, u_j}(b). Throws PreconditionError unless b >= 0.
GramMatrix gram_matrix(const std::vector<FockUnit>& units, double t, const AlgebraElement& b,
                       double rel_tol = kExpTolerance);

struct PointEigenvalue {
    std::size_t grid_point;  // index into (samples..., tail)
    bool is_tail;
    double s;                // grid coordinate; meaningless for the tail
    double min_eigenvalue;
};

struct GramReport {
    bool psd = true;
    double min_eigenvalue = 0.0;
    std::vector<PointEigenvalue> points;
};

class NonHermitian : public Error {
public:
    using Error::Error;
};

/// Pointwise PSD test: B is commutative, so positivity in M_n(B) means the
/// numeric matrix [G_ij(s)] is PSD at every grid point and at the tail.
GramReport gram_psd_check(const GramMatrix& g, double tol = kPositivityTolerance);

}  // namespace fockidx
