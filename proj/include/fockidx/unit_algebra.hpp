#pragma once

// Bimodule calculus on continuous units relative to a reference unit omega.
//
// Every composite unit is kept twice:
//  * as an expression over its operands, whose kernels are expanded with the
//    kernel identities for ^beta, the two boxplus forms, +, a.x and x.a
//    (the "formula path");
//  * as a parameter candidate u(zeta, beta) obtained by substituting the Fock
//    kernel into those identities (the "parameter path").
// The two are never assumed equal; dual_path_residual measures the gap.

#include "fockidx/fock.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace fockidx {

class ReferenceMismatch : public Error {
public:
    ReferenceMismatch() : Error("units carry different reference units") {}
};

class CoefficientSumError : public Error {
public:
    using Error::Error;
};

enum class UnitOp { atomic, power_beta, boxplus_left, boxplus_right, add, left_mul, right_mul };

std::string to_string(UnitOp op);

class ReferencedUnit {
public:
    /// Wraps a Fock unit; `reference` is the omega the module operations use.
    ReferencedUnit(FockUnit unit, FockUnit reference);

    UnitOp op() const noexcept;
    /// Parameter-path candidate u(zeta, beta).
    const FockUnit& candidate() const noexcept;
    const FockUnit& reference() const noexcept;
    const GridSpec& grid() const noexcept { return candidate().grid(); }

    std::span<const ReferencedUnit> operands() const noexcept;
    /// beta for power_beta; kappa_j for the boxplus forms; a for the module actions.
    std::span<const AlgebraElement> coefficients() const noexcept;

    ReferencedUnit reference_unit() const { return {reference(), reference()}; }

private:
    struct Node;
    explicit ReferencedUnit(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;

    friend ReferencedUnit make_composite(UnitOp, std::vector<ReferencedUnit>,
                                         std::vector<AlgebraElement>, FockUnit);
};

bool same_reference(const ReferencedUnit& x, const ReferencedUnit& y);

/// x^beta: shifts the beta parameter; L^{x^b, v} = L^{x, v} + b* id.
ReferencedUnit power_beta(const ReferencedUnit& x, const AlgebraElement& beta);

/// kappa_1 u_1 [+] ... [+] kappa_n u_n with sum kappa_j = 1.
ReferencedUnit boxplus_left(const std::vector<AlgebraElement>& kappa,
                            const std::vector<ReferencedUnit>& units);
ReferencedUnit boxplus_left(const std::vector<AlgebraElement>& kappa,
                            const std::vector<FockUnit>& units, const FockUnit& reference);

/// u_1 kappa_1 [+] ... [+] u_n kappa_n with sum kappa_j = 1.
ReferencedUnit boxplus_right(const std::vector<ReferencedUnit>& units,
                             const std::vector<AlgebraElement>& kappa);
ReferencedUnit boxplus_right(const std::vector<FockUnit>& units,
                             const std::vector<AlgebraElement>& kappa, const FockUnit& reference);

ReferencedUnit add(const ReferencedUnit& x, const ReferencedUnit& y);
ReferencedUnit left_mul(const AlgebraElement& a, const ReferencedUnit& x);
ReferencedUnit right_mul(const ReferencedUnit& x, const AlgebraElement& a);

/// alpha x, realized as left_mul(constant(alpha), x).
ReferencedUnit scale(Complex alpha, const ReferencedUnit& x);
/// x - y = x + (-1) y.
ReferencedUnit subtract(const ReferencedUnit& x, const ReferencedUnit& y);

/// L^{x,y} expanded through the kernel identities down to Fock kernels.
KernelOperator formula_kernel(const ReferencedUnit& x, const ReferencedUnit& y);
KernelOperator formula_kernel(const ReferencedUnit& x, const FockUnit& v);

/// L^{x,x} from the explicit diagonal identities (the double sums for the
/// boxplus forms, the nine-term sum for +, the four-term sums for a.x, x.a).
KernelOperator formula_self_kernel(const ReferencedUnit& x);

/// Max over probes of |formula_kernel(x, v) - kernel(candidate(x), v)|,
/// together with the self-kernel gap.
double dual_path_residual(const ReferencedUnit& x, const std::vector<FockUnit>& probes);

/// <x, y>_b = (L^{x,y} - L^{x,w} - L^{w,y} + L^{w,w})(b).
AlgebraElement semi_inner(const ReferencedUnit& x, const ReferencedUnit& y,
                          const AlgebraElement& b);

/// sqrt(|<x, x>_1|).
double index_norm(const ReferencedUnit& x);

struct EquivalenceReport {
    bool equivalent = false;    // index-level verdict
    double index_distance = 0;  // index_norm(x - y)
    double zeta_distance = 0;   // sup |zeta_x - zeta_y|
    bool paths_agree = false;   // parameter characterization gives the same verdict
};

EquivalenceReport equivalent(const ReferencedUnit& x, const ReferencedUnit& y, double tol);

/// Six probe units: constant, decaying and complex-valued parameters.
std::vector<FockUnit> default_probe_units(const GridSpec& grid);

}  // namespace fockidx
