#include "fockidx/unit_algebra.hpp"

#include "fockidx/presets.hpp"

#include <algorithm>
#include <cmath>

namespace fockidx {

struct ReferencedUnit::Node {
    UnitOp op;
    std::vector<ReferencedUnit> operands;
    std::vector<AlgebraElement> coefficients;
    FockUnit candidate;
    FockUnit reference;
};

ReferencedUnit::ReferencedUnit(FockUnit unit, FockUnit reference) {
    if (!(unit.grid() == reference.grid())) throw GridMismatch();
    node_ = std::make_shared<const Node>(
        Node{UnitOp::atomic, {}, {}, std::move(unit), std::move(reference)});
}

ReferencedUnit::ReferencedUnit(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

UnitOp ReferencedUnit::op() const noexcept { return node_->op; }
const FockUnit& ReferencedUnit::candidate() const noexcept { return node_->candidate; }
const FockUnit& ReferencedUnit::reference() const noexcept { return node_->reference; }

std::span<const ReferencedUnit> ReferencedUnit::operands() const noexcept {
    return node_->operands;
}

std::span<const AlgebraElement> ReferencedUnit::coefficients() const noexcept {
    return node_->coefficients;
}

ReferencedUnit make_composite(UnitOp op, std::vector<ReferencedUnit> operands,
                              std::vector<AlgebraElement> coefficients, FockUnit candidate) {
    FockUnit reference = operands.front().reference();
    auto node = std::make_shared<const ReferencedUnit::Node>(ReferencedUnit::Node{
        op, std::move(operands), std::move(coefficients), std::move(candidate),
        std::move(reference)});
    return ReferencedUnit(std::move(node));
}

std::string to_string(UnitOp op) {
    switch (op) {
    case UnitOp::atomic: return "atomic";
    case UnitOp::power_beta: return "power_beta";
    case UnitOp::boxplus_left: return "boxplus_left";
    case UnitOp::boxplus_right: return "boxplus_right";
    case UnitOp::add: return "add";
    case UnitOp::left_mul: return "left_mul";
    case UnitOp::right_mul: return "right_mul";
    }
    return "unknown";
}

bool same_reference(const ReferencedUnit& x, const ReferencedUnit& y) {
    return identical(x.reference(), y.reference());
}

namespace {

void require_same_reference(const ReferencedUnit& x, const ReferencedUnit& y) {
    if (!(x.grid() == y.grid())) throw GridMismatch();
    if (!same_reference(x, y)) throw ReferenceMismatch();
}

void require_unit_sum(const std::vector<AlgebraElement>& kappa,
                      std::span<const ReferencedUnit> units) {
    if (kappa.empty() || kappa.size() != units.size()) {
        throw CoefficientSumError("need one coefficient per unit");
    }
    AlgebraElement total = constant(kappa.front().grid(), 0.0);
    for (const auto& k : kappa) total = total + k;
    const double gap = sup_distance(total, constant(total.grid(), 1.0));
    if (gap > 1e-12) {
        throw CoefficientSumError("coefficients sum to 1 only within " + std::to_string(gap));
    }
    for (std::size_t j = 1; j < units.size(); ++j) require_same_reference(units[0], units[j]);
}

std::vector<ReferencedUnit> wrap(const std::vector<FockUnit>& units, const FockUnit& reference) {
    std::vector<ReferencedUnit> out;
    out.reserve(units.size());
    for (const auto& u : units) out.emplace_back(u, reference);
    return out;
}

AlgebraElement one_minus(const AlgebraElement& a) { return constant(a.grid(), 1.0) - a; }

AlgebraElement sigma1(const AlgebraElement& a) { return shift(a, 1.0); }

}  // namespace

ReferencedUnit power_beta(const ReferencedUnit& x, const AlgebraElement& beta) {
    FockUnit cand{x.candidate().zeta(), x.candidate().beta() + beta};
    return make_composite(UnitOp::power_beta, {x}, {beta}, std::move(cand));
}

ReferencedUnit boxplus_left(const std::vector<AlgebraElement>& kappa,
                            const std::vector<ReferencedUnit>& units) {
    require_unit_sum(kappa, units);
    const GridSpec& grid = units.front().grid();
    AlgebraElement zeta = constant(grid, 0.0);
    AlgebraElement beta = constant(grid, 0.0);
    for (std::size_t j = 0; j < units.size(); ++j) {
        zeta = zeta + kappa[j] * units[j].candidate().zeta();
        beta = beta + kappa[j] * units[j].candidate().beta();
    }
    return make_composite(UnitOp::boxplus_left, units, kappa, FockUnit{zeta, beta});
}

ReferencedUnit boxplus_left(const std::vector<AlgebraElement>& kappa,
                            const std::vector<FockUnit>& units, const FockUnit& reference) {
    return boxplus_left(kappa, wrap(units, reference));
}

ReferencedUnit boxplus_right(const std::vector<ReferencedUnit>& units,
                             const std::vector<AlgebraElement>& kappa) {
    require_unit_sum(kappa, units);
    const GridSpec& grid = units.front().grid();
    AlgebraElement zeta = constant(grid, 0.0);
    AlgebraElement beta = constant(grid, 0.0);
    for (std::size_t j = 0; j < units.size(); ++j) {
        // kappa passes through the left action of F, hence the shift
        zeta = zeta + sigma1(kappa[j]) * units[j].candidate().zeta();
        beta = beta + kappa[j] * units[j].candidate().beta();
    }
    return make_composite(UnitOp::boxplus_right, units, kappa, FockUnit{zeta, beta});
}

ReferencedUnit boxplus_right(const std::vector<FockUnit>& units,
                             const std::vector<AlgebraElement>& kappa, const FockUnit& reference) {
    return boxplus_right(wrap(units, reference), kappa);
}

ReferencedUnit add(const ReferencedUnit& x, const ReferencedUnit& y) {
    require_same_reference(x, y);
    const FockUnit& w = x.reference();
    FockUnit cand{x.candidate().zeta() + y.candidate().zeta() - w.zeta(),
                  x.candidate().beta() + y.candidate().beta() - w.beta()};
    return make_composite(UnitOp::add, {x, y}, {}, std::move(cand));
}

ReferencedUnit left_mul(const AlgebraElement& a, const ReferencedUnit& x) {
    const FockUnit& w = x.reference();
    const AlgebraElement shifted = sigma1(a);
    FockUnit cand{shifted * x.candidate().zeta() + one_minus(shifted) * w.zeta(),
                  a * x.candidate().beta() + one_minus(a) * w.beta()};
    return make_composite(UnitOp::left_mul, {x}, {a}, std::move(cand));
}

ReferencedUnit right_mul(const ReferencedUnit& x, const AlgebraElement& a) {
    const FockUnit& w = x.reference();
    FockUnit cand{x.candidate().zeta() * a + w.zeta() * one_minus(a),
                  x.candidate().beta() * a + w.beta() * one_minus(a)};
    return make_composite(UnitOp::right_mul, {x}, {a}, std::move(cand));
}

ReferencedUnit scale(Complex alpha, const ReferencedUnit& x) {
    return left_mul(constant(x.grid(), alpha), x);
}

ReferencedUnit subtract(const ReferencedUnit& x, const ReferencedUnit& y) {
    return add(x, scale(-1.0, y));
}

namespace {

// Expands the first slot of L^{x,y} for composite x.
KernelOperator expand_first(const ReferencedUnit& x, const ReferencedUnit& y) {
    const auto ops = x.operands();
    const auto coeffs = x.coefficients();
    switch (x.op()) {
    case UnitOp::power_beta:
        return formula_kernel(ops[0], y) + KernelOperator::multiplication(star(coeffs[0]));
    case UnitOp::boxplus_left: {
        KernelOperator sum = KernelOperator::zero(x.grid());
        for (std::size_t i = 0; i < ops.size(); ++i) {
            sum += formula_kernel(ops[i], y).multiply_output(star(coeffs[i]));
        }
        return sum;
    }
    case UnitOp::boxplus_right: {
        KernelOperator sum = KernelOperator::zero(x.grid());
        for (std::size_t i = 0; i < ops.size(); ++i) {
            sum += formula_kernel(ops[i], y).multiply_input(star(coeffs[i]));
        }
        return sum;
    }
    case UnitOp::add: {
        const ReferencedUnit w = x.reference_unit();
        return formula_kernel(ops[0], y) + formula_kernel(ops[1], y) - formula_kernel(w, y);
    }
    case UnitOp::right_mul: {
        const ReferencedUnit w = x.reference_unit();
        const AlgebraElement& a = coeffs[0];
        return formula_kernel(ops[0], y).multiply_output(star(a)) +
               formula_kernel(w, y).multiply_output(star(one_minus(a)));
    }
    case UnitOp::left_mul: {
        const ReferencedUnit w = x.reference_unit();
        const AlgebraElement& a = coeffs[0];
        return formula_kernel(ops[0], y).multiply_input(star(a)) +
               formula_kernel(w, y).multiply_input(star(one_minus(a)));
    }
    case UnitOp::atomic: break;
    }
    throw Error("expand_first called on an atomic unit");
}

}  // namespace

KernelOperator formula_kernel(const ReferencedUnit& x, const ReferencedUnit& y) {
    if (!(x.grid() == y.grid())) throw GridMismatch();
    if (x.op() != UnitOp::atomic) return expand_first(x, y);
    if (y.op() != UnitOp::atomic) return formula_kernel(y, x).adjoint_kernel();
    return kernel(x.candidate(), y.candidate());
}

KernelOperator formula_kernel(const ReferencedUnit& x, const FockUnit& v) {
    return formula_kernel(x, ReferencedUnit(v, x.reference()));
}

KernelOperator formula_self_kernel(const ReferencedUnit& x) {
    const auto ops = x.operands();
    const auto coeffs = x.coefficients();
    switch (x.op()) {
    case UnitOp::atomic: return kernel(x.candidate(), x.candidate());
    case UnitOp::power_beta: {
        const AlgebraElement& beta = coeffs[0];
        return formula_kernel(ops[0], ops[0]) + KernelOperator::multiplication(star(beta)) +
               KernelOperator::multiplication(beta);
    }
    case UnitOp::boxplus_left:
    case UnitOp::boxplus_right: {
        const bool left = x.op() == UnitOp::boxplus_left;
        KernelOperator sum = KernelOperator::zero(x.grid());
        for (std::size_t i = 0; i < ops.size(); ++i) {
            for (std::size_t j = 0; j < ops.size(); ++j) {
                const AlgebraElement weight = star(coeffs[i]) * coeffs[j];
                const KernelOperator lij = formula_kernel(ops[i], ops[j]);
                sum += left ? lij.multiply_output(weight) : lij.multiply_input(weight);
            }
        }
        return sum;
    }
    case UnitOp::add: {
        const ReferencedUnit w = x.reference_unit();
        const ReferencedUnit& p = ops[0];
        const ReferencedUnit& q = ops[1];
        return formula_kernel(p, p) + formula_kernel(p, q) - formula_kernel(p, w) +
               formula_kernel(q, p) + formula_kernel(q, q) - formula_kernel(q, w) -
               formula_kernel(w, p) - formula_kernel(w, q) + formula_kernel(w, w);
    }
    case UnitOp::right_mul:
    case UnitOp::left_mul: {
        const bool output_side = x.op() == UnitOp::right_mul;
        const ReferencedUnit w = x.reference_unit();
        const ReferencedUnit& p = ops[0];
        const AlgebraElement& a = coeffs[0];
        const AlgebraElement b = one_minus(a);
        auto weigh = [&](const KernelOperator& k, const AlgebraElement& left,
                         const AlgebraElement& right) {
            const AlgebraElement weight = star(left) * right;
            return output_side ? k.multiply_output(weight) : k.multiply_input(weight);
        };
        return weigh(formula_kernel(p, p), a, a) + weigh(formula_kernel(w, p), b, a) +
               weigh(formula_kernel(p, w), a, b) + weigh(formula_kernel(w, w), b, b);
    }
    }
    throw Error("unknown unit operation");
}

double dual_path_residual(const ReferencedUnit& x, const std::vector<FockUnit>& probes) {
    const FockUnit& cand = x.candidate();
    const KernelOperator self = kernel(cand, cand);
    double worst = std::max(operator_norm(formula_kernel(x, x) - self),
                            operator_norm(formula_self_kernel(x) - self));
    for (const auto& v : probes) {
        worst = std::max(worst, operator_norm(formula_kernel(x, v) - kernel(cand, v)));
    }
    return worst;
}

AlgebraElement semi_inner(const ReferencedUnit& x, const ReferencedUnit& y,
                          const AlgebraElement& b) {
    require_same_reference(x, y);
    const ReferencedUnit w = x.reference_unit();
    const KernelOperator k = formula_kernel(x, y) - formula_kernel(x, w) -
                             formula_kernel(w, y) + formula_kernel(w, w);
    return apply(k, b);
}

double index_norm(const ReferencedUnit& x) {
    return std::sqrt(sup_norm(semi_inner(x, x, constant(x.grid(), 1.0))));
}

EquivalenceReport equivalent(const ReferencedUnit& x, const ReferencedUnit& y, double tol) {
    EquivalenceReport r;
    r.index_distance = index_norm(subtract(x, y));
    r.zeta_distance = sup_distance(x.candidate().zeta(), y.candidate().zeta());
    r.equivalent = r.index_distance <= tol;
    r.paths_agree = (r.zeta_distance <= tol) == r.equivalent;
    return r;
}

std::vector<FockUnit> default_probe_units(const GridSpec& grid) {
    auto unit = [&](const FunctionPreset& z, const FunctionPreset& b) {
        return FockUnit{sample(z, grid), sample(b, grid)};
    };
    using C = Complex;
    return {
        FockUnit::omega(grid),
        FockUnit::xi(grid),
        unit(ExpApproachPreset{C{0.5}, 1.0, C{1.0}}, ConstantPreset{C{0.3}}),
        unit(PiecewiseLinearPreset{{{0.0, C{2.0}}, {3.0, C{0.5}}}},
             ExpApproachPreset{C{0.0, 0.2}, 0.7, C{0.0}}),
        unit(ConstantPreset{C{0.3, 0.8}}, ConstantPreset{C{-0.2, 0.1}}),
        unit(ExpApproachPreset{C{0.7, -0.4}, 0.5, C{0.2, 0.3}},
             PiecewiseLinearPreset{{{0.0, C{0.0, -0.5}}, {2.0, C{0.4}}}}),
    };
}

}  // namespace fockidx
