#include "fockidx/subsystem.hpp"

#include "fockidx/presets.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fockidx {

std::string to_string(WitnessKind kind) {
    switch (kind) {
    case WitnessKind::exact_tail: return "exact_tail";
    case WitnessKind::approximation: return "approximation";
    case WitnessKind::rejected: return "rejected";
    }
    return "unknown";
}

std::optional<int> eventually_one_from(const AlgebraElement& zeta, double tol) {
    const Complex one{1.0, 0.0};
    if (std::abs(zeta.tail() - one) > tol) return std::nullopt;
    const int m = zeta.grid().step_denominator();
    std::optional<std::size_t> last_off;
    for (std::size_t k = zeta.size(); k-- > 0;) {
        if (std::abs(zeta[k] - one) > tol) {
            last_off = k;
            break;
        }
    }
    if (!last_off) return 1;
    const int n = static_cast<int>(*last_off / static_cast<std::size_t>(m)) + 1;
    if (n > zeta.grid().domain_end()) return std::nullopt;
    return n;
}

MembershipReport membership(const FockUnit& u, double tol) {
    MembershipReport r;
    const AlgebraElement& zeta = u.zeta();
    r.zeta_limit = limit_at_infinity(zeta);
    r.distance_to_one = std::abs(r.zeta_limit - Complex{1.0, 0.0});
    r.in_E = r.distance_to_one <= tol;
    if (zeta.unresolved()) {
        std::ostringstream msg;
        msg << "zeta is unresolved on the grid: last sample differs from the tail by "
            << std::abs(zeta.samples().back() - zeta.tail());
        r.warnings.push_back(msg.str());
    }
    if (!r.in_E) {
        r.witness_kind = WitnessKind::rejected;
        return r;
    }
    r.eventually_one_from = eventually_one_from(zeta);
    if (r.eventually_one_from) {
        r.witness_kind = WitnessKind::exact_tail;
        const std::size_t limit =
            static_cast<std::size_t>(*r.eventually_one_from) * zeta.grid().step_denominator();
        r.positive_before = is_real(zeta);
        for (std::size_t k = 0; k < limit && k < zeta.size(); ++k) {
            r.positive_before = r.positive_before && zeta[k].real() > 0.0;
        }
    } else {
        r.witness_kind = WitnessKind::approximation;
    }
    return r;
}

namespace {

void require_eventually_one(const AlgebraElement& zeta, int n, const char* who) {
    if (n < 1) throw PreconditionError(std::string(who) + ": n must be positive");
    if (n > zeta.grid().domain_end()) {
        throw PreconditionError(std::string(who) + ": n lies beyond the grid");
    }
    if (!is_real(zeta)) throw PreconditionError(std::string(who) + ": zeta must be real");
    const auto from = eventually_one_from(zeta);
    if (!from || *from > n) {
        throw PreconditionError(std::string(who) + ": zeta is not 1 on [n, inf)");
    }
}

}  // namespace

Step1Witness witness_step1(const AlgebraElement& zeta, int n) {
    require_eventually_one(zeta, n, "witness_step1");
    const GridSpec& grid = zeta.grid();
    if (grid.domain_end() < 2 * n) {
        throw PreconditionError("witness_step1: the grid must extend to 2n");
    }
    const std::size_t m = static_cast<std::size_t>(grid.step_denominator());
    const std::size_t nn = static_cast<std::size_t>(n);
    for (std::size_t k = 0; k < nn * m; ++k) {
        if (!(zeta[k].real() > 0.0)) {
            throw PreconditionError("witness_step1: zeta must be positive on [0, n)");
        }
    }

    const FockUnit eta{zeta, constant(grid, 0.0)};
    const NParticleVector eta_n = unit_component(eta, nn);
    AlgebraElement b0 = eta_n.value;
    AlgebraElement b1 = reciprocal(b0);

    const AlgebraElement one = constant(grid, 1.0);
    double residual = sup_distance(b0 * b1, one);
    // (b1 xi b0)^n (s) = b1(s + n) b0(s)
    residual = std::max(residual, sup_distance(shift_steps(b1, nn * m) * b0, eta_n.value));
    const NParticleVector xi_n = unit_component(FockUnit::xi(grid), nn);
    const NParticleVector conjugated{nn, left_action(b1, xi_n).value * b0};
    residual = std::max(residual, sup_distance(conjugated.value, eta_n.value));

    return {n, std::move(b0), std::move(b1), residual};
}

Convexification convexify(const AlgebraElement& zeta, int n, double delta) {
    require_eventually_one(zeta, n, "convexify");
    if (!(delta > 0.0 && delta < 1.0)) throw PreconditionError("convexify: delta must lie in (0, 1)");

    const auto satisfies = [&](double alpha) {
        for (Complex z : zeta.samples()) {
            if (alpha * z.real() + (1.0 - alpha) < delta) return false;
        }
        return true;
    };

    double bound = 1.0;
    for (Complex z : zeta.samples()) {
        if (z.real() < 1.0) bound = std::min(bound, (1.0 - delta) / (1.0 - z.real()));
    }
    const double levels = std::ldexp(1.0, kDyadicLevels);
    double j = std::min(levels - 1.0, std::floor(bound * levels));
    while (j > 0.0 && !satisfies(j / levels)) j -= 1.0;
    if (j <= 0.0) throw PreconditionError("convexify: no admissible alpha on the dyadic grid");

    const double alpha = j / levels;
    const GridSpec& grid = zeta.grid();
    AlgebraElement zeta_prime = alpha * zeta + constant(grid, 1.0 - alpha);
    return {alpha, std::move(zeta_prime)};
}

ThetaCheck theta_check(const AlgebraElement& zeta, int n, const std::vector<FockUnit>& probes,
                       double delta) {
    const GridSpec& grid = zeta.grid();
    const Convexification conv = convexify(zeta, n, delta);
    const Step1Witness w = witness_step1(conv.zeta_prime, n);

    const FockUnit xi = FockUnit::xi(grid);
    const AlgebraElement zero = constant(grid, 0.0);
    const ReferencedUnit eta_prime{FockUnit{conv.zeta_prime, zero}, xi};
    const ReferencedUnit generator{xi, xi};
    const double inv = 1.0 / conv.alpha;
    const ReferencedUnit theta =
        boxplus_left({constant(grid, inv), constant(grid, 1.0 - inv)}, {eta_prime, generator});

    const FockUnit eta{zeta, zero};
    double worst = 0.0;
    for (const auto& u : probes) {
        worst = std::max(worst, operator_norm(formula_kernel(theta, u) - kernel(eta, u)));
    }
    return {conv.alpha, w.max_identity_residual, worst};
}

AlgebraElement approximate(const AlgebraElement& zeta, int n) {
    const GridSpec& grid = zeta.grid();
    if (n < 1 || n > grid.domain_end()) throw PreconditionError("approximate: n must lie in [1, S]");
    const std::size_t cut = static_cast<std::size_t>(n) * grid.step_denominator();
    const Complex pivot = zeta[cut];
    if (std::abs(pivot) < 1e-8) throw PreconditionError("approximate: |zeta(n)| < 1e-8");
    std::vector<Complex> samples(zeta.size(), Complex{1.0, 0.0});
    for (std::size_t k = 0; k < cut; ++k) samples[k] = zeta[k] / pivot;
    return {grid, std::move(samples), Complex{1.0, 0.0}};
}

ConvergenceReport convergence_report(const AlgebraElement& zeta, double t,
                                     const std::vector<int>& ns, const FockUnit& probe) {
    const GridSpec& grid = zeta.grid();
    if (std::abs(zeta.tail() - Complex{1.0, 0.0}) > kMembershipTolerance) {
        throw PreconditionError("convergence_report: zeta does not tend to 1");
    }
    std::vector<int> sorted = ns;
    std::sort(sorted.begin(), sorted.end());

    const FockUnit xi = FockUnit::xi(grid);
    const AlgebraElement zero = constant(grid, 0.0);
    const FockUnit eta{zeta, zero};
    const ReferencedUnit eta_ref{eta, xi};
    const KernelOperator l_eta = kernel(eta, eta);
    const KernelOperator k_eta = exponential(l_eta, t);
    const KernelOperator l_probe = kernel(eta, probe);

    ConvergenceReport report;
    report.t = t;
    for (int n : sorted) {
        const AlgebraElement zeta_n = approximate(zeta, n);
        const FockUnit eta_n{zeta_n, zero};
        ConvergenceRow row;
        row.n = n;
        row.sup_dist = sup_distance(zeta, zeta_n);
        row.index_dist = index_norm(subtract(eta_ref, ReferencedUnit{eta_n, xi}));
        const KernelOperator l_n = kernel(eta_n, eta_n);
        row.kernel_dist = operator_norm(l_n - l_eta);
        row.semigroup_dist = operator_norm(exponential(l_n, t) - k_eta);
        row.probe_kernel_dist = operator_norm(kernel(eta_n, probe) - l_probe);
        report.rows.push_back(row);
    }

    constexpr double slack = 1e-12;
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const ConvergenceRow& r = report.rows[i];
        report.max_index_gap = std::max(report.max_index_gap, std::abs(r.index_dist - r.sup_dist));
        if (r.sup_dist > 0.0) {
            report.kernel_constant = std::max(report.kernel_constant, r.kernel_dist / r.sup_dist);
            report.semigroup_constant =
                std::max(report.semigroup_constant, r.semigroup_dist / r.sup_dist);
            report.probe_constant =
                std::max(report.probe_constant, r.probe_kernel_dist / r.sup_dist);
        }
        if (i == 0) continue;
        const ConvergenceRow& p = report.rows[i - 1];
        report.monotone = report.monotone && r.sup_dist <= p.sup_dist + slack &&
                          r.index_dist <= p.index_dist + slack &&
                          r.kernel_dist <= p.kernel_dist + slack &&
                          r.semigroup_dist <= p.semigroup_dist + slack &&
                          r.probe_kernel_dist <= p.probe_kernel_dist + slack;
    }
    return report;
}

AlgebraElement index_representative(const FockUnit& u, double tol) {
    if (!membership(u, tol).in_E) {
        throw PreconditionError("index_representative: unit does not belong to E");
    }
    return u.zeta() - constant(u.grid(), 1.0);
}

bool centrality_check(const FockUnit& u, const std::vector<AlgebraElement>& probes, double tol) {
    const AlgebraElement& zeta = u.zeta();
    return std::all_of(probes.begin(), probes.end(), [&](const AlgebraElement& b) {
        return sup_norm(shift(b, 1.0) * zeta - b * zeta) <= tol;
    });
}

std::vector<AlgebraElement> default_centrality_probes(const GridSpec& grid) {
    const double end = grid.domain_end();
    using C = Complex;
    return {
        sample(ExpApproachPreset{C{1.0}, 1.0, C{0.0}}, grid),
        sample(PiecewiseLinearPreset{{{0.0, C{1.0}}, {end, C{0.0}}}}, grid),
        sample(PiecewiseLinearPreset{{{0.0, C{1.0}}, {0.5 * end, C{0.2}}, {end, C{0.0}}}}, grid),
    };
}

}  // namespace fockidx
