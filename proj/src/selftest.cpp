#include "fockidx/selftest.hpp"

#include "fockidx/presets.hpp"
#include "fockidx/subsystem.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace fockidx {

namespace {

class Suite {
public:
    explicit Suite(const SelftestOptions& o) : grid(o.grid), rng(o.seed), cases(o.random_cases) {}

    void record(std::string module, std::string name, double value, double tol) {
        results.push_back({std::move(module), std::move(name), value, tol, value <= tol});
    }

    AlgebraElement random_element() { return sample(random_preset(rng), grid); }
    AlgebraElement random_unit_interval() { return sample(random_unit_interval_preset(rng), grid); }
    FockUnit random_unit() { return {random_element(), random_element()}; }
    FockUnit random_member() {
        return {sample(random_limit_one_preset(rng), grid), random_element()};
    }
    AlgebraElement random_positive() {
        const AlgebraElement a = random_element();
        return star(a) * a;
    }

    GridSpec grid;
    std::mt19937_64 rng;
    int cases;
    std::vector<CheckResult> results;
};

void algebra_checks(Suite& s) {
    double shift_law = 0.0, shift_const = 0.0, star_mul = 0.0, cstar = 0.0, ring = 0.0;
    const double h = s.grid.step();
    const std::vector<double> offsets{0.0, h, 1.0, 2.0 + h, 7.0};
    for (int c = 0; c < s.cases; ++c) {
        const AlgebraElement a = s.random_element();
        const AlgebraElement b = s.random_element();
        const AlgebraElement d = s.random_element();
        for (double x : offsets) {
            for (double y : offsets) {
                shift_law = std::max(shift_law, identical(shift(shift(a, x), y), shift(a, x + y)) ? 0.0 : 1.0);
            }
            const AlgebraElement k = constant(s.grid, a[0]);
            shift_const = std::max(shift_const, identical(shift(k, x), k) ? 0.0 : 1.0);
        }
        star_mul = std::max(star_mul, sup_distance(star(a * b), star(b) * star(a)));
        const double n = sup_norm(a);
        cstar = std::max(cstar, std::abs(sup_norm(star(a) * a) - n * n) / std::max(1.0, n * n));
        ring = std::max(ring, sup_distance(a * b, b * a));
        ring = std::max(ring, sup_distance((a * b) * d, a * (b * d)));
    }
    s.record("algebra", "shift_semigroup_law", shift_law, 0.0);
    s.record("algebra", "shift_fixes_constants", shift_const, 0.0);
    s.record("algebra", "star_antimultiplicative", star_mul, 0.0);
    s.record("algebra", "cstar_identity", cstar, 1e-13);
    s.record("algebra", "mul_commutative_associative", ring, 1e-13);
}

void fock_checks(Suite& s) {
    const GridSpec& g = s.grid;
    double herm = 0.0, law = 0.0, vacuum = 0.0, eigen = 0.0, component = 0.0;
    double min_eig = 0.0;
    const std::vector<double> times{0.3, 0.7, 1.0};
    for (int c = 0; c < s.cases; ++c) {
        const FockUnit u = s.random_unit();
        const FockUnit v = s.random_unit();
        const AlgebraElement b = s.random_element();
        herm = std::max(herm, sup_distance(apply(kernel(v, u), b),
                                           star(apply(kernel(u, v), star(b)))));
        const KernelOperator l = kernel(u, v);
        std::vector<KernelOperator> single;
        for (double x : times) single.push_back(exponential(l, x));
        for (std::size_t i = 0; i < times.size(); ++i) {
            for (std::size_t j = i; j < times.size(); ++j) {
                law = std::max(law, operator_norm(exponential(l, times[i] + times[j]) -
                                                  compose(single[i], single[j])));
            }
        }

        const FockUnit p{u.zeta(), constant(g, 0.0)};
        const FockUnit q{v.zeta(), constant(g, 0.0)};
        for (std::size_t n = 0; n <= 3; ++n) {
            const AlgebraElement lhs = module_inner(unit_component(p, n),
                                                    left_action(b, unit_component(q, n)));
            AlgebraElement rhs = shift_steps(b, n * g.step_denominator());
            for (std::size_t k = 0; k < n; ++k) {
                const std::size_t steps = k * g.step_denominator();
                rhs = rhs * star(shift_steps(p.zeta(), steps)) * shift_steps(q.zeta(), steps);
            }
            component = std::max(component, sup_distance(lhs, rhs));
        }
    }

    const FockUnit omega = FockUnit::omega(g);
    const FockUnit xi = FockUnit::xi(g);
    vacuum = operator_norm(kernel(omega, omega));
    for (double t : {0.5, 1.0, 2.0}) {
        vacuum = std::max(vacuum, operator_norm(semigroup(omega, omega, t) - KernelOperator::identity(g)));
        const AlgebraElement r = apply(semigroup(xi, xi, t), constant(g, 1.0));
        eigen = std::max(eigen, sup_distance(r, constant(g, std::exp(t))) / std::exp(t));
    }

    const std::vector<FockUnit> units{omega, xi, s.random_unit(), s.random_member()};
    for (double t : {0.0, 0.5, 1.0, 2.0}) {
        const GramReport r = gram_psd_check(gram_matrix(units, t, s.random_positive()));
        min_eig = std::min(min_eig, r.min_eigenvalue);
    }

    s.record("fock", "kernel_hermitian_symmetry", herm, 1e-13);
    s.record("fock", "semigroup_law", law, 1e-9);
    s.record("fock", "vacuum_normalization", vacuum, 1e-14);
    s.record("fock", "xi_shift_eigenvector", eigen, 1e-10);
    s.record("fock", "gram_positivity", -min_eig, 1e-10);
    s.record("fock", "component_kernel_consistency", component, 1e-13);
}

void unit_algebra_checks(Suite& s) {
    const GridSpec& g = s.grid;
    const std::vector<FockUnit> probes = default_probe_units(g);
    const AlgebraElement one = constant(g, 1.0);
    double inner_identity = 0.0, linear = 0.0, right_linear = 0.0, herm = 0.0, positive = 0.0;
    double monotone = 0.0, beta_inv = 0.0;
    double dual[6] = {0, 0, 0, 0, 0, 0};

    for (const FockUnit& ref : {FockUnit::omega(g), FockUnit::xi(g)}) {
        for (int c = 0; c < s.cases; ++c) {
            const ReferencedUnit x{s.random_unit(), ref};
            const ReferencedUnit y{s.random_unit(), ref};
            const ReferencedUnit z{s.random_unit(), ref};
            const AlgebraElement b = s.random_positive();
            const AlgebraElement a = s.random_element();
            const Complex alpha{0.7, -1.3}, beta{-0.4, 0.25};

            const AlgebraElement dz = x.candidate().zeta() - ref.zeta();
            const AlgebraElement dz2 = y.candidate().zeta() - ref.zeta();
            inner_identity = std::max(inner_identity, sup_distance(semi_inner(x, y, one), star(dz) * dz2));

            const ReferencedUnit combo = add(scale(alpha, y), scale(beta, z));
            linear = std::max(linear, sup_distance(semi_inner(x, combo, b),
                                                   alpha * semi_inner(x, y, b) +
                                                       beta * semi_inner(x, z, b)));
            right_linear = std::max(right_linear, sup_distance(semi_inner(x, right_mul(y, a), b),
                                                               semi_inner(x, y, b) * a));
            herm = std::max(herm, sup_distance(semi_inner(x, y, b), star(semi_inner(y, x, star(b)))));
            positive = std::max(positive, is_positive(semi_inner(x, x, b)) ? 0.0 : 1.0);

            const AlgebraElement unit_b = s.random_unit_interval();
            const AlgebraElement gap = semi_inner(x, x, one) - semi_inner(x, x, unit_b);
            monotone = std::max(monotone, is_positive(gap) ? 0.0 : 1.0);

            const AlgebraElement b1 = s.random_element();
            const AlgebraElement b2 = s.random_element();
            beta_inv = std::max(beta_inv, sup_distance(semi_inner(power_beta(x, b1), power_beta(y, b2), b),
                                                       semi_inner(x, y, b)));

            const AlgebraElement k1 = s.random_element();
            const std::vector<AlgebraElement> kappa{k1, one - k1};
            dual[0] = std::max(dual[0], dual_path_residual(power_beta(x, b1), probes));
            dual[1] = std::max(dual[1], dual_path_residual(boxplus_left(kappa, {x, y}), probes));
            dual[2] = std::max(dual[2], dual_path_residual(boxplus_right({x, y}, kappa), probes));
            dual[3] = std::max(dual[3], dual_path_residual(add(x, y), probes));
            dual[4] = std::max(dual[4], dual_path_residual(left_mul(a, x), probes));
            dual[5] = std::max(dual[5], dual_path_residual(right_mul(x, a), probes));
        }
    }
    s.record("unit_algebra", "inner_product_identity", inner_identity, 1e-12);
    s.record("unit_algebra", "complex_linearity", linear, 1e-11);
    s.record("unit_algebra", "right_module_linearity", right_linear, 1e-11);
    s.record("unit_algebra", "hermitianity", herm, 1e-12);
    s.record("unit_algebra", "positivity", positive, 0.0);
    s.record("unit_algebra", "monotonicity_in_b", monotone, 0.0);
    s.record("unit_algebra", "beta_invariance", beta_inv, 1e-12);
    const char* names[6] = {"dual_path_power_beta", "dual_path_boxplus_left",
                            "dual_path_boxplus_right", "dual_path_add",
                            "dual_path_left_mul", "dual_path_right_mul"};
    for (int i = 0; i < 6; ++i) s.record("unit_algebra", names[i], dual[i], 1e-11);
}

void subsystem_checks(Suite& s) {
    const GridSpec& g = s.grid;
    const FockUnit xi = FockUnit::xi(g);
    const AlgebraElement one = constant(g, 1.0);
    const std::vector<FockUnit> probes = default_probe_units(g);
    using C = Complex;

    double step1 = 0.0;
    for (int n : {1, 2, 4}) {
        const double end = n;
        const AlgebraElement zeta = sample(
            PiecewiseLinearPreset{{{0.0, C{0.3}}, {0.5 * end, C{2.5}}, {end, C{1.0}}}}, g);
        step1 = std::max(step1, witness_step1(zeta, n).max_identity_residual);
    }
    s.record("subsystem", "step1_identity", step1, 1e-12);

    const int dip_n = 8;
    const AlgebraElement dip = sample(
        PiecewiseLinearPreset{{{0.0, C{-1.0}}, {2.0, C{0.0}}, {4.0, C{1.8}}, {8.0, C{1.0}}}}, g);
    s.record("subsystem", "theta_kernel_equality",
             theta_check(dip, dip_n, probes).max_kernel_residual, 1e-10);

    const AlgebraElement zeta = sample(ExpApproachPreset{C{1.0}, 1.0, C{1.0}}, g);
    const ConvergenceReport conv = convergence_report(zeta, 1.0, {2, 4, 6, 8, 10}, xi);
    s.record("subsystem", "convergence_monotone", conv.monotone ? 0.0 : 1.0, 0.0);
    s.record("subsystem", "index_distance_equals_sup", conv.max_index_gap, 1e-10);

    int misclassified = 0;
    for (int c = 0; c < 2 * s.cases; ++c) {
        const FockUnit member = s.random_member();
        if (!membership(member).in_E) ++misclassified;
        const FockUnit other{s.random_element() + constant(g, C{0.0, 0.5}), s.random_element()};
        if (membership(other).in_E) ++misclassified;
    }
    s.record("subsystem", "membership_battery", misclassified, 0.0);

    double isometry = 0.0, hom = 0.0;
    int central = 0;
    const std::vector<AlgebraElement> centrality_probes = default_centrality_probes(g);
    for (int c = 0; c < s.cases; ++c) {
        const FockUnit u = s.random_member();
        const FockUnit v = s.random_member();
        const ReferencedUnit x{u, xi};
        const ReferencedUnit y{v, xi};
        // index_norm takes a square root, so rounding noise of order 1e-16 in
        // <x-y, x-y>_1 becomes 1e-8 when zeta and zeta' nearly coincide; the
        // unsquared comparison is only meaningful away from zero distance.
        const double index = index_norm(subtract(x, y));
        const double direct = sup_distance(u.zeta(), v.zeta());
        isometry = std::max(isometry, direct >= 1e-4 ? std::abs(index - direct)
                                                     : std::abs(index * index - direct * direct));
        const AlgebraElement a = s.random_element();
        const AlgebraElement rx = index_representative(u);
        const AlgebraElement ry = index_representative(v);
        hom = std::max(hom, sup_distance(index_representative(add(x, y).candidate()), rx + ry));
        hom = std::max(hom, sup_distance(index_representative(left_mul(a, x).candidate()),
                                         shift(a, 1.0) * rx));
        hom = std::max(hom, sup_distance(index_representative(right_mul(x, a).candidate()), rx * a));
        hom = std::max(hom, sup_distance(semi_inner(x, y, one), star(rx) * ry));
        if (centrality_check(u, centrality_probes)) ++central;
    }
    if (centrality_check(xi, centrality_probes)) ++central;
    s.record("subsystem", "index_isometry", isometry, 1e-10);
    s.record("subsystem", "index_homomorphism", hom, 1e-11);
    s.record("subsystem", "no_central_member", central, 0.0);
}

}  // namespace

std::vector<CheckResult> run_selftest(const SelftestOptions& options) {
    // the witness and convergence checks use n up to 10 and need [0, 2n] on the grid
    if (options.grid.domain_end() < 20) throw PreconditionError("selftest needs S >= 20");
    if (options.random_cases < 1) throw PreconditionError("selftest needs at least one random case");
    Suite suite(options);
    algebra_checks(suite);
    fock_checks(suite);
    unit_algebra_checks(suite);
    subsystem_checks(suite);
    return std::move(suite.results);
}

}  // namespace fockidx
