// Acceptance suite: one PASS/FAIL line per criterion on the default grid.
// Reference values come from closed forms evaluated here, not from the
// library paths under test.

#include "fockidx/presets.hpp"
#include "fockidx/subsystem.hpp"
#include "fockidx/unit_algebra.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace fockidx;

namespace {

const GridSpec kGrid(4, 40);
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
    bool passed;
    std::string detail;
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

Outcome within(double value, double tol, const std::string& what) {
    return {value <= tol, what + " " + sci(value) + " (tol " + sci(tol) + ")"};
}

AlgebraElement el(const FunctionPreset& p) { return sample(p, kGrid); }

AlgebraElement closed_form(const std::function<double(double)>& f, double tail) {
    return AlgebraElement::from_function(kGrid, [&](double s) { return Complex{f(s)}; }, tail);
}

FockUnit random_unit(std::mt19937_64& rng) { return {el(random_preset(rng)), el(random_preset(rng))}; }

const AlgebraElement kOne = constant(kGrid, 1.0);
const AlgebraElement kZero = constant(kGrid, 0.0);
const FockUnit kOmega = FockUnit::omega(kGrid);
const FockUnit kXi = FockUnit::xi(kGrid);

Outcome inner_product_identity() {
    std::mt19937_64 rng(kSeed + 1);
    double worst = 0.0;
    for (int c = 0; c < 10; ++c) {
        const FockUnit u = random_unit(rng), v = random_unit(rng);
        // <zeta, zeta'> as a pointwise product of samples
        std::vector<Complex> expect;
        for (std::size_t k = 0; k < kGrid.dimension(); ++k) {
            expect.push_back(std::conj(u.zeta().coordinate(k)) * v.zeta().coordinate(k));
        }
        const AlgebraElement ip = semi_inner({u, kOmega}, {v, kOmega}, kOne);
        for (std::size_t k = 0; k < kGrid.dimension(); ++k) worst = std::max(worst, std::abs(ip.coordinate(k) - expect[k]));
    }
    return within(worst, 1e-12, "max |<u,u'>_1 - zeta* zeta'| over 10 pairs");
}

Outcome kernel_hermitian() {
    std::mt19937_64 rng(kSeed + 2);
    std::vector<AlgebraElement> bs;
    for (int i = 0; i < 5; ++i) bs.push_back(el(random_preset(rng)));
    double worst = 0.0;
    for (int c = 0; c < 10; ++c) {
        const FockUnit u = random_unit(rng), v = random_unit(rng);
        const KernelOperator luv = kernel(u, v), lvu = kernel(v, u);
        for (const auto& b : bs) worst = std::max(worst, sup_distance(apply(lvu, b), star(apply(luv, star(b)))));
    }
    return within(worst, 1e-13, "max |L^{v,u}(b) - L^{u,v}(b*)*| over 10 pairs x 5 b");
}

Outcome semigroup_law() {
    std::mt19937_64 rng(kSeed + 3);
    const std::vector<double> times{0.3, 0.7, 1.0};
    double law = 0.0;
    for (int c = 0; c < 5; ++c) {
        const KernelOperator l = kernel(random_unit(rng), random_unit(rng));
        std::vector<KernelOperator> single;
        for (double t : times) single.push_back(exponential(l, t));
        for (std::size_t i = 0; i < times.size(); ++i) {
            for (std::size_t j = 0; j < times.size(); ++j) {
                const KernelOperator prod(kGrid, single[i].matrix() * single[j].matrix());
                law = std::max(law, operator_norm(exponential(l, times[i] + times[j]) - prod));
            }
        }
    }
    double growth = 0.0;
    for (double t : {0.5, 1.0, 2.0}) {
        const AlgebraElement r = apply(semigroup(kXi, kXi, t), kOne);
        growth = std::max(growth, sup_distance(r, constant(kGrid, std::exp(t))) / std::exp(t));
    }
    Outcome o = within(law, 1e-9, "max law residual over 5 pairs");
    const Outcome g = within(growth, 1e-10, "; max relative |K_t^{xi,xi}(1) - e^t|");
    return {o.passed && g.passed, o.detail + g.detail};
}

Outcome gram_positivity() {
    const std::vector<FockUnit> units{kOmega, kXi, {closed_form([](double s) { return 1 + std::exp(-s); }, 1.0), kZero}};
    const std::vector<AlgebraElement> bs{kOne, closed_form([](double s) { return std::exp(-s) + 0.1; }, 0.1)};
    double lowest = 0.0;
    bool psd = true;
    for (double t : {0.5, 1.0}) {
        for (const auto& b : bs) {
            const GramReport r = gram_psd_check(gram_matrix(units, t, b), 1e-10);
            psd = psd && r.psd;
            lowest = std::min(lowest, r.min_eigenvalue);
        }
    }
    return {psd && lowest >= -1e-10, "min pointwise eigenvalue " + sci(lowest) + " (floor -1.00e-10)"};
}

Outcome semi_inner_properties() {
    std::mt19937_64 rng(kSeed + 5);
    double linear = 0.0, right = 0.0, herm = 0.0, beta_inv = 0.0;
    double pos_low = 0.0, mono_low = 0.0;
    for (int c = 0; c < 3; ++c) {
        const FockUnit w = random_unit(rng);  // reference
        const ReferencedUnit x{random_unit(rng), w}, y{random_unit(rng), w}, z{random_unit(rng), w};
        const Complex alpha{0.7, -0.4}, beta{-1.1, 0.3};
        const AlgebraElement b = el(random_preset(rng));
        const AlgebraElement a = el(random_preset(rng));
        const AlgebraElement p = star(b) * b;
        const AlgebraElement lhs = semi_inner(x, add(scale(alpha, y), scale(beta, z)), b);
        const AlgebraElement rhs = alpha * semi_inner(x, y, b) + beta * semi_inner(x, z, b);
        linear = std::max(linear, sup_distance(lhs, rhs));
        right = std::max(right, sup_distance(semi_inner(x, right_mul(y, a), b), semi_inner(x, y, b) * a));
        herm = std::max(herm, sup_distance(semi_inner(x, y, b), star(semi_inner(y, x, star(b)))));
        const AlgebraElement xx = semi_inner(x, x, p);
        for (std::size_t k = 0; k < kGrid.dimension(); ++k) {
            pos_low = std::min(pos_low, xx.coordinate(k).real() - std::abs(xx.coordinate(k).imag()));
        }
        beta_inv = std::max(beta_inv, sup_distance(semi_inner(power_beta(x, a), power_beta(y, b), b), semi_inner(x, y, b)));
        const AlgebraElement q = el(random_unit_interval_preset(rng));
        if (!is_positive(q) || !is_positive(kOne - q)) return {false, "bad monotonicity probe"};
        const AlgebraElement gap = semi_inner(x, x, kOne) - semi_inner(x, x, q);
        for (std::size_t k = 0; k < kGrid.dimension(); ++k) mono_low = std::min(mono_low, gap.coordinate(k).real());
    }
    const bool ok = linear <= 1e-11 && right <= 1e-11 && herm <= 1e-12 && pos_low >= -1e-10 &&
                    beta_inv <= 1e-12 && mono_low >= -1e-10;
    return {ok, "linearity " + sci(linear) + ", right-linearity " + sci(right) + ", hermitian " + sci(herm) +
                    ", positivity floor " + sci(pos_low) + ", beta-invariance " + sci(beta_inv) +
                    ", monotonicity floor " + sci(mono_low)};
}

Outcome dual_path() {
    std::mt19937_64 rng(kSeed + 6);
    const auto probes = default_probe_units(kGrid);
    double worst[6] = {0, 0, 0, 0, 0, 0};
    for (int c = 0; c < 5; ++c) {
        const FockUnit w = random_unit(rng);
        const ReferencedUnit x{random_unit(rng), w}, y{random_unit(rng), w};
        const AlgebraElement a = el(random_preset(rng));
        const AlgebraElement k = el(random_preset(rng));
        const std::vector<AlgebraElement> kappa{k, kOne - k};
        const ReferencedUnit ops[6] = {power_beta(x, a), boxplus_left(kappa, {x, y}), boxplus_right({x, y}, kappa),
                                       add(x, y), left_mul(a, x), right_mul(x, a)};
        for (int i = 0; i < 6; ++i) worst[i] = std::max(worst[i], dual_path_residual(ops[i], probes));
    }
    const double m = *std::max_element(worst, worst + 6);
    return {m <= 1e-11, "^beta " + sci(worst[0]) + ", [+]left " + sci(worst[1]) + ", [+]right " + sci(worst[2]) +
                            ", + " + sci(worst[3]) + ", a.x " + sci(worst[4]) + ", x.a " + sci(worst[5]) +
                            " (tol 1.00e-11, " + std::to_string(probes.size()) + " probes)"};
}

Outcome step1_witness() {
    double worst = 0.0;
    for (int n : {1, 2, 4}) {
        // zeta rises linearly from 0.2 to 1 on [0, n], then stays 1
        auto f = [n](double s) { return s < n ? 0.2 + 0.8 * s / n : 1.0; };
        const AlgebraElement z = el(PiecewiseLinearPreset{{{0.0, Complex{0.2}}, {double(n), Complex{1.0}}}});
        const Step1Witness w = witness_step1(z, n);
        const AlgebraElement eta = closed_form([&](double s) {
            double p = 1.0;
            for (int k = 0; k < n; ++k) p *= f(s + k);
            return p;
        }, 1.0);
        worst = std::max({worst, w.max_identity_residual, sup_distance(w.b0, eta),
                          sup_distance(shift(w.b1, n) * w.b0, eta)});
    }
    return within(worst, 1e-12, "max witness residual for n in {1,2,4}");
}

Outcome step2_kernel_equality() {
    const AlgebraElement z = closed_form([](double s) { return s < 8.0 ? 1 - 2 * std::exp(-s) : 1.0; }, 1.0);
    const ThetaCheck t = theta_check(z, 8, default_probe_units(kGrid), 0.25);
    // min zeta = -1 at s = 0, so alpha (-1) + 1 - alpha >= 1/4 gives alpha <= 3/8
    const bool alpha_ok = t.alpha == 0.375;
    Outcome o = within(t.max_kernel_residual, 1e-10, "max |L^{theta,u} - L^{eta,u}|");
    return {o.passed && alpha_ok, o.detail + ", alpha " + std::to_string(t.alpha)};
}

Outcome step3_convergence() {
    auto zeta = [](double s) { return 1 + std::exp(-s); };
    const AlgebraElement z = closed_form(zeta, 1.0);
    const std::vector<int> ns{2, 4, 6, 8, 10};
    const ConvergenceReport r = convergence_report(z, 1.0, ns, kXi);
    double brute_gap = 0.0, index_gap = 0.0;
    bool monotone = true;
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const int n = ns[i];
        double sup = 0.0;
        for (std::size_t k = 0; k < kGrid.sample_count(); ++k) {
            const double s = kGrid.point(k);
            const double zn = s < n ? zeta(s) / zeta(n) : 1.0;
            sup = std::max(sup, std::abs(zeta(s) - zn));
        }
        brute_gap = std::max(brute_gap, std::abs(r.rows[i].sup_dist - sup));
        index_gap = std::max(index_gap, std::abs(r.rows[i].index_dist - r.rows[i].sup_dist));
        if (i > 0) {
            const auto& p = r.rows[i - 1];
            const auto& q = r.rows[i];
            monotone = monotone && q.kernel_dist <= p.kernel_dist + 1e-12 &&
                       q.semigroup_dist <= p.semigroup_dist + 1e-12 &&
                       q.probe_kernel_dist <= p.probe_kernel_dist + 1e-12;
        }
    }
    const bool ok = brute_gap <= 1e-12 && index_gap <= 1e-10 && monotone;
    return {ok, "sup-dist vs brute force " + sci(brute_gap) + ", index vs sup " + sci(index_gap) +
                    ", operator columns " + (monotone ? "nonincreasing" : "NOT nonincreasing") +
                    ", sup-dist at n=10 " + sci(r.rows.back().sup_dist)};
}

Outcome membership_battery() {
    struct Case {
        const char* label;
        AlgebraElement zeta;
        bool member;
    };
    const std::vector<Case> cases{
        {"1+e^-s", closed_form([](double s) { return 1 + std::exp(-s); }, 1.0), true},
        {"1", kOne, true},
        {"ramp -1 -> 1", el(PiecewiseLinearPreset{{{0.0, Complex{-1.0}}, {2.0, Complex{1.0}}}}), true},
        {"1+1e-12", constant(kGrid, 1.0 + 1e-12), true},
        {"1-1e-12", constant(kGrid, 1.0 - 1e-12), true},
        {"1+(0.3+0.4i)e^-s", el(ExpApproachPreset{Complex{0.3, 0.4}, 1.0, Complex{1.0}}), true},
        {"0", kZero, false},
        {"e^-s", closed_form([](double s) { return std::exp(-s); }, 0.0), false},
        {"2", constant(kGrid, 2.0), false},
        {"2-e^-s", closed_form([](double s) { return 2 - std::exp(-s); }, 2.0), false},
        {"i", constant(kGrid, Complex{0.0, 1.0}), false},
        {"1+1e-6", constant(kGrid, 1.0 + 1e-6), false},
    };
    std::mt19937_64 rng(kSeed + 10);
    int errors = 0;
    for (const auto& c : cases) {
        const std::vector<AlgebraElement> betas{kZero, el(random_preset(rng)), constant(kGrid, Complex{-0.5, 2.0})};
        for (const auto& beta : betas) {
            if (membership({c.zeta, beta}, 1e-9).in_E != c.member) {
                ++errors;
                std::printf("    misclassified: zeta = %s\n", c.label);
            }
        }
    }
    return {errors == 0, std::to_string(errors) + " errors over " + std::to_string(cases.size()) +
                             " labeled cases x 3 betas"};
}

Outcome index_structure() {
    std::mt19937_64 rng(kSeed + 11);
    std::vector<FockUnit> members;
    for (int i = 0; i < 5; ++i) members.push_back({el(random_limit_one_preset(rng)), el(random_preset(rng))});
    double add_r = 0.0, left_r = 0.0, right_r = 0.0, inner_r = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        const AlgebraElement a = el(random_preset(rng));
        const ReferencedUnit x{members[i], kXi};
        // representative computed here as zeta - 1
        const AlgebraElement rx = members[i].zeta() - kOne;
        left_r = std::max(left_r, sup_distance(index_representative(left_mul(a, x).candidate()), shift(a, 1.0) * rx));
        right_r = std::max(right_r, sup_distance(index_representative(right_mul(x, a).candidate()), rx * a));
        for (std::size_t j = 0; j < members.size(); ++j) {
            const ReferencedUnit y{members[j], kXi};
            const AlgebraElement ry = members[j].zeta() - kOne;
            add_r = std::max(add_r, sup_distance(index_representative(add(x, y).candidate()), rx + ry));
            inner_r = std::max(inner_r, sup_distance(semi_inner(x, y, kOne), star(rx) * ry));
        }
    }
    const double m = std::max({add_r, left_r, right_r, inner_r});
    return {m <= 1e-11, "rep(x+y) " + sci(add_r) + ", rep(a.x) " + sci(left_r) + ", rep(x.a) " + sci(right_r) +
                            ", <x,y>_1 " + sci(inner_r) + " (tol 1.00e-11)"};
}

Outcome no_central_unit() {
    std::mt19937_64 rng(kSeed + 12);
    const auto probes = default_centrality_probes(kGrid);
    std::vector<FockUnit> units{kXi, {closed_form([](double s) { return 1 + std::exp(-s); }, 1.0), kZero},
                                {el(PiecewiseLinearPreset{{{0.0, Complex{-1.0}}, {2.0, Complex{1.0}}}}), kOne}};
    for (int i = 0; i < 10; ++i) units.push_back({el(random_limit_one_preset(rng)), el(random_preset(rng))});
    int members = 0, central = 0;
    for (const auto& u : units) {
        if (!membership(u).in_E) continue;
        ++members;
        if (centrality_check(u, probes)) ++central;
    }
    return {central == 0 && members == static_cast<int>(units.size()),
            std::to_string(central) + " of " + std::to_string(members) + " members pass the centrality check"};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {"inner-product identity", inner_product_identity},
        {"kernel hermitianity", kernel_hermitian},
        {"semigroup law", semigroup_law},
        {"gram positivity", gram_positivity},
        {"semi-inner-product properties", semi_inner_properties},
        {"dual-path coherence", dual_path},
        {"step-1 witness", step1_witness},
        {"step-2 kernel equality", step2_kernel_equality},
        {"step-3 convergence", step3_convergence},
        {"membership battery", membership_battery},
        {"index structure", index_structure},
        {"no central unit in E", no_central_unit},
    };
    int failed = 0, number = 0;
    for (const auto& c : criteria) {
        ++number;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.passed) ++failed;
        std::printf("%s criterion %2d %-30s %s [%.2fs]\n", o.passed ? "PASS" : "FAIL", number, c.name,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", number - failed, number);
    return failed == 0 ? 0 : 1;
}
