#include "fockidx/presets.hpp"
#include "fockidx/unit_algebra.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace fockidx;

namespace {

const GridSpec kGrid(4, 40);

AlgebraElement el(Complex c, double a, Complex offset) {
    return sample(ExpApproachPreset{c, a, offset}, kGrid);
}

FockUnit random_unit(std::mt19937_64& rng) {
    return {sample(random_preset(rng), kGrid), sample(random_preset(rng), kGrid)};
}

Eigen::MatrixXcd diag_conj(const AlgebraElement& a) {
    Eigen::VectorXcd d(kGrid.dimension());
    for (std::size_t k = 0; k < kGrid.dimension(); ++k) d(k) = std::conj(a.coordinate(k));
    return d.asDiagonal();
}

double gap(const KernelOperator& k, const Eigen::MatrixXcd& m) {
    return oracle::max_row_sum(k.matrix() - m);
}

const FockUnit kOmega = FockUnit::omega(kGrid);
const FockUnit kXi = FockUnit::xi(kGrid);

}  // namespace

TEST_SUITE("unit_algebra") {

TEST_CASE("semi-inner product with the vacuum reference") {
    std::mt19937_64 rng(21);
    for (int c = 0; c < 5; ++c) {
        const FockUnit u = random_unit(rng), v = random_unit(rng);
        const AlgebraElement ip = semi_inner({u, kOmega}, {v, kOmega}, constant(kGrid, 1.0));
        CHECK(sup_distance(ip, star(u.zeta()) * v.zeta()) <= 1e-12);
    }
}

TEST_CASE("semi-inner product with reference xi") {
    const AlgebraElement one = constant(kGrid, 1.0);
    const AlgebraElement z1 = el(Complex{1.0}, 1.0, Complex{1.0});
    const AlgebraElement z2 = el(Complex{0.3, -0.4}, 0.5, Complex{2.0});
    const AlgebraElement ip = semi_inner({{z1, constant(kGrid, 0.0)}, kXi}, {{z2, constant(kGrid, 0.0)}, kXi}, one);
    CHECK(sup_distance(ip, star(z1 - one) * (z2 - one)) <= 1e-12);
}

TEST_CASE("index norm examples") {
    const AlgebraElement z = el(Complex{0.5, 0.5}, 1.0, Complex{1.5});
    const FockUnit u{z, el(Complex{0.2}, 1.0, Complex{0.0})};
    CHECK(index_norm({u, kOmega}) == doctest::Approx(sup_norm(z)).epsilon(1e-12));
    const FockUnit w{z, constant(kGrid, 0.0)};
    CHECK(index_norm({w, kXi}) == doctest::Approx(sup_norm(z - constant(kGrid, 1.0))).epsilon(1e-12));
}

TEST_CASE("power_beta adds conj(beta) to every kernel") {
    const FockUnit u{el(Complex{1.0}, 1.0, Complex{1.0}), el(Complex{0.1, 0.2}, 0.5, Complex{0.0})};
    const AlgebraElement beta = el(Complex{0.0, 0.7}, 0.3, Complex{0.2});
    const ReferencedUnit x = power_beta({u, kOmega}, beta);
    CHECK(sup_distance(x.candidate().beta(), u.beta() + beta) == 0.0);
    CHECK(identical(x.candidate().zeta(), u.zeta()));
    for (const FockUnit& v : default_probe_units(kGrid)) {
        CHECK(gap(formula_kernel(x, v), oracle::kernel_matrix(u, v) + diag_conj(beta)) <= 1e-13);
        CHECK(gap(formula_kernel(x, v), oracle::kernel_matrix(x.candidate(), v)) <= 1e-12);
    }
    CHECK(identical(power_beta({u, kOmega}, constant(kGrid, 0.0)).candidate().beta(), u.beta()));
}

TEST_CASE("boxplus with halves") {
    const FockUnit u1{el(Complex{1.0}, 1.0, Complex{1.0}), constant(kGrid, 0.0)};
    const FockUnit u2{el(Complex{0.0, 1.0}, 0.5, Complex{0.5}), constant(kGrid, 0.0)};
    const AlgebraElement half = constant(kGrid, 0.5);
    const ReferencedUnit x = boxplus_left({half, half}, {u1, u2}, kOmega);
    CHECK(sup_distance(x.candidate().zeta(), 0.5 * (u1.zeta() + u2.zeta())) <= 1e-15);
    for (const FockUnit& v : default_probe_units(kGrid)) {
        const Eigen::MatrixXcd expect = 0.5 * (oracle::kernel_matrix(u1, v) + oracle::kernel_matrix(u2, v));
        CHECK(gap(formula_kernel(x, v), expect) <= 1e-13);
        CHECK(gap(formula_kernel(x, v), oracle::kernel_matrix(x.candidate(), v)) <= 1e-12);
    }
    const ReferencedUnit y = boxplus_right({u1, u2}, {half, half}, kOmega);
    for (const FockUnit& v : default_probe_units(kGrid)) {
        CHECK(gap(formula_kernel(y, v), formula_kernel(x, v).matrix()) <= 1e-14);
    }
}

TEST_CASE("boxplus variants differ for non-constant coefficients") {
    const FockUnit u1{el(Complex{1.0}, 1.0, Complex{1.0}), el(Complex{0.2}, 1.0, Complex{0.0})};
    const FockUnit u2{el(Complex{0.0, 1.0}, 0.5, Complex{0.5}), constant(kGrid, Complex{0.0, 0.1})};
    const AlgebraElement k = el(Complex{0.5}, 0.7, Complex{0.5});
    const std::vector<AlgebraElement> kappa{k, constant(kGrid, 1.0) - k};
    const ReferencedUnit l = boxplus_left(kappa, {u1, u2}, kOmega);
    const ReferencedUnit r = boxplus_right({u1, u2}, kappa, kOmega);
    const auto probes = default_probe_units(kGrid);
    CHECK(dual_path_residual(l, probes) <= 1e-12);
    CHECK(dual_path_residual(r, probes) <= 1e-12);
    CHECK(sup_distance(l.candidate().zeta(), r.candidate().zeta()) > 1e-3);
    // left variant: sum of conj(kappa_i) L^{x_i, v}
    const Eigen::MatrixXcd expect =
        diag_conj(kappa[0]) * oracle::kernel_matrix(u1, probes[3]) + diag_conj(kappa[1]) * oracle::kernel_matrix(u2, probes[3]);
    CHECK(gap(formula_kernel(l, probes[3]), expect) <= 1e-13);
    CHECK_THROWS_AS(boxplus_left({k, k}, {u1, u2}, kOmega), CoefficientSumError);
}

TEST_CASE("addition candidates under both references") {
    const AlgebraElement z1 = el(Complex{1.0}, 1.0, Complex{1.0});
    const AlgebraElement z2 = el(Complex{0.5, -0.5}, 0.4, Complex{0.8});
    const AlgebraElement zero = constant(kGrid, 0.0), one = constant(kGrid, 1.0);
    const ReferencedUnit a = add({{z1, zero}, kOmega}, {{z2, zero}, kOmega});
    CHECK(sup_distance(a.candidate().zeta(), z1 + z2) <= 1e-15);
    const ReferencedUnit b = add({{z1, zero}, kXi}, {{z2, zero}, kXi});
    CHECK(sup_distance(b.candidate().zeta(), z1 + z2 - one) <= 1e-15);
    const auto probes = default_probe_units(kGrid);
    CHECK(dual_path_residual(a, probes) <= 1e-12);
    CHECK(dual_path_residual(b, probes) <= 1e-12);
    CHECK_THROWS_AS(add({{z1, zero}, kOmega}, {{z2, zero}, kXi}), ReferenceMismatch);
}

TEST_CASE("module action candidates with reference xi") {
    const AlgebraElement z = el(Complex{1.0, 0.5}, 1.0, Complex{1.0});
    const AlgebraElement a = sample(PiecewiseLinearPreset{{{0.0, Complex{2.0}}, {3.0, Complex{0.0, 1.0}}}}, kGrid);
    const AlgebraElement zero = constant(kGrid, 0.0), one = constant(kGrid, 1.0);
    const ReferencedUnit x{{z, zero}, kXi};
    const ReferencedUnit l = left_mul(a, x);
    CHECK(sup_distance(l.candidate().zeta(), shift(a, 1.0) * (z - one) + one) <= 1e-15);
    const ReferencedUnit r = right_mul(x, a);
    CHECK(sup_distance(r.candidate().zeta(), (z - one) * a + one) <= 1e-15);
    const auto probes = default_probe_units(kGrid);
    CHECK(dual_path_residual(l, probes) <= 1e-12);
    CHECK(dual_path_residual(r, probes) <= 1e-12);
}

TEST_CASE("nested composites stay coherent") {
    std::mt19937_64 rng(22);
    const FockUnit u = random_unit(rng), v = random_unit(rng);
    const AlgebraElement a = sample(random_preset(rng), kGrid);
    const ReferencedUnit x{u, kOmega}, y{v, kOmega};
    const ReferencedUnit nested = right_mul(add(left_mul(a, x), power_beta(y, a)), a);
    CHECK(dual_path_residual(nested, default_probe_units(kGrid)) <= 1e-11);
    const double scale = std::max(1.0, oracle::max_row_sum(oracle::kernel_matrix(nested.candidate(), nested.candidate())));
    CHECK(oracle::max_row_sum(formula_self_kernel(nested).matrix() -
                              oracle::kernel_matrix(nested.candidate(), nested.candidate())) / scale <= 1e-12);
}

TEST_CASE("scalar multiplication and subtraction") {
    const AlgebraElement z = el(Complex{1.0}, 1.0, Complex{2.0});
    const ReferencedUnit x{{z, constant(kGrid, 0.3)}, kOmega};
    const AlgebraElement one = constant(kGrid, 1.0);
    CHECK(sup_distance(semi_inner(x, scale(Complex{0.0, 2.0}, x), one),
                       Complex{0.0, 2.0} * semi_inner(x, x, one)) <= 1e-11);
    CHECK(index_norm(subtract(x, x)) <= 1e-7);
}

TEST_CASE("equivalence decided at the index level") {
    const AlgebraElement z = el(Complex{1.0}, 1.0, Complex{1.0});
    const AlgebraElement zero = constant(kGrid, 0.0);
    const ReferencedUnit x{{z, zero}, kXi};
    const EquivalenceReport same = equivalent(x, power_beta(x, el(Complex{0.0, 1.0}, 1.0, Complex{0.5})), 1e-9);
    CHECK(same.equivalent);
    CHECK(same.paths_agree);
    const ReferencedUnit y{{z + constant(kGrid, 1.0), zero}, kXi};
    const EquivalenceReport differ = equivalent(x, y, 1e-9);
    CHECK_FALSE(differ.equivalent);
    CHECK(differ.paths_agree);
    CHECK(differ.index_distance == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("default probes") {
    const auto probes = default_probe_units(kGrid);
    CHECK(probes.size() == 6);
    CHECK(identical(probes[0], kOmega));
    CHECK(identical(probes[1], kXi));
}

}
