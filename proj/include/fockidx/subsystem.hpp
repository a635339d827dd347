#pragma once

// The product subsystem E generated by xi = u(1, 0) over
// B = C0[0,inf) + C1: the membership criterion zeta in 1 + C0, the
// constructive witnesses behind it, and the index of E.

#include "fockidx/unit_algebra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fockidx {

inline constexpr double kMembershipTolerance = 1e-9;

enum class WitnessKind { exact_tail, approximation, rejected };

std::string to_string(WitnessKind kind);

struct MembershipReport {
    bool in_E = false;
    Complex zeta_limit;
    double distance_to_one = 0.0;  // |zeta_limit - 1|
    WitnessKind witness_kind = WitnessKind::rejected;
    /// exact_tail: smallest integer n >= 1 with zeta = 1 on [n, inf).
    std::optional<int> eventually_one_from;
    /// exact_tail: zeta real and positive on [0, n), so the b0/b1 witness
    /// applies directly; otherwise convexification is needed first.
    bool positive_before = false;
    std::vector<std::string> warnings;
};

/// in_E iff |lim zeta - 1| <= tol; beta never enters.
MembershipReport membership(const FockUnit& u, double tol = kMembershipTolerance);

/// Smallest integer n in [1, S] with zeta(s) = 1 (within 1e-12) for every
/// grid s >= n and at the tail.
std::optional<int> eventually_one_from(const AlgebraElement& zeta, double tol = 1e-12);

struct Step1Witness {
    int n = 0;
    AlgebraElement b0;  // zeta(s) zeta(s+1) ... zeta(s+n-1)
    AlgebraElement b1;  // 1 / b0
    double max_identity_residual = 0.0;
};

/// Writes the n-particle component of u(zeta, 0) as b1 xi b0. Requires zeta
/// real, zeta > 0 on [0, n), zeta = 1 on [n, inf) and S >= 2n.
Step1Witness witness_step1(const AlgebraElement& zeta, int n);

struct Convexification {
    double alpha = 0.0;
    AlgebraElement zeta_prime;  // alpha zeta + (1 - alpha)
};

inline constexpr int kDyadicLevels = 20;

/// Largest alpha = j / 2^20 in (0, 1) with min_s alpha zeta(s) + 1 - alpha >= delta.
Convexification convexify(const AlgebraElement& zeta, int n, double delta = 0.25);

struct ThetaCheck {
    double alpha = 0.0;
    double step1_residual = 0.0;  // witness for eta' = u(zeta', 0)
    double max_kernel_residual = 0.0;
};

/// Builds theta = (1/alpha) eta' [+] (1 - 1/alpha) xi and compares L^{theta,u}
/// with L^{u(zeta,0),u} over the probes.
ThetaCheck theta_check(const AlgebraElement& zeta, int n, const std::vector<FockUnit>& probes,
                       double delta = 0.25);

/// zeta_n(s) = zeta(s)/zeta(n) for s < n and 1 for s >= n. Requires |zeta(n)| >= 1e-8.
AlgebraElement approximate(const AlgebraElement& zeta, int n);

struct ConvergenceRow {
    int n = 0;
    double sup_dist = 0.0;           // |zeta - zeta_n|
    double index_dist = 0.0;         // index_norm(u(zeta,0) - u(zeta_n,0)), reference xi
    double kernel_dist = 0.0;        // |L^{eta_n,eta_n} - L^{eta,eta}|
    double semigroup_dist = 0.0;     // |exp(t L^{eta_n,eta_n}) - exp(t L^{eta,eta})|
    double probe_kernel_dist = 0.0;  // |L^{eta_n,u} - L^{eta,u}|
};

struct ConvergenceReport {
    double t = 0.0;
    std::vector<ConvergenceRow> rows;
    bool monotone = true;              // every column nonincreasing up to 1e-12
    double max_index_gap = 0.0;        // max |index_dist - sup_dist|
    double kernel_constant = 0.0;      // max kernel_dist / sup_dist over rows
    double semigroup_constant = 0.0;
    double probe_constant = 0.0;
};

ConvergenceReport convergence_report(const AlgebraElement& zeta, double t,
                                     const std::vector<int>& ns, const FockUnit& probe);

/// zeta - 1 for a member of E; throws PreconditionError otherwise.
AlgebraElement index_representative(const FockUnit& u, double tol = kMembershipTolerance);

/// Parameter-level centrality test: sigma_1(b) zeta == b zeta for all probes.
bool centrality_check(const FockUnit& u, const std::vector<AlgebraElement>& probes,
                      double tol = 1e-10);

/// e^{-s}, a linear ramp from 1 at s = 0 down to 0 at s = S, and a two-slope
/// ramp; all strictly decreasing on the grid and resolved.
std::vector<AlgebraElement> default_centrality_probes(const GridSpec& grid);

}  // namespace fockidx
