#pragma once

#include "sop/kernels.hpp"
#include "sop/moments.hpp"
#include "sop/operators.hpp"

namespace sop {

// Collective-spin approximations of position and momentum, realized directly
// on the truncated Fock space through the symmetric-subspace embedding
// |n;M> -> |n> (the M-fold tensor product is never materialized). Single mode.
struct FluctuationSystem {
    int spins = 0;  // M
    BasisConfig cfg;
    TruncatedOperator a_m, a_m_dag, q_m, p_m;
    RealVector omega;  // omega_M(n) = sqrt(1 - n/M) for n <= M, else 0
};

// omega_M table; omega_M(n) = sqrt(1 - n/M) on 0..M, zero beyond.
double omega_m(int spins, int n);

// Requires M <= cutoff. The two factorizations
//   A_M = omega_M(N-hat) A  and  A_M = A omega_M(N-hat - 1)
// (N-hat = H - 1/2 the number operator) must agree entrywise to 1e-12.
FluctuationSystem build_fluctuation_system(int spins, const BasisConfig& cfg);

struct OmegaBoundReport {
    int spins = 0;
    double max_violation = 0.0;  // of |1 - omega_M(n)| <= sqrt(n/M) over 0..M
    double sup_gap_over_h = 0.0;  // sup_n (1 - omega_M(n))/(n + 1/2)
};

OmegaBoundReport omega_bound_check(int spins);

struct ConvergenceRow {
    int spins;
    double value;
    double reference;
    double abs_gap;
};

// Tr[f(Q_M, P_M) T] per M against the truncated-limit reference Tr[f(Q,P) T].
std::vector<ConvergenceRow> moment_convergence(const PolyQP& f, const TruncatedOperator& t,
                                               const std::vector<int>& spin_counts);

struct SpectralMeasureApprox {
    int spins = 0;
    RealVector eigenvalues;  // of Q_M on its support block, ascending
    RealVector weights;      // w_k = <v_k|T|v_k>
};

SpectralMeasureApprox spectral_weights(const FluctuationSystem& sys, const TruncatedOperator& t);

// Sum of weights with eigenvalue in the closed [a, b]; tolerance 1e-12.
double spectral_mass(const SpectralMeasureApprox& approx, double a, double b);

// Tr[T E_M([a,b])] per M against the diagonal-kernel quadrature reference
// int_a^b K^T(q,q) dq.
std::vector<ConvergenceRow> spectral_convergence(const TruncatedOperator& t,
                                                 const std::vector<int>& spin_counts, double a,
                                                 double b);

// sum_k f(q_k) w_k per M against int f(q) K^T(q,q) dq.
std::vector<ConvergenceRow> weak_convergence(const TruncatedOperator& t,
                                             const std::vector<int>& spin_counts,
                                             const std::function<double(double)>& f,
                                             double quad_extent = 12.0, int quad_panels = 4000);

struct RescaledProjectionStep {
    int spins;
    double a, b;
    double value;  // Tr[E_M([a,b]) T] / (b - a)
};

struct RescaledProjectionSchedule {
    std::vector<int> spin_counts;
    std::vector<std::pair<double, double>> intervals;  // strictly nested around q
};

// Default schedule: interval widths halving around q, M_k = 2^{k+4}.
RescaledProjectionSchedule default_projection_schedule(double q, int steps);

// Tr[E_{M_k}(I_k) T]/(b_k - a_k), converging toward the diagonal kernel K^T(q,q).
std::vector<RescaledProjectionStep> rescaled_projection_sequence(
    const TruncatedOperator& t, const RescaledProjectionSchedule& schedule);

}  // namespace sop
