#pragma once

#include "sop/grid.hpp"
#include "sop/moments.hpp"
#include "sop/operators.hpp"

namespace sop {

// |Phi_{a v a'}| <= C (a+1)^{exp_left} (a'+1)^{exp_right}, componentwise powers.
struct GrowthCertificate {
    double c = 1.0;
    MultiIndex exp_left, exp_right;  // length N each
};

using CoeffRule = std::function<cxd(const MultiIndex& a, const MultiIndex& ap)>;

// Tempered distribution on the truncated Schwartz operators, held as a
// coefficient rule Phi_{a v a'} (lazy; materialized only where paired) plus
// a polynomial-growth certificate. The pairing follows
//   Phi(T) = sum_{a,a'} Phi_{a v a'} <a'|T|a>,
// so an operator S embeds with Phi_{a v a'} = <a|S|a'> and Phi(T) = Tr[S T].
struct OperatorDistribution {
    int modes = 1;
    std::string name;
    CoeffRule rule;
    GrowthCertificate growth;
    int coeff_limit = -1;  // largest per-mode index with coefficients; -1 = unlimited

    cxd coeff(const MultiIndex& a, const MultiIndex& ap) const { return rule(a, ap); }
};

cxd pair_with(const OperatorDistribution& phi, const TruncatedOperator& t);

// Coefficient matrix on a working truncation (flattened like an operator).
Matrix materialize(const OperatorDistribution& phi, const BasisConfig& cfg);

OperatorDistribution dist_identity(int modes = 1);
OperatorDistribution dist_from_operator(const TruncatedOperator& t);
OperatorDistribution dist_from_poly(const PolyQP& poly);
OperatorDistribution dist_scale(cxd c, const OperatorDistribution& phi);

// Position spectral density: coefficients h_a(q) h_{a'}(q); the pairing with
// T evaluates the diagonal kernel K^T(q,q).
OperatorDistribution epsilon_q(const std::vector<double>& q);

// D^{alpha v beta} Phi via the commutator expansion acting on coefficients;
// exact band shifts, no truncation error away from the working cutoff edge.
OperatorDistribution derivative(const OperatorDistribution& phi, const MultiIndex& gamma);

enum class MultiplySide { Left, Right };

// (A Phi)(T) = Phi(A T), (Phi B)(T) = Phi(T B) for polynomial A, B.
OperatorDistribution multiply(const PolyQP& poly, const OperatorDistribution& phi,
                              MultiplySide side);

// Weyl quantization of delta_a: 2^N Phi_{W(a) Pi W(a)^*}.
OperatorDistribution wq_delta(const PhasePoint& a);
// Inverse Weyl transform of delta_a: Phi_{W(-a)}.
OperatorDistribution invweyl_delta(const PhasePoint& a);
// Inverse Weyl transform of D^gamma delta_0: the symmetrized polynomial
// (-1)^{|gamma|} Sym((i P)^{gamma_q} (-i Q)^{gamma_p}).
OperatorDistribution invweyl_delta_derivative(const MultiIndex& gamma);
PolyQP invweyl_delta_derivative_poly(const MultiIndex& gamma);
// Weyl quantization of D^gamma delta_0: 2^N Phi_{D^gamma Pi}.
OperatorDistribution wq_delta_derivative(const MultiIndex& gamma);

// Pairing adapters for the transforms: each evaluates against a test object
// by composing the phase-space maps with the pairing.
cxd dist_weyl_hat(const OperatorDistribution& phi, const GridFunction& f, const BasisConfig& cfg);
cxd dist_wigner(const OperatorDistribution& phi, const GridFunction& f, const BasisConfig& cfg);

struct RegularityDecomposition {
    TruncatedOperator a;         // Hilbert-Schmidt remainder
    MultiIndex beta, betap;      // certificate exponents
    double hs_norm = 0.0;        // ||A||_2 on the working range
    double hs_bound = 0.0;       // C (pi^2/6)^N from the certificate
};

// a_{a v a'} = (a v a'+1)^{-beta v beta'-1} Phi_{a v a'}; reconstruction
//   Phi(T) = Tr[A (H+1/2)^{beta'+1} T (H+1/2)^{beta+1}].
RegularityDecomposition regularity_decompose(const OperatorDistribution& phi,
                                             const BasisConfig& cfg);
cxd regularity_reconstruct(const RegularityDecomposition& dec, const TruncatedOperator& t);

struct FiniteRankApproximation {
    std::vector<int> cutoffs;
    std::vector<OperatorDistribution> stages;
    std::vector<double> projector_gap;  // ||(P_n - 1) H^{-1}|| per stage
};

// Sharp diagonal cutoffs P_n; stage coefficients A_a Phi_{a v a'} B_a'.
FiniteRankApproximation finite_rank_approx(const OperatorDistribution& phi,
                                           const std::vector<int>& cutoffs);

// Smallest componentwise exponents (by total order, then lexicographic) whose
// coefficient/bound ratio does not grow toward the scan boundary; C is the
// max ratio over the scanned indices.
GrowthCertificate fit_growth(const CoeffRule& rule, int modes, int scan_cutoff,
                             int max_exponent = 8);
// Largest violation of the certificate over the materialized range (<= 0 when
// the bound verifies).
double growth_violation(const OperatorDistribution& phi, const BasisConfig& cfg);

}  // namespace sop
