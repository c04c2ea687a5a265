#pragma once

#include "sop/hermite.hpp"
#include "sop/operators.hpp"

namespace sop {

// K^T(q,q') = sum_{a,a'} T_{a v a'} h_a(q) h_{a'}(q') sampled at the given
// position nodes (single mode). Row index runs over q, column over q'.
Matrix kernel_of(const TruncatedOperator& t, const RealVector& qnodes);

// Diagonal of the kernel, K^T(q,q); the position spectral density of T.
double kernel_diag(const TruncatedOperator& t, double q);

// int_a^b K^T(q,q) dq by composite Simpson quadrature.
double kernel_diag_integral(const TruncatedOperator& t, double a, double b, int panels = 2000);

// Inverse of kernel_of: T_{mn} = int int h_m(q) K(q,q') h_n(q') dq dq',
// evaluated with a Gauss-Hermite product rule. Exact (up to rounding) for
// kernels spanned by basis products up to the cutoff when the rule has at
// least cutoff+1 nodes.
TruncatedOperator matrix_of_kernel(const Matrix& kernel, const QuadratureRule& rule,
                                   const BasisConfig& cfg);

}  // namespace sop
