#pragma once

#include "sop/types.hpp"

namespace sop {

// Gauss-Hermite rule for the weight exp(-q^2): sum_k w_k p(q_k) equals
// int p(q) exp(-q^2) dq exactly for polynomials of degree <= 2K-1.
struct QuadratureRule {
    RealVector nodes;    // ascending
    RealVector weights;  // all positive

    int size() const { return static_cast<int>(nodes.size()); }
};

// L^2-normalized Hermite function h_n(q). Uses the normalized three-term
// recurrence h_{n+1} = q sqrt(2/(n+1)) h_n - sqrt(n/(n+1)) h_{n-1}, which
// keeps every intermediate on the order of the final value (no factorials).
double hermite_eval(int n, double q);

// h_0(q) .. h_nmax(q) in one pass.
RealVector hermite_values(int nmax, double q);

// Product basis function h_alpha(q) = prod_i h_{alpha_i}(q_i).
double hermite_product(const MultiIndex& alpha, const std::vector<double>& q);

// Golub-Welsch nodes/weights from the symmetric Jacobi matrix.
QuadratureRule gauss_hermite(int K);

// w_k e^{x_k^2}, the factor turning GH sums into plain integrals; computed
// through the Christoffel identity so extreme nodes stay fully accurate.
RealVector gh_exp_weights(const QuadratureRule& rule);

}  // namespace sop
