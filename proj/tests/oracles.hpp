#pragma once

// Independent oracles used by the test suite. Each one recomputes a quantity
// along a different route than the library (arbitrary precision, matrix
// exponentials, direct quadrature) so that agreement is meaningful.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "sop/grid.hpp"
#include "sop/hermite.hpp"
#include "sop/operators.hpp"
#include "sop/types.hpp"

namespace oracle {

using mpf = boost::multiprecision::cpp_bin_float_50;

// Normalized Hermite function via the recurrence in 50-digit arithmetic.
inline double hermite_mp(int n, double q) {
    const mpf qq(q);
    const mpf pi = acos(mpf(-1));
    mpf h0 = pow(pi, mpf(-0.25)) * exp(-qq * qq / 2);
    if (n == 0) return h0.convert_to<double>();
    mpf h1 = sqrt(mpf(2)) * qq * h0;
    mpf prev = h0, cur = h1;
    for (int k = 1; k < n; ++k) {
        mpf next = qq * sqrt(mpf(2) / (k + 1)) * cur - sqrt(mpf(k) / (k + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return cur.convert_to<double>();
}

// W(x) = exp(i(p Q - q P)) through the truncated generator (independent of
// the closed-form Laguerre path; accurate away from the cutoff edge).
inline sop::Matrix weyl_expm(const sop::PhasePoint& x, const sop::BasisConfig& cfg) {
    auto qs = sop::position_ops(cfg);
    auto ps = sop::momentum_ops(cfg);
    sop::Matrix gen = sop::Matrix::Zero(cfg.dim(), cfg.dim());
    for (int i = 0; i < cfg.modes; ++i)
        gen += sop::cxd(0, 1) * (x.p[i] * qs[i].mat - x.q[i] * ps[i].mat);
    return gen.exp();
}

// Wigner value of |psi><phi| from the displayed integral
//   int dq' e^{i q' p} conj(phi(q + q'/2)) psi(q - q'/2)
// by composite Simpson quadrature; psi/phi given as number-basis coefficients.
inline sop::cxd wigner_rank_one_quad(const sop::ComplexVector& psi, const sop::ComplexVector& phi,
                                     double q, double p, double extent = 14.0, int panels = 4000);

inline sop::cxd eval_coeff_fn(const sop::ComplexVector& c, double q) {
    sop::RealVector h = sop::hermite_values(static_cast<int>(c.size()) - 1, q);
    sop::cxd acc = 0.0;
    for (long k = 0; k < c.size(); ++k) acc += c[k] * h[k];
    return acc;
}

inline sop::cxd wigner_rank_one_quad(const sop::ComplexVector& psi, const sop::ComplexVector& phi,
                                     double q, double p, double extent, int panels) {
    if (panels % 2) ++panels;
    const double h = 2.0 * extent / panels;
    auto f = [&](double qp) {
        return std::exp(sop::cxd(0, qp * p)) * std::conj(eval_coeff_fn(phi, q + qp / 2)) *
               eval_coeff_fn(psi, q - qp / 2);
    };
    sop::cxd acc = f(-extent) + f(extent);
    for (int k = 1; k < panels; ++k) acc += f(-extent + k * h) * (k % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace oracle
