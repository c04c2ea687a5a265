#include "sop/hermite.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace sop {

namespace {
const double kPiQuarterInv = 0.7511255444649425;  // pi^{-1/4}
}

double hermite_eval(int n, double q) {
    if (n < 0) throw std::invalid_argument("hermite_eval: order must be >= 0");
    double h0 = kPiQuarterInv * std::exp(-0.5 * q * q);
    if (n == 0) return h0;
    double h1 = std::sqrt(2.0) * q * h0;
    if (n == 1) return h1;
    double prev = h0, cur = h1;
    for (int k = 1; k < n; ++k) {
        double next = q * std::sqrt(2.0 / (k + 1)) * cur - std::sqrt(double(k) / (k + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

RealVector hermite_values(int nmax, double q) {
    if (nmax < 0) throw std::invalid_argument("hermite_values: order must be >= 0");
    RealVector h(nmax + 1);
    h[0] = kPiQuarterInv * std::exp(-0.5 * q * q);
    if (nmax == 0) return h;
    h[1] = std::sqrt(2.0) * q * h[0];
    for (int k = 1; k < nmax; ++k)
        h[k + 1] = q * std::sqrt(2.0 / (k + 1)) * h[k] - std::sqrt(double(k) / (k + 1)) * h[k - 1];
    return h;
}

double hermite_product(const MultiIndex& alpha, const std::vector<double>& q) {
    if (alpha.size() != q.size())
        throw std::invalid_argument("hermite_product: index/point length mismatch");
    double v = 1.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) v *= hermite_eval(alpha[i], q[i]);
    return v;
}

QuadratureRule gauss_hermite(int K) {
    if (K < 1) throw std::invalid_argument("gauss_hermite: need at least one node");
    QuadratureRule rule;
    if (K == 1) {
        rule.nodes = RealVector::Zero(1);
        rule.weights = RealVector::Constant(1, std::sqrt(M_PI));
        return rule;
    }
    // Golub-Welsch nodes. Weights come from the Christoffel identity
    // w_k = 1 / sum_{j<K} p_j(x_k)^2 with orthonormal polynomials p_j; the
    // eigenvector route loses all relative accuracy at extreme nodes, this
    // one does not (written with Hermite functions it is e^{-x^2}/sum h_j^2).
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(K, K);
    for (int k = 0; k + 1 < K; ++k) {
        double b = std::sqrt(0.5 * (k + 1));
        jacobi(k, k + 1) = b;
        jacobi(k + 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("gauss_hermite: eigen solver failed to converge");
    rule.nodes = es.eigenvalues();
    rule.weights = RealVector(K);
    for (int k = 0; k < K; ++k) {
        const double x = rule.nodes[k];
        rule.weights[k] = std::exp(-x * x) / hermite_values(K - 1, x).squaredNorm();
    }
    return rule;
}

RealVector gh_exp_weights(const QuadratureRule& rule) {
    // w_k e^{x_k^2} = 1 / sum_{j<K} h_j(x_k)^2, stable at every node.
    RealVector f(rule.size());
    for (int k = 0; k < rule.size(); ++k)
        f[k] = 1.0 / hermite_values(rule.size() - 1, rule.nodes[k]).squaredNorm();
    return f;
}

}  // namespace sop
