#include "sop/kernels.hpp"

#include <cmath>

namespace sop {

namespace {

void require_single_mode(const BasisConfig& cfg, const char* what) {
    if (cfg.modes != 1)
        throw std::invalid_argument(std::string(what) + ": dense kernel grids support one mode");
}

// H(a, i) = h_a(q_i)
Eigen::MatrixXd hermite_table(int nmax, const RealVector& qnodes) {
    Eigen::MatrixXd h(nmax + 1, qnodes.size());
    for (long i = 0; i < qnodes.size(); ++i) h.col(i) = hermite_values(nmax, qnodes[i]);
    return h;
}

}  // namespace

Matrix kernel_of(const TruncatedOperator& t, const RealVector& qnodes) {
    require_single_mode(t.cfg, "kernel_of");
    Eigen::MatrixXd h = hermite_table(t.cfg.cutoff, qnodes);
    return h.transpose() * t.mat * h;
}

double kernel_diag(const TruncatedOperator& t, double q) {
    require_single_mode(t.cfg, "kernel_diag");
    RealVector h = hermite_values(t.cfg.cutoff, q);
    return (h.transpose() * t.mat.real() * h).value();
}

double kernel_diag_integral(const TruncatedOperator& t, double a, double b, int panels) {
    require_single_mode(t.cfg, "kernel_diag_integral");
    if (b < a) std::swap(a, b);
    if (panels % 2) ++panels;
    const double h = (b - a) / panels;
    double acc = kernel_diag(t, a) + kernel_diag(t, b);
    for (int k = 1; k < panels; ++k)
        acc += kernel_diag(t, a + k * h) * (k % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

TruncatedOperator matrix_of_kernel(const Matrix& kernel, const QuadratureRule& rule,
                                   const BasisConfig& cfg) {
    require_single_mode(cfg, "matrix_of_kernel");
    if (rule.size() < cfg.cutoff + 1)
        throw std::invalid_argument(
            "matrix_of_kernel: quadrature grid too small for the requested cutoff");
    if (kernel.rows() != rule.size() || kernel.cols() != rule.size())
        throw DimensionError("matrix_of_kernel: kernel samples do not match the quadrature rule");
    // G(m, i) = w_i e^{q_i^2} h_m(q_i); T = G K G^T.
    Eigen::MatrixXd g = hermite_table(cfg.cutoff, rule.nodes);
    RealVector factor = gh_exp_weights(rule);
    for (long i = 0; i < rule.nodes.size(); ++i) g.col(i) *= factor[i];
    return TruncatedOperator(cfg, g * kernel * g.transpose());
}

}  // namespace sop
