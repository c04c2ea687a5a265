#include "sop/correspondence.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace sop {

namespace {

void require_single_mode(const BasisConfig& cfg, const char* what) {
    if (cfg.modes != 1)
        throw std::invalid_argument(std::string(what) + ": dense grids support one mode");
}

struct RankFactors {
    // T = sum_k scale_k |u_k><v_k|; Hermitian inputs use the eigenbasis so
    // that conjugation preserves structure.
    std::vector<cxd> scale;
    Matrix u, v;
    bool hermitian = false;
};

RankFactors factorize(const TruncatedOperator& t) {
    RankFactors f;
    const double floor = 1e-15 * std::max(1.0, t.mat.cwiseAbs().maxCoeff());
    if (t.is_hermitian(1e-12)) {
        f.hermitian = true;
        Eigen::SelfAdjointEigenSolver<Matrix> es(t.mat);
        std::vector<long> keep;
        for (long k = 0; k < es.eigenvalues().size(); ++k)
            if (std::abs(es.eigenvalues()[k]) > floor) keep.push_back(k);
        f.u.resize(t.dim(), keep.size());
        for (std::size_t i = 0; i < keep.size(); ++i) {
            f.scale.push_back(es.eigenvalues()[keep[i]]);
            f.u.col(i) = es.eigenvectors().col(keep[i]);
        }
        f.v = f.u;
    } else {
        Eigen::BDCSVD<Matrix> svd(t.mat, Eigen::ComputeThinU | Eigen::ComputeThinV);
        std::vector<long> keep;
        for (long k = 0; k < svd.singularValues().size(); ++k)
            if (svd.singularValues()[k] > floor) keep.push_back(k);
        f.u.resize(t.dim(), keep.size());
        f.v.resize(t.dim(), keep.size());
        for (std::size_t i = 0; i < keep.size(); ++i) {
            f.scale.push_back(svd.singularValues()[keep[i]]);
            f.u.col(i) = svd.matrixU().col(keep[i]);
            f.v.col(i) = svd.matrixV().col(keep[i]);
        }
    }
    return f;
}

}  // namespace

TruncatedOperator conv_fn_op(const GridFunction& f, const TruncatedOperator& t,
                             ConvDiagnostics* diag) {
    require_single_mode(t.cfg, "conv_fn_op");
    const long dim = t.cfg.dim();
    RankFactors fac = factorize(t);
    const long rank = fac.scale.size();
    Matrix acc = Matrix::Zero(dim, dim);
    const double w = f.grid.cell_weight();
    for (int i = 0; i < f.grid.points; ++i) {
        for (int j = 0; j < f.grid.points; ++j) {
            const cxd fv = f.samples(i, j);
            if (fv == cxd(0)) continue;
            const cxd lambda = cxd(f.grid.node(i), f.grid.node(j)) / std::sqrt(2.0);
            Matrix d = displacement_block(lambda, dim, dim);
            Matrix wu = d * fac.u;
            Matrix wv = fac.hermitian ? wu : Matrix(d * fac.v);
            for (long k = 0; k < rank; ++k)
                acc.noalias() += (fv * w * fac.scale[k]) * (wu.col(k) * wv.col(k).adjoint());
        }
    }
    TruncatedOperator out(t.cfg, std::move(acc));
    if (diag) {
        diag->boundary_warning = f.boundary_max() > 1e-12 * std::max(f.max_abs(), 1e-300);
        diag->quadrature_residual = std::abs(out.trace() - f.integral() * t.trace());
    }
    return out;
}

GridFunction conv_op_op(const TruncatedOperator& s, const TruncatedOperator& t,
                        const PhaseSpaceGrid& grid) {
    require_same_cfg(s.cfg, t.cfg, "conv_op_op");
    require_single_mode(s.cfg, "conv_op_op");
    const long dim = s.cfg.dim();
    // T_- = Pi T Pi, then (S*T)(x) = sum_k scale_k <W(x)v_k| S |W(x)u_k>.
    Matrix pi = parity(t.cfg).mat;
    RankFactors fac = factorize(TruncatedOperator(t.cfg, pi * t.mat * pi));
    const long rank = fac.scale.size();
    Matrix out(grid.points, grid.points);
    for (int i = 0; i < grid.points; ++i) {
        for (int j = 0; j < grid.points; ++j) {
            const cxd lambda = cxd(grid.node(i), grid.node(j)) / std::sqrt(2.0);
            Matrix d = displacement_block(lambda, dim, dim);
            Matrix wu = d * fac.u;
            Matrix wv = fac.hermitian ? wu : Matrix(d * fac.v);
            cxd acc = 0.0;
            for (long k = 0; k < rank; ++k)
                acc += fac.scale[k] * (wv.col(k).adjoint() * s.mat * wu.col(k)).value();
            out(i, j) = acc;
        }
    }
    return GridFunction(grid, std::move(out));
}

GridFunction husimi(const TruncatedOperator& t, const PhaseSpaceGrid& grid) {
    return conv_op_op(t, ground_state(t.cfg), grid);
}

TruncatedOperator coherent_quantize(const GridFunction& f, const BasisConfig& cfg) {
    return conv_fn_op(f, ground_state(cfg));
}

std::vector<double> default_eps_schedule() { return {1.0, 0.7, 0.5, 0.35, 0.25}; }

std::vector<GridFunction> approximate_identity(const GridFunction& g,
                                               const std::vector<double>& eps_schedule) {
    const cxd total = g.integral();
    if (std::abs(total - 1.0) > 1e-8)
        throw std::invalid_argument("approximate_identity: symbol must integrate to 1");
    std::vector<GridFunction> out;
    const int n = g.grid.points;
    const double dx = g.grid.spacing();
    for (double eps : eps_schedule) {
        if (!(eps > 0)) throw std::invalid_argument("approximate_identity: eps must be positive");
        Matrix s(n, n);
        const double scale = 1.0 / (eps * eps);  // eps^{-2N}, N = 1
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                // bilinear lookup of g at (q/eps, p/eps)
                const double uq = g.grid.node(i) / eps / dx + n / 2;
                const double up = g.grid.node(j) / eps / dx + n / 2;
                cxd v = 0.0;
                if (uq >= 0 && uq <= n - 1 && up >= 0 && up <= n - 1) {
                    const int a = std::min(int(uq), n - 2), b = std::min(int(up), n - 2);
                    const double ta = uq - a, tb = up - b;
                    v = (1 - ta) * (1 - tb) * g.samples(a, b) + ta * (1 - tb) * g.samples(a + 1, b) +
                        (1 - ta) * tb * g.samples(a, b + 1) + ta * tb * g.samples(a + 1, b + 1);
                }
                s(i, j) = scale * v;
            }
        out.emplace_back(g.grid, std::move(s));
    }
    return out;
}

std::vector<SymbolRule> approximate_identity(const SymbolRule& g, double integral_of_g,
                                             const std::vector<double>& eps_schedule) {
    if (std::abs(integral_of_g - 1.0) > 1e-8)
        throw std::invalid_argument("approximate_identity: symbol must integrate to 1");
    std::vector<SymbolRule> out;
    for (double eps : eps_schedule) {
        if (!(eps > 0)) throw std::invalid_argument("approximate_identity: eps must be positive");
        out.push_back([g, eps](double q, double p) -> cxd {
            return g(q / eps, p / eps) / (eps * eps);
        });
    }
    return out;
}

}  // namespace sop
