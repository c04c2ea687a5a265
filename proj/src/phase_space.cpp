#include "sop/phase_space.hpp"

#include <cmath>

#include "detail/spline.hpp"

namespace sop {

namespace {

// lambda_i = (q_i + i p_i)/sqrt(2) per mode.
std::vector<cxd> lambdas_of(const PhasePoint& x) {
    std::vector<cxd> ls(x.modes());
    for (int i = 0; i < x.modes(); ++i) ls[i] = cxd(x.q[i], x.p[i]) / std::sqrt(2.0);
    return ls;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace

Matrix displacement_block(cxd lambda, int rows, int cols) {
    Matrix d = Matrix::Zero(rows, cols);
    const double z = std::norm(lambda);
    if (z == 0.0) {
        for (int k = 0; k < std::min(rows, cols); ++k) d(k, k) = 1.0;
        return d;
    }
    const int top = std::max(rows, cols);
    std::vector<double> lgam(top + 1);  // lgamma(k+1)
    lgam[0] = 0.0;
    for (int k = 1; k <= top; ++k) lgam[k] = lgam[k - 1] + std::log(double(k));
    const double logmag = 0.5 * std::log(z);
    const cxd phase = lambda / std::abs(lambda);
    cxd phase_off_lo = 1.0, phase_off_hi = 1.0;  // phase^off, (-conj(phase))^off
    // One associated-Laguerre recurrence per diagonal offset.
    for (int off = 0; off < top; ++off) {
        // D_{n+off, n} = sqrt(n!/(n+off)!) lambda^off e^{-z/2} L_n^{(off)}(z)
        // D_{n, n+off} = sqrt(n!/(n+off)!) (-conj(lambda))^off e^{-z/2} L_n^{(off)}(z)
        double lag_prev = 0.0, lag = 1.0;  // L_0^{(off)} = 1
        for (int n = 0;; ++n) {
            const int m = n + off;
            if (m >= rows && m >= cols) break;
            const double amp = std::exp(0.5 * (lgam[n] - lgam[m]) + off * logmag - 0.5 * z);
            if (m < rows && n < cols) d(m, n) = amp * phase_off_lo * lag;
            if (off > 0 && n < rows && m < cols) d(n, m) = amp * phase_off_hi * lag;
            const double lag_next =
                ((2.0 * n + 1.0 + off - z) * lag - (n + off) * lag_prev) / (n + 1.0);
            lag_prev = lag;
            lag = lag_next;
        }
        phase_off_lo *= phase;
        phase_off_hi *= -std::conj(phase);
    }
    return d;
}

cxd displacement_element(cxd lambda, long m, long n) {
    if (m < 0 || n < 0) throw std::invalid_argument("displacement_element: negative index");
    const double z = std::norm(lambda);
    if (z == 0.0) return m == n ? cxd(1) : cxd(0);
    const long off = std::labs(m - n);
    const long low = std::min(m, n);
    double lag_prev = 0.0, lag = 1.0;  // L_0^{(off)} = 1
    for (long j = 0; j < low; ++j) {
        const double lag_next = ((2.0 * j + 1.0 + off - z) * lag - (j + off) * lag_prev) / (j + 1.0);
        lag_prev = lag;
        lag = lag_next;
    }
    double lg = 0.0;  // lgamma(high+1) - lgamma(low+1) = log((low+1)...(high))
    for (long k = low + 1; k <= low + off; ++k) lg += std::log(double(k));
    const double amp = std::exp(-0.5 * lg + 0.5 * off * std::log(z) - 0.5 * z);
    const cxd phase = lambda / std::abs(lambda);
    const cxd dir = m >= n ? std::pow(phase, double(off)) : std::pow(-std::conj(phase), double(off));
    return amp * dir * lag;
}

TruncatedOperator weyl_operator(const PhasePoint& x, const BasisConfig& cfg) {
    if (x.modes() != cfg.modes) throw DimensionError("weyl_operator: mode count mismatch");
    auto ls = lambdas_of(x);
    const int k = cfg.per_mode();
    Matrix out = Matrix::Identity(1, 1);
    for (int i = 0; i < cfg.modes; ++i) out = kron(out, displacement_block(ls[i], k, k));
    return TruncatedOperator(cfg, std::move(out));
}

namespace {

// Tr[W(x) S] over the sub-block of indices <= support (single mode).
cxd trace_against_displacement(const Matrix& s, int support, cxd lambda) {
    Matrix d = displacement_block(lambda, support + 1, support + 1);
    cxd acc = 0.0;
    for (int m = 0; m <= support; ++m)
        for (int n = 0; n <= support; ++n) acc += d(m, n) * s(n, m);
    return acc;
}

}  // namespace

cxd weyl_at(const TruncatedOperator& t, const PhasePoint& x) {
    if (x.modes() != t.cfg.modes) throw DimensionError("weyl_at: mode count mismatch");
    if (t.cfg.modes == 1)
        return trace_against_displacement(t.mat, t.support_max_index(), lambdas_of(x)[0]);
    return (weyl_operator(x, t.cfg).mat * t.mat).trace();
}

cxd wigner_at_complex(const TruncatedOperator& t, const PhasePoint& x) {
    // W(x) Pi W(x)^* = W(2x) Pi, so the value is 2^N Tr[W(2x) (Pi T)].
    PhasePoint xx = x;
    for (auto& v : xx.q) v *= 2.0;
    for (auto& v : xx.p) v *= 2.0;
    TruncatedOperator pt = compose(parity(t.cfg), t);
    return std::pow(2.0, t.cfg.modes) * weyl_at(pt, xx);
}

double wigner_at(const TruncatedOperator& t, const PhasePoint& x) {
    return wigner_at_complex(t, x).real();
}

namespace {

GridFunction weyl_transform_trace(const TruncatedOperator& t, const PhaseSpaceGrid& grid) {
    const int support = t.support_max_index();
    Matrix out(grid.points, grid.points);
    for (int i = 0; i < grid.points; ++i) {
        const double q = grid.node(i);
        for (int j = 0; j < grid.points; ++j) {
            const double p = grid.node(j);
            out(i, j) = trace_against_displacement(t.mat, support, cxd(q, p) / std::sqrt(2.0));
        }
    }
    return GridFunction(grid, std::move(out));
}

GridFunction weyl_transform_kernel(const TruncatedOperator& t, const PhaseSpaceGrid& grid) {
    const int n = grid.points;
    Matrix k = kernel_of(t, grid.nodes());
    // (V K)(q, q') = K(q' - q, q'); the shear lands exactly on grid nodes.
    Matrix vk = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int shifted = j - i + n / 2;
            if (shifted >= 0 && shifted < n) vk(i, j) = k(shifted, j);
        }
    // T^(q,p) = e^{-i q p/2} * dq' sum_j e^{i p q'_j} (V K)(q, q'_j)
    Matrix e(n, n);  // e(j, b) = exp(i p_b q_j)
    for (int j = 0; j < n; ++j)
        for (int b = 0; b < n; ++b)
            e(j, b) = std::exp(cxd(0, grid.node(j) * grid.node(b)));
    Matrix out = vk * e * grid.spacing();
    for (int i = 0; i < n; ++i)
        for (int b = 0; b < n; ++b)
            out(i, b) *= std::exp(cxd(0, -0.5 * grid.node(i) * grid.node(b)));
    return GridFunction(grid, std::move(out));
}

}  // namespace

GridFunction weyl_transform(const TruncatedOperator& t, const PhaseSpaceGrid& grid,
                            WeylPath path) {
    if (t.cfg.modes != 1)
        throw std::invalid_argument("weyl_transform: dense grids support one mode");
    return path == WeylPath::Trace ? weyl_transform_trace(t, grid)
                                   : weyl_transform_kernel(t, grid);
}

GridFunction wigner_function(const TruncatedOperator& t, const PhaseSpaceGrid& grid) {
    if (t.cfg.modes != 1)
        throw std::invalid_argument("wigner_function: dense grids support one mode");
    TruncatedOperator pt = compose(parity(t.cfg), t);
    const int support = pt.support_max_index();
    Matrix out(grid.points, grid.points);
    for (int i = 0; i < grid.points; ++i) {
        const double q = 2.0 * grid.node(i);
        for (int j = 0; j < grid.points; ++j) {
            const double p = 2.0 * grid.node(j);
            out(i, j) =
                2.0 * trace_against_displacement(pt.mat, support, cxd(q, p) / std::sqrt(2.0));
        }
    }
    return GridFunction(grid, std::move(out));
}

GridFunction symplectic_fourier(const GridFunction& f) {
    const int n = f.grid.points;
    // f^(q_a, p_b) = (2 pi)^{-1} dq dp sum_{a', b'} e^{+i q_a' p_b} e^{-i q_a p_b'} f(a', b').
    // The kernel orientation is fixed by the Fourier-convolution identities
    // widehat(f*T) = f^ T^ and widehat(S*T) = S^ T^; both transforms of even
    // Gaussians are orientation-blind, the identities are not.
    Matrix e_plus(n, n);   // e_plus(a', b) = exp(+i q_a' p_b)
    Matrix e_minus(n, n);  // e_minus(a, b') = exp(-i q_a p_b')
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const double phi = f.grid.node(a) * f.grid.node(b);
            e_plus(a, b) = std::exp(cxd(0, phi));
            e_minus(a, b) = std::exp(cxd(0, -phi));
        }
    Matrix inner = f.samples * e_minus.transpose();  // (a', a)
    Matrix out = (inner.transpose() * e_plus) * f.grid.cell_weight();
    GridFunction g(f.grid, std::move(out));
    const double scale = std::max(f.max_abs(), 1e-300);
    g.boundary_warning = f.boundary_max() > 1e-12 * scale;
    return g;
}

namespace {

TruncatedOperator quantize_midpoint_kernel(const SymbolRule& f, const BasisConfig& cfg,
                                           const QuantizeOptions& opt) {
    if (cfg.modes != 1)
        throw std::invalid_argument("weyl_quantize: dense grids support one mode");
    const int gh_points = cfg.cutoff + 1 + opt.gh_margin;
    QuadratureRule rule = gauss_hermite(gh_points);
    const double p_extent =
        opt.p_extent > 0 ? opt.p_extent : std::sqrt(2.0 * cfg.cutoff + 1.0) + 6.0;
    const int np = opt.p_points;
    const double dp = 2.0 * p_extent / np;
    RealVector pnodes(np);
    for (int b = 0; b < np; ++b) pnodes[b] = (b - np / 2) * dp;

    Matrix kernel(gh_points, gh_points);
    std::vector<cxd> row(np);
    for (int i = 0; i < gh_points; ++i) {
        for (int j = 0; j < gh_points; ++j) {
            const double mid = 0.5 * (rule.nodes[i] + rule.nodes[j]);
            const double sep = rule.nodes[i] - rule.nodes[j];
            cxd acc = 0.0;
            for (int b = 0; b < np; ++b)
                acc += f(mid, pnodes[b]) * std::exp(cxd(0, sep * pnodes[b]));
            kernel(i, j) = acc * dp / (2.0 * M_PI);
        }
    }
    return matrix_of_kernel(kernel, rule, cfg);
}

}  // namespace

TruncatedOperator weyl_quantize(const SymbolRule& f, const BasisConfig& cfg,
                                const QuantizeOptions& opt) {
    return quantize_midpoint_kernel(f, cfg, opt);
}

TruncatedOperator weyl_quantize(const GridFunction& f, const BasisConfig& cfg,
                                const QuantizeOptions& opt) {
    const int n = f.grid.points;
    const double x0 = f.grid.node(0);
    const double dx = f.grid.spacing();
    // One spline per p column; the p integration reuses the grid's own nodes.
    std::vector<detail::CubicSpline> splines;
    splines.reserve(n);
    for (int b = 0; b < n; ++b) splines.emplace_back(x0, dx, ComplexVector(f.samples.col(b)));
    QuantizeOptions grid_opt = opt;
    grid_opt.p_extent = f.grid.extent;
    grid_opt.p_points = n;
    SymbolRule rule = [&](double q, double p) -> cxd {
        const int b = static_cast<int>(std::lround(p / dx)) + n / 2;
        if (b < 0 || b >= n) return cxd(0);
        return splines[b](q);
    };
    return quantize_midpoint_kernel(rule, cfg, grid_opt);
}

TruncatedOperator inverse_weyl(const GridFunction& f, const BasisConfig& cfg) {
    if (cfg.modes != 1)
        throw std::invalid_argument("inverse_weyl: dense grids support one mode");
    const long dim = cfg.dim();
    Matrix acc = Matrix::Zero(dim, dim);
    const double w = f.grid.cell_weight();
    for (int i = 0; i < f.grid.points; ++i)
        for (int j = 0; j < f.grid.points; ++j) {
            const cxd fv = f.samples(i, j);
            if (fv == cxd(0)) continue;
            const cxd lambda = cxd(-f.grid.node(i), -f.grid.node(j)) / std::sqrt(2.0);
            acc += (fv * w) * displacement_block(lambda, dim, dim);
        }
    return TruncatedOperator(cfg, std::move(acc));
}

TruncatedOperator ground_state(const BasisConfig& cfg) {
    return number_state(cfg, zero_index(cfg.modes));
}

TruncatedOperator number_state(const BasisConfig& cfg, const MultiIndex& n) {
    return TruncatedOperator::basis_element(cfg, n, n);
}

TruncatedOperator thermal_state(const BasisConfig& cfg, double lambda) {
    if (!(lambda >= 0.0 && lambda < 1.0))
        throw std::invalid_argument("thermal_state: lambda must lie in [0, 1)");
    return diagonal_op(cfg, [&](const MultiIndex& a) {
        double v = 1.0;
        for (int ai : a) v *= (1.0 - lambda) * std::pow(lambda, ai);
        return v;
    });
}

TruncatedOperator coherent_state(const BasisConfig& cfg, const PhasePoint& x) {
    TruncatedOperator w = weyl_operator(x, cfg);
    return TruncatedOperator(cfg, w.mat * ground_state(cfg).mat * w.mat.adjoint());
}

}  // namespace sop
