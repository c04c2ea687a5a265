#include "sop/operators.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace sop {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Embed a single-mode matrix at position `mode`, identity elsewhere.
Matrix embed_mode(const BasisConfig& cfg, const Matrix& single, int mode) {
    Matrix out = Matrix::Identity(1, 1);
    const long k = cfg.per_mode();
    for (int i = 0; i < cfg.modes; ++i)
        out = kron(out, i == mode ? single : Matrix::Identity(k, k));
    return out;
}

Matrix single_mode_annihilation(int per_mode) {
    Matrix a = Matrix::Zero(per_mode, per_mode);
    for (int n = 1; n < per_mode; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

RealVector singular_values_of(const Matrix& m) {
    Eigen::BDCSVD<Matrix> svd(m);
    return svd.singularValues();
}

}  // namespace

TruncatedOperator TruncatedOperator::basis_element(const BasisConfig& c, const MultiIndex& a,
                                                   const MultiIndex& ap) {
    Matrix m = Matrix::Zero(c.dim(), c.dim());
    m(c.flatten(a), c.flatten(ap)) = 1.0;
    return TruncatedOperator(c, std::move(m));
}

int TruncatedOperator::support_max_index(double tol) const {
    int support = 0;
    for (long i = 0; i < dim(); ++i)
        for (long j = 0; j < dim(); ++j)
            if (std::abs(mat(i, j)) > tol)
                support = std::max({support, cfg.max_entry(i), cfg.max_entry(j)});
    return support;
}

TruncatedOperator compose(const TruncatedOperator& s, const TruncatedOperator& t) {
    require_same_cfg(s.cfg, t.cfg, "compose");
    return TruncatedOperator(s.cfg, s.mat * t.mat);
}

TruncatedOperator add(const TruncatedOperator& s, const TruncatedOperator& t) {
    require_same_cfg(s.cfg, t.cfg, "add");
    return TruncatedOperator(s.cfg, s.mat + t.mat);
}

TruncatedOperator scale(cxd c, const TruncatedOperator& t) {
    return TruncatedOperator(t.cfg, c * t.mat);
}

cxd hs_inner(const TruncatedOperator& s, const TruncatedOperator& t) {
    require_same_cfg(s.cfg, t.cfg, "hs_inner");
    return (s.mat.adjoint() * t.mat).trace();
}

std::vector<TruncatedOperator> annihilation_ops(const BasisConfig& cfg) {
    std::vector<TruncatedOperator> out;
    Matrix a = single_mode_annihilation(cfg.per_mode());
    for (int i = 0; i < cfg.modes; ++i)
        out.emplace_back(cfg, embed_mode(cfg, a, i));
    return out;
}

std::vector<TruncatedOperator> creation_ops(const BasisConfig& cfg) {
    auto as = annihilation_ops(cfg);
    for (auto& op : as) op.mat = op.mat.adjoint().eval();
    return as;
}

std::vector<TruncatedOperator> position_ops(const BasisConfig& cfg) {
    auto as = annihilation_ops(cfg);
    const double s = 1.0 / std::sqrt(2.0);
    for (auto& op : as) op.mat = s * (op.mat + op.mat.adjoint()).eval();
    return as;
}

std::vector<TruncatedOperator> momentum_ops(const BasisConfig& cfg) {
    auto as = annihilation_ops(cfg);
    const cxd s = cxd(0, 1) / std::sqrt(2.0);
    for (auto& op : as) op.mat = (s * (op.mat.adjoint() - op.mat)).eval();
    return as;
}

TruncatedOperator diagonal_op(const BasisConfig& cfg,
                              const std::function<double(const MultiIndex&)>& f) {
    Matrix m = Matrix::Zero(cfg.dim(), cfg.dim());
    for (long i = 0; i < cfg.dim(); ++i) m(i, i) = f(cfg.unflatten(i));
    return TruncatedOperator(cfg, std::move(m));
}

std::vector<TruncatedOperator> hamiltonian_ops(const BasisConfig& cfg) {
    std::vector<TruncatedOperator> out;
    for (int i = 0; i < cfg.modes; ++i)
        out.push_back(diagonal_op(cfg, [i](const MultiIndex& a) { return a[i] + 0.5; }));
    return out;
}

TruncatedOperator hamiltonian_total(const BasisConfig& cfg) {
    return diagonal_op(cfg, [&](const MultiIndex& a) { return order_sum(a) + 0.5 * cfg.modes; });
}

TruncatedOperator number_total(const BasisConfig& cfg) {
    return diagonal_op(cfg, [](const MultiIndex& a) { return order_sum(a); });
}

TruncatedOperator parity(const BasisConfig& cfg) {
    return diagonal_op(cfg, [](const MultiIndex& a) { return order_sum(a) % 2 ? -1.0 : 1.0; });
}

SingularSpectrum singular_spectrum(const TruncatedOperator& t, int n_report) {
    SingularSpectrum s;
    s.values = singular_values_of(t.mat);
    s.root_partial_sums.assign(std::max(n_report, 1), 0.0);
    for (int n = 1; n <= std::max(n_report, 1); ++n) {
        double acc = 0.0;
        for (long k = 0; k < s.values.size(); ++k)
            acc += std::pow(s.values[k], 1.0 / (2.0 * n));
        s.root_partial_sums[n - 1] = acc;
    }
    // Concavity of log c_k vs log k over the numerically meaningful range.
    const double floor = s.values.size() ? s.values[0] * 1e-14 : 0.0;
    std::vector<double> lk, lc;
    for (long k = 0; k < s.values.size(); ++k) {
        if (s.values[k] <= floor || s.values[k] <= 0.0) break;
        lk.push_back(std::log(double(k + 1)));
        lc.push_back(std::log(s.values[k]));
    }
    if (lk.size() >= 3) {
        double acc = 0.0;
        int cnt = 0;
        for (std::size_t k = 1; k + 1 < lk.size(); ++k) {
            double left = (lc[k] - lc[k - 1]) / (lk[k] - lk[k - 1]);
            double right = (lc[k + 1] - lc[k]) / (lk[k + 1] - lk[k]);
            acc += right - left;
            ++cnt;
        }
        s.superpolynomial_decay = cnt > 0 && acc / cnt < -1e-3;
    }
    return s;
}

double schatten_norm(const TruncatedOperator& t, int p) {
    RealVector sv = singular_values_of(t.mat);
    if (p == 1) return sv.sum();
    if (p == 2) return std::sqrt(sv.squaredNorm());
    if (p == 0) return sv.size() ? sv[0] : 0.0;  // operator norm
    throw std::invalid_argument("schatten_norm: p must be 1, 2 or 0 (infinity)");
}

TruncatedOperator sqrt_psd(const TruncatedOperator& t) {
    if (!t.is_hermitian(1e-10)) throw NotPsdError("sqrt_psd: operator is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(t.mat);
    if (es.info() != Eigen::Success) throw std::runtime_error("sqrt_psd: eigensolver failed");
    RealVector ev = es.eigenvalues();
    const double opnorm = std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
    const double tol_psd = 1e-10 * opnorm;
    RealVector root(ev.size());
    for (long k = 0; k < ev.size(); ++k) {
        if (ev[k] < -tol_psd)
            throw NotPsdError("sqrt_psd: eigenvalue below -tol_psd, operator not PSD");
        root[k] = ev[k] > 0.0 ? std::sqrt(ev[k]) : 0.0;
    }
    Matrix m = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
    return TruncatedOperator(t.cfg, std::move(m));
}

TruncatedOperator abs_op(const TruncatedOperator& t) {
    return sqrt_psd(TruncatedOperator(t.cfg, (t.mat.adjoint() * t.mat).eval()));
}

namespace {

// (alpha+1)^{2 beta} weight for one side of the H-power seminorm.
double h_weight(const BasisConfig& cfg, long idx, const MultiIndex& beta) {
    double w = 1.0;
    MultiIndex a = cfg.unflatten(idx);
    for (int i = 0; i < cfg.modes; ++i) w *= std::pow(double(a[i] + 1), 2.0 * beta[i]);
    return w;
}

void check_order(const BasisConfig& cfg, const MultiIndex& beta, const char* what) {
    if (static_cast<int>(beta.size()) != cfg.modes)
        throw std::invalid_argument(std::string(what) + ": order length does not match modes");
    for (int v : beta)
        if (v < 0) throw std::invalid_argument(std::string(what) + ": negative order");
}

}  // namespace

double seminorm_h(const TruncatedOperator& t, const MultiIndex& beta, const MultiIndex& betap) {
    check_order(t.cfg, beta, "seminorm_h");
    check_order(t.cfg, betap, "seminorm_h");
    double acc = 0.0;
    for (long i = 0; i < t.dim(); ++i) {
        double wi = h_weight(t.cfg, i, beta);
        for (long j = 0; j < t.dim(); ++j)
            acc += wi * h_weight(t.cfg, j, betap) * std::norm(t.mat(i, j));
    }
    return std::sqrt(acc);
}

double seminorm_h_matrix(const TruncatedOperator& t, const MultiIndex& beta,
                         const MultiIndex& betap) {
    check_order(t.cfg, beta, "seminorm_h_matrix");
    check_order(t.cfg, betap, "seminorm_h_matrix");
    Matrix left = Matrix::Identity(t.dim(), t.dim());
    Matrix right = Matrix::Identity(t.dim(), t.dim());
    auto hp = [&](const MultiIndex& b) {
        return diagonal_op(t.cfg, [&](const MultiIndex& a) {
                   double w = 1.0;
                   for (std::size_t i = 0; i < a.size(); ++i)
                       w *= std::pow(double(a[i] + 1), double(b[i]));
                   return w;
               })
            .mat;
    };
    left = hp(beta);
    right = hp(betap);
    return (left * t.mat * right).norm();
}

namespace {

Matrix qp_sandwich(const TruncatedOperator& t, const MultiIndex& alpha, const MultiIndex& alphap,
                   const MultiIndex& beta, const MultiIndex& betap, int* degree_out) {
    const BasisConfig& cfg = t.cfg;
    check_order(cfg, alpha, "seminorm_qp");
    check_order(cfg, alphap, "seminorm_qp");
    check_order(cfg, beta, "seminorm_qp");
    check_order(cfg, betap, "seminorm_qp");
    const int degree = order_sum(alpha) + order_sum(alphap) + order_sum(beta) + order_sum(betap);
    if (degree_out) *degree_out = degree;
    if (degree > cfg.cutoff / 4)
        throw GuardError("seminorm_qp: polynomial degree exceeds cutoff/4 guard");
    auto qs = position_ops(cfg);
    auto ps = momentum_ops(cfg);
    Matrix left = Matrix::Identity(cfg.dim(), cfg.dim());
    Matrix right = Matrix::Identity(cfg.dim(), cfg.dim());
    for (int i = 0; i < cfg.modes; ++i) {
        for (int k = 0; k < alpha[i]; ++k) left = left * qs[i].mat;
        for (int k = 0; k < beta[i]; ++k) left = left * ps[i].mat;
        for (int k = 0; k < betap[i]; ++k) right = right * ps[i].mat;
        for (int k = 0; k < alphap[i]; ++k) right = right * qs[i].mat;
    }
    return left * t.mat * right;
}

}  // namespace

double seminorm_qp(const TruncatedOperator& t, const MultiIndex& alpha, const MultiIndex& alphap,
                   const MultiIndex& beta, const MultiIndex& betap) {
    int degree = 0;
    Matrix m = qp_sandwich(t, alpha, alphap, beta, betap, &degree);
    Matrix sub = restrict_to(m, reliable_indices(t.cfg, degree));
    RealVector sv = singular_values_of(sub);
    return sv.size() ? sv[0] : 0.0;
}

double seminorm_qp_hs(const TruncatedOperator& t, const MultiIndex& alpha,
                      const MultiIndex& alphap, const MultiIndex& beta, const MultiIndex& betap) {
    int degree = 0;
    Matrix m = qp_sandwich(t, alpha, alphap, beta, betap, &degree);
    return restrict_to(m, reliable_indices(t.cfg, degree)).norm();
}

SeminormReport seminorm_report(const TruncatedOperator& t, SeminormFamily family, int max_order) {
    SeminormReport report;
    report.family = family;
    const int n = t.cfg.modes;
    std::vector<MultiIndex> orders;
    MultiIndex cur(n, 0);
    // All per-mode orders <= max_order, lexicographic.
    while (true) {
        orders.push_back(cur);
        int i = n - 1;
        while (i >= 0 && cur[i] == max_order) cur[i--] = 0;
        if (i < 0) break;
        ++cur[i];
    }
    for (const auto& b : orders) {
        for (const auto& bp : orders) {
            SeminormReport::Entry e;
            e.beta = b;
            e.betap = bp;
            switch (family) {
                case SeminormFamily::HPower:
                    e.value = seminorm_h(t, b, bp);
                    break;
                case SeminormFamily::OperatorQP:
                    e.alpha = b;
                    e.alphap = bp;
                    e.beta = zero_index(n);
                    e.betap = zero_index(n);
                    e.value = seminorm_qp(t, b, bp, zero_index(n), zero_index(n));
                    break;
                case SeminormFamily::HsQP:
                    e.alpha = b;
                    e.alphap = bp;
                    e.beta = zero_index(n);
                    e.betap = zero_index(n);
                    e.value = seminorm_qp_hs(t, b, bp, zero_index(n), zero_index(n));
                    break;
            }
            report.entries.push_back(std::move(e));
        }
    }
    return report;
}

std::vector<long> reliable_indices(const BasisConfig& cfg, int margin) {
    std::vector<long> idx;
    const int limit = cfg.cutoff - std::max(margin, 0);
    for (long i = 0; i < cfg.dim(); ++i)
        if (cfg.max_entry(i) <= limit) idx.push_back(i);
    return idx;
}

Matrix restrict_to(const Matrix& m, const std::vector<long>& idx) {
    Matrix out(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = m(idx[i], idx[j]);
    return out;
}

}  // namespace sop
