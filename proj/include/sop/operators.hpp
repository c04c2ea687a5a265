#pragma once

#include <functional>

#include "sop/types.hpp"

namespace sop {

// Dense operator on the truncated number basis. Stands in for the
// Schwartz / trace-class / Hilbert-Schmidt operators of the infinite theory;
// identities involving polynomials of Q and P are exact only on the
// "reliable sub-block" of indices <= cutoff - degree.
struct TruncatedOperator {
    BasisConfig cfg;
    Matrix mat;

    TruncatedOperator() = default;
    TruncatedOperator(const BasisConfig& c, Matrix m) : cfg(c), mat(std::move(m)) {
        if (mat.rows() != cfg.dim() || mat.cols() != cfg.dim())
            throw DimensionError("TruncatedOperator: matrix does not match basis dimension");
    }

    static TruncatedOperator zero(const BasisConfig& c) {
        return TruncatedOperator(c, Matrix::Zero(c.dim(), c.dim()));
    }
    static TruncatedOperator identity(const BasisConfig& c) {
        return TruncatedOperator(c, Matrix::Identity(c.dim(), c.dim()));
    }
    // |alpha><alpha'| in the truncated basis.
    static TruncatedOperator basis_element(const BasisConfig& c, const MultiIndex& a,
                                           const MultiIndex& ap);

    long dim() const { return mat.rows(); }
    cxd entry(const MultiIndex& a, const MultiIndex& ap) const {
        return mat(cfg.flatten(a), cfg.flatten(ap));
    }
    cxd trace() const { return mat.trace(); }
    TruncatedOperator adjoint() const { return TruncatedOperator(cfg, mat.adjoint()); }
    bool is_hermitian(double tol = 1e-12) const {
        return (mat - mat.adjoint()).cwiseAbs().maxCoeff() <= tol * (1.0 + mat.cwiseAbs().maxCoeff());
    }
    // Largest single-mode occupation carrying weight above `tol`.
    int support_max_index(double tol = 0.0) const;
};

TruncatedOperator compose(const TruncatedOperator& s, const TruncatedOperator& t);
TruncatedOperator add(const TruncatedOperator& s, const TruncatedOperator& t);
TruncatedOperator scale(cxd c, const TruncatedOperator& t);
cxd hs_inner(const TruncatedOperator& s, const TruncatedOperator& t);  // Tr[S* T]

// Ladder and related matrices. For several modes the per-mode operator is
// embedded by Kronecker products following the row-major flattening.
std::vector<TruncatedOperator> annihilation_ops(const BasisConfig& cfg);
std::vector<TruncatedOperator> creation_ops(const BasisConfig& cfg);
std::vector<TruncatedOperator> position_ops(const BasisConfig& cfg);   // Q_i = (A_i + A_i^*)/sqrt(2)
std::vector<TruncatedOperator> momentum_ops(const BasisConfig& cfg);   // P_i = (A_i - A_i^*)/(i sqrt(2))
std::vector<TruncatedOperator> hamiltonian_ops(const BasisConfig& cfg);  // H_i, diagonal a_i + 1/2
TruncatedOperator hamiltonian_total(const BasisConfig& cfg);
TruncatedOperator number_total(const BasisConfig& cfg);
TruncatedOperator parity(const BasisConfig& cfg);  // diagonal (-1)^{|alpha|}

// Diagonal operator with eigenvalue f(alpha) at |alpha>.
TruncatedOperator diagonal_op(const BasisConfig& cfg,
                              const std::function<double(const MultiIndex&)>& f);

// Singular values sorted descending plus the fall-off diagnostics
// sum_k c_k^{1/(2n)} for n = 1..n_report.
struct SingularSpectrum {
    RealVector values;
    std::vector<double> root_partial_sums;
    bool superpolynomial_decay = false;  // concavity of log c_k against log k
};

SingularSpectrum singular_spectrum(const TruncatedOperator& t, int n_report = 4);

// Schatten p-norm for p in {1, 2} and the operator norm for p = 0 (infinity).
double schatten_norm(const TruncatedOperator& t, int p);

// Eigendecomposition-based square root of a PSD operator; eigenvalues in
// [-tol_psd, 0) are clipped to zero, tol_psd = 1e-10 * operator norm.
TruncatedOperator sqrt_psd(const TruncatedOperator& t);
TruncatedOperator abs_op(const TruncatedOperator& t);  // sqrt_psd(T* T)

// ||(H+1/2)^beta T (H+1/2)^beta'||_2
//   = sqrt( sum (alpha+1)^{2 beta} (alpha'+1)^{2 beta'} |T_{alpha v alpha'}|^2 ).
double seminorm_h(const TruncatedOperator& t, const MultiIndex& beta, const MultiIndex& betap);
// Same value computed by materializing the sandwich matrix (cross-check path).
double seminorm_h_matrix(const TruncatedOperator& t, const MultiIndex& beta,
                         const MultiIndex& betap);

// ||Q^alpha P^beta T P^beta' Q^alpha'|| restricted to the reliable sub-block.
// Throws GuardError when the total degree exceeds cutoff/4.
double seminorm_qp(const TruncatedOperator& t, const MultiIndex& alpha, const MultiIndex& alphap,
                   const MultiIndex& beta, const MultiIndex& betap);
// Hilbert-Schmidt norm of the same sandwich (dominates the operator norm).
double seminorm_qp_hs(const TruncatedOperator& t, const MultiIndex& alpha,
                      const MultiIndex& alphap, const MultiIndex& beta, const MultiIndex& betap);

enum class SeminormFamily { OperatorQP, HsQP, HPower };

struct SeminormReport {
    SeminormFamily family = SeminormFamily::HPower;
    struct Entry {
        MultiIndex alpha, alphap, beta, betap;
        double value = 0.0;
    };
    std::vector<Entry> entries;
};

// All seminorms of the family with per-mode orders <= max_order.
SeminormReport seminorm_report(const TruncatedOperator& t, SeminormFamily family, int max_order);

// Linear indices whose multi-index stays componentwise <= cutoff - margin;
// polynomial identities of total degree `margin` hold exactly there.
std::vector<long> reliable_indices(const BasisConfig& cfg, int margin);
Matrix restrict_to(const Matrix& m, const std::vector<long>& idx);

}  // namespace sop
