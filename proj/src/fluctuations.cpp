#include "sop/fluctuations.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace sop {

double omega_m(int spins, int n) {
    if (n < 0 || n > spins) return 0.0;
    return std::sqrt(1.0 - double(n) / spins);
}

FluctuationSystem build_fluctuation_system(int spins, const BasisConfig& cfg) {
    if (cfg.modes != 1)
        throw std::invalid_argument("build_fluctuation_system: single mode only");
    if (spins < 1) throw std::invalid_argument("build_fluctuation_system: need M >= 1");
    if (spins > cfg.cutoff)
        throw std::invalid_argument("build_fluctuation_system: M exceeds the basis cutoff");
    FluctuationSystem sys;
    sys.spins = spins;
    sys.cfg = cfg;
    sys.omega.resize(cfg.dim());
    for (long n = 0; n < cfg.dim(); ++n) sys.omega[n] = omega_m(spins, static_cast<int>(n));

    const Matrix a = annihilation_ops(cfg)[0].mat;
    Matrix omega_diag = Matrix::Zero(cfg.dim(), cfg.dim());
    Matrix omega_shift = Matrix::Zero(cfg.dim(), cfg.dim());
    for (long n = 0; n < cfg.dim(); ++n) {
        omega_diag(n, n) = sys.omega[n];
        omega_shift(n, n) = omega_m(spins, static_cast<int>(n) - 1);
    }
    Matrix left = omega_diag * a;   // omega_M(N-hat) A
    Matrix right = a * omega_shift; // A omega_M(N-hat - 1)
    if ((left - right).cwiseAbs().maxCoeff() > 1e-12)
        throw std::runtime_error("build_fluctuation_system: factorization mismatch");
    sys.a_m = TruncatedOperator(cfg, left);
    sys.a_m_dag = sys.a_m.adjoint();
    const double s = 1.0 / std::sqrt(2.0);
    sys.q_m = TruncatedOperator(cfg, s * (sys.a_m.mat + sys.a_m_dag.mat));
    sys.p_m = TruncatedOperator(cfg, cxd(0, 1) * s * (sys.a_m_dag.mat - sys.a_m.mat));
    return sys;
}

OmegaBoundReport omega_bound_check(int spins) {
    OmegaBoundReport rep;
    rep.spins = spins;
    for (int n = 0; n <= spins; ++n) {
        const double gap = std::abs(1.0 - omega_m(spins, n));
        rep.max_violation = std::max(rep.max_violation, gap - std::sqrt(double(n) / spins));
        rep.sup_gap_over_h = std::max(rep.sup_gap_over_h, (1.0 - omega_m(spins, n)) / (n + 0.5));
    }
    return rep;
}

namespace {

Matrix poly_in(const PolyQP& f, const Matrix& q, const Matrix& p) {
    Matrix acc = Matrix::Zero(q.rows(), q.cols());
    for (const auto& term : f.terms) {
        Matrix m = Matrix::Identity(q.rows(), q.cols());
        for (const auto& l : term.word.letters) m = m * (l.kind == LetterKind::Q ? q : p);
        acc += term.coeff * m;
    }
    return acc;
}

}  // namespace

std::vector<ConvergenceRow> moment_convergence(const PolyQP& f, const TruncatedOperator& t,
                                               const std::vector<int>& spin_counts) {
    if (t.cfg.modes != 1) throw std::invalid_argument("moment_convergence: single mode only");
    const Matrix q = position_ops(t.cfg)[0].mat;
    const Matrix p = momentum_ops(t.cfg)[0].mat;
    const double reference = (poly_in(f, q, p) * t.mat).trace().real();
    std::vector<ConvergenceRow> rows;
    for (int m : spin_counts) {
        FluctuationSystem sys = build_fluctuation_system(m, t.cfg);
        const double value = (poly_in(f, sys.q_m.mat, sys.p_m.mat) * t.mat).trace().real();
        rows.push_back({m, value, reference, std::abs(value - reference)});
    }
    return rows;
}

SpectralMeasureApprox spectral_weights(const FluctuationSystem& sys, const TruncatedOperator& t) {
    require_same_cfg(sys.cfg, t.cfg, "spectral_weights");
    // Q_M vanishes outside span{|0>..|M>}; diagonalize that block.
    const int block = std::min<long>(sys.spins + 1, sys.cfg.dim());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sys.q_m.mat.topLeftCorner(block, block));
    if (es.info() != Eigen::Success)
        throw std::runtime_error("spectral_weights: eigensolver failed");
    SpectralMeasureApprox approx;
    approx.spins = sys.spins;
    approx.eigenvalues = es.eigenvalues();
    approx.weights.resize(block);
    for (int k = 0; k < block; ++k) {
        ComplexVector v = ComplexVector::Zero(t.dim());
        v.head(block) = es.eigenvectors().col(k);
        approx.weights[k] = (v.adjoint() * t.mat * v).value().real();
    }
    return approx;
}

double spectral_mass(const SpectralMeasureApprox& approx, double a, double b) {
    // closed interval with boundary tolerance: eigenvalue atoms landing on an
    // endpoint count fully, matching Tr(E([a,b])T) for the spectral measure
    double acc = 0.0;
    for (long k = 0; k < approx.eigenvalues.size(); ++k) {
        const double q = approx.eigenvalues[k];
        if (q >= a - 1e-12 && q <= b + 1e-12) acc += approx.weights[k];
    }
    return acc;
}

std::vector<ConvergenceRow> spectral_convergence(const TruncatedOperator& t,
                                                 const std::vector<int>& spin_counts, double a,
                                                 double b) {
    const double reference = kernel_diag_integral(t, a, b);
    std::vector<ConvergenceRow> rows;
    for (int m : spin_counts) {
        FluctuationSystem sys = build_fluctuation_system(m, t.cfg);
        const double value = spectral_mass(spectral_weights(sys, t), a, b);
        rows.push_back({m, value, reference, std::abs(value - reference)});
    }
    return rows;
}

std::vector<ConvergenceRow> weak_convergence(const TruncatedOperator& t,
                                             const std::vector<int>& spin_counts,
                                             const std::function<double(double)>& f,
                                             double quad_extent, int quad_panels) {
    // reference: int f(q) K^T(q,q) dq by Simpson quadrature
    if (quad_panels % 2) ++quad_panels;
    const double h = 2.0 * quad_extent / quad_panels;
    double reference = f(-quad_extent) * kernel_diag(t, -quad_extent) +
                       f(quad_extent) * kernel_diag(t, quad_extent);
    for (int k = 1; k < quad_panels; ++k) {
        const double q = -quad_extent + k * h;
        reference += f(q) * kernel_diag(t, q) * (k % 2 ? 4.0 : 2.0);
    }
    reference *= h / 3.0;
    std::vector<ConvergenceRow> rows;
    for (int m : spin_counts) {
        FluctuationSystem sys = build_fluctuation_system(m, t.cfg);
        SpectralMeasureApprox approx = spectral_weights(sys, t);
        double value = 0.0;
        for (long k = 0; k < approx.eigenvalues.size(); ++k)
            value += f(approx.eigenvalues[k]) * approx.weights[k];
        rows.push_back({m, value, reference, std::abs(value - reference)});
    }
    return rows;
}

RescaledProjectionSchedule default_projection_schedule(double q, int steps) {
    RescaledProjectionSchedule s;
    double half = 0.5;
    for (int k = 0; k < steps; ++k) {
        s.spin_counts.push_back(1 << (k + 4));
        s.intervals.emplace_back(q - half, q + half);
        half *= 0.5;
    }
    return s;
}

std::vector<RescaledProjectionStep> rescaled_projection_sequence(
    const TruncatedOperator& t, const RescaledProjectionSchedule& schedule) {
    if (schedule.spin_counts.size() != schedule.intervals.size())
        throw std::invalid_argument("rescaled_projection_sequence: schedule length mismatch");
    for (std::size_t k = 0; k + 1 < schedule.intervals.size(); ++k) {
        const auto& [a0, b0] = schedule.intervals[k];
        const auto& [a1, b1] = schedule.intervals[k + 1];
        if (!(a0 < a1 && a1 < b1 && b1 < b0))
            throw std::invalid_argument("rescaled_projection_sequence: intervals must nest strictly");
    }
    std::vector<RescaledProjectionStep> steps;
    for (std::size_t k = 0; k < schedule.spin_counts.size(); ++k) {
        const auto& [a, b] = schedule.intervals[k];
        FluctuationSystem sys = build_fluctuation_system(schedule.spin_counts[k], t.cfg);
        const double mass = spectral_mass(spectral_weights(sys, t), a, b);
        steps.push_back({schedule.spin_counts[k], a, b, mass / (b - a)});
    }
    return steps;
}

}  // namespace sop
