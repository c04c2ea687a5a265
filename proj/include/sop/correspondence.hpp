#pragma once

#include "sop/phase_space.hpp"

namespace sop {

// Quadrature health of a convolution: the boundary-decay warning plus the
// defect of the exactly-known trace identity Tr[f*T] = (int f) Tr[T].
struct ConvDiagnostics {
    bool boundary_warning = false;
    double quadrature_residual = 0.0;
};

// f*T = int f(x) W(x) T W(x)^* dx by grid quadrature. The integrand is
// assembled from a rank factorization of T, so a PSD T and nonnegative f
// yield a PSD result by construction.
TruncatedOperator conv_fn_op(const GridFunction& f, const TruncatedOperator& t,
                             ConvDiagnostics* diag = nullptr);

// (S*T)(x) = Tr[S W(x) T_- W(x)^*] sampled on the grid.
GridFunction conv_op_op(const TruncatedOperator& s, const TruncatedOperator& t,
                        const PhaseSpaceGrid& grid);

// T * |0><0|: the Husimi function of T.
GridFunction husimi(const TruncatedOperator& t, const PhaseSpaceGrid& grid);

// f * |0><0|: coherent-state quantization of f.
TruncatedOperator coherent_quantize(const GridFunction& f, const BasisConfig& cfg);

// g_eps(x) = eps^{-2N} g(x/eps) for each eps in the schedule. Requires
// int g dx = 1 to 1e-8. Grid inputs are rescaled by exact node lookup when
// 1/eps maps nodes to nodes, else by bilinear interpolation.
std::vector<GridFunction> approximate_identity(const GridFunction& g,
                                               const std::vector<double>& eps_schedule);
std::vector<SymbolRule> approximate_identity(const SymbolRule& g, double integral_of_g,
                                             const std::vector<double>& eps_schedule);

// Default epsilon schedule (geometric refinement at desk scale).
std::vector<double> default_eps_schedule();

}  // namespace sop
