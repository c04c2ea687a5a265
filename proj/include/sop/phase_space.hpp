#pragma once

#include "sop/grid.hpp"
#include "sop/hermite.hpp"
#include "sop/kernels.hpp"
#include "sop/operators.hpp"

namespace sop {

// <m|W(x)|n> block for one mode, W(q,p) = exp(i(p Q - q P)); closed-form
// associated-Laguerre expression, O(rows*cols).
Matrix displacement_block(cxd lambda, int rows, int cols);  // lambda = (q + i p)/sqrt(2)

// Single matrix element <m|W|n> for arbitrary indices, O(min(m,n)).
cxd displacement_element(cxd lambda, long m, long n);

// W(x) on the truncated basis; Kronecker product over modes.
TruncatedOperator weyl_operator(const PhasePoint& x, const BasisConfig& cfg);

// Tr[W(x) T] at a single point (trace path, support-aware).
cxd weyl_at(const TruncatedOperator& t, const PhasePoint& x);

// 2^N Tr[W(x) Pi W(x)^* T]; evaluated through the exact operator identity
// W(x) Pi W(x)^* = W(2x) Pi.
double wigner_at(const TruncatedOperator& t, const PhasePoint& x);
cxd wigner_at_complex(const TruncatedOperator& t, const PhasePoint& x);

enum class WeylPath { Trace, Kernel };

// T^(x) = Tr[W(x) T] sampled on the grid. The trace path evaluates the
// closed form pointwise; the kernel path runs the unitary factorization
// U (1 x F*) V applied to K^T. Both agree to quadrature accuracy.
GridFunction weyl_transform(const TruncatedOperator& t, const PhaseSpaceGrid& grid,
                            WeylPath path = WeylPath::Trace);

GridFunction wigner_function(const TruncatedOperator& t, const PhaseSpaceGrid& grid);

// f^(x) = int exp(-i sigma(x,y)) f(y) dy with dy = dq dp/(2 pi); involution.
GridFunction symplectic_fourier(const GridFunction& f);

struct QuantizeOptions {
    double p_extent = 0.0;  // 0: derived from the basis cutoff
    int p_points = 512;
    int gh_margin = 8;  // extra Gauss-Hermite nodes beyond cutoff+1
};

// Weyl quantization through the mid-point kernel formula
//   K(q,q') = (2 pi)^{-1} int f((q+q')/2, p) exp(i(q-q') p) dp,
// then matrix_of_kernel on a Gauss-Hermite product rule.
TruncatedOperator weyl_quantize(const SymbolRule& f, const BasisConfig& cfg,
                                const QuantizeOptions& opt = {});
// Grid-sampled symbol: cubic-spline interpolation along q feeds the same path.
TruncatedOperator weyl_quantize(const GridFunction& f, const BasisConfig& cfg,
                                const QuantizeOptions& opt = {});

// f-check = int W(-y) f(y) dy by grid quadrature.
TruncatedOperator inverse_weyl(const GridFunction& f, const BasisConfig& cfg);

// Named Gaussian states: ground |h0><h0|, number |n><n|, thermal
// (1-lambda) lambda^n, coherent W(x)|h0><h0|W(x)^*.
TruncatedOperator ground_state(const BasisConfig& cfg);
TruncatedOperator number_state(const BasisConfig& cfg, const MultiIndex& n);
TruncatedOperator thermal_state(const BasisConfig& cfg, double lambda);
TruncatedOperator coherent_state(const BasisConfig& cfg, const PhasePoint& x);

}  // namespace sop
