#pragma once

#include <functional>

#include "sop/types.hpp"

namespace sop {

// A point (q, p) of the 2N-dimensional phase space.
struct PhasePoint {
    std::vector<double> q, p;

    PhasePoint() = default;
    PhasePoint(std::vector<double> q_, std::vector<double> p_)
        : q(std::move(q_)), p(std::move(p_)) {
        if (q.size() != p.size())
            throw std::invalid_argument("PhasePoint: q and p length mismatch");
    }
    static PhasePoint single(double q, double p) { return PhasePoint({q}, {p}); }
    int modes() const { return static_cast<int>(q.size()); }
    double norm() const {
        double s = 0;
        for (double v : q) s += v * v;
        for (double v : p) s += v * v;
        return std::sqrt(s);
    }
};

// q'.p - q.p' for x = (q,p), y = (q',p').
double symplectic_form(const PhasePoint& x, const PhasePoint& y);

// Uniform sampling of one mode pair (q, p) on [-L, L) x [-L, L) with the
// origin always on the grid: node(k) = (k - n/2) * (2L/n). The measure
// convention dx = dq dp / (2 pi) lives entirely in cell_weight().
struct PhaseSpaceGrid {
    double extent = 6.0;  // L
    int points = 256;     // n per axis

    PhaseSpaceGrid() = default;
    PhaseSpaceGrid(double L, int n) : extent(L), points(n) {
        if (!(L > 0)) throw std::invalid_argument("PhaseSpaceGrid: extent must be positive");
        if (n < 2) throw std::invalid_argument("PhaseSpaceGrid: need at least 2 points");
    }

    double spacing() const { return 2.0 * extent / points; }
    double node(int k) const { return (k - points / 2) * spacing(); }
    int zero_index() const { return points / 2; }
    double cell_weight() const { return spacing() * spacing() / (2.0 * M_PI); }
    RealVector nodes() const {
        RealVector v(points);
        for (int k = 0; k < points; ++k) v[k] = node(k);
        return v;
    }
    bool operator==(const PhaseSpaceGrid& o) const {
        return extent == o.extent && points == o.points;
    }
};

// Classically allowed region of the highest retained level plus tail margin.
PhaseSpaceGrid default_grid(const BasisConfig& cfg, int points = 256);

// Complex samples f(q_i, p_j) on a PhaseSpaceGrid (one mode pair).
struct GridFunction {
    PhaseSpaceGrid grid;
    Matrix samples;                 // (iq, ip)
    bool boundary_warning = false;  // set when a transform saw non-decayed boundary data

    GridFunction() = default;
    GridFunction(const PhaseSpaceGrid& g, Matrix s) : grid(g), samples(std::move(s)) {
        if (samples.rows() != g.points || samples.cols() != g.points)
            throw DimensionError("GridFunction: sample shape does not match grid");
    }

    static GridFunction zero(const PhaseSpaceGrid& g) {
        return GridFunction(g, Matrix::Zero(g.points, g.points));
    }

    cxd integral() const { return samples.sum() * grid.cell_weight(); }
    double l2_norm() const { return std::sqrt(samples.squaredNorm() * grid.cell_weight()); }
    double max_abs() const { return samples.cwiseAbs().maxCoeff(); }
    // Largest |f| on the outermost ring of nodes.
    double boundary_max() const;
    GridFunction parity_flipped() const;  // f(-x), exact node reflection
};

using SymbolRule = std::function<cxd(double q, double p)>;

GridFunction sample_symbol(const PhaseSpaceGrid& grid, const SymbolRule& f);

}  // namespace sop
