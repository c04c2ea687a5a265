#include "sop/grid.hpp"

#include <cmath>

namespace sop {

double symplectic_form(const PhasePoint& x, const PhasePoint& y) {
    if (x.modes() != y.modes()) throw std::invalid_argument("symplectic_form: mode mismatch");
    double s = 0.0;
    for (int i = 0; i < x.modes(); ++i) s += y.q[i] * x.p[i] - x.q[i] * y.p[i];
    return s;
}

PhaseSpaceGrid default_grid(const BasisConfig& cfg, int points) {
    return PhaseSpaceGrid(std::sqrt(2.0 * cfg.cutoff + 1.0) + 4.0, points);
}

double GridFunction::boundary_max() const {
    double m = 0.0;
    const int n = grid.points;
    for (int k = 0; k < n; ++k) {
        m = std::max(m, std::abs(samples(0, k)));
        m = std::max(m, std::abs(samples(n - 1, k)));
        m = std::max(m, std::abs(samples(k, 0)));
        m = std::max(m, std::abs(samples(k, n - 1)));
    }
    return m;
}

GridFunction GridFunction::parity_flipped() const {
    // -node(k) = node(n-k); the lone endpoint -L wraps periodically onto itself.
    const int n = grid.points;
    auto refl = [n](int k) { return (n - k) % n; };
    Matrix out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = samples(refl(i), refl(j));
    GridFunction g(grid, std::move(out));
    g.boundary_warning = boundary_warning;
    return g;
}

GridFunction sample_symbol(const PhaseSpaceGrid& grid, const SymbolRule& f) {
    Matrix s(grid.points, grid.points);
    for (int i = 0; i < grid.points; ++i)
        for (int j = 0; j < grid.points; ++j) s(i, j) = f(grid.node(i), grid.node(j));
    return GridFunction(grid, std::move(s));
}

}  // namespace sop
