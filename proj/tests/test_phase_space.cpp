#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sop/phase_space.hpp"
#include "sop/random_states.hpp"

using namespace sop;

namespace {
const BasisConfig cfg32{1, 32};
const BasisConfig cfg64{1, 64};
}  // namespace

TEST_CASE("weyl operator closed form against the generator exponential") {
    // the exponential of the truncated generator is an independent oracle;
    // agreement holds away from the cutoff edge
    for (auto [q, p] : {std::pair{0.7, -0.4}, std::pair{1.5, 0.9}, std::pair{-2.0, 0.3}}) {
        PhasePoint x = PhasePoint::single(q, p);
        Matrix closed = weyl_operator(x, cfg32).mat;
        Matrix viaexp = oracle::weyl_expm(x, cfg32);
        CHECK((closed - viaexp).topLeftCorner(16, 16).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("weyl operator basics") {
    CHECK((weyl_operator(PhasePoint::single(0, 0), cfg32).mat - Matrix::Identity(33, 33)).norm() ==
          doctest::Approx(0.0));
    // <0|W(q,p)|0> = e^{-(q^2+p^2)/4}
    for (auto [q, p] : {std::pair{0.5, 0.5}, std::pair{1.0, -2.0}}) {
        const cxd got = weyl_operator(PhasePoint::single(q, p), cfg32).mat(0, 0);
        CHECK(std::abs(got - std::exp(-(q * q + p * p) / 4.0)) < 1e-13);
    }
}

TEST_CASE("weyl relation W(x)W(y) = e^{i sigma(x,y)/2} W(x+y)") {
    for (auto [x, y] : {std::pair{PhasePoint::single(0.8, -0.3), PhasePoint::single(-0.4, 1.1)},
                        std::pair{PhasePoint::single(2.0, 1.0), PhasePoint::single(1.0, -2.5)}}) {
        Matrix lhs = weyl_operator(x, cfg64).mat * weyl_operator(y, cfg64).mat;
        PhasePoint sum = PhasePoint::single(x.q[0] + y.q[0], x.p[0] + y.p[0]);
        Matrix rhs = std::exp(cxd(0, 0.5 * symplectic_form(x, y))) * weyl_operator(sum, cfg64).mat;
        // displacements by |x|+|y| <= 6 spread level n to roughly n + 18 + 2 sqrt(18 n),
        // so only a block well below the cutoff is meaningful
        auto idx = reliable_indices(cfg64, 48);
        CHECK(restrict_to(lhs - rhs, idx).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("weyl transform of the ground state is the quarter Gaussian") {
    TruncatedOperator p0 = ground_state(cfg64);
    PhaseSpaceGrid grid(6.0, 128);
    GridFunction wt = weyl_transform(p0, grid);
    for (int i = 0; i < grid.points; i += 7)
        for (int j = 0; j < grid.points; j += 7) {
            const double q = grid.node(i), p = grid.node(j);
            CHECK(std::abs(wt.samples(i, j) - std::exp(-(q * q + p * p) / 4.0)) < 1e-12);
        }
    CHECK(weyl_transform(TruncatedOperator::zero(cfg64), grid).max_abs() == doctest::Approx(0.0));
}

TEST_CASE("trace path and kernel path agree and are unitary") {
    PhaseSpaceGrid grid(14.0, 384);
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        TruncatedOperator t = random_operator(cfg64, 12, seed);
        GridFunction trace_path = weyl_transform(t, grid, WeylPath::Trace);
        GridFunction kernel_path = weyl_transform(t, grid, WeylPath::Kernel);
        const double scale = trace_path.max_abs();
        CHECK((trace_path.samples - kernel_path.samples).cwiseAbs().maxCoeff() / scale < 1e-6);
        CHECK(std::abs(trace_path.l2_norm() - t.mat.norm()) / t.mat.norm() < 1e-6);
    }
}

TEST_CASE("parity commutes with the transform") {
    PhaseSpaceGrid grid(12.0, 256);
    TruncatedOperator t = random_operator(cfg32, 8, 17);
    Matrix pi = parity(cfg32).mat;
    GridFunction lhs = weyl_transform(TruncatedOperator(cfg32, pi * t.mat * pi), grid);
    GridFunction rhs = weyl_transform(t, grid).parity_flipped();
    // interior nodes mirror exactly; the lone -L endpoint wraps periodically
    double worst = 0.0;
    for (int i = 1; i < grid.points; ++i)
        for (int j = 1; j < grid.points; ++j)
            worst = std::max(worst, std::abs(lhs.samples(i, j) - rhs.samples(i, j)));
    CHECK(worst < 1e-8 * (1 + rhs.max_abs()));
}

TEST_CASE("symplectic fourier: Gaussian closed form and involution") {
    PhaseSpaceGrid grid(10.0, 256);
    GridFunction f = sample_symbol(grid, [](double q, double p) {
        return std::exp(-(q * q + p * p) / 4.0);
    });
    GridFunction hat = symplectic_fourier(f);
    for (int i = 0; i < grid.points; i += 11)
        for (int j = 0; j < grid.points; j += 11) {
            const double q = grid.node(i), p = grid.node(j);
            CHECK(std::abs(hat.samples(i, j) - 2.0 * std::exp(-(q * q + p * p))) < 1e-9);
        }
    CHECK(symplectic_fourier(GridFunction::zero(grid)).max_abs() == doctest::Approx(0.0));
    // involution on a displaced, anisotropic profile
    GridFunction g = sample_symbol(grid, [](double q, double p) {
        return std::exp(-(q - 0.7) * (q - 0.7) / 2.0 - (p + 0.4) * (p + 0.4) / 3.0) *
               cxd(1.0, 0.3 * q);
    });
    GridFunction twice = symplectic_fourier(symplectic_fourier(g));
    CHECK((twice.samples - g.samples).cwiseAbs().maxCoeff() < 1e-6 * (1 + g.max_abs()));
}

TEST_CASE("boundary decay warning flag") {
    PhaseSpaceGrid grid(3.0, 64);  // too small for this profile
    GridFunction f = sample_symbol(grid, [](double q, double p) {
        return std::exp(-(q * q + p * p) / 8.0);
    });
    CHECK(symplectic_fourier(f).boundary_warning);
}

TEST_CASE("wigner of the ground state, trace normalization") {
    TruncatedOperator p0 = ground_state(cfg64);
    PhaseSpaceGrid grid(6.0, 128);
    GridFunction w = wigner_function(p0, grid);
    for (int i = 0; i < grid.points; i += 5)
        for (int j = 0; j < grid.points; j += 5) {
            const double q = grid.node(i), p = grid.node(j);
            CHECK(std::abs(w.samples(i, j) - 2.0 * std::exp(-(q * q + p * p))) < 1e-12);
        }
    CHECK(w.integral().real() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(wigner_at(p0, PhasePoint::single(0, 0)) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("wigner moments: trace and purity") {
    PhaseSpaceGrid grid(13.0, 384);
    TruncatedOperator t = random_state(cfg64, 10, 23);
    GridFunction w = wigner_function(t, grid);
    CHECK(w.integral().real() == doctest::Approx(t.trace().real()).epsilon(1e-6));
    CHECK(w.l2_norm() == doctest::Approx(t.mat.norm()).epsilon(1e-6));
}

TEST_CASE("rank-one wigner against the displayed integral") {
    // |psi><phi| for Hermite-coefficient vectors, against direct quadrature
    ComplexVector psi = ComplexVector::Zero(cfg32.dim());
    ComplexVector phi = ComplexVector::Zero(cfg32.dim());
    psi[0] = cxd(0.6, 0.1);
    psi[3] = cxd(-0.4, 0.2);
    psi[5] = 0.7;
    phi[1] = 0.8;
    phi[2] = cxd(0.0, -0.6);
    TruncatedOperator t(cfg32, psi * phi.adjoint());
    for (auto [q, p] : {std::pair{0.0, 0.0}, std::pair{0.8, -0.6}, std::pair{-1.2, 0.4}}) {
        const cxd expect = oracle::wigner_rank_one_quad(psi, phi, q, p);
        const cxd got = wigner_at_complex(t, PhasePoint::single(q, p));
        CHECK(std::abs(got - expect) < 1e-6);
    }
}

TEST_CASE("weyl quantization of the ground-state wigner profile is rank one") {
    TruncatedOperator t = weyl_quantize(
        [](double q, double p) { return 2.0 * std::exp(-(q * q + p * p)); }, cfg64);
    TruncatedOperator p0 = ground_state(cfg64);
    CHECK((t.mat - p0.mat).norm() < 1e-8);
    // zero symbol
    PhaseSpaceGrid grid = default_grid(cfg32, 128);
    CHECK(weyl_quantize(GridFunction::zero(grid), cfg32).mat.norm() == doctest::Approx(0.0));
}

TEST_CASE("quantization round trip wq(W_T) = T for low-index operators") {
    PhaseSpaceGrid grid(14.0, 1024);  // the grid path interpolates in q; error ~ h^4
    for (std::uint64_t seed : {5ull, 6ull}) {
        TruncatedOperator t = random_operator(cfg64, 8, seed);
        GridFunction w = wigner_function(t, grid);
        TruncatedOperator back = weyl_quantize(w, cfg64);
        CHECK((back.mat - t.mat).topLeftCorner(9, 9).cwiseAbs().maxCoeff() < 1e-6);
        CHECK((back.mat - t.mat).norm() / t.mat.norm() < 1e-5);
    }
}

TEST_CASE("hermitian symbol gives hermitian quantization") {
    TruncatedOperator t = weyl_quantize(
        [](double q, double p) {
            return std::exp(-(q * q + p * p) / 3.0) * (1.0 + 0.2 * q - 0.1 * p * p);
        },
        cfg32);
    CHECK((t.mat - t.mat.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("duality tr[wq(f) T] = int f W_T dx") {
    PhaseSpaceGrid grid(13.0, 384);
    for (std::uint64_t seed : {11ull, 12ull}) {
        TruncatedOperator t = random_operator(cfg64, 10, seed);
        auto f = [](double q, double p) {
            return std::exp(-((q - 0.5) * (q - 0.5) + (p + 0.3) * (p + 0.3)) / 2.0);
        };
        TruncatedOperator wq = weyl_quantize(f, cfg64);
        const cxd lhs = (wq.mat * t.mat).trace();
        GridFunction w = wigner_function(t, grid);
        cxd rhs = 0.0;
        for (int i = 0; i < grid.points; ++i)
            for (int j = 0; j < grid.points; ++j)
                rhs += f(grid.node(i), grid.node(j)) * w.samples(i, j);
        rhs *= grid.cell_weight();
        CHECK(std::abs(lhs - rhs) < 1e-6 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("inverse weyl recovers the operator from its transform") {
    PhaseSpaceGrid grid(12.0, 192);
    TruncatedOperator p0 = ground_state(cfg32);
    GridFunction wt = weyl_transform(p0, grid);
    TruncatedOperator back = inverse_weyl(wt, cfg32);
    CHECK((back.mat - p0.mat).norm() < 1e-6);
    // linearity
    TruncatedOperator s = random_operator(cfg32, 6, 31);
    TruncatedOperator t = random_operator(cfg32, 6, 32);
    GridFunction ws = weyl_transform(s, grid);
    GridFunction wtt = weyl_transform(t, grid);
    GridFunction sum(grid, ws.samples + wtt.samples);
    Matrix lhs = inverse_weyl(sum, cfg32).mat;
    Matrix rhs = inverse_weyl(ws, cfg32).mat + inverse_weyl(wtt, cfg32).mat;
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("inverse weyl is quantization after the symplectic transform") {
    // with this kernel orientation the parity twist of the defining chain is
    // already absorbed: f-check = wq(f-hat)
    PhaseSpaceGrid grid(12.0, 256);
    GridFunction f = sample_symbol(grid, [](double q, double p) {
        return std::exp(-(q * q + p * p) / 2.0) * cxd(1.0, 0.4 * p);
    });
    TruncatedOperator lhs = inverse_weyl(f, cfg32);
    TruncatedOperator rhs = weyl_quantize(symplectic_fourier(f), cfg32);
    CHECK((lhs.mat - rhs.mat).topLeftCorner(20, 20).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("named states") {
    TruncatedOperator th = thermal_state(cfg32, 0.5);
    CHECK(th.trace().real() == doctest::Approx(1.0).epsilon(1e-9));
    TruncatedOperator coh = coherent_state(cfg32, PhasePoint::single(0.8, -0.2));
    CHECK(coh.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(coh.is_hermitian());
    CHECK_THROWS_AS(thermal_state(cfg32, 1.0), std::invalid_argument);
}

TEST_CASE("inverse weyl of a non-decaying symbol: only the pairing is asserted") {
    // the constant symbol has no grid decay; its truncated quantization only
    // makes sense through duality against test operators
    PhaseSpaceGrid grid(10.0, 128);
    GridFunction ones(grid, Matrix::Ones(grid.points, grid.points));
    TruncatedOperator check = inverse_weyl(ones, cfg32);
    TruncatedOperator t = random_operator(cfg32, 6, 77);
    const cxd lhs = (check.mat * t.mat).trace();
    cxd rhs = 0.0;  // sum of T-hat(-y) over the grid
    for (int i = 0; i < grid.points; ++i)
        for (int j = 0; j < grid.points; ++j)
            rhs += weyl_at(t, PhasePoint::single(-grid.node(i), -grid.node(j)));
    rhs *= grid.cell_weight();
    CHECK(std::abs(lhs - rhs) < 1e-8 * (1 + std::abs(rhs)));
}
