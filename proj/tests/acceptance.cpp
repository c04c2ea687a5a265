// Acceptance suite: every release-gating check with its tolerance pinned in
// code. Prints one PASS/FAIL line per criterion; exit status is the number
// of failures. argv[1] (optional) is the CLI binary for the determinism run.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sop/correspondence.hpp"
#include "sop/distributions.hpp"
#include "sop/fluctuations.hpp"
#include "sop/moments.hpp"
#include "sop/phase_space.hpp"
#include "sop/random_states.hpp"

using namespace sop;

namespace {

int g_failures = 0;

void report(int number, const std::string& what, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", number, what.c_str(),
                detail.c_str());
    if (!ok) ++g_failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Word random_word(int len, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, 1);
    Word w;
    for (int k = 0; k < len; ++k)
        w.letters.push_back(pick(rng) ? Letter{LetterKind::P, 0} : Letter{LetterKind::Q, 0});
    return w;
}

// 1. Gaussian triple: kernel, Weyl transform, Wigner function of the ground
//    state against the closed forms, relative error <= 1e-6 on |q|,|p| <= 3.
void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    const BasisConfig cfg{1, 64};
    const PhaseSpaceGrid grid(6.0, 256);
    TruncatedOperator ground = ground_state(cfg);
    double worst = 0.0;

    Matrix kernel = kernel_of(ground, grid.nodes());
    for (int i = 0; i < grid.points; ++i)
        for (int j = 0; j < grid.points; ++j) {
            const double q = grid.node(i), qp = grid.node(j);
            if (std::abs(q) > 3.0 || std::abs(qp) > 3.0) continue;
            const double expect = std::exp(-0.5 * (q * q + qp * qp)) / std::sqrt(M_PI);
            worst = std::max(worst, std::abs(kernel(i, j).real() - expect) / expect);
        }

    GridFunction weyl = weyl_transform(ground, grid);
    GridFunction wigner = wigner_function(ground, grid);
    for (int i = 0; i < grid.points; ++i)
        for (int j = 0; j < grid.points; ++j) {
            const double q = grid.node(i), p = grid.node(j);
            if (std::abs(q) > 3.0 || std::abs(p) > 3.0) continue;
            const double ew = std::exp(-(q * q + p * p) / 4.0);
            const double eg = 2.0 * std::exp(-(q * q + p * p));
            worst = std::max(worst, std::abs(weyl.samples(i, j) - ew) / ew);
            worst = std::max(worst, std::abs(wigner.samples(i, j) - eg) / eg);
        }
    const double elapsed = seconds_since(t0);
    char detail[128];
    std::snprintf(detail, sizeof(detail), "max rel err %.2e, %.1f s", worst, elapsed);
    report(1, "Gaussian triple: kernel, Weyl transform, Wigner", worst <= 1e-6 && elapsed <= 10.0,
           detail);
}

// 2. Weyl-transform unitarity and two-path agreement for 20 random operators
//    supported on indices <= 16.
void criterion_2() {
    const BasisConfig cfg{1, 64};
    const PhaseSpaceGrid grid(14.0, 384);
    double worst_unitarity = 0.0, worst_paths = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        TruncatedOperator t = random_operator(cfg, 16, seed);
        GridFunction trace_path = weyl_transform(t, grid, WeylPath::Trace);
        GridFunction kernel_path = weyl_transform(t, grid, WeylPath::Kernel);
        const double hs = t.mat.norm();
        worst_unitarity = std::max(worst_unitarity, std::abs(trace_path.l2_norm() - hs) / hs);
        worst_paths = std::max(
            worst_paths, (trace_path.samples - kernel_path.samples).cwiseAbs().maxCoeff());
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "unitarity %.2e (tol 1e-5), paths %.2e (tol 1e-6)",
                  worst_unitarity, worst_paths);
    report(2, "Weyl-transform unitarity, trace vs kernel path",
           worst_unitarity <= 1e-5 && worst_paths <= 1e-6, detail);
}

// 3. Fourier-convolution identities for a Gaussian symbol and 10 random
//    low-index operator pairs.
void criterion_3() {
    const BasisConfig cfg{1, 32};
    const PhaseSpaceGrid grid(12.0, 160);
    GridFunction f = sample_symbol(grid, [](double q, double p) {
        return std::exp(-(q * q + p * p) / 2.0);
    });
    GridFunction fhat = symplectic_fourier(f);
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        TruncatedOperator s = random_operator(cfg, 6, 100 + seed);
        TruncatedOperator t = random_operator(cfg, 6, 200 + seed);
        GridFunction shat = weyl_transform(s, grid);
        GridFunction that = weyl_transform(t, grid);
        // widehat(f*T) = f-hat T-hat
        GridFunction conv1 = weyl_transform(conv_fn_op(f, t), grid);
        double scale = 0.0, err = 0.0;
        for (int i = 0; i < grid.points; ++i)
            for (int j = 0; j < grid.points; ++j) {
                const cxd rhs = fhat.samples(i, j) * that.samples(i, j);
                err = std::max(err, std::abs(conv1.samples(i, j) - rhs));
                scale = std::max(scale, std::abs(rhs));
            }
        worst = std::max(worst, err / (1.0 + scale));
        // widehat(S*T) = S-hat T-hat
        GridFunction conv2 = symplectic_fourier(conv_op_op(s, t, grid));
        err = 0.0;
        scale = 0.0;
        for (int i = 0; i < grid.points; ++i)
            for (int j = 0; j < grid.points; ++j) {
                const cxd rhs = shat.samples(i, j) * that.samples(i, j);
                err = std::max(err, std::abs(conv2.samples(i, j) - rhs));
                scale = std::max(scale, std::abs(rhs));
            }
        worst = std::max(worst, err / (1.0 + scale));
    }
    char detail[64];
    std::snprintf(detail, sizeof(detail), "max err %.2e (tol 1e-5)", worst);
    report(3, "Fourier-convolution identities", worst <= 1e-5, detail);
}

// 4. Wigner-kernel quantization: the ground-state Wigner profile quantizes to
//    the rank-one projector; duality holds on 10 symbol/operator pairs.
void criterion_4() {
    const BasisConfig cfg{1, 64};
    TruncatedOperator wq_gauss = weyl_quantize(
        [](double q, double p) { return 2.0 * std::exp(-(q * q + p * p)); }, cfg);
    const double hs_err = (wq_gauss.mat - ground_state(cfg).mat).norm();

    const PhaseSpaceGrid grid(13.0, 384);
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const double q0 = 0.1 * double(seed) - 0.5, p0 = 0.07 * double(seed);
        const double width = 2.0 + 0.1 * double(seed);
        auto f = [=](double q, double p) {
            return std::exp(-((q - q0) * (q - q0) + (p - p0) * (p - p0)) / width);
        };
        TruncatedOperator t = random_operator(cfg, 10, 300 + seed);
        const cxd lhs = (weyl_quantize(SymbolRule(f), cfg).mat * t.mat).trace();
        GridFunction w = wigner_function(t, grid);
        cxd rhs = 0.0;
        for (int i = 0; i < grid.points; ++i)
            for (int j = 0; j < grid.points; ++j)
                rhs += f(grid.node(i), grid.node(j)) * w.samples(i, j);
        rhs *= grid.cell_weight();
        worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail), "HS err %.2e, duality %.2e (tol 1e-6)", hs_err, worst);
    report(4, "Wigner-kernel quantization and duality", hs_err <= 1e-6 && worst <= 1e-6, detail);
}

// 5. Delta quantization pairings: wq(delta_a) against the Wigner value at a,
//    and the inverse-Weyl delta-derivative identities.
void criterion_5() {
    const BasisConfig cfg{1, 48};
    std::vector<TruncatedOperator> ops;
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
        ops.push_back(random_operator(cfg, 10, 400 + seed));
    double worst = 0.0;
    for (auto a : {PhasePoint::single(0, 0), PhasePoint::single(1.0, 0.5)}) {
        OperatorDistribution wq = wq_delta(a);
        for (const auto& t : ops)
            worst = std::max(worst, std::abs(pair_with(wq, t) - wigner_at_complex(t, a)));
    }
    OperatorDistribution d10 = invweyl_delta_derivative({1, 0});
    OperatorDistribution mip = dist_from_poly(PolyQP::from_word(Word::p(), 1, cxd(0, -1)));
    OperatorDistribution d11 = invweyl_delta_derivative({1, 1});
    PolyQP half_plus_pq = PolyQP::identity(1);
    half_plus_pq.terms[0].coeff = cxd(0, 0.5);
    half_plus_pq = half_plus_pq.plus(PolyQP::from_word(Word::p().concat(Word::q())));
    OperatorDistribution ref11 = dist_from_poly(half_plus_pq);
    for (const auto& t : ops) {
        worst = std::max(worst, std::abs(pair_with(d10, t) - pair_with(mip, t)));
        worst = std::max(worst, std::abs(pair_with(d11, t) - pair_with(ref11, t)));
    }
    char detail[64];
    std::snprintf(detail, sizeof(detail), "max err %.2e (tol 1e-6)", worst);
    report(5, "delta quantization and delta-derivative pairings", worst <= 1e-6, detail);
}

// 6. Derivative table as coefficient matrices, exact away from the edge.
void criterion_6() {
    const BasisConfig probe{1, 24};
    OperatorDistribution q = dist_from_poly(PolyQP::from_word(Word::q()));
    OperatorDistribution p = dist_from_poly(PolyQP::from_word(Word::p()));
    OperatorDistribution qp = dist_from_poly(PolyQP::from_word(Word::q().concat(Word::p())));
    const Matrix eye = Matrix::Identity(probe.dim(), probe.dim());
    double worst = 0.0;
    worst = std::max(worst, (materialize(derivative(q, {1, 0}), probe) + eye).cwiseAbs().maxCoeff());
    worst = std::max(worst, materialize(derivative(q, {0, 1}), probe).cwiseAbs().maxCoeff());
    worst = std::max(worst, (materialize(derivative(qp, {1, 0}), probe) + materialize(p, probe))
                                .cwiseAbs()
                                .maxCoeff());
    char detail[64];
    std::snprintf(detail, sizeof(detail), "max err %.2e (tol 1e-12)", worst);
    report(6, "distributional derivative table", worst <= 1e-12, detail);
}

// 7. Word moments: squared-norm identity, dual-path agreement, purification.
void criterion_7() {
    const BasisConfig cfg{1, 64};
    double worst_sq = 0.0;
    for (const auto& t : {ground_state(cfg), thermal_state(cfg, 0.5)}) {
        TruncatedOperator root = sqrt_psd(t);
        for (int len = 1; len <= 4; ++len) {
            const int count = 1 << len;
            for (int code = 0; code < count; ++code) {
                Word a;
                for (int bit = 0; bit < len; ++bit)
                    a.letters.push_back((code >> bit) & 1 ? Letter{LetterKind::P, 0}
                                                          : Letter{LetterKind::Q, 0});
                const double lhs = (word_product_matrix(a, cfg) * root.mat).norm();
                const cxd rhs = word_moment(t, a.reversed().concat(a), MomentPath::Direct);
                worst_sq = std::max(worst_sq, std::abs(lhs * lhs - rhs) /
                                                  std::max(1.0, std::abs(rhs)));
            }
        }
    }
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<int> len(1, 6);
    double worst_dual = 0.0;
    TruncatedOperator thermal = thermal_state(cfg, 0.5);
    for (int rep = 0; rep < 100; ++rep) {
        Word w = random_word(len(rng), rng);
        const cxd direct = word_moment(thermal, w, MomentPath::Direct);
        const cxd reduced = word_moment(thermal, w, MomentPath::Reduced);
        worst_dual =
            std::max(worst_dual, std::abs(direct - reduced) / std::max(1.0, std::abs(direct)));
    }
    double worst_pure = 0.0;
    TruncatedOperator state = random_state(cfg, 10, 55);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        TruncatedOperator a = random_operator(cfg, 12, 500 + seed);
        const cxd lhs = (state.mat * a.mat).trace();
        const cxd rhs = purification_expectation(state, a);
        worst_pure = std::max(worst_pure, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "norms %.2e, dual %.2e, purification %.2e (tol 1e-8)",
                  worst_sq, worst_dual, worst_pure);
    report(7, "moments, CCR dual path, purification",
           worst_sq <= 1e-8 && worst_dual <= 1e-8 && worst_pure <= 1e-8, detail);
}

// 8. Regularity decomposition reconstructs the pairing for the identity, the
//    spectral density, and the oscillator hamiltonian distributions.
void criterion_8() {
    const BasisConfig probe{1, 32};
    PolyQP h = PolyQP::from_word(Word::q().concat(Word::q()), 1, 0.5)
                   .plus(PolyQP::from_word(Word::p().concat(Word::p()), 1, 0.5));
    std::vector<OperatorDistribution> dists{dist_identity(1), epsilon_q({0.0}),
                                            dist_from_poly(h)};
    double worst = 0.0;
    for (const auto& phi : dists) {
        RegularityDecomposition dec = regularity_decompose(phi, probe);
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            TruncatedOperator t = random_operator(probe, 8, 600 + seed);
            const cxd lhs = regularity_reconstruct(dec, t);
            const cxd rhs = pair_with(phi, t);
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
        }
    }
    char detail[64];
    std::snprintf(detail, sizeof(detail), "max err %.2e (tol 1e-8)", worst);
    report(8, "regularity decomposition reconstruction", worst <= 1e-8, detail);
}

// 9. Spectral density through Cor.-1 quadrature and rescaled projections.
void criterion_9() {
    const BasisConfig cfg{1, 128};
    TruncatedOperator ground = ground_state(cfg);
    const double mass = kernel_diag_integral(ground, -1.0, 1.0);
    const double erf_err = std::abs(mass - std::erf(1.0));
    auto steps = rescaled_projection_sequence(ground, default_projection_schedule(0.0, 4));
    const double density_gap = std::abs(steps.back().value - 1.0 / std::sqrt(M_PI));
    char detail[96];
    std::snprintf(detail, sizeof(detail), "erf gap %.2e (tol 1e-6), density gap %.3f (tol 0.05)",
                  erf_err, density_gap);
    report(9, "spectral density: interval mass and rescaled projections",
           erf_err <= 1e-6 && steps.back().spins == 128 && density_gap <= 0.05, detail);
}

// 10. Fluctuation convergence for f = Q^2 and for interval masses.
void criterion_10() {
    const auto t0 = std::chrono::steady_clock::now();
    const BasisConfig cfg{1, 80};
    TruncatedOperator ground = ground_state(cfg);
    PolyQP q2 = PolyQP::from_word(Word::q().concat(Word::q()));
    auto mrows = moment_convergence(q2, ground, {8, 16, 32, 64});
    bool monotone = true;
    double prev = 1e300;
    for (const auto& r : mrows) {
        if (r.abs_gap > prev + 1e-12) monotone = false;
        prev = r.abs_gap;
    }
    const double final_gap = std::abs(mrows.back().value - 0.5);
    auto srows = spectral_convergence(ground, {8, 16, 32, 64}, -1.0, 1.0);
    bool smonotone = true;
    prev = 1e300;
    for (const auto& r : srows) {
        if (r.abs_gap > prev + 1e-12) smonotone = false;
        prev = r.abs_gap;
    }
    const double elapsed = seconds_since(t0);
    char detail[128];
    std::snprintf(detail, sizeof(detail), "Q^2 gap %.2e (tol 1e-3), monotone %d/%d, %.1f s",
                  final_gap, monotone, smonotone, elapsed);
    report(10, "fluctuation moment and spectral-weight convergence",
           monotone && smonotone && final_gap <= 1e-3 && elapsed <= 30.0, detail);
}

// 11. Approximate identity: traces, growing HS norm, rank-one first stage.
void criterion_11() {
    const BasisConfig fine{1, 128};
    auto rules = approximate_identity(
        [](double q, double p) { return 2.0 * std::exp(-(q * q + p * p)); }, 1.0,
        {1.0, 0.5, 0.25});
    double worst_trace = 0.0, prev_hs = 0.0;
    bool hs_growing = true;
    double second_singular = 1e300;
    for (std::size_t k = 0; k < rules.size(); ++k) {
        TruncatedOperator t = weyl_quantize(rules[k], fine);
        worst_trace = std::max(worst_trace, std::abs(t.trace().real() - 1.0));
        const double hs = t.mat.norm();
        if (hs <= prev_hs) hs_growing = false;
        prev_hs = hs;
        if (k == 0) second_singular = singular_spectrum(t, 1).values[1];
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail),
                  "trace err %.2e (tol 1e-6), rank-one rest %.2e (tol 1e-8)", worst_trace,
                  second_singular);
    report(11, "approximate identity quantization", worst_trace <= 1e-6 && hs_growing &&
                                                        second_singular <= 1e-8,
           detail);
}

// 12. Determinism: identical CLI configs produce byte-identical artifacts.
void criterion_12(const char* cli) {
    if (!cli) {
        report(12, "CLI determinism", false, "no CLI path given");
        return;
    }
    const std::string base = "/tmp/sop_acceptance";
    std::string cmd1 = std::string(cli) +
                       " fluct-spectral --cutoff 80 --M 8,16 --interval=-1,1 --out " + base +
                       "_a.csv > /dev/null";
    std::string cmd2 = std::string(cli) +
                       " fluct-spectral --cutoff 80 --M 8,16 --interval=-1,1 --out " + base +
                       "_b.csv > /dev/null";
    std::string cmd3 = std::string(cli) + " wigner --cutoff 16 --grid 64 --L 5 --out " + base +
                       "_c.csv > /dev/null";
    std::string cmd4 = std::string(cli) + " wigner --cutoff 16 --grid 64 --L 5 --out " + base +
                       "_d.csv > /dev/null";
    bool ok = std::system(cmd1.c_str()) == 0 && std::system(cmd2.c_str()) == 0 &&
              std::system(cmd3.c_str()) == 0 && std::system(cmd4.c_str()) == 0;
    if (ok) {
        const std::string a = read_file(base + "_a.csv"), b = read_file(base + "_b.csv");
        const std::string c = read_file(base + "_c.csv"), d = read_file(base + "_d.csv");
        ok = !a.empty() && a == b && !c.empty() && c == d;
    }
    report(12, "CLI determinism (byte-identical artifacts)", ok, ok ? "2 configs x 2 runs" : "mismatch");
}

}  // namespace

int main(int argc, char** argv) {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12(argc > 1 ? argv[1] : nullptr);
    if (g_failures) std::printf("%d criterion(s) failed\n", g_failures);
    else std::printf("all criteria passed\n");
    return g_failures;
}
