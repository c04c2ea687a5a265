#include <doctest.h>

#include <cmath>
#include <random>

#include "sop/operators.hpp"
#include "sop/phase_space.hpp"
#include "sop/random_states.hpp"

using namespace sop;

namespace {
const BasisConfig cfg16{1, 16};
const BasisConfig cfg32{1, 32};
}  // namespace

TEST_CASE("ladder matrices act as sqrt factors") {
    auto a = annihilation_ops(cfg16)[0];
    // A|0> = 0
    CHECK(a.mat.col(0).norm() == doctest::Approx(0.0));
    // (A*A)|n> = n|n>
    Matrix num = a.mat.adjoint() * a.mat;
    for (int n = 0; n <= 16; ++n) CHECK(num(n, n).real() == doctest::Approx(double(n)));
    // adjointness is entrywise conjugate transposition
    auto adag = creation_ops(cfg16)[0];
    CHECK((adag.mat - a.mat.adjoint()).norm() == doctest::Approx(0.0));
}

TEST_CASE("commutator [Q,P] = i on the reliable sub-block") {
    auto q = position_ops(cfg16)[0];
    auto p = momentum_ops(cfg16)[0];
    Matrix comm = q.mat * p.mat - p.mat * q.mat;
    auto idx = reliable_indices(cfg16, 2);
    Matrix sub = restrict_to(comm, idx);
    CHECK((sub - cxd(0, 1) * Matrix::Identity(sub.rows(), sub.cols())).cwiseAbs().maxCoeff() <
          1e-12);
}

TEST_CASE("oscillator hamiltonian eigenvalues") {
    auto hs = hamiltonian_ops(cfg16);
    CHECK(hs[0].mat(0, 0).real() == doctest::Approx(0.5));  // H|0> = 1/2 |0>
    for (int n = 0; n <= 16; ++n) CHECK(hs[0].mat(n, n).real() == doctest::Approx(n + 0.5));
    // two modes: H_tot|0,0> = N/2 |0,0>
    BasisConfig two{2, 3};
    CHECK(hamiltonian_total(two).mat(0, 0).real() == doctest::Approx(1.0));
    // diag(H^{-2}) at alpha = prod (alpha_i + 1/2)^{-2}
    auto h2 = hamiltonian_ops(two);
    Matrix hinv2 = (h2[0].mat * h2[0].mat * h2[1].mat * h2[1].mat).inverse();
    MultiIndex a{2, 1};
    const double expect = std::pow(2.5, -2.0) * std::pow(1.5, -2.0);
    CHECK(hinv2(two.flatten(a), two.flatten(a)).real() == doctest::Approx(expect));
}

TEST_CASE("H = (Q^2 + P^2)/2 away from the cutoff edge") {
    auto q = position_ops(cfg16)[0];
    auto p = momentum_ops(cfg16)[0];
    Matrix h = 0.5 * (q.mat * q.mat + p.mat * p.mat);
    Matrix diff = h - hamiltonian_ops(cfg16)[0].mat;
    auto idx = reliable_indices(cfg16, 2);
    CHECK(restrict_to(diff, idx).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("trace, schatten norm ordering, HS basis orthonormality") {
    CHECK(ground_state(cfg16).trace().real() == doctest::Approx(1.0));
    TruncatedOperator t = random_operator(cfg16, 12, 7);
    const double op = schatten_norm(t, 0);
    const double hs = schatten_norm(t, 2);
    const double tr = schatten_norm(t, 1);
    CHECK(op <= hs + 1e-12);
    CHECK(hs <= tr + 1e-12);
    // hs_inner on basis elements
    auto e01 = TruncatedOperator::basis_element(cfg16, {0}, {1});
    auto e23 = TruncatedOperator::basis_element(cfg16, {2}, {3});
    CHECK(std::abs(hs_inner(e01, e01) - 1.0) < 1e-14);
    CHECK(std::abs(hs_inner(e01, e23)) < 1e-14);
}

TEST_CASE("parity operator") {
    TruncatedOperator pi = parity(cfg16);
    CHECK(pi.mat(0, 0).real() == doctest::Approx(1.0));
    CHECK(pi.mat(1, 1).real() == doctest::Approx(-1.0));
    CHECK((pi.mat * pi.mat - Matrix::Identity(17, 17)).norm() == doctest::Approx(0.0));
    // Pi Q Pi = -Q on the reliable sub-block
    auto q = position_ops(cfg16)[0];
    Matrix conj = pi.mat * q.mat * pi.mat + q.mat;
    CHECK(conj.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("sqrt_psd and abs_op") {
    TruncatedOperator p0 = ground_state(cfg16);
    CHECK((sqrt_psd(p0).mat - p0.mat).norm() < 1e-12);  // projection is its own root
    TruncatedOperator four = scale(4.0, number_state(cfg16, {1}));
    CHECK((sqrt_psd(four).mat - 2.0 * number_state(cfg16, {1}).mat).norm() < 1e-12);
    // (sqrt T)^2 = T for a random PSD input
    TruncatedOperator t = random_state(cfg16, 10, 21);
    TruncatedOperator r = sqrt_psd(t);
    CHECK((r.mat * r.mat - t.mat).norm() < 1e-8);
    // |T| is PSD with the singular values of T
    TruncatedOperator g = random_operator(cfg16, 10, 22);
    SingularSpectrum st = singular_spectrum(g, 2);
    SingularSpectrum sa = singular_spectrum(abs_op(g), 2);
    CHECK((st.values - sa.values).cwiseAbs().maxCoeff() < 1e-9);
    // not-PSD rejection
    TruncatedOperator neg = scale(-1.0, p0);
    CHECK_THROWS_AS(sqrt_psd(neg), NotPsdError);
    CHECK_THROWS_AS(sqrt_psd(random_operator(cfg16, 5, 3)), NotPsdError);
}

TEST_CASE("singular spectrum basics") {
    SingularSpectrum s = singular_spectrum(ground_state(cfg16), 3);
    CHECK(s.values[0] == doctest::Approx(1.0));
    CHECK(s.values[1] == doctest::Approx(0.0));
    // thermal-like diag(e^{-n}): c_k = e^{-k}
    TruncatedOperator geo = diagonal_op(cfg16, [](const MultiIndex& a) {
        return std::exp(-double(a[0]));
    });
    SingularSpectrum sg = singular_spectrum(geo, 3);
    for (int k = 0; k <= 16; ++k) CHECK(sg.values[k] == doctest::Approx(std::exp(-double(k))));
    CHECK(sg.root_partial_sums.size() == 3);
    CHECK(sg.root_partial_sums[0] >= sg.values.sum());
}

TEST_CASE("seminorm_h closed forms and dual route") {
    TruncatedOperator p0 = ground_state(cfg16);
    CHECK(seminorm_h(p0, {3}, {5}) == doctest::Approx(1.0));  // sole coefficient weighted by 1
    auto e10 = TruncatedOperator::basis_element(cfg16, {1}, {0});
    CHECK(seminorm_h(e10, {1}, {0}) == doctest::Approx(2.0));  // (1+1)^2 weight, sqrt
    TruncatedOperator t = random_operator(cfg16, 10, 5);
    for (MultiIndex b : {MultiIndex{0}, MultiIndex{1}, MultiIndex{2}})
        for (MultiIndex bp : {MultiIndex{0}, MultiIndex{1}}) {
            CHECK(seminorm_h(t, b, bp) ==
                  doctest::Approx(seminorm_h_matrix(t, b, bp)).epsilon(1e-10));
        }
}

TEST_CASE("seminorm_h monotone in the orders for PSD input") {
    TruncatedOperator t = random_state(cfg16, 10, 31);
    double prev = seminorm_h(t, {0}, {0});
    for (int b = 1; b <= 3; ++b) {
        double cur = seminorm_h(t, {b}, {b});
        CHECK(cur >= prev - 1e-12);
        prev = cur;
    }
}

TEST_CASE("seminorm_qp values and guard") {
    TruncatedOperator p0 = ground_state(cfg32);
    CHECK(seminorm_qp(p0, {0}, {0}, {0}, {0}) == doctest::Approx(1.0));
    // ||Q T_0|| = 1/sqrt(2) since Q h_0 = h_1/sqrt(2)
    CHECK(seminorm_qp(p0, {1}, {0}, {0}, {0}) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(seminorm_qp(p0, {5}, {4}, {0}, {0}), GuardError);
    // operator norm below the HS norm of the same sandwich
    TruncatedOperator t = random_operator(cfg32, 8, 11);
    CHECK(seminorm_qp(t, {1}, {1}, {1}, {0}) <= seminorm_qp_hs(t, {1}, {1}, {1}, {0}) + 1e-12);
}

TEST_CASE("adjoint symmetry of the qp seminorms") {
    TruncatedOperator t = random_operator(cfg32, 8, 13);
    TruncatedOperator ts = t.adjoint();
    for (auto [a, ap, b, bp] :
         {std::array<int, 4>{1, 0, 0, 0}, std::array<int, 4>{1, 2, 0, 1}, std::array<int, 4>{0, 1, 1, 0}}) {
        const double lhs = seminorm_qp(t, {a}, {ap}, {b}, {bp});
        const double rhs = seminorm_qp(ts, {ap}, {a}, {bp}, {b});
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("cauchy-schwarz bound between one-sided seminorms") {
    TruncatedOperator t = random_operator(cfg16, 8, 17);
    for (int b = 0; b <= 2; ++b)
        for (int bp = 0; bp <= 2; ++bp) {
            const double mixed = seminorm_h(t, {b}, {bp});
            const double left = seminorm_h(t, {2 * b}, {0});
            const double right = seminorm_h(t, {0}, {2 * bp});
            CHECK(mixed <= 0.5 * (left + right) + 1e-12);
        }
}

TEST_CASE("seminorm report families") {
    TruncatedOperator t = random_state(cfg32, 6, 19);
    SeminormReport hrep = seminorm_report(t, SeminormFamily::HPower, 2);
    CHECK(hrep.entries.size() == 9);
    SeminormReport qprep = seminorm_report(t, SeminormFamily::OperatorQP, 1);
    CHECK(qprep.entries.size() == 4);
    for (const auto& e : hrep.entries) CHECK(e.value >= 0.0);
}

TEST_CASE("cfg mismatch raises") {
    CHECK_THROWS_AS(compose(ground_state(cfg16), ground_state(cfg32)), DimensionError);
    CHECK_THROWS_AS(hs_inner(ground_state(cfg16), ground_state(cfg32)), DimensionError);
}

TEST_CASE("root of a PSD operator keeps finite seminorms") {
    // numerical illustration of the square-root proposition: the root's
    // H-seminorm at order beta sits below the operator's at order 2 beta
    // for these profiles
    const BasisConfig cfg{1, 32};
    TruncatedOperator t = thermal_state(cfg, 0.4);
    TruncatedOperator root = sqrt_psd(t);
    for (int b = 0; b <= 2; ++b) {
        const double root_norm = seminorm_h(root, {b}, {b});
        const double double_order = seminorm_h(t, {2 * b}, {2 * b});
        CHECK(std::isfinite(root_norm));
        CHECK(std::isfinite(double_order));
        CHECK(root_norm * root_norm <=
              seminorm_h(TruncatedOperator::zero(cfg), {0}, {0}) + 10.0 * double_order + 1.0);
    }
}

TEST_CASE("qp seminorm dominates sampled unit-vector pairings") {
    // the bounded-extension value is the supremum of |<psi| Q^a P^b T P^b' Q^a' phi>|
    // over unit vectors; seeded samples must stay below it and close the gap
    const BasisConfig cfg{1, 32};
    TruncatedOperator t = random_operator(cfg, 6, 61);
    const MultiIndex a{1}, ap{0}, b{0}, bp{1};
    const double norm = seminorm_qp(t, a, ap, b, bp);
    auto qs = position_ops(cfg)[0].mat;
    auto ps = momentum_ops(cfg)[0].mat;
    Matrix sandwich = qs * t.mat * ps;
    auto idx = reliable_indices(cfg, 2);
    Matrix sub = restrict_to(sandwich, idx);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double best = 0.0;
    for (int rep = 0; rep < 200; ++rep) {
        ComplexVector psi(sub.rows()), phi(sub.rows());
        for (long k = 0; k < sub.rows(); ++k) {
            psi[k] = cxd(u(rng), u(rng));
            phi[k] = cxd(u(rng), u(rng));
        }
        psi.normalize();
        phi.normalize();
        const double val = std::abs((psi.adjoint() * sub * phi).value());
        CHECK(val <= norm + 1e-10);
        best = std::max(best, val);
    }
    CHECK(best > 0.1 * norm);  // sampled sup is in the right ballpark
}
