#include "sop/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "sop/phase_space.hpp"

namespace sop {

namespace {

double pow_weight(const MultiIndex& a, const MultiIndex& exps) {
    double w = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i) w *= std::pow(double(a[i] + 1), double(exps[i]));
    return w;
}

void bump_limit(OperatorDistribution& d, int amount) {
    if (d.coeff_limit >= 0) d.coeff_limit = std::max(0, d.coeff_limit - amount);
}

// Recompute C so the certificate verifies on a sampled range.
double refit_c(const CoeffRule& rule, int modes, const MultiIndex& el, const MultiIndex& er,
               int scan) {
    double worst = 0.0;
    std::vector<MultiIndex> pts;
    if (modes == 1) {
        for (int k = 0; k <= scan; ++k) pts.push_back(MultiIndex{k});
    } else {
        std::mt19937_64 rng(12345);
        std::uniform_int_distribution<int> pick(0, scan);
        for (int k = 0; k <= scan; k += std::max(1, scan / 16)) {
            for (int i = 0; i < modes; ++i) {
                MultiIndex e(modes, 0);
                e[i] = k;
                pts.push_back(e);
            }
            pts.push_back(MultiIndex(modes, k));
        }
        for (int r = 0; r < 64; ++r) {
            MultiIndex e(modes, 0);
            for (int i = 0; i < modes; ++i) e[i] = pick(rng);
            pts.push_back(e);
        }
    }
    for (const auto& ia : pts)
        for (const auto& ib : pts) {
            const double num = std::abs(rule(ia, ib));
            worst = std::max(worst, num / (pow_weight(ia, el) * pow_weight(ib, er)));
        }
    return std::max(worst * (1.0 + 1e-12), 1e-300);
}

}  // namespace

cxd pair_with(const OperatorDistribution& phi, const TruncatedOperator& t) {
    if (phi.modes != t.cfg.modes) throw DimensionError("pair_with: mode count mismatch");
    if (phi.coeff_limit >= 0 && t.cfg.cutoff > phi.coeff_limit)
        throw std::invalid_argument(
            "pair_with: distribution has no coefficients on the operator's index range");
    cxd acc = 0.0;
    for (long i = 0; i < t.dim(); ++i) {
        MultiIndex a = t.cfg.unflatten(i);
        for (long j = 0; j < t.dim(); ++j) {
            const cxd tv = t.mat(j, i);  // <a'|T|a> with a' = unflatten(j)
            if (tv == cxd(0)) continue;
            acc += phi.rule(a, t.cfg.unflatten(j)) * tv;
        }
    }
    return acc;
}

Matrix materialize(const OperatorDistribution& phi, const BasisConfig& cfg) {
    if (phi.modes != cfg.modes) throw DimensionError("materialize: mode count mismatch");
    if (phi.coeff_limit >= 0 && cfg.cutoff > phi.coeff_limit)
        throw std::invalid_argument("materialize: requested range exceeds coefficient limit");
    Matrix m(cfg.dim(), cfg.dim());
    for (long i = 0; i < cfg.dim(); ++i)
        for (long j = 0; j < cfg.dim(); ++j) m(i, j) = phi.rule(cfg.unflatten(i), cfg.unflatten(j));
    return m;
}

OperatorDistribution dist_identity(int modes) {
    OperatorDistribution d;
    d.modes = modes;
    d.name = "identity";
    d.rule = [](const MultiIndex& a, const MultiIndex& ap) { return a == ap ? cxd(1) : cxd(0); };
    d.growth = {1.0, zero_index(modes), zero_index(modes)};
    return d;
}

OperatorDistribution dist_from_operator(const TruncatedOperator& t) {
    OperatorDistribution d;
    d.modes = t.cfg.modes;
    d.name = "operator";
    d.coeff_limit = t.cfg.cutoff;
    BasisConfig cfg = t.cfg;
    Matrix m = t.mat;
    d.rule = [cfg, m](const MultiIndex& a, const MultiIndex& ap) -> cxd {
        for (int i = 0; i < cfg.modes; ++i)
            if (a[i] > cfg.cutoff || ap[i] > cfg.cutoff)
                throw std::out_of_range("operator distribution: coefficient outside source range");
        return m(cfg.flatten(a), cfg.flatten(ap));
    };
    d.growth = fit_growth(d.rule, d.modes, cfg.cutoff);
    return d;
}

OperatorDistribution dist_from_poly(const PolyQP& poly) {
    OperatorDistribution d;
    d.modes = poly.modes;
    d.name = "polynomial";
    d.rule = [poly](const MultiIndex& a, const MultiIndex& ap) {
        return poly_matrix_element(poly, a, ap);
    };
    // Degree-based exponents; C calibrated on a sampled range.
    MultiIndex per_mode(poly.modes, 0);
    for (const auto& term : poly.terms) {
        MultiIndex cnt(poly.modes, 0);
        for (const auto& l : term.word.letters) cnt[l.mode] += 1;
        for (int i = 0; i < poly.modes; ++i) per_mode[i] = std::max(per_mode[i], cnt[i]);
    }
    d.growth.exp_left = per_mode;
    d.growth.exp_right = per_mode;
    d.growth.c = refit_c(d.rule, d.modes, per_mode, per_mode, 64);
    return d;
}

OperatorDistribution dist_scale(cxd c, const OperatorDistribution& phi) {
    OperatorDistribution d = phi;
    CoeffRule base = phi.rule;
    d.rule = [base, c](const MultiIndex& a, const MultiIndex& ap) { return c * base(a, ap); };
    d.growth.c = phi.growth.c * std::abs(c);
    if (!d.name.empty()) d.name = "scaled " + d.name;
    return d;
}

OperatorDistribution epsilon_q(const std::vector<double>& q) {
    OperatorDistribution d;
    d.modes = static_cast<int>(q.size());
    d.name = "epsilon_q";
    std::vector<double> qq = q;
    d.rule = [qq](const MultiIndex& a, const MultiIndex& ap) -> cxd {
        double v = 1.0;
        for (std::size_t i = 0; i < qq.size(); ++i)
            v *= hermite_eval(a[i], qq[i]) * hermite_eval(ap[i], qq[i]);
        return v;
    };
    // |h_n| <= h_0(0) uniformly, so the flat bound with C = 1 verifies.
    d.growth = {1.0, zero_index(d.modes), zero_index(d.modes)};
    return d;
}

namespace {

// [Q_i, .] and [P_i, .] acting on the coefficient rule; exact band shifts.
CoeffRule commutator_rule(LetterKind kind, int mode, const CoeffRule& base) {
    return [kind, mode, base](const MultiIndex& a, const MultiIndex& ap) -> cxd {
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        auto up = [&](const MultiIndex& x) {
            MultiIndex y = x;
            y[mode] += 1;
            return y;
        };
        auto down = [&](const MultiIndex& x) {
            MultiIndex y = x;
            y[mode] -= 1;
            return y;
        };
        const double na = a[mode], nap = ap[mode];
        cxd acc = 0.0;
        if (kind == LetterKind::Q) {
            acc += inv_sqrt2 * std::sqrt(na + 1.0) * base(up(a), ap);
            if (na > 0) acc += inv_sqrt2 * std::sqrt(na) * base(down(a), ap);
            acc -= inv_sqrt2 * std::sqrt(nap + 1.0) * base(a, up(ap));
            if (nap > 0) acc -= inv_sqrt2 * std::sqrt(nap) * base(a, down(ap));
        } else {
            acc += cxd(0, -1) * inv_sqrt2 * std::sqrt(na + 1.0) * base(up(a), ap);
            if (na > 0) acc += cxd(0, 1) * inv_sqrt2 * std::sqrt(na) * base(down(a), ap);
            acc -= cxd(0, 1) * inv_sqrt2 * std::sqrt(nap + 1.0) * base(a, up(ap));
            if (nap > 0) acc -= cxd(0, -1) * inv_sqrt2 * std::sqrt(nap) * base(a, down(ap));
        }
        return acc;
    };
}

}  // namespace

OperatorDistribution derivative(const OperatorDistribution& phi, const MultiIndex& gamma) {
    if (static_cast<int>(gamma.size()) != 2 * phi.modes)
        throw std::invalid_argument("derivative: gamma must have length 2N");
    MultiIndex dq(gamma.begin(), gamma.begin() + phi.modes);   // q-derivative orders
    MultiIndex dp(gamma.begin() + phi.modes, gamma.end());     // p-derivative orders
    // D^{alpha v beta} = (-i)^{|alpha|} i^{|beta|} L_P^alpha L_Q^beta on coefficients.
    CoeffRule rule = phi.rule;
    for (int i = 0; i < phi.modes; ++i)
        for (int k = 0; k < dp[i]; ++k) rule = commutator_rule(LetterKind::Q, i, rule);
    for (int i = 0; i < phi.modes; ++i)
        for (int k = 0; k < dq[i]; ++k) rule = commutator_rule(LetterKind::P, i, rule);
    cxd scalar = std::pow(cxd(0, -1), order_sum(dq)) * std::pow(cxd(0, 1), order_sum(dp));
    CoeffRule scaled = [rule, scalar](const MultiIndex& a, const MultiIndex& ap) {
        return scalar * rule(a, ap);
    };
    OperatorDistribution out;
    out.modes = phi.modes;
    out.name = "D^" + index_to_string(gamma) + " " + phi.name;
    out.rule = scaled;
    out.coeff_limit = phi.coeff_limit;
    bump_limit(out, order_sum(gamma));
    // Each commutator order adds at most one half power per affected mode.
    out.growth = phi.growth;
    for (int i = 0; i < phi.modes; ++i) {
        const int touched = dq[i] + dp[i];
        const int bump = (touched + 1) / 2;
        out.growth.exp_left[i] += bump;
        out.growth.exp_right[i] += bump;
    }
    const int scan = out.coeff_limit >= 0 ? out.coeff_limit : 64;
    out.growth.c = refit_c(out.rule, out.modes, out.growth.exp_left, out.growth.exp_right, scan);
    return out;
}

namespace {

// Indices b >= 0 with |b - base|_1 <= reach (the band of a polynomial).
std::vector<MultiIndex> band_indices(const MultiIndex& base, int reach) {
    std::vector<MultiIndex> out;
    std::vector<MultiIndex> frontier{base};
    out.push_back(base);
    for (int step = 0; step < reach; ++step) {
        std::vector<MultiIndex> next;
        for (const auto& x : frontier) {
            for (std::size_t i = 0; i < base.size(); ++i) {
                MultiIndex up = x, down = x;
                up[i] += 1;
                down[i] -= 1;
                next.push_back(up);
                if (down[i] >= 0) next.push_back(down);
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        for (const auto& x : next) out.push_back(x);
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

OperatorDistribution multiply(const PolyQP& poly, const OperatorDistribution& phi,
                              MultiplySide side) {
    if (poly.modes != phi.modes) throw DimensionError("multiply: mode count mismatch");
    const int reach = poly.degree();
    CoeffRule base = phi.rule;
    CoeffRule rule;
    if (side == MultiplySide::Left) {
        // (A Phi)(a, a') = sum_b Phi(a, b) <b|A|a'>
        rule = [poly, base, reach](const MultiIndex& a, const MultiIndex& ap) -> cxd {
            cxd acc = 0.0;
            for (const auto& b : band_indices(ap, reach)) {
                const cxd av = poly_matrix_element(poly, b, ap);
                if (av != cxd(0)) acc += base(a, b) * av;
            }
            return acc;
        };
    } else {
        // (Phi B)(a, a') = sum_b <a|B|b> Phi(b, a')
        rule = [poly, base, reach](const MultiIndex& a, const MultiIndex& ap) -> cxd {
            cxd acc = 0.0;
            for (const auto& b : band_indices(a, reach)) {
                const cxd bv = poly_matrix_element(poly, a, b);
                if (bv != cxd(0)) acc += bv * base(b, ap);
            }
            return acc;
        };
    }
    OperatorDistribution out;
    out.modes = phi.modes;
    out.name = (side == MultiplySide::Left ? "poly*" : "*poly") + phi.name;
    out.rule = rule;
    out.coeff_limit = phi.coeff_limit;
    bump_limit(out, reach);
    out.growth = phi.growth;
    MultiIndex per_mode(poly.modes, 0);
    for (const auto& term : poly.terms) {
        MultiIndex cnt(poly.modes, 0);
        for (const auto& l : term.word.letters) cnt[l.mode] += 1;
        for (int i = 0; i < poly.modes; ++i) per_mode[i] = std::max(per_mode[i], cnt[i]);
    }
    for (int i = 0; i < phi.modes; ++i) {
        out.growth.exp_left[i] += per_mode[i];
        out.growth.exp_right[i] += per_mode[i];
    }
    const int scan = out.coeff_limit >= 0 ? out.coeff_limit : 64;
    out.growth.c = refit_c(out.rule, out.modes, out.growth.exp_left, out.growth.exp_right, scan);
    return out;
}

OperatorDistribution wq_delta(const PhasePoint& a) {
    OperatorDistribution d;
    d.modes = a.modes();
    d.name = "wq_delta";
    const double scale = std::pow(2.0, a.modes());
    std::vector<cxd> lambdas(a.modes());
    for (int i = 0; i < a.modes(); ++i) lambdas[i] = cxd(2.0 * a.q[i], 2.0 * a.p[i]) / std::sqrt(2.0);
    d.rule = [lambdas, scale](const MultiIndex& m, const MultiIndex& n) -> cxd {
        // 2^N <m|W(2a) Pi|n> = 2^N (-1)^{|n|} <m|W(2a)|n>
        cxd v = scale;
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            v *= displacement_element(lambdas[i], m[i], n[i]);
            if (n[i] % 2) v = -v;
        }
        return v;
    };
    d.growth = {scale, zero_index(d.modes), zero_index(d.modes)};
    return d;
}

OperatorDistribution invweyl_delta(const PhasePoint& a) {
    OperatorDistribution d;
    d.modes = a.modes();
    d.name = "invweyl_delta";
    std::vector<cxd> lambdas(a.modes());
    for (int i = 0; i < a.modes(); ++i) lambdas[i] = cxd(-a.q[i], -a.p[i]) / std::sqrt(2.0);
    d.rule = [lambdas](const MultiIndex& m, const MultiIndex& n) -> cxd {
        cxd v = 1.0;
        for (std::size_t i = 0; i < lambdas.size(); ++i)
            v *= displacement_element(lambdas[i], m[i], n[i]);
        return v;
    };
    d.growth = {1.0, zero_index(d.modes), zero_index(d.modes)};
    return d;
}

PolyQP invweyl_delta_derivative_poly(const MultiIndex& gamma) {
    if (gamma.size() % 2) throw std::invalid_argument("gamma must have length 2N");
    const int modes = static_cast<int>(gamma.size()) / 2;
    // Letter multiset: gamma_q[i] copies of P_i, gamma_p[i] copies of Q_i.
    std::vector<int> codes;
    for (int i = 0; i < modes; ++i)
        for (int k = 0; k < gamma[i]; ++k) codes.push_back(modes + i);  // P_i
    for (int i = 0; i < modes; ++i)
        for (int k = 0; k < gamma[modes + i]; ++k) codes.push_back(i);  // Q_i
    const int len = static_cast<int>(codes.size());
    // scalar: (-1)^{|gamma|} i^{|gamma_q|} (-i)^{|gamma_p|}
    int nq = 0, np = 0;
    for (int i = 0; i < modes; ++i) {
        nq += gamma[i];
        np += gamma[modes + i];
    }
    cxd scalar = std::pow(-1.0, len) * std::pow(cxd(0, 1), nq) * std::pow(cxd(0, -1), np);
    PolyQP poly;
    poly.modes = modes;
    if (len == 0) {
        poly.terms.push_back({cxd(1), Word{}});
        return poly;
    }
    std::sort(codes.begin(), codes.end());
    // weight of each distinct ordering in the symmetrization
    double repeats = 1.0;
    int run = 1;
    for (int k = 1; k < len; ++k) {
        run = codes[k] == codes[k - 1] ? run + 1 : 1;
        repeats *= run == 1 ? 1.0 : run;
    }
    double total_perms = 1.0;
    for (int k = 2; k <= len; ++k) total_perms *= k;
    const double weight = repeats / total_perms;
    do {
        Word w;
        for (int c : codes)
            w.letters.push_back(c < modes ? Letter{LetterKind::Q, c}
                                          : Letter{LetterKind::P, c - modes});
        poly.terms.push_back({scalar * weight, w});
    } while (std::next_permutation(codes.begin(), codes.end()));
    return poly;
}

OperatorDistribution invweyl_delta_derivative(const MultiIndex& gamma) {
    OperatorDistribution d = dist_from_poly(invweyl_delta_derivative_poly(gamma));
    d.name = "invweyl_delta_derivative";
    return d;
}

OperatorDistribution wq_delta_derivative(const MultiIndex& gamma) {
    if (gamma.size() % 2) throw std::invalid_argument("gamma must have length 2N");
    const int modes = static_cast<int>(gamma.size()) / 2;
    OperatorDistribution pi;
    pi.modes = modes;
    pi.name = "parity";
    pi.rule = [](const MultiIndex& a, const MultiIndex& ap) -> cxd {
        if (a != ap) return cxd(0);
        return order_sum(a) % 2 ? cxd(-1) : cxd(1);
    };
    pi.growth = {1.0, zero_index(modes), zero_index(modes)};
    OperatorDistribution d = derivative(dist_scale(std::pow(2.0, modes), pi), gamma);
    d.name = "wq_delta_derivative";
    return d;
}

cxd dist_weyl_hat(const OperatorDistribution& phi, const GridFunction& f, const BasisConfig& cfg) {
    TruncatedOperator check = inverse_weyl(f, cfg);
    Matrix pi = parity(cfg).mat;
    return pair_with(phi, TruncatedOperator(cfg, pi * check.mat * pi));
}

cxd dist_wigner(const OperatorDistribution& phi, const GridFunction& f, const BasisConfig& cfg) {
    return pair_with(phi, weyl_quantize(f, cfg));
}

RegularityDecomposition regularity_decompose(const OperatorDistribution& phi,
                                             const BasisConfig& cfg) {
    if (phi.modes != cfg.modes) throw DimensionError("regularity_decompose: mode mismatch");
    RegularityDecomposition dec;
    dec.beta = phi.growth.exp_left;
    dec.betap = phi.growth.exp_right;
    Matrix coeffs = materialize(phi, cfg);
    Matrix a(cfg.dim(), cfg.dim());
    for (long i = 0; i < cfg.dim(); ++i) {
        MultiIndex ia = cfg.unflatten(i);
        MultiIndex lexp = dec.beta;
        for (auto& v : lexp) v += 1;
        const double wl = pow_weight(ia, lexp);
        for (long j = 0; j < cfg.dim(); ++j) {
            MultiIndex ja = cfg.unflatten(j);
            MultiIndex rexp = dec.betap;
            for (auto& v : rexp) v += 1;
            a(i, j) = coeffs(i, j) / (wl * pow_weight(ja, rexp));
        }
    }
    dec.a = TruncatedOperator(cfg, std::move(a));
    dec.hs_norm = dec.a.mat.norm();
    dec.hs_bound = phi.growth.c * std::pow(M_PI * M_PI / 6.0, cfg.modes);
    return dec;
}

cxd regularity_reconstruct(const RegularityDecomposition& dec, const TruncatedOperator& t) {
    require_same_cfg(dec.a.cfg, t.cfg, "regularity_reconstruct");
    const BasisConfig& cfg = t.cfg;
    auto hpow = [&](const MultiIndex& exps) {
        return diagonal_op(cfg, [&](const MultiIndex& idx) {
            double w = 1.0;
            for (std::size_t i = 0; i < idx.size(); ++i)
                w *= std::pow(double(idx[i] + 1), double(exps[i] + 1));
            return w;
        });
    };
    // Tr[A (H+1/2)^{beta'+1} T (H+1/2)^{beta+1}]
    return (dec.a.mat * hpow(dec.betap).mat * t.mat * hpow(dec.beta).mat).trace();
}

FiniteRankApproximation finite_rank_approx(const OperatorDistribution& phi,
                                           const std::vector<int>& cutoffs) {
    FiniteRankApproximation seq;
    int prev = -1;
    for (int n : cutoffs) {
        if (n <= prev)
            throw std::invalid_argument("finite_rank_approx: cutoffs must be strictly increasing");
        prev = n;
        CoeffRule base = phi.rule;
        const int modes = phi.modes;
        CoeffRule rule = [base, n](const MultiIndex& a, const MultiIndex& ap) -> cxd {
            for (int v : a)
                if (v > n) return cxd(0);
            for (int v : ap)
                if (v > n) return cxd(0);
            return base(a, ap);
        };
        OperatorDistribution stage;
        stage.modes = modes;
        stage.name = phi.name + " (rank cutoff " + std::to_string(n) + ")";
        stage.rule = rule;
        stage.growth = phi.growth;
        stage.coeff_limit = phi.coeff_limit;
        seq.stages.push_back(std::move(stage));
        seq.cutoffs.push_back(n);
        // ||(P_n - 1) H_tot^{-1}||: first excluded level has |alpha| = n+1.
        seq.projector_gap.push_back(1.0 / (n + 1.0 + 0.5 * modes));
    }
    return seq;
}

GrowthCertificate fit_growth(const CoeffRule& rule, int modes, int scan_cutoff,
                             int max_exponent) {
    // Candidate exponent pairs ordered by total, then lexicographically.
    std::vector<std::pair<MultiIndex, MultiIndex>> candidates;
    std::vector<MultiIndex> singles;
    MultiIndex cur(modes, 0);
    while (true) {
        singles.push_back(cur);
        int i = modes - 1;
        while (i >= 0 && cur[i] == max_exponent) cur[i--] = 0;
        if (i < 0) break;
        ++cur[i];
    }
    for (const auto& l : singles)
        for (const auto& r : singles) candidates.emplace_back(l, r);
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const auto& x, const auto& y) {
                         int tx = order_sum(x.first) + order_sum(x.second);
                         int ty = order_sum(y.first) + order_sum(y.second);
                         if (tx != ty) return tx < ty;
                         if (x.first != y.first) return x.first < y.first;
                         return x.second < y.second;
                     });

    // Sampled index set (full range for one mode, axes+diagonal otherwise).
    std::vector<MultiIndex> pts;
    if (modes == 1) {
        for (int k = 0; k <= scan_cutoff; ++k) pts.push_back(MultiIndex{k});
    } else {
        for (int k = 0; k <= scan_cutoff; k += std::max(1, scan_cutoff / 16)) {
            for (int i = 0; i < modes; ++i) {
                MultiIndex e(modes, 0);
                e[i] = k;
                pts.push_back(e);
            }
            pts.push_back(MultiIndex(modes, k));
        }
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    }
    const int inner_limit = scan_cutoff / 2;
    for (const auto& [el, er] : candidates) {
        double inner = 0.0, outer = 0.0, overall = 0.0;
        for (const auto& ia : pts)
            for (const auto& ib : pts) {
                const double num = std::abs(rule(ia, ib));
                const double ratio = num / (pow_weight(ia, el) * pow_weight(ib, er));
                overall = std::max(overall, ratio);
                const int mx = std::max(*std::max_element(ia.begin(), ia.end()),
                                        *std::max_element(ib.begin(), ib.end()));
                if (mx <= inner_limit)
                    inner = std::max(inner, ratio);
                else
                    outer = std::max(outer, ratio);
            }
        if (outer <= inner * 1.1 + 1e-30) {
            GrowthCertificate cert;
            cert.exp_left = el;
            cert.exp_right = er;
            cert.c = std::max(overall * (1.0 + 1e-12), 1e-300);
            return cert;
        }
    }
    GrowthCertificate cert;
    cert.exp_left = MultiIndex(modes, max_exponent);
    cert.exp_right = MultiIndex(modes, max_exponent);
    cert.c = 1.0;
    double overall = 0.0;
    for (const auto& ia : pts)
        for (const auto& ib : pts)
            overall = std::max(overall, std::abs(rule(ia, ib)) /
                                            (pow_weight(ia, cert.exp_left) *
                                             pow_weight(ib, cert.exp_right)));
    cert.c = std::max(overall * (1.0 + 1e-12), 1e-300);
    return cert;
}

double growth_violation(const OperatorDistribution& phi, const BasisConfig& cfg) {
    Matrix coeffs = materialize(phi, cfg);
    double worst = -std::numeric_limits<double>::infinity();
    for (long i = 0; i < cfg.dim(); ++i)
        for (long j = 0; j < cfg.dim(); ++j) {
            const double bound = phi.growth.c *
                                 pow_weight(cfg.unflatten(i), phi.growth.exp_left) *
                                 pow_weight(cfg.unflatten(j), phi.growth.exp_right);
            worst = std::max(worst, std::abs(coeffs(i, j)) - bound);
        }
    return worst;
}

}  // namespace sop
