#include "sop/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

namespace sop {

namespace {

// Letters encoded so that a word is normal-ordered exactly when the code
// sequence is nondecreasing: Q_i -> i, P_i -> modes + i.
int letter_code(const Letter& l, int modes) {
    return l.kind == LetterKind::Q ? l.mode : modes + l.mode;
}

Letter code_letter(int code, int modes) {
    return code < modes ? Letter{LetterKind::Q, code} : Letter{LetterKind::P, code - modes};
}

}  // namespace

NormalForm reduce_word(const Word& w, int modes) {
    for (const auto& l : w.letters)
        if (l.mode < 0 || l.mode >= modes)
            throw std::invalid_argument("reduce_word: letter mode out of range");
    std::map<std::vector<int>, cxd> pending;
    std::vector<int> start;
    for (const auto& l : w.letters) start.push_back(letter_code(l, modes));
    pending[start] = cxd(1);
    NormalForm done;
    while (!pending.empty()) {
        auto it = pending.begin();
        std::vector<int> word = it->first;
        cxd coeff = it->second;
        pending.erase(it);
        std::size_t k = 0;
        while (k + 1 < word.size() && word[k] <= word[k + 1]) ++k;
        if (k + 1 >= word.size()) {
            // Normal ordered: split codes into Q and P degree vectors.
            MultiIndex alpha(modes, 0), beta(modes, 0);
            for (int code : word) {
                Letter l = code_letter(code, modes);
                (l.kind == LetterKind::Q ? alpha : beta)[l.mode] += 1;
            }
            done[{alpha, beta}] += coeff;
            continue;
        }
        // word[k] > word[k+1]: swap; P_i Q_j = Q_j P_i - i delta_ij.
        Letter a = code_letter(word[k], modes), b = code_letter(word[k + 1], modes);
        std::vector<int> swapped = word;
        std::swap(swapped[k], swapped[k + 1]);
        pending[swapped] += coeff;
        if (a.kind == LetterKind::P && b.kind == LetterKind::Q && a.mode == b.mode) {
            std::vector<int> contracted = word;
            contracted.erase(contracted.begin() + k, contracted.begin() + k + 2);
            pending[contracted] += coeff * cxd(0, -1);
        }
    }
    // Drop exact zeros produced by cancellation.
    for (auto it = done.begin(); it != done.end();)
        it = it->second == cxd(0) ? done.erase(it) : std::next(it);
    return done;
}

namespace {

using SparseVec = std::map<MultiIndex, cxd>;

void apply_letter(const Letter& l, SparseVec& v) {
    SparseVec out;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (const auto& [idx, c] : v) {
        MultiIndex up = idx, down = idx;
        up[l.mode] += 1;
        down[l.mode] -= 1;
        const double n = idx[l.mode];
        if (l.kind == LetterKind::Q) {
            out[up] += c * inv_sqrt2 * std::sqrt(n + 1.0);
            if (n > 0) out[down] += c * inv_sqrt2 * std::sqrt(n);
        } else {
            out[up] += c * cxd(0, 1) * inv_sqrt2 * std::sqrt(n + 1.0);
            if (n > 0) out[down] -= c * cxd(0, 1) * inv_sqrt2 * std::sqrt(n);
        }
    }
    v = std::move(out);
}

}  // namespace

cxd word_matrix_element(const Word& w, const MultiIndex& a, const MultiIndex& ap) {
    if (a.size() != ap.size())
        throw std::invalid_argument("word_matrix_element: index length mismatch");
    SparseVec v;
    v[ap] = cxd(1);
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) apply_letter(*it, v);
    auto hit = v.find(a);
    return hit == v.end() ? cxd(0) : hit->second;
}

cxd poly_matrix_element(const PolyQP& poly, const MultiIndex& a, const MultiIndex& ap) {
    cxd acc = 0.0;
    for (const auto& t : poly.terms) acc += t.coeff * word_matrix_element(t.word, a, ap);
    return acc;
}

TruncatedOperator poly_to_operator(const PolyQP& poly, const BasisConfig& cfg) {
    Matrix m = Matrix::Zero(cfg.dim(), cfg.dim());
    for (long i = 0; i < cfg.dim(); ++i) {
        MultiIndex a = cfg.unflatten(i);
        for (long j = 0; j < cfg.dim(); ++j) {
            // banded: entries vanish beyond the polynomial degree
            MultiIndex ap = cfg.unflatten(j);
            int dist = 0;
            for (int k = 0; k < cfg.modes; ++k) dist += std::abs(a[k] - ap[k]);
            if (dist > poly.degree()) continue;
            m(i, j) = poly_matrix_element(poly, a, ap);
        }
    }
    return TruncatedOperator(cfg, std::move(m));
}

Matrix word_product_matrix(const Word& w, const BasisConfig& cfg) {
    auto qs = position_ops(cfg);
    auto ps = momentum_ops(cfg);
    Matrix m = Matrix::Identity(cfg.dim(), cfg.dim());
    for (const auto& l : w.letters)
        m = m * (l.kind == LetterKind::Q ? qs[l.mode].mat : ps[l.mode].mat);
    return m;
}

int degree_guard(const BasisConfig& cfg) { return std::max(1, cfg.cutoff / 4); }

cxd MomentTable::lookup(const MultiIndex& alpha, const MultiIndex& beta) const {
    for (const auto& e : entries)
        if (e.alpha == alpha && e.beta == beta) return e.value;
    throw std::out_of_range("MomentTable::lookup: no such entry");
}

MomentTable moment_table(const TruncatedOperator& t, int degree) {
    if (degree < 0) throw std::invalid_argument("moment_table: degree must be >= 0");
    if (degree > degree_guard(t.cfg))
        throw GuardError("moment_table: degree exceeds the truncation guard");
    const int n = t.cfg.modes;
    MomentTable table;
    table.modes = n;
    table.degree = degree;
    // All (alpha, beta) with |alpha| + |beta| <= degree, lexicographic.
    std::vector<MultiIndex> all;
    MultiIndex cur(2 * n, 0);
    while (true) {
        if (order_sum(cur) <= degree) all.push_back(cur);
        int i = 2 * n - 1;
        while (i >= 0 && cur[i] == degree) cur[i--] = 0;
        if (i < 0) break;
        ++cur[i];
    }
    std::sort(all.begin(), all.end());
    auto qs = position_ops(t.cfg);
    auto ps = momentum_ops(t.cfg);
    for (const auto& ab : all) {
        MultiIndex alpha(ab.begin(), ab.begin() + n), beta(ab.begin() + n, ab.end());
        Matrix m = Matrix::Identity(t.dim(), t.dim());
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < alpha[i]; ++k) m = m * qs[i].mat;
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < beta[i]; ++k) m = m * ps[i].mat;
        table.entries.push_back({alpha, beta, (m * t.mat).trace()});
    }
    return table;
}

cxd word_moment(const TruncatedOperator& t, const Word& w, MomentPath path) {
    if (w.length() > degree_guard(t.cfg) * 2)
        throw GuardError("word_moment: word length exceeds the truncation guard");
    if (path == MomentPath::Direct) return (word_product_matrix(w, t.cfg) * t.mat).trace();
    NormalForm nf = reduce_word(w, t.cfg.modes);
    auto qs = position_ops(t.cfg);
    auto ps = momentum_ops(t.cfg);
    cxd acc = 0.0;
    for (const auto& [key, coeff] : nf) {
        Matrix m = Matrix::Identity(t.dim(), t.dim());
        for (int i = 0; i < t.cfg.modes; ++i)
            for (int k = 0; k < key.first[i]; ++k) m = m * qs[i].mat;
        for (int i = 0; i < t.cfg.modes; ++i)
            for (int k = 0; k < key.second[i]; ++k) m = m * ps[i].mat;
        acc += coeff * (m * t.mat).trace();
    }
    return acc;
}

namespace {

std::vector<Word> words_of_length(int len, int modes) {
    std::vector<Word> out;
    const int alphabet = 2 * modes;
    std::vector<int> digits(len, 0);
    while (true) {
        Word w;
        for (int d : digits) w.letters.push_back(code_letter(d, modes));
        out.push_back(w);
        int i = len - 1;
        while (i >= 0 && digits[i] == alphabet - 1) digits[i--] = 0;
        if (i < 0) break;
        ++digits[i];
        std::fill(digits.begin() + i + 1, digits.end(), 0);
    }
    if (len == 0) out = {Word{}};
    return out;
}

}  // namespace

AnalyticityCertificate analyticity_certificate(const TruncatedOperator& t, int max_length) {
    if (max_length < 1) throw std::invalid_argument("analyticity_certificate: need length >= 1");
    // degree-L words contaminate the top L truncation levels and the fit sees
    // the squared words, so the guard is tighter than for single moments
    if (max_length > std::max(2, t.cfg.cutoff / 10))
        throw GuardError("analyticity_certificate: word length exceeds the truncation guard");
    TruncatedOperator root = sqrt_psd(t);  // throws NotPsdError for non-PSD input
    AnalyticityCertificate cert;
    cert.min_word_square = std::numeric_limits<double>::infinity();
    std::vector<double> maxima(max_length + 1, 0.0);
    double lfac = 1.0;
    for (int len = 0; len <= max_length; ++len) {
        if (len > 0) lfac *= len;
        double mx = 0.0;
        for (const auto& w : words_of_length(len, t.cfg.modes)) {
            const double norm2 = (word_product_matrix(w, t.cfg) * root.mat).norm();
            mx = std::max(mx, norm2);
            cert.min_word_square = std::min(cert.min_word_square, norm2 * norm2);
        }
        maxima[len] = mx;
    }
    // Slope of log(max / len!) against len fixes K; C mops up the residuals.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    lfac = 1.0;
    for (int len = 0; len <= max_length; ++len) {
        if (len > 0) lfac *= len;
        if (maxima[len] <= 0.0) continue;
        const double y = std::log(maxima[len] / lfac);
        sx += len;
        sy += y;
        sxx += double(len) * len;
        sxy += double(len) * y;
        ++cnt;
    }
    const double denom = cnt * sxx - sx * sx;
    const double slope = (cnt >= 2 && denom > 0) ? (cnt * sxy - sx * sy) / denom : 0.0;
    cert.k = std::exp(slope);
    double c = 0.0;
    lfac = 1.0;
    for (int len = 0; len <= max_length; ++len) {
        if (len > 0) lfac *= len;
        c = std::max(c, maxima[len] / (std::pow(cert.k, len) * lfac));
    }
    cert.c = c;
    lfac = 1.0;
    for (int len = 0; len <= max_length; ++len) {
        if (len > 0) lfac *= len;
        const double bound = cert.c * std::pow(cert.k, len) * lfac;
        cert.rows.push_back({len, maxima[len], bound, maxima[len] - bound});
    }
    return cert;
}

PurificationResult purify(const TruncatedOperator& t) {
    TruncatedOperator root = sqrt_psd(t);
    Eigen::BDCSVD<Matrix> svd(root.mat, Eigen::ComputeThinU | Eigen::ComputeThinV);
    PurificationResult res;
    const double floor = 1e-14 * std::max(1.0, svd.singularValues()[0]);
    std::vector<long> keep;
    for (long k = 0; k < svd.singularValues().size(); ++k)
        if (svd.singularValues()[k] > floor) keep.push_back(k);
    res.schmidt.resize(keep.size());
    res.left.resize(root.dim(), keep.size());
    res.right.resize(root.dim(), keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        res.schmidt[i] = svd.singularValues()[keep[i]];
        res.left.col(i) = svd.matrixU().col(keep[i]);
        res.right.col(i) = svd.matrixV().col(keep[i]);
    }
    return res;
}

cxd purification_expectation(const TruncatedOperator& t, const TruncatedOperator& a) {
    require_same_cfg(t.cfg, a.cfg, "purification_expectation");
    TruncatedOperator root = sqrt_psd(t);
    // <Omega|(A x 1)|Omega> with Omega the coefficient matrix of sqrt(T).
    return (root.mat.adjoint() * a.mat * root.mat).trace();
}

MomentMatchReport moment_match(const TruncatedOperator& t1, const TruncatedOperator& t2,
                               int degree) {
    require_same_cfg(t1.cfg, t2.cfg, "moment_match");
    MomentTable m1 = moment_table(t1, degree);
    MomentTable m2 = moment_table(t2, degree);
    MomentMatchReport rep;
    rep.arg_alpha = zero_index(t1.cfg.modes);
    rep.arg_beta = zero_index(t1.cfg.modes);
    for (std::size_t k = 0; k < m1.entries.size(); ++k) {
        const double d = std::abs(m1.entries[k].value - m2.entries[k].value);
        if (d > rep.max_abs_diff) {
            rep.max_abs_diff = d;
            rep.arg_alpha = m1.entries[k].alpha;
            rep.arg_beta = m1.entries[k].beta;
        }
    }
    rep.hs_distance = (t1.mat - t2.mat).norm();
    return rep;
}

}  // namespace sop
