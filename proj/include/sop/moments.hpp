#pragma once

#include <map>

#include "sop/operators.hpp"

namespace sop {

enum class LetterKind { Q, P };

struct Letter {
    LetterKind kind = LetterKind::Q;
    int mode = 0;
    bool operator==(const Letter& o) const { return kind == o.kind && mode == o.mode; }
};

// A product R_{a_1} ... R_{a_len} of canonical operators, R = (Q_1..Q_N, P_1..P_N).
struct Word {
    std::vector<Letter> letters;

    int length() const { return static_cast<int>(letters.size()); }
    // Conjugate word: (R^A)^* = R^{A-bar} with the letter order reversed.
    Word reversed() const {
        Word w = *this;
        std::reverse(w.letters.begin(), w.letters.end());
        return w;
    }
    Word concat(const Word& o) const {
        Word w = *this;
        w.letters.insert(w.letters.end(), o.letters.begin(), o.letters.end());
        return w;
    }
    static Word q(int mode = 0) { return Word{{Letter{LetterKind::Q, mode}}}; }
    static Word p(int mode = 0) { return Word{{Letter{LetterKind::P, mode}}}; }
};

struct PolyTerm {
    cxd coeff;
    Word word;
};

// Polynomial in the canonical operators, kept as a list of weighted words.
struct PolyQP {
    int modes = 1;
    std::vector<PolyTerm> terms;

    static PolyQP identity(int modes = 1) { return PolyQP{modes, {{cxd(1), Word{}}}}; }
    static PolyQP from_word(const Word& w, int modes = 1, cxd coeff = cxd(1)) {
        return PolyQP{modes, {{coeff, w}}};
    }
    PolyQP plus(const PolyQP& o) const {
        PolyQP r = *this;
        r.terms.insert(r.terms.end(), o.terms.begin(), o.terms.end());
        return r;
    }
    int degree() const {
        int d = 0;
        for (const auto& t : terms) d = std::max(d, t.word.length());
        return d;
    }
};

// Monomial key of a normal-ordered term  Q^alpha P^beta.
using NormalForm = std::map<std::pair<MultiIndex, MultiIndex>, cxd>;

// Deterministic normal ordering using [Q_i, P_j] = i delta_ij: all Q to the
// left of all P, modes ascending within each group.
NormalForm reduce_word(const Word& w, int modes);

// Exact matrix element <a| R^w |a'> of the untruncated ladder action.
cxd word_matrix_element(const Word& w, const MultiIndex& a, const MultiIndex& ap);
cxd poly_matrix_element(const PolyQP& poly, const MultiIndex& a, const MultiIndex& ap);

// Operator whose entries are the exact (untruncated) elements of the polynomial.
TruncatedOperator poly_to_operator(const PolyQP& poly, const BasisConfig& cfg);
// Truncated matrix product of the word's ladder factors (contaminated near
// the cutoff edge; this is the "direct" path of the dual-path moment check).
Matrix word_product_matrix(const Word& w, const BasisConfig& cfg);

struct MomentTable {
    int modes = 1;
    int degree = 0;
    struct Entry {
        MultiIndex alpha, beta;
        cxd value;
    };
    std::vector<Entry> entries;
    cxd lookup(const MultiIndex& alpha, const MultiIndex& beta) const;
};

// m_{alpha,beta} = Tr(Q^alpha P^beta T) for |alpha| + |beta| <= degree.
MomentTable moment_table(const TruncatedOperator& t, int degree);

enum class MomentPath { Direct, Reduced };

// m_A = Tr(R^A T), either by the truncated matrix product or through the
// CCR reduction into normal-ordered moments; the two must agree on inputs
// supported away from the cutoff edge.
cxd word_moment(const TruncatedOperator& t, const Word& w, MomentPath path);

struct AnalyticityCertificate {
    double c = 0.0;
    double k = 0.0;
    struct LengthRow {
        int length;
        double max_norm;   // max_{|A| = length} ||R^A sqrt(T)||_2
        double bound;      // C K^length length!
        double residual;   // max_norm - bound (<= 0 by construction)
    };
    std::vector<LengthRow> rows;
    double min_word_square = 0.0;  // min over words of m_{A-bar v A} = ||R^A sqrt(T)||_2^2
};

// Fits the factorial-exponential bound ||R^A sqrt(T)||_2 <= C K^{|A|} |A|!
// over all words up to max_length; K from the log-linear slope of the
// per-length maxima, C as the smallest constant with zero violations.
AnalyticityCertificate analyticity_certificate(const TruncatedOperator& t, int max_length);

struct PurificationResult {
    RealVector schmidt;  // descending, > 0
    Matrix left;         // columns phi_n (coefficients in the number basis)
    Matrix right;        // columns with conj() giving the second factor
};

// Purification via the kernel of sqrt(T): the coefficient matrix of sqrt(T),
// read as a vector of the doubled space, satisfies Tr(TA) = <O|(A x 1)|O>.
PurificationResult purify(const TruncatedOperator& t);
// <Omega| (A x 1) |Omega> for the purification of T.
cxd purification_expectation(const TruncatedOperator& t, const TruncatedOperator& a);

struct MomentMatchReport {
    double max_abs_diff = 0.0;
    MultiIndex arg_alpha, arg_beta;
    double hs_distance = 0.0;
};

MomentMatchReport moment_match(const TruncatedOperator& t1, const TruncatedOperator& t2,
                               int degree);

// Degree allowed by the truncation before edge contamination dominates.
int degree_guard(const BasisConfig& cfg);

}  // namespace sop
