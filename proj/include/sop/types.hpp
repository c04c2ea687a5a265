#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sop {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

// Thrown when two objects live on different truncations.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a polynomial degree exceeds the reliable-sub-block guard.
struct GuardError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when an operation requires a positive semidefinite input.
struct NotPsdError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Per-mode occupation numbers. Also used for seminorm orders, where an
// index of length 2N (a "join" alpha-vee-beta) addresses both sides of an
// operator sandwich.
using MultiIndex = std::vector<int>;

inline int order_sum(const MultiIndex& a) {
    int s = 0;
    for (int v : a) s += v;
    return s;
}

// (alpha, beta) -> alpha v beta, the concatenation of length 2N.
inline MultiIndex join(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

inline MultiIndex zero_index(int n) { return MultiIndex(n, 0); }

inline std::string index_to_string(const MultiIndex& a) {
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += '|';
        s += std::to_string(a[i]);
    }
    return s;
}

// Finite truncation of the number basis: `modes` oscillator modes, each kept
// up to occupation `cutoff`. Linear indices are row-major with mode 0
// slowest, i.e. flatten(a) = ((a0*K + a1)*K + a2)*K + ... with K = cutoff+1.
struct BasisConfig {
    int modes = 1;
    int cutoff = 1;

    BasisConfig() = default;
    BasisConfig(int modes_, int cutoff_) : modes(modes_), cutoff(cutoff_) {
        if (modes < 1) throw std::invalid_argument("BasisConfig: modes must be >= 1");
        if (cutoff < 1) throw std::invalid_argument("BasisConfig: cutoff must be >= 1");
    }

    int per_mode() const { return cutoff + 1; }

    long dim() const {
        long d = 1;
        for (int i = 0; i < modes; ++i) d *= per_mode();
        return d;
    }

    bool operator==(const BasisConfig& o) const {
        return modes == o.modes && cutoff == o.cutoff;
    }
    bool operator!=(const BasisConfig& o) const { return !(*this == o); }

    long flatten(const MultiIndex& a) const {
        if (static_cast<int>(a.size()) != modes)
            throw std::invalid_argument("flatten: multi-index length does not match mode count");
        long idx = 0;
        for (int i = 0; i < modes; ++i) {
            if (a[i] < 0 || a[i] > cutoff)
                throw std::out_of_range("flatten: entry outside truncation");
            idx = idx * per_mode() + a[i];
        }
        return idx;
    }

    MultiIndex unflatten(long idx) const {
        MultiIndex a(modes, 0);
        for (int i = modes - 1; i >= 0; --i) {
            a[i] = static_cast<int>(idx % per_mode());
            idx /= per_mode();
        }
        return a;
    }

    // Largest single-mode occupation appearing in a linear index.
    int max_entry(long idx) const {
        int m = 0;
        for (int i = 0; i < modes; ++i) {
            m = std::max(m, static_cast<int>(idx % per_mode()));
            idx /= per_mode();
        }
        return m;
    }
};

inline void require_same_cfg(const BasisConfig& a, const BasisConfig& b, const char* what) {
    if (a != b) throw DimensionError(std::string(what) + ": basis configurations differ");
}

}  // namespace sop
