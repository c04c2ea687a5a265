#include "sop/random_states.hpp"

#include <random>

namespace sop {

namespace {

std::vector<long> block_indices(const BasisConfig& cfg, int max_index) {
    std::vector<long> idx;
    for (long i = 0; i < cfg.dim(); ++i)
        if (cfg.max_entry(i) <= max_index) idx.push_back(i);
    return idx;
}

}  // namespace

TruncatedOperator random_operator(const BasisConfig& cfg, int max_index, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix m = Matrix::Zero(cfg.dim(), cfg.dim());
    for (long i : block_indices(cfg, max_index))
        for (long j : block_indices(cfg, max_index)) m(i, j) = cxd(u(rng), u(rng));
    return TruncatedOperator(cfg, std::move(m));
}

TruncatedOperator random_hermitian(const BasisConfig& cfg, int max_index, std::uint64_t seed) {
    TruncatedOperator t = random_operator(cfg, max_index, seed);
    t.mat = (0.5 * (t.mat + t.mat.adjoint())).eval();
    return t;
}

TruncatedOperator random_state(const BasisConfig& cfg, int max_index, std::uint64_t seed) {
    TruncatedOperator t = random_operator(cfg, max_index, seed);
    t.mat = (t.mat * t.mat.adjoint()).eval();
    const double tr = t.mat.trace().real();
    t.mat /= tr;
    return t;
}

}  // namespace sop
