#include "sop/sop_c.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "sop/correspondence.hpp"
#include "sop/distributions.hpp"
#include "sop/fluctuations.hpp"
#include "sop/moments.hpp"
#include "sop/phase_space.hpp"
#include "sop/random_states.hpp"
#include "sop/serialize.hpp"
#include "sop/version.hpp"

using namespace sop;

struct sop_basis {
    BasisConfig cfg;
};
struct sop_op {
    TruncatedOperator t;
};
struct sop_grid {
    PhaseSpaceGrid g;
};
struct sop_gfn {
    GridFunction f;
};
struct sop_table {
    Table t;
};

namespace {

thread_local std::string g_last_error;

sop_status fail(sop_status code, const std::string& what) {
    g_last_error = what;
    return code;
}

template <typename Fn>
sop_status guarded(Fn&& fn) {
    try {
        fn();
        return SOP_OK;
    } catch (const DimensionError& e) {
        return fail(SOP_EDIM, e.what());
    } catch (const GuardError& e) {
        return fail(SOP_EGUARD, e.what());
    } catch (const NotPsdError& e) {
        return fail(SOP_EPSD, e.what());
    } catch (const IoError& e) {
        return fail(SOP_EIO, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(SOP_EINVAL, e.what());
    } catch (const std::out_of_range& e) {
        return fail(SOP_EINVAL, e.what());
    } catch (const std::exception& e) {
        return fail(SOP_EFAIL, e.what());
    }
}

Metadata to_meta(const char* const* meta_kv, int nmeta) {
    Metadata meta;
    for (int i = 0; i < nmeta; ++i) meta.emplace_back(meta_kv[2 * i], meta_kv[2 * i + 1]);
    return meta;
}

sop_status require(bool ok, const char* what) {
    return ok ? SOP_OK : fail(SOP_EINVAL, what);
}

PolyQP parse_fspec(const std::string& spec) {
    if (spec == "1") return PolyQP::identity(1);
    if (spec == "q2") return PolyQP::from_word(Word::q().concat(Word::q()));
    if (spec == "p2") return PolyQP::from_word(Word::p().concat(Word::p()));
    if (spec == "qp+pq")
        return PolyQP::from_word(Word::q().concat(Word::p()))
            .plus(PolyQP::from_word(Word::p().concat(Word::q())));
    if (spec == "q4")
        return PolyQP::from_word(Word::q().concat(Word::q()).concat(Word::q().concat(Word::q())));
    throw std::invalid_argument("unknown polynomial spec: " + spec);
}

}  // namespace

extern "C" {

const char* sop_version(void) { return kVersion; }

const char* sop_last_error(void) { return g_last_error.c_str(); }

uint64_t sop_config_hash(const char* text) { return config_hash(text ? text : ""); }

sop_status sop_basis_create(int modes, int cutoff, sop_basis** out) {
    if (!out) return fail(SOP_EINVAL, "null output");
    return guarded([&] { *out = new sop_basis{BasisConfig(modes, cutoff)}; });
}

void sop_basis_free(sop_basis* b) { delete b; }

long sop_basis_dim(const sop_basis* b) { return b ? b->cfg.dim() : 0; }

double sop_default_extent(const sop_basis* b) {
    return b ? default_grid(b->cfg).extent : 0.0;
}

sop_status sop_op_state(const sop_basis* b, const char* kind, const double* params, int nparams,
                        sop_op** out) {
    if (sop_status s = require(b && kind && out, "null argument")) return s;
    return guarded([&] {
        const std::string k = kind;
        TruncatedOperator t;
        if (k == "ground") {
            t = ground_state(b->cfg);
        } else if (k == "number") {
            if (nparams != b->cfg.modes) throw std::invalid_argument("number: need one occupation per mode");
            MultiIndex n(b->cfg.modes);
            for (int i = 0; i < b->cfg.modes; ++i) n[i] = static_cast<int>(params[i]);
            t = number_state(b->cfg, n);
        } else if (k == "thermal") {
            if (nparams != 1) throw std::invalid_argument("thermal: need lambda");
            t = thermal_state(b->cfg, params[0]);
        } else if (k == "coherent") {
            if (nparams != 2 * b->cfg.modes)
                throw std::invalid_argument("coherent: need q and p per mode");
            std::vector<double> q(params, params + b->cfg.modes);
            std::vector<double> p(params + b->cfg.modes, params + 2 * b->cfg.modes);
            t = coherent_state(b->cfg, PhasePoint(q, p));
        } else {
            throw std::invalid_argument("unknown state kind: " + k);
        }
        *out = new sop_op{std::move(t)};
    });
}

sop_status sop_op_random(const sop_basis* b, int max_index, uint64_t seed, int kind,
                         sop_op** out) {
    if (sop_status s = require(b && out, "null argument")) return s;
    return guarded([&] {
        TruncatedOperator t = kind == 1   ? random_hermitian(b->cfg, max_index, seed)
                              : kind == 2 ? random_state(b->cfg, max_index, seed)
                                          : random_operator(b->cfg, max_index, seed);
        *out = new sop_op{std::move(t)};
    });
}

void sop_op_free(sop_op* t) { delete t; }

long sop_op_dim(const sop_op* t) { return t ? t->t.dim() : 0; }

sop_status sop_op_entry(const sop_op* t, long row, long col, double* re, double* im) {
    if (sop_status s = require(t && re && im, "null argument")) return s;
    if (row < 0 || col < 0 || row >= t->t.dim() || col >= t->t.dim())
        return fail(SOP_EINVAL, "entry index out of range");
    *re = t->t.mat(row, col).real();
    *im = t->t.mat(row, col).imag();
    return SOP_OK;
}

sop_status sop_op_trace(const sop_op* t, double* re, double* im) {
    if (sop_status s = require(t && re && im, "null argument")) return s;
    const cxd tr = t->t.trace();
    *re = tr.real();
    *im = tr.imag();
    return SOP_OK;
}

sop_status sop_op_hs_norm(const sop_op* t, double* out) {
    if (sop_status s = require(t && out, "null argument")) return s;
    *out = t->t.mat.norm();
    return SOP_OK;
}

sop_status sop_op_write_json(const sop_op* t, const char* path, const char* const* meta_kv,
                             int nmeta) {
    if (sop_status s = require(t && path, "null argument")) return s;
    return guarded([&] { write_text_file(path, operator_to_json(t->t, to_meta(meta_kv, nmeta))); });
}

sop_status sop_op_read_json(const char* path, sop_op** out) {
    if (sop_status s = require(path && out, "null argument")) return s;
    return guarded([&] {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw IoError(std::string("cannot open: ") + path);
        std::stringstream buf;
        buf << f.rdbuf();
        *out = new sop_op{operator_from_json(buf.str())};
    });
}

sop_status sop_grid_create(double extent, int points, sop_grid** out) {
    if (sop_status s = require(out != nullptr, "null output")) return s;
    return guarded([&] { *out = new sop_grid{PhaseSpaceGrid(extent, points)}; });
}

void sop_grid_free(sop_grid* g) { delete g; }

void sop_gfn_free(sop_gfn* f) { delete f; }

int sop_gfn_points(const sop_gfn* f) { return f ? f->f.grid.points : 0; }

sop_status sop_gfn_sample(const sop_gfn* f, int iq, int ip, double* re, double* im) {
    if (sop_status s = require(f && re && im, "null argument")) return s;
    if (iq < 0 || ip < 0 || iq >= f->f.grid.points || ip >= f->f.grid.points)
        return fail(SOP_EINVAL, "sample index out of range");
    *re = f->f.samples(iq, ip).real();
    *im = f->f.samples(iq, ip).imag();
    return SOP_OK;
}

sop_status sop_gfn_integral(const sop_gfn* f, double* re, double* im) {
    if (sop_status s = require(f && re && im, "null argument")) return s;
    const cxd v = f->f.integral();
    *re = v.real();
    *im = v.imag();
    return SOP_OK;
}

sop_status sop_gfn_write_csv(const sop_gfn* f, const char* path, const char* const* meta_kv,
                             int nmeta) {
    if (sop_status s = require(f && path, "null argument")) return s;
    return guarded(
        [&] { write_text_file(path, gridfunction_to_csv(f->f, to_meta(meta_kv, nmeta))); });
}

sop_status sop_gfn_write_json(const sop_gfn* f, const char* path, const char* const* meta_kv,
                              int nmeta) {
    if (sop_status s = require(f && path, "null argument")) return s;
    return guarded(
        [&] { write_text_file(path, gridfunction_to_json(f->f, to_meta(meta_kv, nmeta))); });
}

sop_status sop_gaussian_symbol(const sop_grid* g, double amplitude, double inv_width, double q0,
                               double p0, sop_gfn** out) {
    if (sop_status s = require(g && out, "null argument")) return s;
    return guarded([&] {
        GridFunction f = sample_symbol(g->g, [=](double q, double p) {
            return amplitude * std::exp(-((q - q0) * (q - q0) + (p - p0) * (p - p0)) * inv_width);
        });
        *out = new sop_gfn{std::move(f)};
    });
}

sop_status sop_wigner(const sop_op* t, const sop_grid* g, sop_gfn** out) {
    if (sop_status s = require(t && g && out, "null argument")) return s;
    return guarded([&] { *out = new sop_gfn{wigner_function(t->t, g->g)}; });
}

sop_status sop_wigner_at(const sop_op* t, double q, double p, double* out) {
    if (sop_status s = require(t && out, "null argument")) return s;
    return guarded([&] { *out = wigner_at(t->t, PhasePoint::single(q, p)); });
}

sop_status sop_weyl_transform(const sop_op* t, const sop_grid* g, int path, sop_gfn** out) {
    if (sop_status s = require(t && g && out, "null argument")) return s;
    return guarded([&] {
        *out = new sop_gfn{weyl_transform(t->t, g->g, path ? WeylPath::Kernel : WeylPath::Trace)};
    });
}

sop_status sop_weyl_quantize(const sop_gfn* f, const sop_basis* b, sop_op** out) {
    if (sop_status s = require(f && b && out, "null argument")) return s;
    return guarded([&] { *out = new sop_op{weyl_quantize(f->f, b->cfg)}; });
}

sop_status sop_inverse_weyl(const sop_gfn* f, const sop_basis* b, sop_op** out) {
    if (sop_status s = require(f && b && out, "null argument")) return s;
    return guarded([&] { *out = new sop_op{inverse_weyl(f->f, b->cfg)}; });
}

sop_status sop_symplectic_fourier(const sop_gfn* f, sop_gfn** out) {
    if (sop_status s = require(f && out, "null argument")) return s;
    return guarded([&] { *out = new sop_gfn{symplectic_fourier(f->f)}; });
}

sop_status sop_conv_fn_op(const sop_gfn* f, const sop_op* t, sop_op** out) {
    if (sop_status s = require(f && t && out, "null argument")) return s;
    return guarded([&] { *out = new sop_op{conv_fn_op(f->f, t->t)}; });
}

sop_status sop_conv_op_op(const sop_op* s_, const sop_op* t, const sop_grid* g, sop_gfn** out) {
    if (sop_status s = require(s_ && t && g && out, "null argument")) return s;
    return guarded([&] { *out = new sop_gfn{conv_op_op(s_->t, t->t, g->g)}; });
}

sop_status sop_husimi(const sop_op* t, const sop_grid* g, sop_gfn** out) {
    if (sop_status s = require(t && g && out, "null argument")) return s;
    return guarded([&] { *out = new sop_gfn{husimi(t->t, g->g)}; });
}

sop_status sop_coherent_quantize(const sop_gfn* f, const sop_basis* b, sop_op** out) {
    if (sop_status s = require(f && b && out, "null argument")) return s;
    return guarded([&] { *out = new sop_op{coherent_quantize(f->f, b->cfg)}; });
}

void sop_table_free(sop_table* t) { delete t; }

long sop_table_rows(const sop_table* t) { return t ? static_cast<long>(t->t.rows.size()) : 0; }

int sop_table_cols(const sop_table* t) { return t ? static_cast<int>(t->t.columns.size()) : 0; }

const char* sop_table_column(const sop_table* t, int col) {
    if (!t || col < 0 || col >= static_cast<int>(t->t.columns.size())) return "";
    return t->t.columns[col].c_str();
}

sop_status sop_table_cell(const sop_table* t, long row, int col, char* buf, int buflen) {
    if (sop_status s = require(t && buf && buflen > 0, "null argument")) return s;
    if (row < 0 || row >= static_cast<long>(t->t.rows.size()) || col < 0 ||
        col >= static_cast<int>(t->t.columns.size()))
        return fail(SOP_EINVAL, "cell index out of range");
    const std::string text = cell_text(t->t.rows[row][col]);
    std::snprintf(buf, buflen, "%s", text.c_str());
    return SOP_OK;
}

sop_status sop_table_write_csv(const sop_table* t, const char* path, const char* const* meta_kv,
                               int nmeta) {
    if (sop_status s = require(t && path, "null argument")) return s;
    return guarded([&] { write_text_file(path, table_to_csv(t->t, to_meta(meta_kv, nmeta))); });
}

sop_status sop_table_write_json(const sop_table* t, const char* path, const char* const* meta_kv,
                                int nmeta) {
    if (sop_status s = require(t && path, "null argument")) return s;
    return guarded([&] { write_text_file(path, table_to_json(t->t, to_meta(meta_kv, nmeta))); });
}

sop_status sop_moment_table(const sop_op* t, int degree, sop_table** out) {
    if (sop_status s = require(t && out, "null argument")) return s;
    return guarded([&] {
        MomentTable m = moment_table(t->t, degree);
        Table table;
        table.columns = {"alpha", "beta", "re", "im"};
        for (const auto& e : m.entries)
            table.add_row({index_to_string(e.alpha), index_to_string(e.beta), e.value.real(),
                           e.value.imag()});
        *out = new sop_table{std::move(table)};
    });
}

sop_status sop_seminorm_report(const sop_op* t, const char* family, int max_order,
                               sop_table** out) {
    if (sop_status s = require(t && family && out, "null argument")) return s;
    return guarded([&] {
        const std::string f = family;
        SeminormFamily fam = f == "h"       ? SeminormFamily::HPower
                             : f == "qp"    ? SeminormFamily::OperatorQP
                             : f == "qp-hs" ? SeminormFamily::HsQP
                                            : throw std::invalid_argument("unknown family: " + f);
        SeminormReport rep = seminorm_report(t->t, fam, max_order);
        Table table;
        table.columns = {"family", "alpha", "alphap", "beta", "betap", "value"};
        const char* name = f == "h" ? "h-power" : f == "qp" ? "operator-qp" : "hs-qp";
        for (const auto& e : rep.entries)
            table.add_row({std::string(name), index_to_string(e.alpha), index_to_string(e.alphap),
                           index_to_string(e.beta), index_to_string(e.betap), e.value});
        *out = new sop_table{std::move(table)};
    });
}

sop_status sop_analyticity(const sop_op* t, int max_length, double* c, double* k,
                           sop_table** out) {
    if (sop_status s = require(t && c && k && out, "null argument")) return s;
    return guarded([&] {
        AnalyticityCertificate cert = analyticity_certificate(t->t, max_length);
        *c = cert.c;
        *k = cert.k;
        Table table;
        table.columns = {"length", "max_norm", "bound", "residual"};
        for (const auto& row : cert.rows)
            table.add_row({long(row.length), row.max_norm, row.bound, row.residual});
        *out = new sop_table{std::move(table)};
    });
}

sop_status sop_purify_schmidt(const sop_op* t, sop_table** out) {
    if (sop_status s = require(t && out, "null argument")) return s;
    return guarded([&] {
        PurificationResult pure = purify(t->t);
        Table table;
        table.columns = {"k", "schmidt_value"};
        for (long i = 0; i < pure.schmidt.size(); ++i) table.add_row({i, pure.schmidt[i]});
        *out = new sop_table{std::move(table)};
    });
}

sop_status sop_delta_quantize_study(const sop_basis* b, const double* points, int npoints,
                                    int n_ops, uint64_t seed, sop_table** out) {
    if (sop_status s = require(b && points && out && npoints > 0 && n_ops > 0, "bad argument"))
        return s;
    return guarded([&] {
        if (b->cfg.modes != 1) throw std::invalid_argument("delta study: single mode only");
        Table table;
        table.columns = {"check", "max_abs_error"};
        std::vector<TruncatedOperator> ops;
        for (int k = 0; k < n_ops; ++k)
            ops.push_back(random_operator(b->cfg, std::min(10, b->cfg.cutoff / 4), seed + k));
        for (int p = 0; p < npoints; ++p) {
            PhasePoint a = PhasePoint::single(points[2 * p], points[2 * p + 1]);
            OperatorDistribution wq = wq_delta(a);
            double worst = 0.0;
            for (const auto& t : ops)
                worst = std::max(worst,
                                 std::abs(pair_with(wq, t) - wigner_at_complex(t, a)));
            table.add_row({"wq_delta(" + fmt12(a.q[0]) + "," + fmt12(a.p[0]) + ") vs wigner",
                           worst});
        }
        {
            OperatorDistribution d10 = invweyl_delta_derivative({1, 0});
            OperatorDistribution mip = dist_from_poly(PolyQP::from_word(Word::p(), 1, cxd(0, -1)));
            double worst = 0.0;
            for (const auto& t : ops)
                worst = std::max(worst, std::abs(pair_with(d10, t) - pair_with(mip, t)));
            table.add_row({std::string("invweyl D^(1|0) delta vs -iP"), worst});
        }
        {
            OperatorDistribution d11 = invweyl_delta_derivative({1, 1});
            PolyQP expect = PolyQP::identity(1);
            expect.terms[0].coeff = cxd(0, 0.5);
            expect = expect.plus(PolyQP::from_word(Word::p().concat(Word::q())));
            OperatorDistribution ref = dist_from_poly(expect);
            double worst = 0.0;
            for (const auto& t : ops)
                worst = std::max(worst, std::abs(pair_with(d11, t) - pair_with(ref, t)));
            table.add_row({std::string("invweyl D^(1|1) delta vs i/2+PQ"), worst});
        }
        *out = new sop_table{std::move(table)};
    });
}

sop_status sop_fluct_moments(const sop_op* state, const char* fspec, const int* spins, int nspins,
                             sop_table** out) {
    if (sop_status s = require(state && fspec && spins && out && nspins > 0, "bad argument"))
        return s;
    return guarded([&] {
        PolyQP f = parse_fspec(fspec);
        std::vector<int> ms(spins, spins + nspins);
        auto rows = moment_convergence(f, state->t, ms);
        Table table;
        table.columns = {"M", "value", "reference", "abs_gap"};
        for (const auto& r : rows)
            table.add_row({long(r.spins), r.value, r.reference, r.abs_gap});
        *out = new sop_table{std::move(table)};
    });
}

sop_status sop_fluct_spectral(const sop_op* state, const int* spins, int nspins, double a,
                              double b, sop_table** out) {
    if (sop_status s = require(state && spins && out && nspins > 0, "bad argument")) return s;
    return guarded([&] {
        std::vector<int> ms(spins, spins + nspins);
        auto rows = spectral_convergence(state->t, ms, a, b);
        Table table;
        table.columns = {"M", "value", "reference", "abs_gap"};
        for (const auto& r : rows)
            table.add_row({long(r.spins), r.value, r.reference, r.abs_gap});
        *out = new sop_table{std::move(table)};
    });
}

sop_status sop_rescaled_projections(const sop_op* state, double q, int steps, sop_table** out) {
    if (sop_status s = require(state && out && steps > 0, "bad argument")) return s;
    return guarded([&] {
        RescaledProjectionSchedule sched = default_projection_schedule(q, steps);
        auto rows = rescaled_projection_sequence(state->t, sched);
        const double target = kernel_diag(state->t, q);
        Table table;
        table.columns = {"M", "a", "b", "value", "reference", "abs_gap"};
        for (const auto& r : rows)
            table.add_row(
                {long(r.spins), r.a, r.b, r.value, target, std::abs(r.value - target)});
        *out = new sop_table{std::move(table)};
    });
}

sop_status sop_delta_approx(int cutoff, const double* eps, int neps, sop_table** out) {
    if (sop_status s = require(eps && out && neps > 0, "bad argument")) return s;
    return guarded([&] {
        BasisConfig cfg(1, cutoff);
        auto g = [](double q, double p) { return 2.0 * std::exp(-(q * q + p * p)); };
        std::vector<double> schedule(eps, eps + neps);
        auto rules = approximate_identity(g, 1.0, schedule);
        Table table;
        table.columns = {"eps", "trace", "hs_norm", "second_singular_value"};
        for (int k = 0; k < neps; ++k) {
            TruncatedOperator t = weyl_quantize(rules[k], cfg);
            SingularSpectrum spec = singular_spectrum(t, 1);
            table.add_row({schedule[k], t.trace().real(), t.mat.norm(),
                           spec.values.size() > 1 ? spec.values[1] : 0.0});
        }
        *out = new sop_table{std::move(table)};
    });
}

}  // extern "C"
