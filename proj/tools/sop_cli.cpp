// Batch driver over the sop C API. Every number in an artifact comes from a
// library call; the driver only parses configuration and writes files.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sop/sop_c.h"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitConfig = 3;
constexpr int kExitCompute = 4;
constexpr int kExitIo = 5;

struct Options {
    int modes = 1;
    int cutoff = 64;
    int grid_points = 256;
    double extent = 0.0;  // 0: derived from the cutoff
    std::string state = "ground";
    std::string state2 = "ground";
    std::string symbol = "gaussian:2,1,0,0";  // amplitude, inv_width, q0, p0
    std::string out;
    std::string format = "csv";
    std::string config_file;
    std::string kind = "fn-op";
    std::string family = "h";
    std::string fspec = "q2";
    std::string spins = "8,16,32,64";
    std::string interval = "-1,1";
    std::string points = "0,0;1,0.5";
    std::string eps = "1,0.5,0.25";
    int degree = 4;
    int max_order = 2;
    int max_length = 4;
    int steps = 4;
    int n_ops = 10;
    int path = 0;
    unsigned long long seed = 20240901ull;
    double q_point = 0.0;
};

[[noreturn]] void die(int code, const std::string& msg) {
    std::cerr << "sop: " << msg << "\n";
    std::exit(code);
}

void check(sop_status s) {
    if (s == SOP_OK) return;
    const std::string msg = sop_last_error();
    switch (s) {
        case SOP_EIO:
            die(kExitIo, "i/o failure: " + msg);
        case SOP_EINVAL:
        case SOP_EDIM:
        case SOP_EGUARD:
        case SOP_EPSD:
            die(kExitConfig, "invalid configuration: " + msg);
        default:
            die(kExitCompute, "computation failed: " + msg);
    }
}

std::vector<double> parse_doubles(const std::string& text, char sep = ',') {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

std::vector<int> parse_ints(const std::string& text) {
    std::vector<int> out;
    for (double v : parse_doubles(text)) out.push_back(static_cast<int>(v));
    return out;
}

// Handle owners.
struct BasisPtr {
    sop_basis* h = nullptr;
    ~BasisPtr() { sop_basis_free(h); }
};
struct OpPtr {
    sop_op* h = nullptr;
    ~OpPtr() { sop_op_free(h); }
};
struct GridPtr {
    sop_grid* h = nullptr;
    ~GridPtr() { sop_grid_free(h); }
};
struct GfnPtr {
    sop_gfn* h = nullptr;
    ~GfnPtr() { sop_gfn_free(h); }
};
struct TablePtr {
    sop_table* h = nullptr;
    ~TablePtr() { sop_table_free(h); }
};

void make_state(const sop_basis* basis, const std::string& spec, sop_op** out) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    std::vector<double> params;
    if (colon != std::string::npos) params = parse_doubles(spec.substr(colon + 1));
    check(sop_op_state(basis, kind.c_str(), params.data(), static_cast<int>(params.size()), out));
}

void make_symbol(const sop_grid* grid, const std::string& spec, sop_gfn** out) {
    const auto colon = spec.find(':');
    if (spec.substr(0, colon) != "gaussian")
        die(kExitConfig, "unknown symbol kind (supported: gaussian:amp,inv_width,q0,p0)");
    std::vector<double> p{2.0, 1.0, 0.0, 0.0};
    if (colon != std::string::npos) {
        auto given = parse_doubles(spec.substr(colon + 1));
        for (std::size_t i = 0; i < given.size() && i < 4; ++i) p[i] = given[i];
    }
    check(sop_gaussian_symbol(grid, p[0], p[1], p[2], p[3], out));
}

std::string output_path(const Options& opt, const std::string& subcommand) {
    std::string name = opt.out;
    if (name.empty()) name = subcommand + (opt.format == "json" ? ".json" : ".csv");
    if (name.find('/') == std::string::npos) {
        if (const char* dir = std::getenv("SOP_OUT_DIR")) name = std::string(dir) + "/" + name;
    }
    return name;
}

// Canonical config echo: sorted key=value list; hashed into the header.
std::string canonical_config(const std::map<std::string, std::string>& kv) {
    std::string text;
    for (const auto& [k, v] : kv) {
        if (!text.empty()) text += ';';
        text += k + "=" + v;
    }
    return text;
}

char hash_buf[32];

std::vector<const char*> build_meta(const std::map<std::string, std::string>& kv,
                                    std::vector<std::string>& storage) {
    const std::string canonical = canonical_config(kv);
    std::snprintf(hash_buf, sizeof(hash_buf), "%016llx",
                  static_cast<unsigned long long>(sop_config_hash(canonical.c_str())));
    storage.clear();
    storage.push_back("version");
    storage.push_back(std::string("sop ") + sop_version());
    storage.push_back("config");
    storage.push_back(canonical);
    storage.push_back("config_hash");
    storage.push_back(hash_buf);
    std::vector<const char*> out;
    for (const auto& s : storage) out.push_back(s.c_str());
    return out;
}

void write_table(const TablePtr& table, const Options& opt, const std::string& subcommand,
                 const std::map<std::string, std::string>& kv) {
    std::vector<std::string> storage;
    auto meta = build_meta(kv, storage);
    const std::string path = output_path(opt, subcommand);
    const int nmeta = static_cast<int>(meta.size() / 2);
    if (opt.format == "json")
        check(sop_table_write_json(table.h, path.c_str(), meta.data(), nmeta));
    else
        check(sop_table_write_csv(table.h, path.c_str(), meta.data(), nmeta));
    std::cout << path << "\n";
}

void write_gfn(const GfnPtr& gfn, const Options& opt, const std::string& subcommand,
               const std::map<std::string, std::string>& kv) {
    std::vector<std::string> storage;
    auto meta = build_meta(kv, storage);
    const std::string path = output_path(opt, subcommand);
    const int nmeta = static_cast<int>(meta.size() / 2);
    if (opt.format == "json")
        check(sop_gfn_write_json(gfn.h, path.c_str(), meta.data(), nmeta));
    else
        check(sop_gfn_write_csv(gfn.h, path.c_str(), meta.data(), nmeta));
    std::cout << path << "\n";
}

void write_op(const OpPtr& op, const Options& opt, const std::string& subcommand,
              const std::map<std::string, std::string>& kv) {
    std::vector<std::string> storage;
    auto meta = build_meta(kv, storage);
    std::string path = opt.out.empty() ? subcommand + ".json" : opt.out;
    if (path.find('/') == std::string::npos) {
        if (const char* dir = std::getenv("SOP_OUT_DIR")) path = std::string(dir) + "/" + path;
    }
    check(sop_op_write_json(op.h, path.c_str(), meta.data(),
                            static_cast<int>(meta.size() / 2)));
    std::cout << path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"phase-space numerics for truncated number-basis operators"};
    app.require_subcommand(1);
    Options opt;

    app.add_option("--config", opt.config_file, "JSON file with defaults for any flag");

    std::vector<CLI::App*> subs;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--modes", opt.modes, "mode count");
        sub->add_option("--cutoff", opt.cutoff, "per-mode occupation cutoff");
        sub->add_option("--grid", opt.grid_points, "grid points per axis");
        sub->add_option("--L", opt.extent, "grid extent (0: derived from cutoff)");
        sub->add_option("--state", opt.state,
                        "ground | number:n | thermal:lambda | coherent:q,p");
        sub->add_option("--out", opt.out, "output path (default <subcommand>.<ext>)");
        sub->add_option("--format", opt.format, "csv | json");
        subs.push_back(sub);
        return sub;
    };

    CLI::App* wigner = add_common(app.add_subcommand("wigner", "Wigner function on a grid"));
    CLI::App* weyl = add_common(app.add_subcommand("weyl", "Weyl transform on a grid"));
    weyl->add_option("--path", opt.path, "0: trace formula, 1: kernel factorization");
    CLI::App* quantize =
        add_common(app.add_subcommand("quantize", "operator from a phase-space symbol"));
    quantize->add_option("--symbol", opt.symbol, "gaussian:amp,inv_width,q0,p0");
    CLI::App* husimi = add_common(app.add_subcommand("husimi", "Husimi function on a grid"));
    CLI::App* convolve = add_common(app.add_subcommand("convolve", "convolutions"));
    convolve->add_option("--kind", opt.kind, "fn-op | op-op");
    convolve->add_option("--symbol", opt.symbol, "gaussian:amp,inv_width,q0,p0");
    convolve->add_option("--state2", opt.state2, "second operator for op-op");
    CLI::App* seminorms = add_common(app.add_subcommand("seminorms", "seminorm report"));
    seminorms->add_option("--family", opt.family, "h | qp | qp-hs");
    seminorms->add_option("--max-order", opt.max_order, "largest per-mode order");
    CLI::App* moments = add_common(app.add_subcommand("moments", "moment table"));
    moments->add_option("--degree", opt.degree, "largest |alpha|+|beta|");
    CLI::App* analyticity =
        add_common(app.add_subcommand("analyticity", "factorial-exponential certificate"));
    analyticity->add_option("--max-length", opt.max_length, "largest word length");
    CLI::App* purify = add_common(app.add_subcommand("purify", "Schmidt values of the purification"));
    CLI::App* delta_quantize =
        add_common(app.add_subcommand("delta-quantize", "delta-distribution quantization checks"));
    delta_quantize->add_option("--points", opt.points, "q,p pairs separated by ';'");
    delta_quantize->add_option("--ops", opt.n_ops, "number of seeded test operators");
    delta_quantize->add_option("--seed", opt.seed, "test operator seed");
    CLI::App* fluct_moments =
        add_common(app.add_subcommand("fluct-moments", "collective-spin moment convergence"));
    fluct_moments->add_option("--f", opt.fspec, "1 | q2 | p2 | qp+pq | q4");
    fluct_moments->add_option("--M", opt.spins, "comma-separated spin counts");
    CLI::App* fluct_spectral =
        add_common(app.add_subcommand("fluct-spectral", "spectral-weight convergence"));
    fluct_spectral->add_option("--M", opt.spins, "comma-separated spin counts");
    fluct_spectral->add_option("--interval", opt.interval, "a,b");
    CLI::App* rescaled = add_common(
        app.add_subcommand("rescaled-projections", "rescaled projections toward the density"));
    rescaled->add_option("--q", opt.q_point, "target position");
    rescaled->add_option("--steps", opt.steps, "schedule length (M_k = 2^{k+4})");
    CLI::App* delta_approx =
        add_common(app.add_subcommand("delta-approx", "approximate-identity study"));
    delta_approx->add_option("--eps", opt.eps, "comma-separated scale schedule");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (app.exit(e) == 0) return 0;  // --help
        return kExitUsage;
    }

    // Config file: values take precedence over command-line flags.
    if (!opt.config_file.empty()) {
        std::ifstream f(opt.config_file);
        if (!f) die(kExitConfig, "cannot open config file: " + opt.config_file);
        nlohmann::json cfg;
        try {
            f >> cfg;
        } catch (const std::exception& e) {
            die(kExitConfig, std::string("config parse failure: ") + e.what());
        }
        for (CLI::App* sub : subs) {
            if (!sub->parsed()) continue;
            for (auto& [key, value] : cfg.items()) {
                CLI::Option* o = sub->get_option_no_throw("--" + key);
                if (!o) continue;
                try {
                    o->clear();
                    o->add_result(value.is_string() ? value.get<std::string>() : value.dump());
                    o->run_callback();
                } catch (const std::exception& e) {
                    die(kExitConfig, "config value for --" + key + ": " + e.what());
                }
            }
        }
    }

    BasisPtr basis;
    check(sop_basis_create(opt.modes, opt.cutoff, &basis.h));
    const double extent = opt.extent > 0 ? opt.extent : sop_default_extent(basis.h);

    std::map<std::string, std::string> kv{
        {"modes", std::to_string(opt.modes)},
        {"cutoff", std::to_string(opt.cutoff)},
        {"format", opt.format},
    };
    auto with_grid_kv = [&]() {
        kv["grid"] = std::to_string(opt.grid_points);
        std::snprintf(hash_buf, sizeof(hash_buf), "%.12g", extent);
        kv["L"] = hash_buf;
    };

    if (wigner->parsed() || weyl->parsed() || husimi->parsed()) {
        const std::string name = wigner->parsed() ? "wigner" : weyl->parsed() ? "weyl" : "husimi";
        with_grid_kv();
        kv["state"] = opt.state;
        kv["subcommand"] = name;
        GridPtr grid;
        check(sop_grid_create(extent, opt.grid_points, &grid.h));
        OpPtr state;
        make_state(basis.h, opt.state, &state.h);
        GfnPtr out;
        if (wigner->parsed())
            check(sop_wigner(state.h, grid.h, &out.h));
        else if (weyl->parsed()) {
            kv["path"] = std::to_string(opt.path);
            check(sop_weyl_transform(state.h, grid.h, opt.path, &out.h));
        } else
            check(sop_husimi(state.h, grid.h, &out.h));
        write_gfn(out, opt, name, kv);
    } else if (quantize->parsed()) {
        with_grid_kv();
        kv["subcommand"] = "quantize";
        kv["symbol"] = opt.symbol;
        GridPtr grid;
        check(sop_grid_create(extent, opt.grid_points, &grid.h));
        GfnPtr symbol;
        make_symbol(grid.h, opt.symbol, &symbol.h);
        OpPtr out;
        check(sop_weyl_quantize(symbol.h, basis.h, &out.h));
        write_op(out, opt, "quantize", kv);
    } else if (convolve->parsed()) {
        with_grid_kv();
        kv["subcommand"] = "convolve";
        kv["kind"] = opt.kind;
        GridPtr grid;
        check(sop_grid_create(extent, opt.grid_points, &grid.h));
        if (opt.kind == "fn-op") {
            kv["symbol"] = opt.symbol;
            kv["state"] = opt.state;
            GfnPtr symbol;
            make_symbol(grid.h, opt.symbol, &symbol.h);
            OpPtr state;
            make_state(basis.h, opt.state, &state.h);
            OpPtr out;
            check(sop_conv_fn_op(symbol.h, state.h, &out.h));
            write_op(out, opt, "convolve", kv);
        } else if (opt.kind == "op-op") {
            kv["state"] = opt.state;
            kv["state2"] = opt.state2;
            OpPtr s, t;
            make_state(basis.h, opt.state, &s.h);
            make_state(basis.h, opt.state2, &t.h);
            GfnPtr out;
            check(sop_conv_op_op(s.h, t.h, grid.h, &out.h));
            write_gfn(out, opt, "convolve", kv);
        } else {
            die(kExitConfig, "unknown convolution kind: " + opt.kind);
        }
    } else if (seminorms->parsed()) {
        kv["subcommand"] = "seminorms";
        kv["state"] = opt.state;
        kv["family"] = opt.family;
        kv["max_order"] = std::to_string(opt.max_order);
        OpPtr state;
        make_state(basis.h, opt.state, &state.h);
        TablePtr table;
        check(sop_seminorm_report(state.h, opt.family.c_str(), opt.max_order, &table.h));
        write_table(table, opt, "seminorms", kv);
    } else if (moments->parsed()) {
        kv["subcommand"] = "moments";
        kv["state"] = opt.state;
        kv["degree"] = std::to_string(opt.degree);
        OpPtr state;
        make_state(basis.h, opt.state, &state.h);
        TablePtr table;
        check(sop_moment_table(state.h, opt.degree, &table.h));
        write_table(table, opt, "moments", kv);
    } else if (analyticity->parsed()) {
        kv["subcommand"] = "analyticity";
        kv["state"] = opt.state;
        kv["max_length"] = std::to_string(opt.max_length);
        OpPtr state;
        make_state(basis.h, opt.state, &state.h);
        TablePtr table;
        double c = 0, k = 0;
        check(sop_analyticity(state.h, opt.max_length, &c, &k, &table.h));
        std::snprintf(hash_buf, sizeof(hash_buf), "%.12g", c);
        kv["fitted_C"] = hash_buf;
        std::snprintf(hash_buf, sizeof(hash_buf), "%.12g", k);
        kv["fitted_K"] = hash_buf;
        write_table(table, opt, "analyticity", kv);
    } else if (purify->parsed()) {
        kv["subcommand"] = "purify";
        kv["state"] = opt.state;
        OpPtr state;
        make_state(basis.h, opt.state, &state.h);
        TablePtr table;
        check(sop_purify_schmidt(state.h, &table.h));
        write_table(table, opt, "purify", kv);
    } else if (delta_quantize->parsed()) {
        kv["subcommand"] = "delta-quantize";
        kv["points"] = opt.points;
        kv["ops"] = std::to_string(opt.n_ops);
        kv["seed"] = std::to_string(opt.seed);
        std::vector<double> flat;
        for (const auto& pair_text : [&] {
                 std::vector<std::string> parts;
                 std::stringstream ss(opt.points);
                 std::string item;
                 while (std::getline(ss, item, ';')) parts.push_back(item);
                 return parts;
             }()) {
            auto qp = parse_doubles(pair_text);
            if (qp.size() != 2) die(kExitConfig, "points must be q,p pairs separated by ';'");
            flat.push_back(qp[0]);
            flat.push_back(qp[1]);
        }
        TablePtr table;
        check(sop_delta_quantize_study(basis.h, flat.data(), static_cast<int>(flat.size() / 2),
                                       opt.n_ops, opt.seed, &table.h));
        write_table(table, opt, "delta-quantize", kv);
    } else if (fluct_moments->parsed()) {
        kv["subcommand"] = "fluct-moments";
        kv["state"] = opt.state;
        kv["f"] = opt.fspec;
        kv["M"] = opt.spins;
        OpPtr state;
        make_state(basis.h, opt.state, &state.h);
        auto ms = parse_ints(opt.spins);
        TablePtr table;
        check(sop_fluct_moments(state.h, opt.fspec.c_str(), ms.data(),
                                static_cast<int>(ms.size()), &table.h));
        write_table(table, opt, "fluct-moments", kv);
    } else if (fluct_spectral->parsed()) {
        kv["subcommand"] = "fluct-spectral";
        kv["state"] = opt.state;
        kv["M"] = opt.spins;
        kv["interval"] = opt.interval;
        OpPtr state;
        make_state(basis.h, opt.state, &state.h);
        auto ms = parse_ints(opt.spins);
        auto ab = parse_doubles(opt.interval);
        if (ab.size() != 2) die(kExitConfig, "interval must be a,b");
        TablePtr table;
        check(sop_fluct_spectral(state.h, ms.data(), static_cast<int>(ms.size()), ab[0], ab[1],
                                 &table.h));
        write_table(table, opt, "fluct-spectral", kv);
    } else if (rescaled->parsed()) {
        kv["subcommand"] = "rescaled-projections";
        kv["state"] = opt.state;
        std::snprintf(hash_buf, sizeof(hash_buf), "%.12g", opt.q_point);
        kv["q"] = hash_buf;
        kv["steps"] = std::to_string(opt.steps);
        OpPtr state;
        make_state(basis.h, opt.state, &state.h);
        TablePtr table;
        check(sop_rescaled_projections(state.h, opt.q_point, opt.steps, &table.h));
        write_table(table, opt, "rescaled-projections", kv);
    } else if (delta_approx->parsed()) {
        kv["subcommand"] = "delta-approx";
        kv["eps"] = opt.eps;
        auto schedule = parse_doubles(opt.eps);
        TablePtr table;
        check(sop_delta_approx(opt.cutoff, schedule.data(), static_cast<int>(schedule.size()),
                               &table.h));
        write_table(table, opt, "delta-approx", kv);
    }
    return 0;
}
