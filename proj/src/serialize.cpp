#include "sop/serialize.hpp"

#include <json.hpp>

namespace sop {

std::uint64_t config_hash(const std::string& canonical) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string config_hash_hex(const std::string& canonical) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(config_hash(canonical)));
    return buf;
}

namespace {

std::string meta_prefix(const Metadata& meta) {
    std::string out;
    for (const auto& [k, v] : meta) out += "# " + k + ": " + v + "\n";
    return out;
}

nlohmann::ordered_json meta_json(const Metadata& meta) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : meta) j[k] = v;
    return j;
}

}  // namespace

std::string operator_to_json(const TruncatedOperator& t, const Metadata& meta) {
    nlohmann::ordered_json j;
    j["metadata"] = meta_json(meta);
    j["modes"] = t.cfg.modes;
    j["cutoff"] = t.cfg.cutoff;
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (long i = 0; i < t.dim(); ++i)
        for (long k = 0; k < t.dim(); ++k) {
            nlohmann::ordered_json pair = nlohmann::ordered_json::array();
            pair.push_back(fmt12(t.mat(i, k).real()));
            pair.push_back(fmt12(t.mat(i, k).imag()));
            entries.push_back(pair);
        }
    j["entries"] = entries;
    return j.dump(1) + "\n";
}

TruncatedOperator operator_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    BasisConfig cfg(j.at("modes").get<int>(), j.at("cutoff").get<int>());
    const auto& entries = j.at("entries");
    if (static_cast<long>(entries.size()) != cfg.dim() * cfg.dim())
        throw IoError("operator_from_json: entry count does not match dimensions");
    Matrix m(cfg.dim(), cfg.dim());
    long idx = 0;
    for (long i = 0; i < cfg.dim(); ++i)
        for (long k = 0; k < cfg.dim(); ++k) {
            const auto& pair = entries[idx++];
            m(i, k) = cxd(std::stod(pair.at(0).get<std::string>()),
                          std::stod(pair.at(1).get<std::string>()));
        }
    return TruncatedOperator(cfg, std::move(m));
}

std::string gridfunction_to_csv(const GridFunction& f, const Metadata& meta) {
    std::string out = meta_prefix(meta);
    const int n = f.grid.points;
    out += "q_axis";
    for (int k = 0; k < n; ++k) out += "," + fmt12(f.grid.node(k));
    out += "\np_axis";
    for (int k = 0; k < n; ++k) out += "," + fmt12(f.grid.node(k));
    out += "\n";
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j) out += ',';
            out += fmt12(f.samples(i, j));
        }
        out += '\n';
    }
    return out;
}

std::string gridfunction_to_json(const GridFunction& f, const Metadata& meta) {
    nlohmann::ordered_json j;
    j["metadata"] = meta_json(meta);
    j["extent"] = fmt12(f.grid.extent);
    j["points"] = f.grid.points;
    nlohmann::ordered_json axis = nlohmann::ordered_json::array();
    for (int k = 0; k < f.grid.points; ++k) axis.push_back(fmt12(f.grid.node(k)));
    j["q_axis"] = axis;
    j["p_axis"] = axis;
    nlohmann::ordered_json samples = nlohmann::ordered_json::array();
    for (int i = 0; i < f.grid.points; ++i)
        for (int k = 0; k < f.grid.points; ++k) {
            nlohmann::ordered_json pair = nlohmann::ordered_json::array();
            pair.push_back(fmt12(f.samples(i, k).real()));
            pair.push_back(fmt12(f.samples(i, k).imag()));
            samples.push_back(pair);
        }
    j["samples"] = samples;
    return j.dump(1) + "\n";
}

std::string distribution_to_json(const OperatorDistribution& d, int materialize_cutoff,
                                 bool include_coeffs, const Metadata& meta) {
    nlohmann::ordered_json j;
    j["metadata"] = meta_json(meta);
    j["rule"] = d.name.empty() ? "explicit" : d.name;
    j["modes"] = d.modes;
    j["cutoff"] = materialize_cutoff;
    nlohmann::ordered_json growth;
    growth["C"] = fmt12(d.growth.c);
    nlohmann::ordered_json el = nlohmann::ordered_json::array();
    nlohmann::ordered_json er = nlohmann::ordered_json::array();
    for (int v : d.growth.exp_left) el.push_back(v);
    for (int v : d.growth.exp_right) er.push_back(v);
    growth["exponents_left"] = el;
    growth["exponents_right"] = er;
    j["growth"] = growth;
    if (include_coeffs) {
        BasisConfig cfg(d.modes, materialize_cutoff);
        Matrix m = materialize(d, cfg);
        nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
        for (long i = 0; i < cfg.dim(); ++i)
            for (long k = 0; k < cfg.dim(); ++k) {
                nlohmann::ordered_json pair = nlohmann::ordered_json::array();
                pair.push_back(fmt12(m(i, k).real()));
                pair.push_back(fmt12(m(i, k).imag()));
                coeffs.push_back(pair);
            }
        j["coeffs"] = coeffs;
    }
    return j.dump(1) + "\n";
}

}  // namespace sop
