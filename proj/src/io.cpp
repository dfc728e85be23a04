#include "amalg/io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace amalg {

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::json to_json(const BasisManifest& m) {
    nlohmann::json j;
    j["kind"] = to_string(m.kind);
    j["n_max"] = m.n_max;
    j["mode"] = to_string(m.mode);
    j["seed"] = m.seed ? nlohmann::json(*m.seed) : nlohmann::json(nullptr);
    j["tie_break_rule_version"] = m.tie_break_rule_version;
    return j;
}

nlohmann::json to_json(const DomainPoint& p) {
    nlohmann::json j;
    j["domain"] = to_string(domain_of(p));
    const auto names = coordinate_names(domain_of(p));
    const auto coords = coordinates(p);
    for (std::size_t i = 0; i < coords.size(); ++i) j[names[i]] = coords[i];
    return j;
}

nlohmann::json to_json(const Sandwich& s) {
    return {{"lower", s.lower}, {"mid", s.mid}, {"mid_identity", s.mid_identity}, {"upper", s.upper},
            {"t", s.t},         {"alpha", s.alpha}, {"holds", s.holds()}};
}

nlohmann::json to_json(const Certificate& c) {
    nlohmann::json j;
    j["basis"] = to_json(c.manifest);
    j["n"] = c.n;
    j["z"] = to_json(c.z);
    j["phi_next_z"] = c.phi_next_z;
    j["phi_sign"] = c.phi_sign;
    j["amalg_zz"] = c.amalg_zz;
    j["amalg_max"] = c.amalg_max;
    j["kappa"] = c.kappa;
    j["alpha"] = c.alpha;
    j["t"] = c.t;
    j["n_cut"] = c.n_cut;
    j["p_max"] = c.p_max;
    j["p_raw_min"] = c.p_raw_min;
    j["sandwich"] = to_json(c.sandwich);
    j["weighted"] = c.weighted;
    j["lower_x"] = c.lower_x;
    j["weighted_bound_holds"] = c.weighted_bound_holds;
    j["constant_check"] = c.constant_check;
    j["integral"] = c.integral;
    j["integral_identity"] = c.integral_identity;
    j["orthogonality_residue"] = c.orthogonality_residue;
    j["semigroup_residue"] = c.semigroup_residue;
    j["quadrature_error"] = c.quadrature_error;
    j["ratio"] = c.ratio;
    j["grid_size"] = c.grid_size;
    return j;
}

nlohmann::json to_json(const SpookyScan& s) {
    return {{"x", to_json(s.x)},
            {"y", to_json(s.y)},
            {"n_list", s.n_list},
            {"values", s.values},
            {"by_n", s.by_n},
            {"by_sqrt_n", s.by_sqrt_n},
            {"thresholds", {{"strong", s.thresholds.strong}, {"weak", s.thresholds.weak}, {"log_power", s.thresholds.log_power}}},
            {"classification", to_string(s.classification)}};
}

nlohmann::json to_json(const IndependenceReport& r) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& p : r.points) points.push_back(to_json(p));
    return {{"points", points},     {"n", r.n},
            {"samples", r.samples}, {"seed", r.seed},
            {"mean", r.mean},       {"variance", r.variance},
            {"expected_variance", r.expected_variance},
            {"ks", r.ks},           {"thresholds", r.thresholds},
            {"boxes", r.boxes},     {"joint", r.joint},
            {"product", r.product}, {"max_gap", r.max_gap}};
}

nlohmann::json to_json(const CorrelationProfile& p) {
    std::vector<double> coords;
    for (const auto& g : p.grid) coords.push_back(coordinates(g)[0]);
    return {{"n", p.n},
            {"next_index", p.next_index},
            {"x0", to_json(p.x0)},
            {"split", p.split},
            {"inner", p.inner},
            {"outer", p.outer},
            {"sum", p.inner + p.outer},
            {"quadrature_error", p.quadrature_error},
            {"profile", {{"y", coords}, {"value", p.values}}}};
}

nlohmann::json to_json(const ZonalFit& f) {
    return {{"k_list", f.k_list},
            {"diag", f.diag},
            {"antipodal", f.antipodal},
            {"diag_exponent", f.diag_exponent},
            {"antipodal_exponent", f.antipodal_exponent},
            {"diag_exponent_n", f.diag_exponent_n},
            {"antipodal_exponent_n", f.antipodal_exponent_n},
            {"envelope_window", kEnvelopeWindow}};
}

nlohmann::json to_json(const GraphSpec& g) {
    return {{"vertices", g.vertices}, {"edges", g.edges.size()}, {"provenance", g.provenance}};
}

std::string field_csv_body(const AmalgField& field) {
    std::ostringstream os;
    const Domain d = field.grid.empty() ? Domain::Interval : domain_of(field.grid.front());
    for (const auto& name : coordinate_names(d)) os << name << ',';
    os << "value\n";
    for (std::size_t i = 0; i < field.grid.size(); ++i) {
        for (double c : coordinates(field.grid[i])) os << format_double(c) << ',';
        os << format_double(field.values[i]) << '\n';
    }
    return os.str();
}

std::string field_csv(const AmalgField& field, const nlohmann::json& manifest) {
    return "# " + manifest.dump() + "\n" + field_csv_body(field);
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace amalg
