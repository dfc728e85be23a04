#include "amalg/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "amalg/amalg.hpp"
#include "amalg/graphlap.hpp"
#include "amalg/heat.hpp"
#include "amalg/io.hpp"
#include "amalg/spooky.hpp"

namespace amalg {

namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;

/// Bad flag values discovered after CLI11 parsing.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string basis = "interval";
    std::string mode = "l2";
    std::size_t n = 100;
    std::string x0 = "1";
    std::string x = "";
    std::string y = "0";
    std::uint64_t seed = 0;
    std::size_t grid_points = 0;
    std::string kind = "amalg";
    int which = 4;
    std::size_t prop_n = 0;  // 0: the check's reference size
    std::size_t trials = 200;
    double per_wavelength = 10.0;
    std::string z;
    std::string n_list;
    std::vector<std::string> points;
    std::size_t samples = 100000;
    double p = 0.1;
    std::size_t vertex = 0;
    std::size_t count = 0;
    std::string input;
    double split = 0.15;
    std::size_t next = 0;
    std::string k_list = "100,200,500,1000,2000,5000,10000";
    std::string out;
    bool timestamp = false;
    std::string verify;
};

struct Output {
    bool csv = false;
    std::string body;               // CSV rows or compact JSON result
    json result;                    // JSON commands
    std::optional<json> basis;      // manifest of the basis in use
    bool pass = true;
};

// ---------------------------------------------------------------------------
// flag interpretation

std::vector<double> parse_numbers(const std::string& text, const char* flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos)
            throw UsageError(std::string(flag) + ": cannot parse '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw UsageError(std::string(flag) + ": empty value");
    return out;
}

std::vector<std::size_t> parse_counts(const std::string& text, const char* flag) {
    std::vector<std::size_t> out;
    for (double v : parse_numbers(text, flag)) {
        if (!(v >= 1.0) || v != std::floor(v)) throw UsageError(std::string(flag) + ": expected positive integers");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

DomainPoint parse_point(Domain d, const std::string& text, const char* flag) {
    const auto v = parse_numbers(text, flag);
    const std::size_t want = dimension(d) == 2 && d != Domain::SphereZonal ? 2 : 1;
    if (v.size() != want)
        throw UsageError(std::string(flag) + ": expected " + std::to_string(want) + " coordinate(s) for " + to_string(d));
    try {
        return make_point(d, v[0], want == 2 ? v[1] : 0.0);
    } catch (const std::exception& e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
}

BasisKind basis_kind(const Options& o) {
    try {
        return parse_basis_kind(o.basis);
    } catch (const std::exception& e) {
        throw UsageError(std::string("--basis: ") + e.what());
    }
}

Normalization normalization(const Options& o) {
    try {
        return parse_normalization(o.mode);
    } catch (const std::exception& e) {
        throw UsageError(std::string("--mode: ") + e.what());
    }
}

Basis build_basis(BasisKind kind, std::size_t size, Normalization mode, std::uint64_t seed) {
    if (size == 0) throw UsageError("--n must be positive");
    return make_basis(kind, size, mode,
                      kind == BasisKind::CircleRandom ? std::optional<std::uint64_t>(seed) : std::nullopt);
}

// ---------------------------------------------------------------------------
// commands

Output cmd_field(const Options& o) {
    const auto kind = basis_kind(o);
    const Basis basis = build_basis(kind, o.n, normalization(o), o.seed);
    const DomainPoint x0 = parse_point(basis.domain(), o.x0, "--x0");
    const auto grid = o.grid_points ? uniform_grid(basis, o.n, o.grid_points) : default_grid(basis, o.n);
    AmalgField field;
    if (o.kind == "amalg") field = amalg_field(basis, o.n, x0, grid);
    else if (o.kind == "projector") field = projector_field(basis, o.n, x0, grid);
    else throw UsageError("--kind must be amalg or projector");
    Output out;
    out.csv = true;
    out.body = field_csv_body(field);
    out.basis = to_json(basis.manifest());
    out.result = {{"field", to_string(field.kind)},
                  {"n", o.n},
                  {"x0", to_json(x0)},
                  {"points", grid.size()},
                  {"zero_count", field.signs.zero_count},
                  {"sign_digest", sign_digest(field.signs)}};
    return out;
}

Output cmd_props(const Options& o) {
    Output out;
    json r;
    r["prop"] = o.which;
    auto size = [&](std::size_t reference) { return o.prop_n ? o.prop_n : reference; };
    switch (o.which) {
        case 1:
        case 2: {
            const auto kind = basis_kind(o);
            const std::size_t n = size(100);
            const Basis basis = build_basis(kind, n, Normalization::L2, o.seed);
            const DomainPoint x = parse_point(basis.domain(), o.x.empty() ? o.x0 : o.x, "--x");
            out.basis = to_json(basis.manifest());
            r["x"] = to_json(x);
            r["n"] = n;
            if (o.which == 1) {
                const auto signs = sign_vector(basis, n, x);
                const double mass = l2_mass(basis, n, x);
                const double expected = double(n - signs.zero_count);
                r["mass"] = mass;
                r["expected"] = expected;
                r["zero_count"] = signs.zero_count;
                out.pass = std::abs(mass - expected) <= 1e-6 * n;
            } else {
                const auto b = diag_bounds_report(basis, n, x);
                r["lower"] = b.lower;
                r["value"] = b.value;
                r["upper"] = b.upper;
                r["easylower"] = b.easylower;
                r["projector"] = b.projector;
                r["sup_norm"] = b.sup_norm;
                const double slack = 1e-9 * b.upper;
                out.pass = b.easylower <= b.value + slack && b.value <= b.upper + slack;
            }
            break;
        }
        case 3: {
            const std::size_t n = size(10000);
            const auto p = verify_prop3(n);
            r = {{"prop", 3}, {"n", n}, {"x", p.x}, {"y", p.y}, {"diag", p.diag}, {"value", p.value},
                 {"ratio", p.ratio}, {"c_opt", p.c_opt}, {"profile_gap", p.profile_gap}};
            out.pass = std::abs(p.ratio - 1.308) <= 0.01 && std::abs(p.c_opt - 1.175) <= 0.01;
            break;
        }
        case 4: {
            const std::size_t n = size(300);
            const double v = verify_prop4(n);
            r["n"] = n;
            r["value"] = v;
            r["offset"] = v + n / 3.0;
            out.pass = std::abs(v + n / 3.0) <= 2.0;
            break;
        }
        case 5: {
            const std::size_t n = size(250);
            const double x = o.x.empty() ? 1.0 : parse_numbers(o.x, "--x").at(0);
            const auto p = verify_prop5(n, o.trials, o.seed, x);
            r = {{"prop", 5},
                 {"n", n},
                 {"trials", p.trials},
                 {"seed", p.seed},
                 {"x", p.x},
                 {"mean_diag", p.mean_diag},
                 {"expected_diag", p.expected_diag},
                 {"separations", p.separations},
                 {"offdiag_mean", p.offdiag_mean},
                 {"offdiag_mean_abs", p.offdiag_mean_abs},
                 {"offdiag_expected", p.offdiag_expected},
                 {"c1", p.c1},
                 {"c2", p.c2},
                 {"sup_threshold", p.sup_threshold},
                 {"sup_max", p.sup_max},
                 {"sup_bound_rate", p.sup_bound_rate}};
            out.pass = std::abs(p.mean_diag / p.expected_diag - 1.0) < 0.02 && p.sup_bound_rate >= 0.95;
            break;
        }
        case 6: {
            const std::size_t n = size(100000);
            const double x = o.x.empty() ? 1.0 : parse_numbers(o.x, "--x").at(0);
            if (!(x > 0.0 && x < kPi / 3.0)) throw UsageError("--x must lie in (0, pi/3)");
            const auto p = verify_prop6(x, n);
            r = {{"prop", 6},
                 {"n", n},
                 {"x", x},
                 {"diag_ratio", p.diag_ratio},
                 {"spooky_ratio", p.spooky_ratio},
                 {"diag_limit", 2.0 / kPi},
                 {"spooky_limit", 2.0 / (3.0 * kPi)}};
            out.pass = std::abs(p.diag_ratio - 2.0 / kPi) < 0.02 && std::abs(p.spooky_ratio - 2.0 / (3.0 * kPi)) < 0.02;
            break;
        }
        default:
            throw UsageError("--which must be one of 1..6");
    }
    r["pass"] = out.pass;
    out.result = r;
    return out;
}

Output cmd_certify(const Options& o) {
    const auto kind = basis_kind(o);
    if (o.n == 0) throw UsageError("--n must be positive");
    std::size_t size = 16 * (o.n + 1);
    constexpr std::size_t kMaxModes = 1u << 21;
    for (;;) {
        const Basis basis = build_basis(kind, size, Normalization::L2, o.seed);
        std::optional<DomainPoint> z;
        if (!o.z.empty()) z = parse_point(basis.domain(), o.z, "--z");
        const auto grid = default_grid(basis, o.n + 1, o.per_wavelength);
        try {
            const auto c = theorem2_certificate(basis, o.n, grid, z);
            Output out;
            out.basis = to_json(basis.manifest());
            out.result = to_json(c);
            out.result["grid"] = {{"points", grid.size()}, {"per_wavelength", o.per_wavelength}};
            out.pass = c.sandwich.holds() && std::abs(c.orthogonality_residue) < 1e-6;
            out.result["pass"] = out.pass;
            return out;
        } catch (const BasisTooShort&) {
            if (size >= kMaxModes) throw;
            size *= 2;
        }
    }
}

Output cmd_scan(const Options& o) {
    const auto kind = basis_kind(o);
    const auto n_list = parse_counts(o.n_list.empty() ? std::to_string(o.n) : o.n_list, "--n-list");
    if (!std::is_sorted(n_list.begin(), n_list.end())) throw UsageError("--n-list must be ascending");
    const Basis basis = build_basis(kind, n_list.back(), normalization(o), o.seed);
    const DomainPoint x = parse_point(basis.domain(), o.x.empty() ? o.x0 : o.x, "--x");
    const DomainPoint y = parse_point(basis.domain(), o.y, "--y");
    Output out;
    out.basis = to_json(basis.manifest());
    out.result = to_json(spooky_scan(basis, x, y, n_list));
    return out;
}

Output cmd_independence(const Options& o) {
    const auto kind = basis_kind(o);
    const Basis basis = build_basis(kind, o.n, normalization(o), o.seed);
    if (o.points.empty()) throw UsageError("--point is required");
    std::vector<DomainPoint> pts;
    for (const auto& s : o.points) pts.push_back(parse_point(basis.domain(), s, "--point"));
    if (o.samples < 10000) throw UsageError("--samples must be at least 10000");
    Output out;
    out.basis = to_json(basis.manifest());
    out.result = to_json(independence_test(basis, pts, o.n, o.samples, o.seed));
    return out;
}

Output cmd_graph(const Options& o) {
    GraphSpec g;
    if (o.kind == "tutte") {
        g = tutte();
    } else if (o.kind == "er") {
        if (!(o.p > 0.0 && o.p < 1.0)) throw UsageError("--p must lie in (0, 1)");
        g = erdos_renyi(o.n, o.p, o.seed);
    } else if (o.kind == "file") {
        std::ifstream in(o.input);
        if (!in) throw UsageError("--input: cannot open '" + o.input + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        try {
            g = parse_edge_list(ss.str());
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("--input: ") + e.what());
        }
    } else {
        throw UsageError("--kind must be tutte, er or file");
    }
    if (o.vertex >= g.vertices) throw UsageError("--vertex outside the graph");
    const std::size_t count = o.count ? o.count : g.vertices;
    if (count > g.vertices) throw UsageError("--count exceeds the vertex count");
    const Matrix l = laplacian(g);
    const auto spectrum = eigh(l);
    const auto row = graph_amalg(spectrum, count, o.vertex);
    Output out;
    out.csv = true;
    out.body = graph_amalg_csv(row);
    out.result = {{"graph", to_json(g)},
                  {"vertex", o.vertex},
                  {"count", count},
                  {"nonzero", row.nonzero},
                  {"residual", max_residual(l, spectrum)},
                  {"orthonormality", orthonormality_error(spectrum)},
                  {"eigenvalues", spectrum.values}};
    double mass = 0.0;
    for (double v : row.values) mass += v * v;
    out.pass = std::abs(mass - double(row.nonzero)) < 1e-8 * std::max(1.0, double(row.nonzero));
    return out;
}

Output cmd_correlation(const Options& o) {
    const auto kind = basis_kind(o);
    const std::size_t reach = std::max(o.n + 1, o.next);
    const Basis basis = build_basis(kind, reach, normalization(o), o.seed);
    const DomainPoint x0 = parse_point(basis.domain(), o.x0, "--x0");
    if (!(o.split > 0.0)) throw UsageError("--split must be positive");
    const auto p = correlation_profile(basis, o.n, x0, o.split, o.next);
    Output out;
    out.basis = to_json(basis.manifest());
    out.result = to_json(p);
    out.pass = std::abs(p.inner + p.outer) < 1e-6 * std::max<double>(1.0, o.n);
    return out;
}

Output cmd_zonal(const Options& o) {
    Output out;
    out.result = to_json(zonal_scaling_fit(parse_counts(o.k_list, "--k-list")));
    return out;
}

const std::map<std::string, std::function<Output(const Options&)>>& commands() {
    static const std::map<std::string, std::function<Output(const Options&)>> table = {
        {"field", cmd_field},   {"props", cmd_props},     {"certify", cmd_certify},
        {"scan", cmd_scan},     {"independence", cmd_independence},
        {"graph", cmd_graph},   {"correlation", cmd_correlation},
        {"zonal", cmd_zonal},
    };
    return table;
}

// ---------------------------------------------------------------------------
// parsing

void build_app(CLI::App& app, Options& o) {
    app.option_defaults()->always_capture_default();
    app.require_subcommand(0, 1);
    app.add_option("--verify", o.verify, "Recompute an output file and compare its digest");

    auto add_out = [&](CLI::App* s) {
        s->add_option("--out", o.out, "Output file (stdout when omitted)");
        s->add_flag("--timestamp", o.timestamp, "Record the wall-clock time in the manifest");
    };
    auto add_basis = [&](CLI::App* s) {
        s->add_option("--basis", o.basis, "Basis kind")->capture_default_str();
        s->add_option("--mode", o.mode, "Normalization: raw or l2")->capture_default_str();
        s->add_option("--seed", o.seed, "Seed for randomized bases and Monte Carlo")->capture_default_str();
    };

    auto* field = app.add_subcommand("field", "Dump amalg(x0, .) or the projector over a grid as CSV");
    add_basis(field);
    field->add_option("--n", o.n, "Number of eigenfunctions")->capture_default_str();
    field->add_option("--x0", o.x0, "Base point, comma-separated coordinates")->capture_default_str();
    field->add_option("--grid-points", o.grid_points, "Points per axis (0: 10 per wavelength)")->capture_default_str();
    field->add_option("--kind", o.kind, "amalg or projector")->capture_default_str();
    add_out(field);

    auto* props = app.add_subcommand("props", "Run one reference check (1..6) and print a JSON verdict");
    props->add_option("--which", o.which, "1 mass, 2 diagonal bounds, 3 near-diagonal peak, 4 circle constant, 5 random circle, 6 interval limits")->required();
    props->add_option("--basis", o.basis, "Basis kind (checks 1, 2)")->capture_default_str();
    props->add_option("--n", o.prop_n, "Size parameter (0: reference size)")->capture_default_str();
    props->add_option("--x", o.x, "Base point");
    props->add_option("--trials", o.trials, "Monte Carlo trials (check 5)")->capture_default_str();
    props->add_option("--seed", o.seed, "Seed (check 5)")->capture_default_str();
    add_out(props);

    auto* certify = app.add_subcommand("certify", "Heat-kernel certificate for the peak of phi_{n+1} as JSON");
    certify->add_option("--basis", o.basis, "Basis kind")->capture_default_str();
    certify->add_option("--n", o.n, "Number of eigenfunctions")->capture_default_str();
    certify->add_option("--seed", o.seed, "Seed for randomized bases")->capture_default_str();
    certify->add_option("--per-wavelength", o.per_wavelength, "Search grid density")->capture_default_str();
    certify->add_option("--z", o.z, "Use this point instead of the argmax of |phi_{n+1}|");
    add_out(certify);

    auto* scan = app.add_subcommand("scan", "Spooky-action scan of amalg(x, y) over a list of n");
    add_basis(scan);
    scan->add_option("--x", o.x, "First point")->required();
    scan->add_option("--y", o.y, "Second point")->capture_default_str();
    scan->add_option("--n-list", o.n_list, "Ascending comma-separated n values")->required();
    add_out(scan);

    auto* indep = app.add_subcommand("independence", "Rademacher Monte Carlo of the sign sums");
    indep->add_option("--basis", o.basis, "Basis kind")->capture_default_str();
    indep->add_option("--mode", o.mode, "Normalization: raw or l2")->capture_default_str();
    indep->add_option("--seed", o.seed, "Seed")->capture_default_str();
    indep->add_option("--n", o.n, "Number of eigenfunctions")->capture_default_str();
    indep->add_option("--point", o.points, "Evaluation point (repeatable)")->required();
    indep->add_option("--samples", o.samples, "Sample count")->capture_default_str();
    add_out(indep);

    auto* graph = app.add_subcommand("graph", "Graph Laplacian amalg row as CSV");
    graph->add_option("--kind", o.kind, "tutte, er or file")->required();
    graph->add_option("--n", o.n, "Vertex count (er)")->capture_default_str();
    graph->add_option("--p", o.p, "Edge probability (er)")->capture_default_str();
    graph->add_option("--seed", o.seed, "Seed (er)")->capture_default_str();
    graph->add_option("--vertex", o.vertex, "Base vertex")->capture_default_str();
    graph->add_option("--count", o.count, "Number of eigenvectors (0: all)")->capture_default_str();
    graph->add_option("--input", o.input, "Edge-list file (file)");
    add_out(graph);

    auto* corr = app.add_subcommand("correlation", "Inner and outer correlation of amalg with phi_{n+1}");
    corr->add_option("--basis", o.basis, "Basis kind")->capture_default_str();
    corr->add_option("--mode", o.mode, "Normalization: raw or l2")->capture_default_str();
    corr->add_option("--seed", o.seed, "Seed for randomized bases")->capture_default_str();
    corr->add_option("--n", o.n, "Number of eigenfunctions")->capture_default_str();
    corr->add_option("--x0", o.x0, "Base point")->capture_default_str();
    corr->add_option("--split", o.split, "Radius separating inner from outer")->capture_default_str();
    corr->add_option("--next", o.next, "Index of the correlating eigenfunction (0: n + 1)")->capture_default_str();
    add_out(corr);

    auto* zonal = app.add_subcommand("zonal", "Zonal ladder exponent fits");
    zonal->add_option("--k-list", o.k_list, "Comma-separated ladder lengths")->capture_default_str();
    add_out(zonal);
}

// Flags in effect for the chosen subcommand, defaults included.
json flags_of(const CLI::App* sub) {
    json flags = json::object();
    for (const CLI::Option* opt : sub->get_options()) {
        const std::string name = opt->get_single_name();
        if (name == "help" || name == "out" || name == "timestamp") continue;
        if (opt->count() > 0) {
            const auto& res = opt->results();
            if (opt->get_expected_max() > 1) flags[name] = res;
            else flags[name] = res.empty() ? std::string() : res.back();
        } else if (!opt->get_default_str().empty()) {
            flags[name] = opt->get_default_str();
        }
    }
    return flags;
}

std::vector<std::string> replay_args(const CLI::App* sub, const std::vector<std::string>& args) {
    std::vector<std::string> out{sub->get_name()};
    bool first = true;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (first && args[i] == sub->get_name()) {
            first = false;
            continue;
        }
        if (args[i] == "--timestamp") continue;
        if (args[i] == "--out") {
            ++i;
            continue;
        }
        if (args[i].rfind("--out=", 0) == 0) continue;
        out.push_back(args[i]);
    }
    return out;
}

struct Rendered {
    std::string text;
    std::string digest;
    bool pass = true;
};

Rendered render(const std::string& name, const Output& result, const json& flags, const std::vector<std::string>& args,
                bool timestamp) {
    json manifest;
    manifest["command"] = name;
    manifest["flags"] = flags;
    manifest["args"] = args;
    manifest["tool_version"] = kToolVersion;
    manifest["basis"] = result.basis ? *result.basis : json(nullptr);
    if (flags.contains("seed")) manifest["seed"] = flags["seed"];
    if (timestamp) {
        const auto now = std::chrono::system_clock::now().time_since_epoch();
        manifest["timestamp"] = std::chrono::duration_cast<std::chrono::seconds>(now).count();
    }
    Rendered r;
    r.pass = result.pass;
    if (result.csv) {
        manifest["summary"] = result.result;
        r.digest = sha256_hex(result.body);
        manifest["output_digest"] = r.digest;
        r.text = "# " + manifest.dump() + "\n" + result.body;
    } else {
        const std::string payload = result.result.dump();
        r.digest = sha256_hex(payload);
        manifest["output_digest"] = r.digest;
        r.text = dump_json(json{{"manifest", manifest}, {"result", result.result}});
    }
    return r;
}

struct Parsed {
    std::unique_ptr<CLI::App> app;
    Options options;
    CLI::App* sub = nullptr;
};

// Returns an exit code when parsing ends the run (help, usage errors).
std::optional<int> parse(Parsed& p, const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    p.app = std::make_unique<CLI::App>("Signed spectral projector laboratory", "amalg");
    build_app(*p.app, p.options);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        p.app->parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << p.app->help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "amalg: " << e.what() << "\n";
        return kExitUsage;
    }
    for (CLI::App* s : p.app->get_subcommands()) p.sub = s;
    return std::nullopt;
}

int execute(Parsed& p, const std::vector<std::string>& args, Rendered& rendered, std::ostream& err) {
    try {
        const Output result = commands().at(p.sub->get_name())(p.options);
        rendered = render(p.sub->get_name(), result, flags_of(p.sub), replay_args(p.sub, args), p.options.timestamp);
        return rendered.pass ? kExitOk : kExitContract;
    } catch (const UsageError& e) {
        err << "amalg: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "amalg: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        err << "amalg: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "amalg: " << e.what() << "\n";
        return kExitContract;
    }
}

int verify(const std::string& path, std::ostream& out, std::ostream& err) {
    std::ifstream in(path);
    if (!in) {
        err << "amalg: cannot open '" << path << "'\n";
        return kExitUsage;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    json manifest;
    try {
        if (text.rfind("# ", 0) == 0) manifest = json::parse(text.substr(2, text.find('\n') - 2));
        else manifest = json::parse(text).at("manifest");
    } catch (const std::exception& e) {
        err << "amalg: '" << path << "' carries no readable manifest: " << e.what() << "\n";
        return kExitUsage;
    }
    std::vector<std::string> args;
    try {
        args = manifest.at("args").get<std::vector<std::string>>();
    } catch (const std::exception&) {
        err << "amalg: manifest has no argument list\n";
        return kExitUsage;
    }
    Parsed p;
    if (auto code = parse(p, args, out, err)) return *code;
    if (!p.sub) {
        err << "amalg: manifest names no command\n";
        return kExitUsage;
    }
    Rendered fresh;
    const int code = execute(p, args, fresh, err);
    if (code == kExitUsage) return code;
    const std::string expected = manifest.value("output_digest", "");
    const bool match = !expected.empty() && expected == fresh.digest;
    out << dump_json(json{{"file", path}, {"expected", expected}, {"actual", fresh.digest}, {"match", match}});
    return match ? kExitOk : kExitContract;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Parsed p;
    if (auto code = parse(p, args, out, err)) return *code;
    if (!p.options.verify.empty()) {
        if (p.sub) {
            err << "amalg: --verify takes no subcommand\n";
            return kExitUsage;
        }
        return verify(p.options.verify, out, err);
    }
    if (!p.sub) {
        err << p.app->help();
        return kExitUsage;
    }
    Rendered rendered;
    const int code = execute(p, args, rendered, err);
    if (code == kExitUsage || rendered.text.empty()) return code;
    if (p.options.out.empty()) {
        out << rendered.text;
    } else {
        std::ofstream file(p.options.out, std::ios::binary);
        if (!file || !(file << rendered.text)) {
            err << "amalg: cannot write '" << p.options.out << "'\n";
            return kExitContract;
        }
    }
    return code;
}

}  // namespace amalg
