#include "amalg/graphlap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "amalg/io.hpp"
#include "amalg/rng.hpp"

namespace amalg {

GraphSpec make_graph(std::size_t vertices, std::vector<std::pair<std::size_t, std::size_t>> edges,
                     std::string provenance) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& [u, v] : edges) {
        if (u >= vertices || v >= vertices) throw std::invalid_argument("graph: edge references a missing vertex");
        if (u == v) throw std::invalid_argument("graph: self-loop");
        if (!seen.insert(std::minmax(u, v)).second) throw std::invalid_argument("graph: duplicate edge");
    }
    return {vertices, std::move(edges), std::move(provenance)};
}

GraphSpec tutte() {
    static const std::vector<std::pair<std::size_t, std::size_t>> edges = {
        {0, 1},   {0, 2},   {0, 3},   {1, 4},   {1, 26},  {2, 10},  {2, 11},  {3, 18},  {3, 19},  {4, 5},
        {4, 33},  {5, 6},   {5, 29},  {6, 7},   {6, 27},  {7, 8},   {7, 14},  {8, 9},   {8, 38},  {9, 10},
        {9, 37},  {10, 39}, {11, 12}, {11, 39}, {12, 13}, {12, 35}, {13, 14}, {13, 15}, {14, 34}, {15, 16},
        {15, 22}, {16, 17}, {16, 44}, {17, 18}, {17, 43}, {18, 45}, {19, 20}, {19, 45}, {20, 21}, {20, 41},
        {21, 22}, {21, 23}, {22, 40}, {23, 24}, {23, 27}, {24, 25}, {24, 32}, {25, 26}, {25, 31}, {26, 33},
        {27, 28}, {28, 29}, {28, 32}, {29, 30}, {30, 31}, {30, 33}, {31, 32}, {34, 35}, {34, 38}, {35, 36},
        {36, 37}, {36, 39}, {37, 38}, {40, 41}, {40, 44}, {41, 42}, {42, 43}, {42, 45}, {43, 44},
    };
    return make_graph(46, edges, "tutte");
}

GraphSpec erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("erdos_renyi: need 0 < p < 1");
    Rng rng(seed);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.uniform() < p) edges.emplace_back(i, j);
    std::ostringstream tag;
    tag << "erdos-renyi(" << n << ", " << format_double(p) << ", " << seed << ")";
    return make_graph(n, std::move(edges), tag.str());
}

GraphSpec path_graph(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return make_graph(n, std::move(edges), "path");
}

GraphSpec cycle_graph(std::size_t n) {
    if (n < 3) throw std::invalid_argument("cycle_graph: need n >= 3");
    auto g = path_graph(n);
    g.edges.emplace_back(n - 1, 0);
    g.provenance = "cycle";
    return g;
}

GraphSpec complete_graph(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return make_graph(n, std::move(edges), "complete");
}

std::vector<std::size_t> degrees(const GraphSpec& g) {
    std::vector<std::size_t> d(g.vertices, 0);
    for (const auto& [u, v] : g.edges) {
        ++d[u];
        ++d[v];
    }
    return d;
}

bool is_connected(const GraphSpec& g) {
    if (g.vertices == 0) return true;
    std::vector<std::vector<std::size_t>> adj(g.vertices);
    for (const auto& [u, v] : g.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<bool> seen(g.vertices, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v : adj[u])
            if (!seen[v]) {
                seen[v] = true;
                ++count;
                stack.push_back(v);
            }
    }
    return count == g.vertices;
}

std::string edge_list_text(const GraphSpec& g) {
    std::ostringstream os;
    for (const auto& [u, v] : g.edges) os << u << ' ' << v << '\n';
    return os.str();
}

GraphSpec parse_edge_list(const std::string& text, std::size_t vertices) {
    std::istringstream is(text);
    std::string line;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        long long u = -1, v = -1;
        std::string extra;
        if (!(ls >> u >> v) || (ls >> extra) || u < 0 || v < 0)
            throw std::invalid_argument("edge list: malformed line " + std::to_string(lineno));
        edges.emplace_back(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
        vertices = std::max<std::size_t>(vertices, std::max(u, v) + 1);
    }
    return make_graph(vertices, std::move(edges));
}

Matrix laplacian(const GraphSpec& g) {
    Matrix l(g.vertices);
    for (const auto& [u, v] : g.edges) {
        l(u, v) -= 1.0;
        l(v, u) -= 1.0;
        l(u, u) += 1.0;
        l(v, v) += 1.0;
    }
    return l;
}

namespace {

double frobenius(const Matrix& m, bool off_only) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j)
            if (!off_only || i != j) s += m(i, j) * m(i, j);
    return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void normalize_sign(std::vector<double>& v) {
    double big = 0.0;
    for (double x : v) big = std::max(big, std::abs(x));
    for (double x : v)
        if (std::abs(x) >= big * (1.0 - 1e-10)) {
            if (x < 0.0)
                for (double& y : v) y = -y;
            return;
        }
}

// Replaces the vectors of one eigenspace by the Gram-Schmidt basis of the
// projected coordinate vectors P e_0, P e_1, ...
void pin_cluster(std::vector<std::vector<double>>& vecs, std::size_t lo, std::size_t hi) {
    const std::size_t m = hi - lo;
    const std::size_t n = vecs[lo].size();
    std::vector<std::vector<double>> basis;
    for (std::size_t j = 0; j < n && basis.size() < m; ++j) {
        std::vector<double> w(n, 0.0);
        for (std::size_t c = lo; c < hi; ++c)
            for (std::size_t i = 0; i < n; ++i) w[i] += vecs[c][j] * vecs[c][i];
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& u : basis) {
                const double d = dot(u, w);
                for (std::size_t i = 0; i < n; ++i) w[i] -= d * u[i];
            }
        const double norm = std::sqrt(dot(w, w));
        if (norm > 1e-6) {
            for (double& x : w) x /= norm;
            basis.push_back(std::move(w));
        }
    }
    if (basis.size() != m) throw EigenError("eigh: could not re-base a degenerate eigenspace");
    for (std::size_t c = 0; c < m; ++c) vecs[lo + c] = std::move(basis[c]);
}

}  // namespace

GraphSpectrum eigh(const Matrix& input) {
    const std::size_t n = input.n;
    Matrix a = input;
    Matrix v(n);
    for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;
    const double scale = frobenius(input, false);
    GraphSpectrum out;
    bool converged = n <= 1;
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
        if (frobenius(a, true) <= 1e-12 * scale) {
            converged = true;
            break;
        }
        out.sweeps = sweep + 1;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
    }
    if (!converged && frobenius(a, true) > 1e-12 * scale) throw EigenError("eigh: no convergence after 100 sweeps");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
    for (std::size_t k : order) {
        out.values.push_back(a(k, k));
        std::vector<double> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = v(i, k);
        out.vectors.push_back(std::move(col));
    }

    double top = 1.0;
    for (double x : out.values) top = std::max(top, std::abs(x));
    for (std::size_t lo = 0; lo < n;) {
        std::size_t hi = lo + 1;
        while (hi < n && out.values[hi] - out.values[hi - 1] <= kClusterTolerance * top) ++hi;
        if (hi - lo > 1) pin_cluster(out.vectors, lo, hi);
        lo = hi;
    }
    for (std::size_t k = 0; k < n; ++k) {
        normalize_sign(out.vectors[k]);
        // Rayleigh quotient against the original matrix
        const auto& x = out.vectors[k];
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) r += x[i] * input(i, j) * x[j];
        out.values[k] = r;
    }
    return out;
}

double max_residual(const Matrix& m, const GraphSpectrum& s) {
    double worst = 0.0;
    for (std::size_t k = 0; k < s.values.size(); ++k) {
        double r2 = 0.0;
        for (std::size_t i = 0; i < m.n; ++i) {
            double row = -s.values[k] * s.vectors[k][i];
            for (std::size_t j = 0; j < m.n; ++j) row += m(i, j) * s.vectors[k][j];
            r2 += row * row;
        }
        worst = std::max(worst, std::sqrt(r2) / (1.0 + std::abs(s.values[k])));
    }
    return worst;
}

double orthonormality_error(const GraphSpectrum& s) {
    double worst = 0.0;
    for (std::size_t a = 0; a < s.vectors.size(); ++a)
        for (std::size_t b = a; b < s.vectors.size(); ++b)
            worst = std::max(worst, std::abs(dot(s.vectors[a], s.vectors[b]) - (a == b ? 1.0 : 0.0)));
    return worst;
}

GraphAmalgRow graph_amalg(const GraphSpectrum& s, std::size_t n, std::size_t i) {
    if (n > s.vectors.size()) throw std::out_of_range("graph_amalg: n exceeds the vertex count");
    if (!s.vectors.empty() && i >= s.vectors.front().size()) throw std::out_of_range("graph_amalg: no such vertex");
    GraphAmalgRow row;
    row.vertex = i;
    row.n = n;
    const std::size_t size = s.vectors.empty() ? 0 : s.vectors.front().size();
    row.values.assign(size, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const auto& v = s.vectors[k];
        double big = 0.0;
        for (double x : v) big = std::max(big, std::abs(x));
        const double vi = std::abs(v[i]) < kGraphZeroTolerance * big ? 0.0 : v[i];
        const int sign = (vi > 0.0) - (vi < 0.0);
        row.signs.push_back(sign);
        if (sign == 0) continue;
        ++row.nonzero;
        for (std::size_t j = 0; j < size; ++j) row.values[j] += sign * v[j];
    }
    return row;
}

std::string graph_amalg_csv(const GraphAmalgRow& row) {
    std::ostringstream os;
    os << "vertex,value,sign,abs\n";
    for (std::size_t j = 0; j < row.values.size(); ++j) {
        const double v = row.values[j];
        os << j << ',' << format_double(v) << ',' << ((v > 0.0) - (v < 0.0)) << ',' << format_double(std::abs(v))
           << '\n';
    }
    return os.str();
}

}  // namespace amalg
