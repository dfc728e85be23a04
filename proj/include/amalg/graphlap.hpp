#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace amalg {

/// Undirected simple graph on vertices 0..vertices-1.
struct GraphSpec {
    std::size_t vertices = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::string provenance = "custom";
};

/// Validates the edge list (range, no self-loops, no duplicates in either
/// orientation) and returns the spec unchanged.
GraphSpec make_graph(std::size_t vertices, std::vector<std::pair<std::size_t, std::size_t>> edges,
                     std::string provenance = "custom");

GraphSpec tutte();
GraphSpec erdos_renyi(std::size_t n, double p, std::uint64_t seed);
GraphSpec path_graph(std::size_t n);
GraphSpec cycle_graph(std::size_t n);
GraphSpec complete_graph(std::size_t n);

std::vector<std::size_t> degrees(const GraphSpec& g);
bool is_connected(const GraphSpec& g);

/// One "u v" pair per line.
std::string edge_list_text(const GraphSpec& g);
/// Parses the edge-list format; lines starting with '#' are skipped. The
/// vertex count is max(vertices, largest index + 1).
GraphSpec parse_edge_list(const std::string& text, std::size_t vertices = 0);

/// Dense row-major symmetric matrix.
struct Matrix {
    std::size_t n = 0;
    std::vector<double> a;

    explicit Matrix(std::size_t n = 0) : n(n), a(n * n, 0.0) {}
    double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

/// L = D - A.
Matrix laplacian(const GraphSpec& g);

class EigenError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kClusterTolerance = 1e-8;
inline constexpr double kGraphZeroTolerance = 1e-12;

/// Ascending eigenvalues with orthonormal eigenvectors; vectors[k][i] is
/// component i of v_{k+1}.
struct GraphSpectrum {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;
    int sweeps = 0;
};

/// Cyclic Jacobi. Eigenspaces whose eigenvalues agree to 1e-8 (relative)
/// are re-based by Gram-Schmidt of the projected coordinate vectors, and each
/// vector's largest-magnitude component (lowest index on ties) is made
/// positive. Throws EigenError after 100 sweeps.
GraphSpectrum eigh(const Matrix& m);

/// max_k ||L v_k - lambda_k v_k|| / (1 + lambda_k).
double max_residual(const Matrix& m, const GraphSpectrum& s);
/// max |V^T V - I|.
double orthonormality_error(const GraphSpectrum& s);

struct GraphAmalgRow {
    std::size_t vertex = 0;
    std::size_t n = 0;
    std::vector<double> values;       // amalg(i, j) over j
    std::vector<int> signs;           // sgn(v_k(i)), k = 1..n
    std::size_t nonzero = 0;
};

/// amalg^(n)(i, j) = sum_{k<=n} sgn(v_k(i)) v_k(j); components below
/// 1e-12 ||v_k||_inf count as zero.
GraphAmalgRow graph_amalg(const GraphSpectrum& s, std::size_t n, std::size_t i);

/// vertex,value,sign,abs rows.
std::string graph_amalg_csv(const GraphAmalgRow& row);

}  // namespace amalg
