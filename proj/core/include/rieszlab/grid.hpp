#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rieszlab::quad {

/// Origin-centered uniform grid on [-L, L)^N with n points per axis,
/// spacing h = 2L/n, node coordinates x_i = (i - n/2) h. The origin is a
/// grid node; each node is the midpoint of its cell.
struct GridSpec {
    int dim = 2;
    double half_width = 8.0;  // L
    int n = 512;              // points per axis, even

    void validate() const;
    double h() const { return 2.0 * half_width / n; }
    long points() const;
    double coord(int i) const { return (i - n / 2) * h(); }
    /// Flat row-major index of the node nearest to x; -1 if outside the box.
    long index_of(const std::vector<double>& x) const;
    std::vector<double> point(long flat) const;
    bool operator==(const GridSpec& o) const {
        return dim == o.dim && half_width == o.half_width && n == o.n;
    }
};

/// Sampled field over a grid, fiber components interleaved per node
/// (values[node * fiber + c]).
struct FieldSamples {
    GridSpec grid;
    int fiber = 1;
    std::vector<double> values;

    void validate() const;
    double at(long node, int c) const { return values[static_cast<std::size_t>(node * fiber + c)]; }
    double& at(long node, int c) { return values[static_cast<std::size_t>(node * fiber + c)]; }
    /// Euclidean magnitude across fiber components at a node.
    double magnitude(long node) const;
};

/// Flat binary serialization with a short text header (dims, spacing, fiber).
void save_field(const FieldSamples& f, const std::string& path);
FieldSamples load_field(const std::string& path);

}  // namespace rieszlab::quad
