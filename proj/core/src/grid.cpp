#include "rieszlab/grid.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rieszlab::quad {

void GridSpec::validate() const {
    if (dim < 1 || dim > 3) throw std::invalid_argument("grid: dim must be 1..3");
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("grid: n must be even and >= 2");
    if (!(half_width > 0.0)) throw std::invalid_argument("grid: half_width must be positive");
}

long GridSpec::points() const {
    long p = 1;
    for (int d = 0; d < dim; ++d) p *= n;
    return p;
}

long GridSpec::index_of(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != dim) throw std::invalid_argument("grid: point dim mismatch");
    long flat = 0;
    for (int d = 0; d < dim; ++d) {
        const long i = std::lround(x[static_cast<std::size_t>(d)] / h()) + n / 2;
        if (i < 0 || i >= n) return -1;
        flat = flat * n + i;
    }
    return flat;
}

std::vector<double> GridSpec::point(long flat) const {
    std::vector<double> x(static_cast<std::size_t>(dim));
    for (int d = dim - 1; d >= 0; --d) {
        x[static_cast<std::size_t>(d)] = coord(static_cast<int>(flat % n));
        flat /= n;
    }
    return x;
}

void FieldSamples::validate() const {
    grid.validate();
    if (fiber < 1) throw std::invalid_argument("field samples: fiber must be >= 1");
    if (static_cast<long>(values.size()) != grid.points() * fiber)
        throw std::invalid_argument("field samples: value count mismatch");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("field samples: non-finite entry");
}

double FieldSamples::magnitude(long node) const {
    double s = 0.0;
    for (int c = 0; c < fiber; ++c) {
        const double v = at(node, c);
        s += v * v;
    }
    return std::sqrt(s);
}

void save_field(const FieldSamples& f, const std::string& path) {
    f.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write field file: " + path);
    out << "rieszlab-field 1\n"
        << "dim " << f.grid.dim << "\n"
        << "n " << f.grid.n << "\n"
        << "half_width " << f.grid.half_width << "\n"
        << "fiber " << f.fiber << "\n"
        << "data\n";
    out.write(reinterpret_cast<const char*>(f.values.data()),
              static_cast<std::streamsize>(f.values.size() * sizeof(double)));
}

FieldSamples load_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open field file: " + path);
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "rieszlab-field" || version != 1)
        throw std::runtime_error("field file: bad header in " + path);
    FieldSamples f;
    std::string key;
    while (in >> key) {
        if (key == "dim") in >> f.grid.dim;
        else if (key == "n") in >> f.grid.n;
        else if (key == "half_width") in >> f.grid.half_width;
        else if (key == "fiber") in >> f.fiber;
        else if (key == "data") break;
        else throw std::runtime_error("field file: unknown header key '" + key + "'");
    }
    in.ignore(1);  // newline after "data"
    f.values.resize(static_cast<std::size_t>(f.grid.points() * f.fiber));
    in.read(reinterpret_cast<char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    if (!in) throw std::runtime_error("field file: truncated data in " + path);
    f.validate();
    return f;
}

}  // namespace rieszlab::quad
