#include "rieszlab/multi_index.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rieszlab {

MultiIndex::MultiIndex(std::vector<int> exponents) : e_(std::move(exponents)) {
    for (int v : e_)
        if (v < 0) throw std::invalid_argument("MultiIndex: negative exponent");
}

MultiIndex::MultiIndex(std::initializer_list<int> exponents)
    : MultiIndex(std::vector<int>(exponents)) {}

MultiIndex MultiIndex::zero(int dim) {
    return MultiIndex(std::vector<int>(static_cast<std::size_t>(dim), 0));
}

MultiIndex MultiIndex::unit(int dim, int axis) {
    std::vector<int> e(static_cast<std::size_t>(dim), 0);
    e.at(static_cast<std::size_t>(axis)) = 1;
    return MultiIndex(std::move(e));
}

int MultiIndex::order() const {
    return std::accumulate(e_.begin(), e_.end(), 0);
}

bool MultiIndex::leq(const MultiIndex& o) const {
    if (dim() != o.dim()) return false;
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] > o.e_[i]) return false;
    return true;
}

MultiIndex MultiIndex::plus(const MultiIndex& o) const {
    if (dim() != o.dim()) throw std::invalid_argument("MultiIndex::plus: dim mismatch");
    std::vector<int> e(e_);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += o.e_[i];
    return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::minus(const MultiIndex& o) const {
    if (!o.leq(*this)) throw std::invalid_argument("MultiIndex::minus: not componentwise <=");
    std::vector<int> e(e_);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] -= o.e_[i];
    return MultiIndex(std::move(e));
}

double MultiIndex::monomial(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != dim())
        throw std::invalid_argument("MultiIndex::monomial: dim mismatch");
    double p = 1.0;
    for (std::size_t i = 0; i < e_.size(); ++i)
        for (int k = 0; k < e_[i]; ++k) p *= x[i];
    return p;
}

std::string MultiIndex::to_string() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < e_.size(); ++i) {
        if (i) os << ",";
        os << e_[i];
    }
    os << ")";
    return os.str();
}

std::vector<MultiIndex> MultiIndex::all_of_order(int dim, int order) {
    if (dim < 1) throw std::invalid_argument("all_of_order: dim must be >= 1");
    if (order < 0) throw std::invalid_argument("all_of_order: negative order");
    std::vector<MultiIndex> out;
    std::vector<int> cur(static_cast<std::size_t>(dim), 0);
    // Depth-first over positions, emitting exponent vectors summing to `order`.
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == dim - 1) {
            cur[static_cast<std::size_t>(pos)] = left;
            out.emplace_back(cur);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            cur[static_cast<std::size_t>(pos)] = k;
            self(self, pos + 1, left - k);
        }
    };
    rec(rec, 0, order);
    std::sort(out.begin(), out.end());
    return out;
}

double mi_factorial(const MultiIndex& a) {
    double f = 1.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int k = 2; k <= a[i]; ++k) f *= k;
    return f;
}

double mi_binomial(const MultiIndex& a, const MultiIndex& g) {
    if (!g.leq(a)) return 0.0;
    auto choose = [](int n, int k) {
        double c = 1.0;
        for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
        return c;
    };
    double b = 1.0;
    for (int i = 0; i < a.dim(); ++i) b *= choose(a[i], g[i]);
    return b;
}

}  // namespace rieszlab
