#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace rieszlab {

/// Multi-index in Z_+^N. Exponent vector for partial derivatives and
/// monomials; order is the sum of the entries.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> exponents);
    MultiIndex(std::initializer_list<int> exponents);

    static MultiIndex zero(int dim);
    static MultiIndex unit(int dim, int axis);

    int dim() const { return static_cast<int>(e_.size()); }
    int order() const;
    int operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& exponents() const { return e_; }

    bool operator==(const MultiIndex& o) const { return e_ == o.e_; }
    bool operator!=(const MultiIndex& o) const { return e_ != o.e_; }
    // Lexicographic; used as map ordering so iteration is deterministic.
    bool operator<(const MultiIndex& o) const { return e_ < o.e_; }

    // Componentwise comparison gamma <= alpha.
    bool leq(const MultiIndex& o) const;

    MultiIndex plus(const MultiIndex& o) const;
    // Requires o.leq(*this).
    MultiIndex minus(const MultiIndex& o) const;

    // x^alpha.
    double monomial(const std::vector<double>& x) const;

    std::string to_string() const;

    /// All multi-indices of the given order in dimension dim,
    /// lexicographically sorted.
    static std::vector<MultiIndex> all_of_order(int dim, int order);

private:
    std::vector<int> e_;
};

/// alpha! = prod alpha_i!
double mi_factorial(const MultiIndex& a);

/// binom(alpha, gamma) = prod binom(alpha_i, gamma_i); zero unless gamma <= alpha.
double mi_binomial(const MultiIndex& a, const MultiIndex& g);

}  // namespace rieszlab
