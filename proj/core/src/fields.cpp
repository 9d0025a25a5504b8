#include "rieszlab/fields.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>

#include "rieszlab/quad.hpp"
#include "rieszlab/radial.hpp"

namespace rieszlab::fields {

namespace {

std::vector<int> axes_of(const MultiIndex& g) {
    std::vector<int> axes;
    for (int d = 0; d < g.dim(); ++d)
        for (int k = 0; k < g[d]; ++k) axes.push_back(d);
    return axes;
}

/// g(u) = exp(1/(u-1)) on u < 1; g^{(k)}(u) = p_k(1/(u-1)) g(u) with
/// p_1 = -t^2, p_{k+1} = -t^2 (p_k' + p_k).
double bump_profile_derivative(double u, int k) {
    if (u >= 1.0) return 0.0;
    const double t = 1.0 / (u - 1.0);  // t <= -1
    if (t < -650.0) return 0.0;        // exp underflows before t-powers matter
    const double g = std::exp(t);
    switch (k) {
        case 0: return g;
        case 1: return -t * t * g;
        case 2: return (2.0 * t * t * t + t * t * t * t) * g;
        case 3: {
            const double t4 = t * t * t * t;
            return (-6.0 * t4 - 6.0 * t4 * t - t4 * t * t) * g;
        }
        default: throw std::invalid_argument("bump: derivative order > 3");
    }
}

class BumpField final : public FieldBase {
public:
    BumpField(int dim, std::vector<double> center, double radius, double amplitude)
        : dim_(dim), center_(std::move(center)), radius_(radius), amp_(amplitude) {
        if (radius <= 0.0) throw std::invalid_argument("bump: radius must be positive");
        if (static_cast<int>(center_.size()) != dim)
            throw std::invalid_argument("bump: center dimension mismatch");
    }

    int dim() const override { return dim_; }
    int fiber() const override { return 1; }
    int max_derivative_order() const override { return 3; }
    bool compact_support() const override { return true; }
    double support_radius() const override {
        double c = 0.0;
        for (double v : center_) c += v * v;
        return std::sqrt(c) + radius_;
    }

    std::vector<double> value(const std::vector<double>& x) const override {
        return {amp_ * bump_profile_derivative(u_of(x), 0)};
    }

    std::vector<double> derivative(const MultiIndex& gamma,
                                   const std::vector<double>& x) const override {
        const auto axes = axes_of(gamma);
        const int k = static_cast<int>(axes.size());
        if (k == 0) return value(x);
        if (k > 3) throw std::invalid_argument("bump: derivative order > 3");
        const double u = u_of(x);
        if (u >= 1.0) return {0.0};
        const double iR2 = 1.0 / (radius_ * radius_);
        std::vector<double> du(static_cast<std::size_t>(dim_));
        for (int d = 0; d < dim_; ++d)
            du[static_cast<std::size_t>(d)] = 2.0 * (x[static_cast<std::size_t>(d)] - center_[static_cast<std::size_t>(d)]) * iR2;
        const double uii = 2.0 * iR2;  // second derivative of u, diagonal only
        double out = 0.0;
        if (k == 1) {
            out = bump_profile_derivative(u, 1) * du[static_cast<std::size_t>(axes[0])];
        } else if (k == 2) {
            const int i = axes[0], j = axes[1];
            out = bump_profile_derivative(u, 2) * du[static_cast<std::size_t>(i)] * du[static_cast<std::size_t>(j)] +
                  bump_profile_derivative(u, 1) * (i == j ? uii : 0.0);
        } else {
            const int i = axes[0], j = axes[1], l = axes[2];
            const double g3 = bump_profile_derivative(u, 3);
            const double g2 = bump_profile_derivative(u, 2);
            out = g3 * du[static_cast<std::size_t>(i)] * du[static_cast<std::size_t>(j)] * du[static_cast<std::size_t>(l)];
            out += g2 * ((i == j ? uii : 0.0) * du[static_cast<std::size_t>(l)] +
                         (i == l ? uii : 0.0) * du[static_cast<std::size_t>(j)] +
                         (j == l ? uii : 0.0) * du[static_cast<std::size_t>(i)]);
        }
        return {amp_ * out};
    }

private:
    double u_of(const std::vector<double>& x) const {
        if (static_cast<int>(x.size()) != dim_)
            throw std::invalid_argument("bump: point dimension mismatch");
        double s = 0.0;
        for (int d = 0; d < dim_; ++d) {
            const double dd = x[static_cast<std::size_t>(d)] - center_[static_cast<std::size_t>(d)];
            s += dd * dd;
        }
        return s / (radius_ * radius_);
    }

    int dim_;
    std::vector<double> center_;
    double radius_;
    double amp_;
};

/// integral over the unit ball of exp(1/(|z|^2-1)), cached per dimension.
/// Dense composite Gauss: the profile is smooth but Gevrey-flat at s = 1,
/// which stalls endpoint-clustering rules.
double unit_bump_mass(int dim) {
    static std::mutex m;
    static std::map<int, double> cache;
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(dim);
    if (it != cache.end()) return it->second;
    auto f = [](double s) { return bump_profile_derivative(s * s, 0); };
    double val;
    if (dim == 1) {
        val = 2.0 * radial::fixed_gauss(f, 0.0, 1.0, 512);
    } else {
        val = quad::sphere_area(dim) *
              radial::fixed_gauss([&](double s) { return f(s) * std::pow(s, dim - 1.0); }, 0.0,
                                  1.0, 512);
    }
    cache[dim] = val;
    return val;
}

class ScaledField final : public FieldBase {
public:
    ScaledField(Field base, double eps) : base_(std::move(base)), eps_(eps) {
        if (!(eps > 0.0)) throw std::invalid_argument("mollifier: eps must be positive");
    }
    int dim() const override { return base_->dim(); }
    int fiber() const override { return base_->fiber(); }
    int max_derivative_order() const override { return base_->max_derivative_order(); }
    bool compact_support() const override { return base_->compact_support(); }
    double support_radius() const override { return eps_ * base_->support_radius(); }

    std::vector<double> value(const std::vector<double>& x) const override {
        auto v = base_->value(scale_point(x));
        const double f = std::pow(eps_, -base_->dim());
        for (auto& c : v) c *= f;
        return v;
    }
    std::vector<double> derivative(const MultiIndex& g,
                                   const std::vector<double>& x) const override {
        auto v = base_->derivative(g, scale_point(x));
        const double f = std::pow(eps_, -base_->dim() - g.order());
        for (auto& c : v) c *= f;
        return v;
    }

private:
    std::vector<double> scale_point(const std::vector<double>& x) const {
        std::vector<double> y(x);
        for (auto& c : y) c /= eps_;
        return y;
    }
    Field base_;
    double eps_;
};

class StreamCurlField final : public FieldBase {
public:
    explicit StreamCurlField(Field stream) : stream_(std::move(stream)) {
        if (stream_->fiber() != 1) throw std::invalid_argument("stream_curl: scalar stream required");
        if (stream_->dim() < 2) throw std::invalid_argument("stream_curl: dim >= 2 required");
        if (stream_->max_derivative_order() < 1)
            throw std::invalid_argument("stream_curl: stream must be differentiable");
    }
    int dim() const override { return stream_->dim(); }
    int fiber() const override { return stream_->dim(); }
    int max_derivative_order() const override { return stream_->max_derivative_order() - 1; }
    bool compact_support() const override { return stream_->compact_support(); }
    double support_radius() const override { return stream_->support_radius(); }

    std::vector<double> value(const std::vector<double>& x) const override {
        return derivative(MultiIndex::zero(dim()), x);
    }
    std::vector<double> derivative(const MultiIndex& g,
                                   const std::vector<double>& x) const override {
        std::vector<double> out(static_cast<std::size_t>(fiber()), 0.0);
        out[0] = stream_->derivative(g.plus(MultiIndex::unit(dim(), 1)), x)[0];
        out[1] = -stream_->derivative(g.plus(MultiIndex::unit(dim(), 0)), x)[0];
        return out;
    }

private:
    Field stream_;
};

class PolynomialField final : public FieldBase {
public:
    PolynomialField(int dim, std::vector<std::map<MultiIndex, double>> comps)
        : dim_(dim), comps_(std::move(comps)) {
        if (comps_.empty()) throw std::invalid_argument("polynomial: no components");
    }
    int dim() const override { return dim_; }
    int fiber() const override { return static_cast<int>(comps_.size()); }
    int max_derivative_order() const override { return 64; }
    bool compact_support() const override { return false; }
    double support_radius() const override { return std::numeric_limits<double>::infinity(); }

    std::vector<double> value(const std::vector<double>& x) const override {
        return derivative(MultiIndex::zero(dim_), x);
    }
    std::vector<double> derivative(const MultiIndex& g,
                                   const std::vector<double>& x) const override {
        std::vector<double> out;
        out.reserve(comps_.size());
        for (const auto& poly : comps_) {
            double acc = 0.0;
            for (const auto& [beta, coef] : poly) {
                if (!g.leq(beta)) continue;
                const MultiIndex rest = beta.minus(g);
                acc += coef * (mi_factorial(beta) / mi_factorial(rest)) * rest.monomial(x);
            }
            out.push_back(acc);
        }
        return out;
    }

private:
    int dim_;
    std::vector<std::map<MultiIndex, double>> comps_;
};

class ProductField final : public FieldBase {
public:
    ProductField(Field scalar, Field vec) : s_(std::move(scalar)), v_(std::move(vec)) {
        if (s_->fiber() != 1) throw std::invalid_argument("product: first factor must be scalar");
        if (s_->dim() != v_->dim()) throw std::invalid_argument("product: dimension mismatch");
    }
    int dim() const override { return s_->dim(); }
    int fiber() const override { return v_->fiber(); }
    int max_derivative_order() const override {
        return std::min(s_->max_derivative_order(), v_->max_derivative_order());
    }
    bool compact_support() const override { return s_->compact_support() || v_->compact_support(); }
    double support_radius() const override {
        return std::min(s_->support_radius(), v_->support_radius());
    }

    std::vector<double> value(const std::vector<double>& x) const override {
        auto out = v_->value(x);
        const double s = s_->value(x)[0];
        for (auto& c : out) c *= s;
        return out;
    }
    std::vector<double> derivative(const MultiIndex& g,
                                   const std::vector<double>& x) const override {
        // Leibniz over delta <= gamma
        std::vector<double> out(static_cast<std::size_t>(fiber()), 0.0);
        for (const auto& delta : all_leq(g)) {
            const double b = mi_binomial(g, delta);
            const double sd = s_->derivative(delta, x)[0];
            if (sd == 0.0) continue;
            const auto vd = v_->derivative(g.minus(delta), x);
            for (std::size_t c = 0; c < out.size(); ++c) out[c] += b * sd * vd[c];
        }
        return out;
    }

private:
    static std::vector<MultiIndex> all_leq(const MultiIndex& g) {
        std::vector<MultiIndex> out;
        std::vector<int> cur(static_cast<std::size_t>(g.dim()), 0);
        auto rec = [&](auto&& self, int pos) -> void {
            if (pos == g.dim()) {
                out.emplace_back(cur);
                return;
            }
            for (int k = 0; k <= g[pos]; ++k) {
                cur[static_cast<std::size_t>(pos)] = k;
                self(self, pos + 1);
            }
        };
        rec(rec, 0);
        return out;
    }
    Field s_, v_;
};

class ConstantField final : public FieldBase {
public:
    ConstantField(int dim, std::vector<double> v) : dim_(dim), v_(std::move(v)) {}
    int dim() const override { return dim_; }
    int fiber() const override { return static_cast<int>(v_.size()); }
    int max_derivative_order() const override { return 64; }
    bool compact_support() const override { return false; }
    double support_radius() const override { return std::numeric_limits<double>::infinity(); }
    std::vector<double> value(const std::vector<double>&) const override { return v_; }
    std::vector<double> derivative(const MultiIndex& g,
                                   const std::vector<double>& x) const override {
        if (g.order() == 0) return v_;
        return std::vector<double>(v_.size(), 0.0);
    }

private:
    int dim_;
    std::vector<double> v_;
};

class CoordinateField final : public FieldBase {
public:
    explicit CoordinateField(int dim) : dim_(dim) {}
    int dim() const override { return dim_; }
    int fiber() const override { return dim_; }
    int max_derivative_order() const override { return 64; }
    bool compact_support() const override { return false; }
    double support_radius() const override { return std::numeric_limits<double>::infinity(); }
    std::vector<double> value(const std::vector<double>& x) const override { return x; }
    std::vector<double> derivative(const MultiIndex& g,
                                   const std::vector<double>& x) const override {
        std::vector<double> out(static_cast<std::size_t>(dim_), 0.0);
        if (g.order() == 0) return x;
        if (g.order() > 1) return out;
        for (int d = 0; d < dim_; ++d)
            if (g[d] == 1) out[static_cast<std::size_t>(d)] = 1.0;
        return out;
    }

private:
    int dim_;
};

class AxisScaledField final : public FieldBase {
public:
    AxisScaledField(Field base, std::vector<double> dil) : base_(std::move(base)), d_(std::move(dil)) {
        if (static_cast<int>(d_.size()) != base_->dim())
            throw std::invalid_argument("axis_scaled: dilation dimension mismatch");
        for (double v : d_)
            if (!(v > 0.0)) throw std::invalid_argument("axis_scaled: factors must be positive");
    }
    int dim() const override { return base_->dim(); }
    int fiber() const override { return base_->fiber(); }
    int max_derivative_order() const override { return base_->max_derivative_order(); }
    bool compact_support() const override { return base_->compact_support(); }
    double support_radius() const override {
        double worst = 0.0;
        for (double v : d_) worst = std::max(worst, 1.0 / v);
        return base_->support_radius() * worst;
    }
    std::vector<double> value(const std::vector<double>& x) const override {
        return base_->value(map_point(x));
    }
    std::vector<double> derivative(const MultiIndex& g,
                                   const std::vector<double>& x) const override {
        auto v = base_->derivative(g, map_point(x));
        double f = 1.0;
        for (int d = 0; d < dim(); ++d)
            for (int k = 0; k < g[d]; ++k) f *= d_[static_cast<std::size_t>(d)];
        for (auto& c : v) c *= f;
        return v;
    }

private:
    std::vector<double> map_point(const std::vector<double>& x) const {
        std::vector<double> y(x);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] *= d_[i];
        return y;
    }
    Field base_;
    std::vector<double> d_;
};

}  // namespace

Field make_bump(int dim, const std::vector<double>& center, double radius, bool normalize) {
    double amp = 1.0;
    if (normalize) amp = 1.0 / (unit_bump_mass(dim) * std::pow(radius, dim));
    return std::make_shared<BumpField>(dim, center, radius, amp);
}

Field mollifier_family(const Field& phi, double eps) {
    if (phi->fiber() != 1) throw std::invalid_argument("mollifier_family: scalar field required");
    return std::make_shared<ScaledField>(phi, eps);
}

Field stream_curl(const Field& stream) { return std::make_shared<StreamCurlField>(stream); }

Field divfree_family(const Field& stream, double eps) {
    return stream_curl(mollifier_family(stream, eps));
}

Field make_polynomial(int dim, std::vector<std::map<MultiIndex, double>> components) {
    return std::make_shared<PolynomialField>(dim, std::move(components));
}

Field make_random_polynomial(int dim, int fiber, int degree, std::uint64_t seed, double scale) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coef(-scale, scale);
    std::vector<std::map<MultiIndex, double>> comps(static_cast<std::size_t>(fiber));
    for (auto& comp : comps)
        for (int d = 0; d <= degree; ++d)
            for (const auto& mi : MultiIndex::all_of_order(dim, d)) comp[mi] = coef(rng);
    return make_polynomial(dim, std::move(comps));
}

Field product(const Field& scalar, const Field& vec) {
    return std::make_shared<ProductField>(scalar, vec);
}

Field make_constant(int dim, std::vector<double> value) {
    return std::make_shared<ConstantField>(dim, std::move(value));
}

Field make_coordinate(int dim) { return std::make_shared<CoordinateField>(dim); }

Field axis_scaled(const Field& base, std::vector<double> dilation) {
    return std::make_shared<AxisScaledField>(base, std::move(dilation));
}

double constraint_residual(const opalg::HomogeneousOperator& op, const FieldBase& f,
                           const quad::GridSpec& grid) {
    op.validate();
    grid.validate();
    if (f.dim() != op.dim) throw std::invalid_argument("constraint_residual: dimension mismatch");
    if (f.fiber() != op.fiber_in)
        throw std::invalid_argument("constraint_residual: fiber mismatch");
    if (f.max_derivative_order() < op.order)
        throw std::invalid_argument("constraint_residual: field lacks required derivatives");
    const auto order_m = MultiIndex::all_of_order(op.dim, op.order);
    double worst = 0.0, scale = 0.0;
    const long total = grid.points();
    for (long p = 0; p < total; ++p) {
        const auto x = grid.point(p);
        la::Vector lf = la::Vector::Zero(op.fiber_out);
        double d2 = 0.0;
        for (const auto& mi : order_m) {
            const auto df = f.derivative(mi, x);
            for (double v : df) d2 += v * v;
            auto it = op.coeffs.find(mi);
            if (it == op.coeffs.end()) continue;
            la::Vector dfc(op.fiber_in);
            for (int c = 0; c < op.fiber_in; ++c) dfc(c) = df[static_cast<std::size_t>(c)];
            lf += it->second * dfc;
        }
        worst = std::max(worst, lf.norm());
        scale = std::max(scale, std::sqrt(d2));
    }
    if (scale == 0.0) return worst == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return worst / scale;
}

double plateau(double t) {
    if (t <= 1.0) return 1.0;
    if (t >= 2.0) return 0.0;
    auto b = [](double tau) { return tau > 0.0 ? std::exp(-1.0 / tau) : 0.0; };
    const double rise = b(2.0 - t), fall = b(t - 1.0);
    return rise / (rise + fall);
}

namespace {

struct PsiCacheEntry {
    quad::GridSpec grid;
    double l1 = 0.0;
};

double psi_l1_cached(const quad::GridSpec& grid, const quad::FieldSamples& psi) {
    static std::mutex m;
    static std::vector<PsiCacheEntry> cache;
    std::lock_guard<std::mutex> lock(m);
    for (const auto& e : cache)
        if (e.grid == grid) return e.l1;
    const double v = quad::l1_norm(psi);
    cache.push_back({grid, v});
    return v;
}

}  // namespace

BandLimitedField p_lambda_family(const quad::GridSpec& grid, double lambda,
                                 const std::vector<double>& witness) {
    grid.validate();
    if (!(lambda >= 1.0)) throw std::invalid_argument("p_lambda_family: lambda must be >= 1");
    const double xi_max = std::numbers::pi * (grid.n / 2) / grid.half_width;
    if (2.0 * lambda > 0.95 * xi_max)
        throw std::invalid_argument(
            "p_lambda_family: lambda exceeds the grid Nyquist margin (2*lambda must stay below " +
            std::to_string(0.95 * xi_max) + ")");

    const auto psi = quad::fourier_synthesis_radial(grid, [](double r) { return plateau(r); });
    auto phat = [lambda](double r) { return plateau(r / lambda) - plateau(r * lambda); };
    const auto p = quad::fourier_synthesis_radial(grid, phat);

    BandLimitedField out;
    out.scalar = p;
    out.lambda = lambda;
    out.l1_norm = quad::l1_norm(p);
    out.psi_l1_norm = psi_l1_cached(grid, psi);
    out.support_lo = 1.0 / lambda;
    out.support_hi = 2.0 * lambda;

    out.samples.grid = grid;
    out.samples.fiber = static_cast<int>(witness.size());
    out.samples.values.resize(static_cast<std::size_t>(grid.points() * out.samples.fiber));
    const long total = grid.points();
    for (long node = 0; node < total; ++node)
        for (int c = 0; c < out.samples.fiber; ++c)
            out.samples.at(node, c) = p.values[static_cast<std::size_t>(node)] * witness[static_cast<std::size_t>(c)];
    return out;
}

RieszSystemField riesz_system_field(const quad::FieldSamples& u) {
    u.validate();
    if (u.fiber != 1) throw std::invalid_argument("riesz_system_field: scalar input required");
    const int N = u.grid.dim;
    RieszSystemField out;
    out.field.grid = u.grid;
    out.field.fiber = N;
    out.field.values.resize(static_cast<std::size_t>(u.grid.points() * N));
    std::vector<quad::FieldSamples> r(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) {
        r[static_cast<std::size_t>(j)] = quad::riesz_transform(u, j).samples;
        for (long p = 0; p < u.grid.points(); ++p)
            out.field.at(p, j) = r[static_cast<std::size_t>(j)].values[static_cast<std::size_t>(p)];
    }
    double worst = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
            const auto didj = quad::spectral_derivative(r[static_cast<std::size_t>(j)], i);
            const auto djdi = quad::spectral_derivative(r[static_cast<std::size_t>(i)], j);
            for (long p = 0; p < u.grid.points(); ++p)
                worst = std::max(worst,
                                 std::abs(didj.values[static_cast<std::size_t>(p)] -
                                          djdi.values[static_cast<std::size_t>(p)]));
        }
    out.curl_residual = worst;
    return out;
}

}  // namespace rieszlab::fields
