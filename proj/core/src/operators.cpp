#include "rieszlab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rieszlab/sampling.hpp"

namespace rieszlab::opalg {

void HomogeneousOperator::validate() const {
    if (dim < 1) throw std::invalid_argument("operator: dim must be >= 1");
    if (order < 1) throw std::invalid_argument("operator: order must be >= 1");
    if (fiber_in < 1 || fiber_out < 1)
        throw std::invalid_argument("operator: fiber dimensions must be >= 1");
    if (coeffs.empty()) throw std::invalid_argument("operator: no coefficients");
    bool any_nonzero = false;
    for (const auto& [mi, mat] : coeffs) {
        if (mi.dim() != dim)
            throw std::invalid_argument("operator: multi-index dim mismatch at " + mi.to_string());
        if (mi.order() != order)
            throw std::invalid_argument("operator: key " + mi.to_string() +
                                        " has order != " + std::to_string(order));
        if (mat.rows() != fiber_out || mat.cols() != fiber_in)
            throw std::invalid_argument("operator: coefficient shape mismatch at " + mi.to_string());
        if (mat.norm() > 0.0) any_nonzero = true;
    }
    if (!any_nonzero) throw std::invalid_argument("operator: all coefficients are zero");
}

Matrix eval_symbol(const HomogeneousOperator& op, const std::vector<double>& xi) {
    if (static_cast<int>(xi.size()) != op.dim)
        throw std::invalid_argument("eval_symbol: xi has wrong dimension");
    Matrix s = Matrix::Zero(op.fiber_out, op.fiber_in);
    for (const auto& [mi, mat] : op.coeffs) s += mat * mi.monomial(xi);
    return s;
}

std::string to_string(PropertyVerdict v) {
    switch (v) {
        case PropertyVerdict::confirmed: return "confirmed";
        case PropertyVerdict::refuted: return "refuted";
        case PropertyVerdict::heuristic_pass: return "heuristic_pass";
        case PropertyVerdict::heuristic_fail: return "heuristic_fail";
    }
    return "?";
}

PropertyReport cocanceling_check(const HomogeneousOperator& op) {
    op.validate();
    const long rows = static_cast<long>(op.coeffs.size()) * op.fiber_out;
    Matrix stacked(rows, op.fiber_in);
    long r = 0;
    for (const auto& [mi, mat] : op.coeffs) {
        stacked.middleRows(r, op.fiber_out) = mat;
        r += op.fiber_out;
    }
    PropertyReport rep;
    rep.samples_used = 0;
    Matrix null = la::nullspace(stacked);
    rep.evidence = la::min_singular_value_as_map(stacked);
    if (null.cols() == 0) {
        rep.verdict = PropertyVerdict::confirmed;
        rep.detail = "stacked coefficient matrix has trivial nullspace";
    } else {
        rep.verdict = PropertyVerdict::refuted;
        rep.witness = SubspaceBasis{null, la::kRankTol};
        rep.detail = "common kernel of the symbol has dimension " + std::to_string(null.cols());
    }
    return rep;
}

PropertyReport canceling_check(const HomogeneousOperator& op, int n_samples, double tol,
                               std::uint64_t seed) {
    op.validate();
    if (n_samples < op.fiber_out)
        throw std::invalid_argument("canceling_check: n_samples must be >= fiber_out");
    const int n_ld = n_samples / 2;
    auto dirs = sphere_samples(op.dim, n_samples - n_ld, n_ld, seed);

    PropertyReport rep;
    Matrix running;  // orthonormal basis of the running image intersection
    bool first = true;
    int used = 0;
    for (const auto& xi : dirs) {
        ++used;
        Matrix img = la::column_space(eval_symbol(op, xi), tol);
        running = first ? img : la::intersect_subspaces(running, img, tol);
        first = false;
        if (running.cols() == 0) break;
    }
    rep.samples_used = used;
    if (!first && running.cols() == 0) {
        // A finite family of directions with trivial common image certifies the
        // full intersection (it can only shrink further).
        rep.verdict = PropertyVerdict::confirmed;
        rep.evidence = 0.0;
        rep.detail = "image intersection trivial after " + std::to_string(used) + " directions";
        return rep;
    }
    // Candidate common-image directions survived; score them on fresh samples.
    auto fresh = sphere_samples(op.dim, 64, 0, mix_seed(seed, 0xF2E5));
    double worst = 0.0;
    for (const auto& xi : fresh) {
        Matrix img = la::column_space(eval_symbol(op, xi), tol);
        for (long c = 0; c < running.cols(); ++c)
            worst = std::max(worst, la::distance_to_span(img, running.col(c)));
    }
    rep.verdict = PropertyVerdict::heuristic_fail;
    rep.witness = SubspaceBasis{running, tol};
    rep.evidence = worst;
    rep.detail = "candidate common image of dimension " + std::to_string(running.cols()) +
                 ", worst residual " + std::to_string(worst) + " over fresh directions";
    return rep;
}

namespace {

double sigma_min_at(const HomogeneousOperator& op, const std::vector<double>& xi) {
    return la::min_singular_value_as_map(eval_symbol(op, xi));
}

}  // namespace

PropertyReport ellipticity_check(const HomogeneousOperator& op, int n_samples, bool refine,
                                 std::uint64_t seed, double tol) {
    op.validate();
    const int n_ld = n_samples / 2;
    auto dirs = sphere_samples(op.dim, n_samples - n_ld, n_ld, seed);
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> argmin;
    for (const auto& xi : dirs) {
        const double s = sigma_min_at(op, xi);
        if (s < best) {
            best = s;
            argmin = xi;
        }
    }
    int used = static_cast<int>(dirs.size());
    if (refine && !argmin.empty()) {
        // Coordinate descent on the sphere from the worst sampled direction.
        double step = 0.25;
        while (step > 1e-6) {
            bool improved = false;
            for (int d = 0; d < op.dim; ++d) {
                for (double sgn : {+1.0, -1.0}) {
                    auto cand = argmin;
                    cand[static_cast<std::size_t>(d)] += sgn * step;
                    double n2 = 0.0;
                    for (double c : cand) n2 += c * c;
                    const double inv = 1.0 / std::sqrt(n2);
                    for (auto& c : cand) c *= inv;
                    const double s = sigma_min_at(op, cand);
                    ++used;
                    if (s < best) {
                        best = s;
                        argmin = cand;
                        improved = true;
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
    }
    PropertyReport rep;
    rep.samples_used = used;
    rep.evidence = best;
    Matrix w(op.dim, 1);
    for (int d = 0; d < op.dim; ++d) w(d, 0) = argmin[static_cast<std::size_t>(d)];
    if (best > tol) {
        rep.verdict = PropertyVerdict::heuristic_pass;
        rep.detail = "min sampled singular value " + std::to_string(best);
    } else {
        rep.verdict = PropertyVerdict::heuristic_fail;
        rep.witness = SubspaceBasis{w, tol};
        rep.detail = "symbol loses injectivity near the reported direction";
    }
    return rep;
}

ProjectionMaps try_solve_projection_maps(const HomogeneousOperator& op) {
    op.validate();
    const int F = op.fiber_in, V = op.fiber_out;
    const long n_keys = static_cast<long>(op.coeffs.size());
    const long n_unknowns = n_keys * F * V;
    const long n_eqs = static_cast<long>(F) * F;

    // Equations (sum_a k_a b_a)[i,j] = delta_ij in the entries k_a[r,c];
    // the (i,j) equation touches only rows r == i: coefficient b_a[c,j].
    Matrix M = Matrix::Zero(n_eqs, n_unknowns);
    Matrix rhs = Matrix::Zero(n_eqs, 1);
    for (int i = 0; i < F; ++i) rhs(i * F + i, 0) = 1.0;

    long key_idx = 0;
    for (const auto& [mi, b] : op.coeffs) {
        for (int i = 0; i < F; ++i)
            for (int j = 0; j < F; ++j)
                for (int c = 0; c < V; ++c)
                    M(i * F + j, key_idx * F * V + static_cast<long>(i) * V + c) = b(c, j);
        ++key_idx;
    }

    Matrix sol = la::lstsq_min_norm(M, rhs);

    ProjectionMaps maps;
    key_idx = 0;
    for (const auto& [mi, b] : op.coeffs) {
        Matrix k(F, V);
        for (int r = 0; r < F; ++r)
            for (int c = 0; c < V; ++c) k(r, c) = sol(key_idx * F * V + static_cast<long>(r) * V + c, 0);
        maps.k.emplace(mi, std::move(k));
        ++key_idx;
    }
    Matrix acc = Matrix::Zero(F, F);
    for (const auto& [mi, k] : maps.k) acc += k * op.coeffs.at(mi);
    maps.residual = la::operator_norm(acc - Matrix::Identity(F, F));
    return maps;
}

ProjectionMaps solve_projection_maps(const HomogeneousOperator& op) {
    ProjectionMaps maps = try_solve_projection_maps(op);
    if (maps.residual > 1e-10) throw NoIdentityError(maps.residual);
    return maps;
}

namespace {

// d^eta P(x) = sum_{beta >= eta} (x^{beta-eta}/(beta-eta)!) k_beta^*
Matrix p_derivative(const ProjectionMaps& kmaps, const MultiIndex& eta,
                    const std::vector<double>& x, int V, int F) {
    Matrix out = Matrix::Zero(V, F);
    for (const auto& [beta, k] : kmaps.k) {
        if (!eta.leq(beta)) continue;
        const MultiIndex rest = beta.minus(eta);
        out += k.adjoint() * (rest.monomial(x) / mi_factorial(rest));
    }
    return out;
}

}  // namespace

double tphi_constant(const HomogeneousOperator& op, const ProjectionMaps& kmaps) {
    // C = max_j sum_{|a|=m} |b_a| sum_{0<g<=a, |g|=j} binom(a,g) B_{a,g},
    // B_{a,g} = sum_{beta >= a-g} |k_beta| / (beta-(a-g))!.
    // Valid bound: |x^{beta-eta}| <= |x|^{|g|} on each Leibniz term.
    const int m = op.order;
    double c_max = 0.0;
    for (int j = 1; j <= m; ++j) {
        double cj = 0.0;
        for (const auto& [alpha, b] : op.coeffs) {
            const double bn = la::operator_norm(b);
            if (bn == 0.0) continue;
            double inner = 0.0;
            for (const auto& gamma : MultiIndex::all_of_order(op.dim, j)) {
                if (!gamma.leq(alpha)) continue;
                const MultiIndex eta = alpha.minus(gamma);
                double bsum = 0.0;
                for (const auto& [beta, k] : kmaps.k) {
                    if (!eta.leq(beta)) continue;
                    bsum += la::operator_norm(k) / mi_factorial(beta.minus(eta));
                }
                inner += mi_binomial(alpha, gamma) * bsum;
            }
            cj += bn * inner;
        }
        c_max = std::max(c_max, cj);
    }
    return c_max;
}

TphiResult tphi_eval(const HomogeneousOperator& op, const ProjectionMaps& kmaps,
                     const FieldBase& phi, const std::vector<double>& x) {
    op.validate();
    if (phi.dim() != op.dim) throw std::invalid_argument("tphi_eval: field dimension mismatch");
    if (phi.fiber() != op.fiber_in)
        throw std::invalid_argument("tphi_eval: field fiber must match the source fiber");
    if (phi.max_derivative_order() < op.order)
        throw std::invalid_argument("tphi_eval: field lacks derivatives up to the operator order");
    const int F = op.fiber_in, V = op.fiber_out, m = op.order;

    Vector t = Vector::Zero(F);
    for (const auto& [alpha, b] : op.coeffs) {
        for (int j = 1; j <= m; ++j) {
            for (const auto& gamma : MultiIndex::all_of_order(op.dim, j)) {
                if (!gamma.leq(alpha)) continue;
                const Matrix dp = p_derivative(kmaps, alpha.minus(gamma), x, V, F);
                const auto dphi = phi.derivative(gamma, x);
                Vector dphi_c(F);
                for (int i = 0; i < F; ++i) dphi_c(i) = dphi[static_cast<std::size_t>(i)];
                t -= mi_binomial(alpha, gamma) * (b.adjoint() * (dp * dphi_c));
            }
        }
    }

    double xnorm = 0.0;
    for (double c : x) xnorm += c * c;
    xnorm = std::sqrt(xnorm);

    const double C = tphi_constant(op, kmaps);
    double maj = 0.0;
    double xpow = 1.0;
    for (int j = 1; j <= m; ++j) {
        xpow *= xnorm;
        double d2 = 0.0;
        for (const auto& gamma : MultiIndex::all_of_order(op.dim, j)) {
            const auto dphi = phi.derivative(gamma, x);
            for (double v : dphi) d2 += v * v;
        }
        maj += xpow * std::sqrt(d2);
    }
    return TphiResult{std::move(t), C * maj, C};
}

Matrix eval_H_symbol(const HomogeneousOperator& a, double ell, const std::vector<double>& xi,
                     double tol) {
    a.validate();
    double xn2 = 0.0;
    for (double c : xi) xn2 += c * c;
    if (xn2 == 0.0) throw std::invalid_argument("eval_H_symbol: xi must be nonzero");
    const Matrix ax = eval_symbol(a, xi);
    const double smin = la::min_singular_value_as_map(ax);
    if (smin <= tol * std::max(1.0, la::operator_norm(ax))) {
        std::ostringstream os;
        os << "eval_H_symbol: symbol not injective at xi = (";
        for (std::size_t i = 0; i < xi.size(); ++i) os << (i ? "," : "") << xi[i];
        os << ")";
        throw std::domain_error(os.str());
    }
    const Matrix gram = ax.adjoint() * ax;
    const double xpow = std::pow(std::sqrt(xn2), static_cast<double>(a.order) - ell);
    return xpow * gram.ldlt().solve(ax.adjoint());
}

BuiltinOp builtin_from_name(const std::string& name) {
    if (name == "divergence" || name == "div") return BuiltinOp::divergence;
    if (name == "curl") return BuiltinOp::curl;
    if (name == "gradient" || name == "grad") return BuiltinOp::gradient;
    if (name == "laplacian") return BuiltinOp::laplacian;
    throw std::invalid_argument("unknown builtin operator: " + name);
}

HomogeneousOperator make_builtin(BuiltinOp name, int dim) {
    if (dim < 1) throw std::invalid_argument("make_builtin: dim must be >= 1");
    HomogeneousOperator op;
    op.dim = dim;
    switch (name) {
        case BuiltinOp::divergence: {
            op.order = 1;
            op.fiber_in = dim;
            op.fiber_out = 1;
            for (int j = 0; j < dim; ++j) {
                Matrix b = Matrix::Zero(1, dim);
                b(0, j) = 1.0;
                op.coeffs.emplace(MultiIndex::unit(dim, j), std::move(b));
            }
            break;
        }
        case BuiltinOp::gradient: {
            op.order = 1;
            op.fiber_in = 1;
            op.fiber_out = dim;
            for (int j = 0; j < dim; ++j) {
                Matrix b = Matrix::Zero(dim, 1);
                b(j, 0) = 1.0;
                op.coeffs.emplace(MultiIndex::unit(dim, j), std::move(b));
            }
            break;
        }
        case BuiltinOp::curl: {
            if (dim < 2) throw std::invalid_argument("make_builtin: curl needs dim >= 2");
            op.order = 1;
            op.fiber_in = dim;
            if (dim == 2) {
                // xi_1 f_2 - xi_2 f_1
                op.fiber_out = 1;
                Matrix b1 = Matrix::Zero(1, 2), b2 = Matrix::Zero(1, 2);
                b1(0, 1) = 1.0;
                b2(0, 0) = -1.0;
                op.coeffs.emplace(MultiIndex{1, 0}, std::move(b1));
                op.coeffs.emplace(MultiIndex{0, 1}, std::move(b2));
            } else if (dim == 3) {
                // cross-product form: b_j = matrix of v -> e_j x v
                op.fiber_out = 3;
                auto set = [&](int j, std::initializer_list<double> rows) {
                    Matrix b(3, 3);
                    int idx = 0;
                    for (double v : rows) {
                        b(idx / 3, idx % 3) = v;
                        ++idx;
                    }
                    op.coeffs.emplace(MultiIndex::unit(3, j), std::move(b));
                };
                set(0, {0, 0, 0, 0, 0, -1, 0, 1, 0});
                set(1, {0, 0, 1, 0, 0, 0, -1, 0, 0});
                set(2, {0, -1, 0, 1, 0, 0, 0, 0, 0});
            } else {
                // 2-form convention: rows indexed by pairs (i<j),
                // (df)_{ij} = d_i f_j - d_j f_i.
                op.fiber_out = dim * (dim - 1) / 2;
                for (int k = 0; k < dim; ++k)
                    op.coeffs.emplace(MultiIndex::unit(dim, k), Matrix::Zero(op.fiber_out, dim));
                int row = 0;
                for (int i = 0; i < dim; ++i)
                    for (int j = i + 1; j < dim; ++j) {
                        op.coeffs[MultiIndex::unit(dim, i)](row, j) += 1.0;
                        op.coeffs[MultiIndex::unit(dim, j)](row, i) += -1.0;
                        ++row;
                    }
            }
            break;
        }
        case BuiltinOp::laplacian: {
            op.order = 2;
            op.fiber_in = 1;
            op.fiber_out = 1;
            for (int j = 0; j < dim; ++j) {
                std::vector<int> e(static_cast<std::size_t>(dim), 0);
                e[static_cast<std::size_t>(j)] = 2;
                Matrix b = Matrix::Zero(1, 1);
                b(0, 0) = 1.0;
                op.coeffs.emplace(MultiIndex(std::move(e)), std::move(b));
            }
            break;
        }
    }
    op.validate();
    return op;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

HomogeneousOperator load_operator_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open operator file: " + path);
    HomogeneousOperator op;
    std::string line;
    std::vector<std::string> coeff_lines;
    std::string builtin;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("operator file: malformed line '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "builtin") builtin = val;
        else if (key == "dim") op.dim = std::stoi(val);
        else if (key == "order") op.order = std::stoi(val);
        else if (key == "fiber_in") op.fiber_in = std::stoi(val);
        else if (key == "fiber_out") op.fiber_out = std::stoi(val);
        else if (key == "coeff") coeff_lines.push_back(val);
        else throw std::runtime_error("operator file: unknown key '" + key + "'");
    }
    if (!builtin.empty()) {
        if (op.dim < 1) throw std::runtime_error("operator file: builtin requires dim");
        return make_builtin(builtin_from_name(builtin), op.dim);
    }
    for (const auto& cl : coeff_lines) {
        // "<e_1 ... e_N> ; <row> <col> ; <re> [im]"
        std::vector<std::string> parts;
        std::string cur;
        std::istringstream ss(cl);
        while (std::getline(ss, cur, ';')) parts.push_back(trim(cur));
        if (parts.size() != 3) throw std::runtime_error("operator file: bad coeff '" + cl + "'");
        std::istringstream p0(parts[0]), p1(parts[1]), p2(parts[2]);
        std::vector<int> e;
        int v;
        while (p0 >> v) e.push_back(v);
        if (static_cast<int>(e.size()) != op.dim)
            throw std::runtime_error("operator file: coeff multi-index has wrong length");
        int row, col;
        if (!(p1 >> row >> col)) throw std::runtime_error("operator file: bad coeff position");
        double re, im = 0.0;
        if (!(p2 >> re)) throw std::runtime_error("operator file: bad coeff value");
        p2 >> im;
        MultiIndex mi(e);
        auto it = op.coeffs.find(mi);
        if (it == op.coeffs.end())
            it = op.coeffs.emplace(mi, Matrix::Zero(op.fiber_out, op.fiber_in)).first;
        it->second(row, col) += la::Complex(re, im);
    }
    op.validate();
    return op;
}

void save_operator_file(const HomogeneousOperator& op, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write operator file: " + path);
    out << "dim = " << op.dim << "\norder = " << op.order << "\nfiber_in = " << op.fiber_in
        << "\nfiber_out = " << op.fiber_out << "\n";
    for (const auto& [mi, mat] : op.coeffs)
        for (int r = 0; r < mat.rows(); ++r)
            for (int c = 0; c < mat.cols(); ++c) {
                const la::Complex v = mat(r, c);
                if (v == la::Complex(0.0, 0.0)) continue;
                out << "coeff =";
                for (int d = 0; d < mi.dim(); ++d) out << " " << mi[d];
                out << " ; " << r << " " << c << " ; " << v.real();
                if (v.imag() != 0.0) out << " " << v.imag();
                out << "\n";
            }
}

}  // namespace rieszlab::opalg
