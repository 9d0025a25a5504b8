#include "rieszlab/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "rieszlab/fields.hpp"
#include "rieszlab/lab.hpp"
#include "rieszlab/operators.hpp"
#include "rieszlab/quad.hpp"
#include "rieszlab/weights.hpp"

namespace rieszlab::cli {

using json = nlohmann::ordered_json;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json config_echo(const Config& cfg) {
    json j = json::object();
    for (const auto& [k, vals] : cfg.entries())
        j[k] = vals.size() == 1 ? json(vals.back()) : json(vals);
    return j;
}

opalg::HomogeneousOperator parse_operator(const Config& cfg) {
    if (cfg.has("operator.file")) {
        const std::string path = cfg.get_string("operator.file");
        if (!std::filesystem::exists(path))
            throw CliError(4, "operator.file: no such file: " + path);
        return opalg::load_operator_file(path);
    }
    if (!cfg.has("operator.builtin"))
        throw CliError(3, "operator spec requires operator.builtin or operator.file");
    const int dim = cfg.get_int_or("operator.dim", 2);
    try {
        return opalg::make_builtin(opalg::builtin_from_name(cfg.get_string("operator.builtin")),
                                   dim);
    } catch (const std::invalid_argument& e) {
        throw CliError(3, std::string("operator.builtin: ") + e.what());
    }
}

weights::Weight parse_weight(const Config& cfg, const std::string& key) {
    const std::string spec = cfg.get_string(key);
    if (spec.rfind("power:", 0) == 0)
        return weights::Weight(weights::PowerWeight{std::stod(spec.substr(6))});
    if (spec.rfind("file:", 0) == 0) {
        const std::string path = spec.substr(5);
        if (!std::filesystem::exists(path)) throw CliError(4, key + ": no such file: " + path);
        return weights::load_weight_file(path);
    }
    if (spec == "one") return weights::Weight(weights::PowerWeight{0.0});
    if (spec == "zero") return weights::Weight::scaled(weights::Weight(weights::PowerWeight{0.0}), 0.0);
    throw CliError(3, key + ": expected power:<exp>, file:<path>, one, or zero");
}

weights::SWParams parse_params(const Config& cfg) {
    weights::SWParams p;
    p.N = cfg.get_int_or("params.N", 2);
    p.p = cfg.get_double_or("params.p", 1.0);
    p.ell = cfg.get_double_or("params.ell", 1.0);
    p.alpha = cfg.get_double_or("params.alpha", 0.0);
    p.beta = cfg.get_double_or("params.beta", 0.0);
    const std::string q = cfg.get_string_or("params.q", "auto");
    try {
        if (q == "auto")
            p.q = weights::SWParams::scaling_q(p.N, p.p, p.ell, p.alpha, p.beta);
        else
            p.q = std::stod(q);
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw CliError(3, std::string("params: ") + e.what());
    }
    return p;
}

quad::GridSpec parse_grid(const Config& cfg, int dim) {
    quad::GridSpec g;
    g.dim = dim;
    g.n = cfg.get_int_or("grid.n", dim >= 3 ? 64 : 512);
    g.half_width = cfg.get_double_or("grid.L", 8.0);
    if (dim >= 3 && g.n > 128) throw CliError(3, "grid.n: capped at 128 for N = 3");
    try {
        g.validate();
    } catch (const std::invalid_argument& e) {
        throw CliError(3, std::string("grid: ") + e.what());
    }
    return g;
}

Field parse_field(const Config& cfg, int dim) {
    const std::string family = cfg.get_string_or("field.family", "bump");
    std::vector<double> center(static_cast<std::size_t>(dim), 0.0);
    if (cfg.has("field.center")) {
        const auto c = cfg.get_list("field.center");
        if (static_cast<int>(c.size()) != dim)
            throw CliError(3, "field.center: dimension mismatch");
        center = c;
    }
    const double radius = cfg.get_double_or("field.radius", 1.0);
    const bool normalize = cfg.get_bool_or("field.normalize", true);
    const double eps = cfg.get_double_or("field.eps", 1.0);
    const Field bump = fields::make_bump(dim, center, radius, normalize);
    if (family == "bump") return bump;
    if (family == "mollifier") return fields::mollifier_family(bump, eps);
    if (family == "divfree") return fields::divfree_family(bump, eps);
    throw CliError(3, "field.family: expected bump, mollifier, or divfree");
}

json to_json(const opalg::PropertyReport& r) {
    json j;
    j["verdict"] = opalg::to_string(r.verdict);
    j["evidence"] = r.evidence;
    j["samples_used"] = r.samples_used;
    j["detail"] = r.detail;
    if (r.witness) {
        json w = json::array();
        for (long c = 0; c < r.witness->basis.cols(); ++c) {
            json col = json::array();
            for (long i = 0; i < r.witness->basis.rows(); ++i) {
                col.push_back(r.witness->basis(i, c).real());
                if (std::abs(r.witness->basis(i, c).imag()) > 1e-14)
                    col.push_back(r.witness->basis(i, c).imag());
            }
            w.push_back(col);
        }
        j["witness"] = w;
    }
    return j;
}

json to_json(const fit::TrendFit& t) {
    json j;
    j["kind"] = fit::to_string(t.kind);
    j["slope"] = t.slope;
    j["intercept"] = t.intercept;
    j["r2"] = t.r2;
    j["spread"] = t.spread;
    j["divergent"] = t.divergent;
    return j;
}

json to_json(const weights::ConditionReport& r) {
    json j;
    j["finite"] = r.finite;
    j["constant"] = r.constant;
    if (r.divergence_law) j["divergence_law"] = to_json(*r.divergence_law);
    j["truncation_inner"] = r.truncation_inner;
    j["truncation_outer"] = r.truncation_outer;
    j["notes"] = r.notes;
    return j;
}

json to_json(const lab::TrendReport& r) {
    json j;
    j["params"] = r.params;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["values"] = r.values;
    j["law"] = to_json(r.law);
    j["verdict"] = lab::to_string(r.verdict);
    j["expected_slope"] = r.expected_slope;
    j["meets_target"] = r.meets_target;
    j["notes"] = r.notes;
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

void write_sweep_csv(const std::string& path, const lab::TrendReport& r) {
    std::string csv = "param,lhs,rhs,ratio,fitted_law,r2\n";
    for (std::size_t i = 0; i < r.params.size(); ++i) {
        const double lhs = i < r.lhs.size() ? r.lhs[i] : 0.0;
        const double rhs = i < r.rhs.size() ? r.rhs[i] : 0.0;
        const double ratio = rhs != 0.0 ? lhs / rhs : 0.0;
        csv += fmt(r.params[i]) + "," + fmt(lhs) + "," + fmt(rhs) + "," + fmt(ratio) + "," +
               fit::to_string(r.law.kind) + "," + fmt(r.law.r2) + "\n";
    }
    write_text(path, csv);
}

struct JobResult {
    json report;
    std::map<std::string, std::string> verdicts;
    std::vector<std::string> artifacts;
};

JobResult run_op_check(const Config& cfg, const std::string& out_prefix) {
    const auto op = parse_operator(cfg);
    const std::uint64_t seed = static_cast<std::uint64_t>(cfg.get_double_or("seed", 0));
    JobResult res;
    const auto cc = opalg::cocanceling_check(op);
    const auto ca = opalg::canceling_check(op, cfg.get_int_or("op.samples", 128),
                                           la::kRankTol, seed);
    const auto el = opalg::ellipticity_check(op, cfg.get_int_or("op.samples", 128), true, seed);
    res.report["cocanceling"] = to_json(cc);
    res.report["canceling"] = to_json(ca);
    res.report["ellipticity"] = to_json(el);
    const auto maps = opalg::try_solve_projection_maps(op);
    res.report["projection_residual"] = maps.residual;
    res.report["projection_identity"] = maps.residual <= 1e-10;
    res.verdicts["verdict"] = "cocanceling=" + opalg::to_string(cc.verdict);
    res.verdicts["constant"] = fmt(maps.residual);
    (void)out_prefix;
    return res;
}

JobResult run_weight_check(const Config& cfg, const std::string&) {
    const std::string check = cfg.get_string_or("weights.check", "pointwise");
    const auto params = parse_params(cfg);
    JobResult res;
    weights::ConditionReport rep;
    if (check == "pointwise") {
        rep = weights::pointwise_condition(
            params.N, parse_weight(cfg, "weights.u"), parse_weight(cfg, "weights.v"), params.ell,
            params.q, cfg.get_list_or("weights.y_list", {}),
            cfg.get_double_or("weights.T", 1e4), cfg.get_double_or("weights.h", 1e-4));
    } else if (check == "hardy") {
        const std::string variant = cfg.get_string_or("weights.variant", "w2");
        rep = weights::hardy_constant(params.N, parse_weight(cfg, "weights.u"),
                                      parse_weight(cfg, "weights.v"), params.q,
                                      variant == "w4" ? weights::HardyVariant::ball_u_tail_v
                                                      : weights::HardyVariant::tail_u_ball_v,
                                      cfg.get_list_or("weights.R_list", {}));
    } else if (check == "sawyer") {
        rep = weights::sawyer_testing(parse_weight(cfg, "weights.u"),
                                      parse_weight(cfg, "weights.v"), params,
                                      weights::BallFamily::standard(params.N),
                                      cfg.get_int_or("weights.mesh_n", 96));
    } else if (check == "bump") {
        rep = weights::bump_condition(parse_weight(cfg, "weights.u"),
                                      parse_weight(cfg, "weights.v"), params,
                                      cfg.get_double_or("weights.r", 2.0));
    } else if (check == "bump-u3") {
        rep = weights::bump_u3(params.N, parse_weight(cfg, "weights.u"), params.p, params.ell,
                               params.q);
    } else if (check == "pesopeso") {
        rep = weights::pesopeso_condition(params.N, parse_weight(cfg, "weights.u"),
                                          parse_weight(cfg, "weights.v"), params.ell, params.q,
                                          cfg.get_list_or("weights.y_list", {}));
    } else {
        throw CliError(3, "weights.check: unknown check '" + check + "'");
    }
    res.report["check"] = check;
    res.report["condition"] = to_json(rep);
    res.verdicts["verdict"] = rep.finite ? "finite" : "infinite";
    res.verdicts["constant"] = fmt(rep.constant);
    return res;
}

JobResult run_potential_eval(const Config& cfg, const std::string& out_prefix) {
    const auto params = parse_params(cfg);
    const auto grid = parse_grid(cfg, params.N);
    const auto field = parse_field(cfg, params.N);
    const auto kernel = quad::make_riesz_kernel(params.N, params.ell);
    const auto samples = quad::sample_field(*field, grid);
    const auto pot = quad::riesz_potential_grid(samples, kernel);
    const std::string field_path = out_prefix + ".field";
    quad::save_field(pot, field_path);
    JobResult res;
    res.report["grid"] = {{"n", grid.n}, {"L", grid.half_width}, {"dim", grid.dim}};
    res.report["l1_input"] = quad::l1_norm(samples);
    const double lhs =
        quad::weighted_norm(pot, -params.beta * params.q, params.q, quad::Domain::box());
    res.report["weighted_norm"] = lhs;
    res.verdicts["verdict"] = "evaluated";
    res.verdicts["constant"] = fmt(lhs);
    res.artifacts.push_back(field_path);
    return res;
}

JobResult run_experiment(const Config& cfg, const std::string& out_prefix) {
    const std::string probe = cfg.get_string_or("experiment.probe", "ratio");
    const auto params = parse_params(cfg);
    const std::uint64_t seed = static_cast<std::uint64_t>(cfg.get_double_or("seed", 0));
    JobResult res;
    res.report["probe"] = probe;
    res.report["tolerances"] = {
        {"r2", cfg.get_double_or("experiment.r2_tol", 0.99)},
        {"spread", cfg.get_double_or("experiment.spread_tol", 0.05)},
        {"rationale", "log-law fits need R^2 above the threshold; bounded verdicts need the "
                      "relative spread below it"}};

    auto finish_trend = [&](const lab::TrendReport& rep) {
        res.report["trend"] = to_json(rep);
        res.verdicts["verdict"] = lab::to_string(rep.verdict);
        res.verdicts["constant"] =
            fmt(rep.law.kind == fit::LawKind::constant ? rep.law.intercept : rep.law.slope);
        write_sweep_csv(out_prefix + ".csv", rep);
        res.artifacts.push_back(out_prefix + ".csv");
    };

    if (probe == "ratio") {
        const auto grid = parse_grid(cfg, params.N);
        const auto field = parse_field(cfg, params.N);
        std::optional<opalg::HomogeneousOperator> op;
        if (cfg.has("operator.builtin") || cfg.has("operator.file")) op = parse_operator(cfg);
        const auto rep = lab::inequality_ratio(field, params, grid, op ? &*op : nullptr);
        res.report["ratio"] = {{"lhs", rep.lhs},
                               {"rhs", rep.rhs},
                               {"ratio", rep.ratio},
                               {"degenerate", rep.degenerate},
                               {"notes", rep.notes}};
        res.verdicts["verdict"] = rep.degenerate ? "degenerate" : "evaluated";
        res.verdicts["constant"] = fmt(rep.ratio);
        lab::TrendReport single;
        single.params = {cfg.get_double_or("field.eps", 1.0)};
        single.lhs = {rep.lhs};
        single.rhs = {rep.rhs};
        single.values = {rep.ratio};
        write_sweep_csv(out_prefix + ".csv", single);
        res.artifacts.push_back(out_prefix + ".csv");
    } else if (probe == "scale-invariance") {
        const std::string family = cfg.get_string_or("field.family", "divfree");
        const Field seed_field = fields::make_bump(
            params.N, std::vector<double>(static_cast<std::size_t>(params.N), 0.0),
            cfg.get_double_or("field.radius", 1.0), cfg.get_bool_or("field.normalize", true));
        std::optional<opalg::HomogeneousOperator> op;
        if (cfg.has("operator.builtin") || cfg.has("operator.file")) op = parse_operator(cfg);
        const auto rep = lab::scale_invariance_suite(
            family == "mollifier" ? lab::FamilyKind::mollifier : lab::FamilyKind::divfree,
            seed_field, cfg.get_list_or("experiment.eps_list", {0.25, 0.5, 1.0, 2.0, 4.0}),
            params, cfg.get_double_or("grid.L", 2.0), cfg.get_int_or("grid.n", 256),
            op ? &*op : nullptr);
        finish_trend(rep);
    } else if (probe == "scalar-failure") {
        const auto rep = lab::counterexample_scalar_probe(
            params, cfg.get_list_or("experiment.a_list", {1e-1, 1e-2, 1e-3, 1e-4}),
            cfg.get_double_or("experiment.eps", 0.0),
            cfg.get_bool_or("experiment.enforce_relation", true));
        finish_trend(rep);
    } else if (probe == "alpha1-failure") {
        const auto rep = lab::counterexample_alpha1_probe(
            params, cfg.get_list_or("experiment.a_list", {1e-1, 1e-2, 1e-3, 1e-4}),
            cfg.get_double_or("experiment.eps_ratio", 0.01),
            cfg.get_list_or("experiment.eps_rhs_list", {0.25, 0.5, 1.0, 2.0, 4.0}));
        finish_trend(rep);
    } else if (probe == "necessity") {
        const auto op = parse_operator(cfg);
        const auto grid = parse_grid(cfg, params.N);
        const auto rep = lab::necessity_probe(
            op, cfg.get_list_or("experiment.lambda_list", {2, 4, 8, 16}), params, grid);
        finish_trend(rep);
    } else if (probe == "claim-convergence") {
        const auto kernel = quad::make_riesz_kernel(params.N, params.ell);
        const auto rep = lab::claim_convergence_probe(
            kernel, cfg.get_list_or("experiment.lambda_list", {2, 4, 8, 16}),
            cfg.get_list_or("experiment.x_list", {1.0}));
        finish_trend(rep);
    } else if (probe == "lemma31") {
        const auto op = parse_operator(cfg);
        const auto kmaps = opalg::solve_projection_maps(op);
        const int pairs = cfg.get_int_or("experiment.pairs", 100);
        const int n_phi = std::max(1, static_cast<int>(std::round(std::sqrt(pairs))));
        const int n_f = (pairs + n_phi - 1) / n_phi;
        quad::GridSpec grid;
        grid.dim = params.N;
        grid.n = cfg.get_int_or("grid.n", 128);
        grid.half_width = cfg.get_double_or("grid.L", 1.4);
        const auto rep = lab::lemma31_check(op, kmaps, lab::make_phi_suite(n_phi, seed, params.N,
                                                                           op.fiber_in),
                                            lab::make_f_suite(n_f, seed + 1, params.N), grid);
        res.report["lemma31"] = {{"pairs", rep.pairs},
                                 {"violations", rep.violations},
                                 {"skipped", rep.skipped},
                                 {"max_ratio", rep.max_ratio},
                                 {"notes", rep.notes}};
        res.verdicts["verdict"] = rep.violations == 0 ? "holds" : "violated";
        res.verdicts["constant"] = fmt(rep.max_ratio);
    } else if (probe == "estimator") {
        const auto rep = lab::constant_estimator(params, cfg.get_int_or("experiment.budget", 60),
                                                 seed, cfg.get_int_or("grid.n", 160));
        res.report["estimator"] = {{"best_ratio", rep.best_ratio},
                                   {"best_params", rep.best_params},
                                   {"evaluations", rep.evaluations},
                                   {"incomplete", rep.incomplete},
                                   {"flat", rep.flat}};
        res.verdicts["verdict"] = rep.incomplete ? "incomplete" : "complete";
        res.verdicts["constant"] = fmt(rep.best_ratio);
    } else {
        throw CliError(3, "experiment.probe: unknown probe '" + probe + "'");
    }
    return res;
}

}  // namespace

RunRecord run_job(const Config& cfg, const std::string& out_prefix) {
    RunRecord rec;
    rec.config_hash = cfg.canonical_hash();
    rec.seed = static_cast<std::uint64_t>(cfg.get_double_or("seed", 0));
    if (!cfg.has("kind")) throw CliError(3, "config: missing key 'kind'");
    rec.kind = cfg.get_string("kind");

    const auto t0 = std::chrono::steady_clock::now();
    JobResult res;
    if (rec.kind == "op-check") res = run_op_check(cfg, out_prefix);
    else if (rec.kind == "weight-check") res = run_weight_check(cfg, out_prefix);
    else if (rec.kind == "potential-eval") res = run_potential_eval(cfg, out_prefix);
    else if (rec.kind == "experiment") res = run_experiment(cfg, out_prefix);
    else if (rec.kind == "report-merge")
        throw CliError(3, "report-merge runs through the merge subcommand with record paths");
    else
        throw CliError(5, "unknown job kind '" + rec.kind + "'");
    rec.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json report;
    report["tool_version"] = kToolVersion;
    report["config_hash"] = rec.config_hash;
    report["seed"] = rec.seed;
    report["kind"] = rec.kind;
    report["config"] = config_echo(cfg);
    report["result"] = res.report;
    const std::string report_path = out_prefix + ".json";
    write_text(report_path, report.dump(2) + "\n");

    rec.verdicts = res.verdicts;
    rec.artifacts = res.artifacts;
    rec.artifacts.insert(rec.artifacts.begin(), report_path);
    write_run_record(rec, out_prefix);
    return rec;
}

void write_run_record(const RunRecord& rec, const std::string& out_prefix) {
    json j;
    j["config_hash"] = rec.config_hash;
    j["tool_version"] = rec.tool_version;
    j["wall_time_s"] = rec.wall_time_s;
    j["seed"] = rec.seed;
    j["kind"] = rec.kind;
    j["verdicts"] = rec.verdicts;
    j["artifacts"] = rec.artifacts;
    if (!rec.error.empty()) j["error"] = rec.error;
    write_text(out_prefix + ".run.json", j.dump(2) + "\n");
}

std::string report_merge(const std::vector<std::string>& paths, const std::string& out_prefix) {
    if (paths.empty()) throw CliError(3, "merge: need at least one record path");
    std::vector<json> rows;
    std::vector<std::string> warnings;
    std::string version;
    for (const auto& path : paths) {
        std::ifstream in(path);
        if (!in) throw CliError(4, "merge: no such file: " + path);
        json j;
        try {
            in >> j;
        } catch (const std::exception& e) {
            throw CliError(2, "merge: cannot parse " + path + ": " + e.what());
        }
        auto add_row = [&](const json& r) {
            json row;
            row["config_hash"] = r.value("config_hash", "");
            row["kind"] = r.value("kind", "");
            row["tool_version"] = r.value("tool_version", "");
            row["failed"] = r.contains("error") || r.value("failed", false);
            if (r.contains("verdicts")) {
                row["verdict"] = r["verdicts"].value("verdict", "");
                row["constant"] = r["verdicts"].value("constant", "");
            } else {
                row["verdict"] = r.value("verdict", "");
                row["constant"] = r.value("constant", "");
            }
            if (version.empty()) version = row["tool_version"].get<std::string>();
            else if (version != row["tool_version"].get<std::string>())
                warnings.push_back("tool version mismatch: " +
                                   row["tool_version"].get<std::string>() + " vs " + version);
            rows.push_back(row);
        };
        if (j.contains("rows"))
            for (const auto& r : j["rows"]) add_row(r);
        else
            add_row(j);
    }
    std::sort(rows.begin(), rows.end(), [](const json& a, const json& b) {
        if (a["config_hash"] != b["config_hash"])
            return a["config_hash"] < b["config_hash"];
        return a.dump() < b.dump();
    });
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

    json summary;
    summary["rows"] = rows;
    summary["warnings"] = warnings;
    const std::string text = summary.dump(2) + "\n";
    write_text(out_prefix + ".json", text);
    std::string csv = "config_hash,kind,verdict,constant,failed,tool_version\n";
    for (const auto& r : rows)
        csv += r["config_hash"].get<std::string>() + "," + r["kind"].get<std::string>() + "," +
               r["verdict"].get<std::string>() + "," + r["constant"].get<std::string>() + "," +
               (r["failed"].get<bool>() ? "1" : "0") + "," +
               r["tool_version"].get<std::string>() + "\n";
    write_text(out_prefix + ".csv", csv);
    return text;
}

}  // namespace rieszlab::cli
