// Command-line driver: config-driven checks and experiments for homogeneous
// operator structure and weighted fractional-integral inequalities.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "rieszlab/cli.hpp"
#include "rieszlab/parallel.hpp"

namespace {

namespace rcli = rieszlab::cli;
namespace fs = std::filesystem;

std::string default_out_prefix(const std::string& config_path, const std::string& out_flag) {
    if (!out_flag.empty()) return out_flag;
    fs::path dir = ".";
    if (const char* env = std::getenv("RIESZLAB_OUT")) dir = env;
    const fs::path stem = fs::path(config_path).stem();
    return (dir / stem).string();
}

int run_kind(const std::string& kind, const std::string& config_path, const std::string& out_flag,
             long seed_flag, int threads) {
    rieszlab::set_thread_count(threads);
    if (!fs::exists(config_path)) {
        std::cerr << "error: no such config file: " << config_path << "\n";
        return 4;
    }
    rcli::Config cfg;
    try {
        cfg = rcli::Config::parse_file(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (!kind.empty()) cfg.set("kind", kind);
    if (seed_flag >= 0) cfg.set("seed", std::to_string(seed_flag));
    const std::string out_prefix = default_out_prefix(config_path, out_flag);
    if (!fs::path(out_prefix).parent_path().empty())
        fs::create_directories(fs::path(out_prefix).parent_path());

    rcli::RunRecord rec;
    try {
        rec = rcli::run_job(cfg, out_prefix);
    } catch (const rcli::CliError& e) {
        std::cerr << "error: " << e.what() << "\n";
        rec.config_hash = cfg.canonical_hash();
        rec.kind = cfg.has("kind") ? cfg.get_string("kind") : "";
        rec.error = e.what();
        rcli::write_run_record(rec, out_prefix);
        return e.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        rec.config_hash = cfg.canonical_hash();
        rec.kind = cfg.has("kind") ? cfg.get_string("kind") : "";
        rec.error = e.what();
        rcli::write_run_record(rec, out_prefix);
        return 1;
    }
    std::cout << "wrote " << out_prefix << ".json";
    for (const auto& [k, v] : rec.verdicts) std::cout << "  " << k << "=" << v;
    std::cout << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rieszlab: structural checks for homogeneous differential operators and "
                 "numerical probes of weighted fractional-integral inequalities"};
    app.require_subcommand(1);

    std::string config_path, out_flag;
    long seed_flag = -1;
    int threads = 1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "configuration file")->required();
        sub->add_option("--out", out_flag, "output path prefix (default: $RIESZLAB_OUT/<stem>)");
        sub->add_option("--seed", seed_flag, "override the config seed");
        sub->add_option("--threads", threads, "worker threads for sweep evaluation");
    };

    auto* op = app.add_subcommand("op", "structural checks of an operator symbol");
    add_common(op);
    auto* wt = app.add_subcommand("weights", "weight admissibility and finiteness conditions");
    add_common(wt);
    auto* pot = app.add_subcommand("potential", "evaluate the fractional integral on a grid");
    add_common(pot);
    auto* exp = app.add_subcommand("experiment", "inequality ratio sweeps and blow-up probes");
    add_common(exp);

    auto* merge = app.add_subcommand("merge", "merge run records into one summary table");
    std::vector<std::string> merge_paths;
    std::string merge_out = "summary";
    merge->add_option("paths", merge_paths, "run record / summary JSON files")->required();
    merge->add_option("--out", merge_out, "output path prefix");

    CLI11_PARSE(app, argc, argv);

    if (merge->parsed()) {
        try {
            rcli::report_merge(merge_paths, merge_out);
            std::cout << "wrote " << merge_out << ".json\n";
            return 0;
        } catch (const rcli::CliError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return e.exit_code;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }
    std::string kind;
    if (op->parsed()) kind = "op-check";
    else if (wt->parsed()) kind = "weight-check";
    else if (pot->parsed()) kind = "potential-eval";
    else if (exp->parsed()) kind = "experiment";
    return run_kind(kind, config_path, out_flag, seed_flag, threads);
}
