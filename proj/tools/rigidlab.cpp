// rigidlab: decide generic minimal rigidity of pinned subspace-incidence
// systems, combinatorially and numerically, and solve for realizations.
//
// Exit codes: 0 = success / rigid, 1 = usage or input error, 2 = analytic
// negative (not rigid, disagreement found, vanishing condition, ...).

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rigidlab/rigidlab.hpp"

namespace {

using rigidlab::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNegative = 2;

std::uint64_t env_seed_fallback() {
    if (const char* env = std::getenv("RIGIDLAB_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

struct Clock {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

// --no-timings drops the wall-clock section so fixed-seed runs are
// reproducible byte for byte.
bool g_timings = true;

void add_timing(json& report, const char* name, const Clock& clock) {
    if (g_timings) report["timings_ms"] = json{{name, clock.ms()}};
}

void emit(const json& report, bool as_json) {
    if (as_json)
        std::cout << report.dump(2) << "\n";
    else
        std::cout << rigidlab::render_text(report);
}

template <typename T>
void dump_matrix(const rigidlab::RigidityMatrix<T>& rm, const std::string& path) {
    json j;
    j["rows"] = rm.mat.rows();
    j["cols"] = rm.mat.cols();
    json row_labels = json::array();
    for (const auto& copy : rm.row_index) {
        row_labels.push_back("e" + std::to_string(copy.edge + 1) + "_{" + std::to_string(copy.t) +
                             "," + std::to_string(copy.l) + "}");
    }
    j["row_labels"] = std::move(row_labels);
    json col_labels = json::array();
    for (int g = 1; g <= rm.n_groups(); ++g)
        for (int v = 0; v < rm.n_vertices(); ++v)
            col_labels.push_back(rm.h.vertex_ids[static_cast<std::size_t>(v)] + "," +
                                 std::to_string(g));
    j["col_labels"] = std::move(col_labels);
    json entries = json::array();
    for (std::size_t r = 0; r < rm.mat.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < rm.mat.cols(); ++c)
            row.push_back(rigidlab::scalar_to_string(rm.mat(r, c)));
        entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    std::ofstream out(path);
    out << j.dump(2) << "\n";
}

int cmd_analyze(const std::string& file, bool as_json, std::uint64_t budget) {
    Clock clock;
    rigidlab::Instance inst = rigidlab::load_instance(file);
    rigidlab::ValidationReport vr = rigidlab::validate(inst.h);
    if (!vr.valid()) {
        for (const auto& v : vr.violations) std::cerr << "invalid: " << v.message << "\n";
        return kExitInput;
    }
    rigidlab::SearchOptions opts;
    opts.node_budget = budget;
    rigidlab::RigidityVerdict verdict = rigidlab::find_certificate(inst.h, opts);
    json report = rigidlab::verdict_to_json(inst.h, verdict);
    add_timing(report, "analyze", clock);
    emit(report, as_json);
    return verdict.status == rigidlab::RigidityStatus::MinimallyRigid ? kExitOk : kExitNegative;
}

int cmd_rank(const std::string& file, int trials, const std::string& field, std::uint64_t seed,
             bool as_json, const std::string& dump_path) {
    Clock clock;
    rigidlab::Instance inst = rigidlab::load_instance(file);
    if (!rigidlab::validate(inst.h).valid()) {
        std::cerr << "invalid hypergraph\n";
        return kExitInput;
    }
    rigidlab::RankReport rank;
    if (field == "rational") {
        rank = rigidlab::generic_rank<rigidlab::Rational>(inst.h, trials, seed);
        if (!dump_path.empty())
            dump_matrix(rigidlab::assemble(
                            rigidlab::sample_generic<rigidlab::Rational>(inst.h, rigidlab::derive_seed(seed, 0))),
                        dump_path);
    } else if (field == "prime") {
        rank = rigidlab::generic_rank<rigidlab::Zp>(inst.h, trials, seed);
        if (!dump_path.empty())
            dump_matrix(rigidlab::assemble(
                            rigidlab::sample_generic<rigidlab::Zp>(inst.h, rigidlab::derive_seed(seed, 0))),
                        dump_path);
    } else {
        std::cerr << "unknown field: " << field << "\n";
        return kExitInput;
    }
    json report = rigidlab::rank_to_json(rank);
    report["field"] = field;
    add_timing(report, "rank", clock);
    emit(report, as_json);
    return rank.full_rank && rank.rows == rank.cols ? kExitOk : kExitNegative;
}

int cmd_decompose(const std::string& file, bool as_json) {
    Clock clock;
    rigidlab::Instance inst = rigidlab::load_instance(file);
    if (!rigidlab::validate(inst.h).valid()) {
        std::cerr << "invalid hypergraph\n";
        return kExitInput;
    }
    rigidlab::MultiHypergraph mh = rigidlab::expand(inst.h);
    rigidlab::PebbleGameResult game = rigidlab::pebble_game(mh, inst.h.dim - 1);
    json report;
    report["copies"] = mh.n_copies();
    report["capacity"] = inst.h.capacity();
    report["sparse"] = game.accepted;
    report["tight"] = game.accepted && game.tight;
    if (game.blocked_copy) {
        const auto& copy = mh.copies[static_cast<std::size_t>(*game.blocked_copy)];
        report["blocked_copy"] = "e" + std::to_string(copy.edge + 1);
    }
    if (game.accepted && game.tight) {
        rigidlab::MapDecomposition dec =
            rigidlab::split_into_maps(mh, *game.orientation, inst.h.dim - 1);
        json maps = json::array();
        for (int m = 0; m < inst.h.dim - 1; ++m) {
            json jm = json::array();
            for (int c = 0; c < mh.n_copies(); ++c) {
                if (dec.map_of[static_cast<std::size_t>(c)] != m) continue;
                json jc;
                jc["edge"] = mh.copies[static_cast<std::size_t>(c)].edge + 1;
                jc["tail"] = inst.h.vertex_ids[static_cast<std::size_t>(
                    dec.tail[static_cast<std::size_t>(c)])];
                jm.push_back(std::move(jc));
            }
            maps.push_back(std::move(jm));
        }
        report["maps"] = std::move(maps);
    }
    add_timing(report, "decompose", clock);
    emit(report, as_json);
    return game.accepted && game.tight ? kExitOk : kExitNegative;
}

int cmd_cross_validate(int max_v, int max_d, int max_m, int count, std::uint64_t seed, int trials,
                       const std::string& dump_path, bool as_json) {
    Clock clock;
    rigidlab::CrossValBounds bounds;
    bounds.max_vertices = max_v;
    bounds.max_dim = max_d;
    bounds.max_pin_dim = max_m;
    rigidlab::CrossValReport cv = rigidlab::cross_validate<rigidlab::Zp>(bounds, count, seed, trials);
    json report;
    report["checked"] = cv.checked;
    report["agree"] = cv.checked - static_cast<int>(cv.disagreements.size());
    report["rigid_both"] = cv.rigid_both;
    report["flexible_both"] = cv.flexible_both;
    report["disagreements"] = cv.disagreements.size();
    add_timing(report, "cross_validate", clock);
    emit(report, as_json);
    if (!cv.disagreements.empty()) {
        int i = 0;
        for (const auto& dis : cv.disagreements) {
            rigidlab::Instance inst;
            inst.h = dis.hypergraph;
            json jd;
            jd["instance"] = rigidlab::instance_to_json(inst);
            jd["combinatorial"] = rigidlab::to_string(dis.combinatorial);
            jd["numeric"] = rigidlab::rank_to_json(dis.numeric);
            std::string path = dump_path + "." + std::to_string(i++) + ".json";
            std::ofstream out(path);
            out << jd.dump(2) << "\n";
            std::cerr << "disagreement dumped to " << path << "\n";
        }
        return kExitNegative;
    }
    return kExitOk;
}

int cmd_pure_condition(const std::string& file, int samples, std::uint64_t seed, int limit_rows,
                       bool as_json) {
    Clock clock;
    rigidlab::Instance inst = rigidlab::load_instance(file);
    if (!rigidlab::validate(inst.h).valid()) {
        std::cerr << "invalid hypergraph\n";
        return kExitInput;
    }
    if (inst.h.total_copies() != inst.h.capacity()) {
        std::cerr << "pure-condition requires a square system (rows == capacity)\n";
        return kExitInput;
    }
    json report;
    rigidlab::VanishingReport<rigidlab::Zp> probe =
        rigidlab::vanishing_probe<rigidlab::Zp>(inst.h, samples, seed);
    report["samples"] = probe.samples;
    report["always_zero"] = probe.always_zero;
    report["nonzero_samples"] = probe.nonzero_samples;
    report["per_sample_error_bound"] = probe.per_sample_error_bound;
    if (inst.h.total_copies() <= limit_rows) {
        rigidlab::Framework<rigidlab::Rational> f =
            rigidlab::sample_generic<rigidlab::Rational>(inst.h, seed);
        rigidlab::LaplaceReport<rigidlab::Rational> lap =
            rigidlab::laplace_verify(rigidlab::assemble(f), limit_rows);
        json jl;
        jl["determinant"] = lap.determinant.str();
        jl["partition_sum"] = lap.partition_sum.str();
        jl["equal"] = lap.equal;
        jl["partitions"] = lap.partitions;
        jl["map_partitions"] = lap.map_partitions;
        jl["nonmap_terms_zero"] = lap.nonmap_terms_zero;
        rigidlab::Rational restricted = rigidlab::map_partition_sum(
            f, rigidlab::enumerate_decompositions(rigidlab::expand(inst.h), inst.h.dim - 1));
        jl["map_sum_matches"] = restricted == lap.determinant;
        report["laplace"] = std::move(jl);
    }
    add_timing(report, "pure_condition", clock);
    emit(report, as_json);
    return probe.always_zero ? kExitNegative : kExitOk;
}

int cmd_realize(const std::string& file, rigidlab::SolveConfig cfg, std::uint64_t seed,
                bool as_json) {
    Clock clock;
    rigidlab::Instance inst = rigidlab::load_instance(file);
    if (!rigidlab::validate(inst.h).valid()) {
        std::cerr << "invalid hypergraph\n";
        return kExitInput;
    }
    if (!inst.pins) {
        std::cerr << "realize requires \"pins\" in the instance file\n";
        return kExitInput;
    }
    rigidlab::PinnedShell<double> shell = rigidlab::import_pins(inst.h, *inst.pins);
    for (const std::string& w : shell.warnings) std::cerr << "warning: " << w << "\n";
    rigidlab::SolveResult result = rigidlab::solve(shell, cfg, seed, inst.realization);
    json report;
    report["status"] = rigidlab::to_string(result.status);
    report["residual_norm"] = result.residual_norm;
    report["iterations"] = result.iterations;
    report["restart"] = result.restart_index;
    report["jacobian_rank"] = result.jacobian_rank;
    report["unknowns"] = shell.n_unknowns();
    report["locally_unique"] = result.locally_unique;
    if (result.status == rigidlab::SolveStatus::Converged) {
        json jp;
        for (int v = 0; v < inst.h.n_vertices(); ++v)
            jp[inst.h.vertex_ids[static_cast<std::size_t>(v)]] =
                result.points[static_cast<std::size_t>(v)];
        report["realization"] = std::move(jp);
    }
    add_timing(report, "realize", clock);
    emit(report, as_json);
    return result.status == rigidlab::SolveStatus::Converged ? kExitOk : kExitNegative;
}

int cmd_gen(int d, int nv, std::uint64_t seed, const std::string& out_path) {
    rigidlab::GenerateOptions opts;
    opts.dim = d;
    opts.n_vertices = nv;
    opts.seed = seed;
    rigidlab::Instance inst;
    inst.h = rigidlab::generate_tight(opts);
    json j = rigidlab::instance_to_json(inst);
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        out << j.dump(2) << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pinned subspace-incidence rigidity toolkit"};
    app.require_subcommand(1);

    std::string file, field = "prime", dump_path, out_path;
    std::string crossval_dump = "crossval_disagreement";
    bool as_json = false;
    bool no_timings = false;
    std::uint64_t seed = env_seed_fallback();
    std::uint64_t budget = 5000000;
    int trials = 3, samples = 5, limit_rows = 10;
    int max_v = 4, max_d = 4, max_m = 3, count = 1000;
    int gen_d = 3, gen_nv = 4;
    rigidlab::SolveConfig solve_cfg;

    auto* analyze = app.add_subcommand("analyze", "combinatorial rigidity verdict");
    analyze->add_option("file", file)->required();
    analyze->add_flag("--json", as_json);
    analyze->add_flag("--no-timings", no_timings);
    analyze->add_option("--budget", budget, "search node budget");

    auto* rank = app.add_subcommand("rank", "generic rank of the rigidity matrix");
    rank->add_option("file", file)->required();
    rank->add_option("--trials", trials);
    rank->add_option("--field", field)->check(CLI::IsMember({"prime", "rational"}));
    rank->add_option("--seed", seed);
    rank->add_option("--dump-matrix", dump_path);
    rank->add_flag("--json", as_json);
    rank->add_flag("--no-timings", no_timings);

    auto* decompose = app.add_subcommand("decompose", "pebble game and map decomposition");
    decompose->add_option("file", file)->required();
    decompose->add_flag("--no-timings", no_timings);
    decompose->add_flag("--json", as_json);

    auto* crossval = app.add_subcommand("cross-validate",
                                        "compare combinatorial and numeric verdicts");
    crossval->add_option("--maxV", max_v);
    crossval->add_option("--d", max_d);
    crossval->add_option("--maxM", max_m);
    crossval->add_option("--count", count);
    crossval->add_option("--trials", trials);
    crossval->add_option("--seed", seed);
    crossval->add_option("--dump", crossval_dump, "dump-file prefix for disagreements");
    crossval->add_flag("--no-timings", no_timings);
    crossval->add_flag("--json", as_json);

    auto* purecond = app.add_subcommand("pure-condition", "probe the pure condition");
    purecond->add_option("file", file)->required();
    purecond->add_option("--samples", samples);
    purecond->add_option("--seed", seed);
    purecond->add_option("--limit-rows", limit_rows);
    purecond->add_flag("--no-timings", no_timings);
    purecond->add_flag("--json", as_json);

    auto* realize = app.add_subcommand("realize", "solve for a realization from pins");
    realize->add_option("file", file)->required();
    realize->add_option("--max-iters", solve_cfg.max_iters);
    realize->add_option("--tol", solve_cfg.tolerance);
    realize->add_option("--restarts", solve_cfg.restarts);
    realize->add_option("--seed", seed);
    realize->add_flag("--no-timings", no_timings);
    realize->add_flag("--json", as_json);

    auto* gen = app.add_subcommand("gen", "generate a random tight instance");
    gen->add_option("--d", gen_d);
    gen->add_option("--nv", gen_nv);
    gen->add_option("--seed", seed);
    gen->add_option("-o,--output", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput; // --help exits 0
    }
    g_timings = !no_timings;

    try {
        if (app.got_subcommand(analyze)) return cmd_analyze(file, as_json, budget);
        if (app.got_subcommand(rank)) return cmd_rank(file, trials, field, seed, as_json, dump_path);
        if (app.got_subcommand(decompose)) return cmd_decompose(file, as_json);
        if (app.got_subcommand(crossval))
            return cmd_cross_validate(max_v, max_d, max_m, count, seed, trials, crossval_dump,
                                      as_json);
        if (app.got_subcommand(purecond))
            return cmd_pure_condition(file, samples, seed, limit_rows, as_json);
        if (app.got_subcommand(realize)) return cmd_realize(file, solve_cfg, seed, as_json);
        if (app.got_subcommand(gen)) return cmd_gen(gen_d, gen_nv, seed, out_path);
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNegative;
    }
    return kExitInput;
}
