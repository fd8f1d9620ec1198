// Command-line front end: instance generation, crossing counts, colorings,
// bundle construction, regularity and same-type inspection, certificate
// verification and experiment reports.

#include "kcross/bundle.hpp"
#include "kcross/certificate.hpp"
#include "kcross/coloring.hpp"
#include "kcross/generate.hpp"
#include "kcross/io.hpp"
#include "kcross/regularity.hpp"
#include "kcross/report.hpp"
#include "kcross/same_type.hpp"
#include "kcross/structure.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

constexpr int exit_verification_failure = 2;
constexpr int exit_pipeline_failure = 3;

struct Globals {
    std::uint64_t seed = 1;
    std::string out_dir;
    std::vector<std::string> formats;
};

// Writes to `path` when given, otherwise to stdout.
template <class Fn>
void emit(const std::string& path, Fn&& write) {
    if (path.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write(out);
}

std::string in_out_dir(const Globals& globals, const std::string& explicit_path, const std::string& name) {
    if (!explicit_path.empty() || globals.out_dir.empty()) return explicit_path;
    std::filesystem::create_directories(globals.out_dir);
    return (std::filesystem::path(globals.out_dir) / name).string();
}

kcross::Rational parse_or_throw(const std::string& text, const char* what) {
    try {
        return kcross::parse_rational(text);
    } catch (const std::invalid_argument&) {
        throw CLI::ValidationError(what, "not a rational: " + text);
    }
}

} // namespace

int main(int argc, char** argv) {
    using namespace kcross;

    CLI::App app{"k-colorings of dense geometric graphs with few monochromatic crossings"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals globals;
    app.add_option("--seed", globals.seed, "random seed")->capture_default_str();
    app.add_option("--out-dir", globals.out_dir, "directory for output files");
    app.add_option("--format", globals.formats, "report formats: json, csv, svg")
        ->check(CLI::IsMember({"json", "csv", "svg"}));

    // gen
    auto* gen = app.add_subcommand("gen", "generate a geometric graph");
    std::string gen_kind = "uniform-square";
    std::size_t gen_n = 20;
    std::string gen_density = "1";
    std::int64_t gen_range = std::int64_t{1} << 20;
    std::string gen_out;
    gen->add_option("--kind", gen_kind)->check(CLI::IsMember({"uniform-square", "convex-position", "perturbed-grid", "clustered"}));
    gen->add_option("--n", gen_n)->required();
    gen->add_option("--density", gen_density, "target density d in (0,1], e.g. 3/4");
    gen->add_option("--range", gen_range, "coordinate range");
    gen->add_option("--out", gen_out, "graph file (default: stdout)");

    // crossings
    auto* crossings_cmd = app.add_subcommand("crossings", "count crossing edge pairs");
    std::string graph_path;
    bool list_pairs = false;
    unsigned threads = 1;
    crossings_cmd->add_option("--graph", graph_path)->required();
    crossings_cmd->add_flag("--list", list_pairs, "include every crossing pair");
    crossings_cmd->add_option("--threads", threads);

    // color
    auto* color = app.add_subcommand("color", "color the edges");
    std::string strategy = "greedy";
    std::uint32_t k = 2;
    std::string bundles_path;
    std::string color_out;
    color->add_option("--graph", graph_path)->required();
    color->add_option("--strategy", strategy)->check(CLI::IsMember({"random", "greedy", "bundle"}));
    color->add_option("--k", k)->check(CLI::Range(2u, 1000u));
    color->add_option("--bundles", bundles_path, "bundle JSON for --strategy bundle (default: build bundles)");
    color->add_option("--out", color_out, "coloring file (default: stdout, stats to stderr)");

    // bundles
    auto* bundles_cmd = app.add_subcommand("bundles", "build k bundles satisfying conditions (a)-(d)");
    std::size_t r = 0;
    std::size_t part_count = 4;
    std::string eps_text;
    std::string bundles_out;
    bundles_cmd->add_option("--graph", graph_path)->required();
    bundles_cmd->add_option("--k", k)->check(CLI::Range(2u, 1000u));
    bundles_cmd->add_option("--r", r, "number of parts (default: schedule 2k, 4k, 8k)");
    bundles_cmd->add_option("--eps", eps_text, "regularity epsilon, e.g. 1/16");
    bundles_cmd->add_option("--out", bundles_out, "bundle JSON (default: stdout)");

    // regularity
    auto* regularity = app.add_subcommand("regularity", "random balanced partition and regular box partition");
    regularity->add_option("--graph", graph_path)->required();
    regularity->add_option("--eps", eps_text);
    regularity->add_option("--r", part_count)->capture_default_str();

    // sametype
    auto* sametype = app.add_subcommand("sametype", "check or refine a partition for same-type transversals");
    std::string parts_path;
    bool do_check = false;
    bool do_refine = false;
    sametype->add_option("--graph", graph_path, "graph or point-set file")->required();
    sametype->add_option("--parts", parts_path, "one part per line (default: random balanced partition)");
    sametype->add_option("--r", part_count, "parts for the random partition")->capture_default_str();
    auto* check_flag = sametype->add_flag("--check", do_check);
    auto* refine_flag = sametype->add_flag("--refine", do_refine);
    check_flag->excludes(refine_flag);

    // verify
    auto* verify = app.add_subcommand("verify", "certificate for a graph and its bundles");
    verify->add_option("--graph", graph_path)->required();
    verify->add_option("--bundles", bundles_path)->required();

    // report
    auto* report_cmd = app.add_subcommand("report", "run a pipeline and write JSON/CSV/SVG reports");
    std::string pipeline = "full-theorem";
    std::string instance_name;
    report_cmd->add_option("--graph", graph_path)->required();
    report_cmd->add_option("--pipeline", pipeline)->check(CLI::IsMember({"baseline-random", "greedy", "full-theorem"}));
    report_cmd->add_option("--k", k)->check(CLI::Range(2u, 1000u));
    report_cmd->add_option("--name", instance_name, "instance name (default: graph file stem)");
    report_cmd->add_option("--r", r, "number of parts for full-theorem (default: schedule)");
    report_cmd->add_option("--eps", eps_text, "regularity epsilon for full-theorem");

    CLI11_PARSE(app, argc, argv);

    auto build_params = [&] {
        BuildParams params;
        params.seed = globals.seed;
        if (r > 0) params.r_schedule = {r};
        if (!eps_text.empty()) params.epsilon = parse_or_throw(eps_text, "--eps");
        return params;
    };

    try {
        if (*gen) {
            GeneratorSpec spec;
            spec.kind = parse_generator_kind(gen_kind);
            spec.n = gen_n;
            spec.density = parse_or_throw(gen_density, "--density");
            spec.seed = globals.seed;
            spec.coordinate_range = gen_range;
            const auto g = generate(spec);
            emit(in_out_dir(globals, gen_out, "graph.txt"), [&](std::ostream& out) { write_graph(out, g); });
            return 0;
        }

        const auto g = load_graph(graph_path);

        if (*crossings_cmd) {
            const auto set = crossing_set(g, threads);
            nlohmann::json j = {{"vertices", g.vertex_count()}, {"edges", g.edge_count()}, {"crossings", set.count}};
            if (list_pairs) j["pairs"] = set.pairs;
            std::cout << j.dump(2) << '\n';
            return 0;
        }

        if (*color) {
            const auto set = crossing_set(g);
            EdgeColoring coloring;
            if (strategy == "random") {
                coloring = random_coloring(g, k, globals.seed);
            } else if (strategy == "greedy") {
                coloring = derandomized_coloring(g, k, crossing_degree_order(g, set), set);
            } else {
                std::vector<Bundle> bundles;
                if (!bundles_path.empty()) {
                    std::ifstream in(bundles_path);
                    if (!in) throw std::runtime_error("cannot open " + bundles_path);
                    bundles = read_bundles_json(in, g);
                } else {
                    bundles = build_bundles(g, k, build_params()).bundles;
                }
                coloring = bundle_coloring(g, bundles, {}, set);
            }
            const auto stats = stats_json(coloring_stats(g, coloring, set)).dump(2);
            const auto path = in_out_dir(globals, color_out, "coloring.txt");
            emit(path, [&](std::ostream& out) { write_coloring(out, g, coloring); });
            (path.empty() ? std::cerr : std::cout) << stats << '\n';
            return 0;
        }

        if (*bundles_cmd) {
            const auto result = build_bundles(g, k, build_params());
            emit(in_out_dir(globals, bundles_out, "bundles.json"),
                 [&](std::ostream& out) { write_bundles_json(out, g, result.bundles); });
            return 0;
        }

        if (*regularity) {
            const auto partition = random_balanced_partition(g, part_count, globals.seed);
            const Rational eps = eps_text.empty() ? default_epsilon(density(g)) : parse_or_throw(eps_text, "--eps");
            BoxPartitionOptions options;
            options.regularity.seed = globals.seed;
            const auto boxes = regular_box_partition(g, partition.parts, eps, options);
            auto j = box_partition_json(g, boxes);
            j["removed"] = partition.removed;
            j["parts"] = partition.parts;
            std::cout << j.dump(2) << '\n';
            return boxes.failed ? exit_pipeline_failure : 0;
        }

        if (*sametype) {
            TuplePartition parts;
            if (!parts_path.empty()) {
                std::ifstream in(parts_path);
                if (!in) throw std::runtime_error("cannot open " + parts_path);
                parts = read_parts(in);
            } else {
                parts = random_balanced_partition(g, part_count, globals.seed).parts;
            }
            if (do_refine) {
                const auto refined = same_type_refine(g.vertices(), parts);
                nlohmann::json j = {{"parts", refined.parts},
                                    {"beta", rational_json(refined.beta)},
                                    {"certified", refined.certified},
                                    {"cuts", refined.cuts},
                                    {"exhaustive", refined.exhaustive}};
                std::cout << j.dump(2) << '\n';
                return refined.certified ? 0 : exit_pipeline_failure;
            }
            const auto check = same_type_check(g.vertices(), parts);
            std::cout << same_type_json(check).dump(2) << '\n';
            return check.same_type ? 0 : exit_verification_failure;
        }

        if (*verify) {
            std::ifstream in(bundles_path);
            if (!in) throw std::runtime_error("cannot open " + bundles_path);
            const auto bundles = read_bundles_json(in, g);
            Constants constants;
            try {
                constants = certificate_constants(g, bundles);
            } catch (const CertificateError& e) {
                std::cout << nlohmann::json{{"passed", false}, {"error", e.what()}}.dump(2) << '\n';
                return exit_verification_failure;
            }
            const auto conditions = verify_conditions(g, bundles, constants);
            nlohmann::json j = {{"passed", conditions.passed()}, {"conditions", conditions_json(conditions)}};
            if (conditions.passed()) {
                const auto set = crossing_set(g);
                const auto coloring = bundle_coloring(g, bundles, {}, set);
                const auto cert = make_certificate(g, bundles, coloring, set);
                j["certificate"] = certificate_json(cert);
                j["passed"] = cert.bound_holds;
            }
            std::cout << j.dump(2) << '\n';
            return j["passed"].get<bool>() ? 0 : exit_verification_failure;
        }

        if (*report_cmd) {
            ExperimentConfig config;
            config.instance = instance_name.empty() ? std::filesystem::path(graph_path).stem().string() : instance_name;
            config.pipeline = parse_pipeline(pipeline);
            config.k = k;
            config.seed = globals.seed;
            config.build = build_params();
            config.out_dir = globals.out_dir;
            if (!globals.formats.empty()) {
                auto has = [&](const char* f) {
                    return std::find(globals.formats.begin(), globals.formats.end(), f) != globals.formats.end();
                };
                config.write_json = has("json");
                config.write_csv = has("csv");
                config.write_svg = has("svg");
            }
            const auto report = run_experiment(g, config);
            std::cout << report_json(report).dump(2) << '\n';
            return report.ok ? 0 : exit_pipeline_failure;
        }
    } catch (const PipelineError& e) {
        std::cerr << "pipeline failure at " << e.stage() << ": " << e.what() << '\n';
        return exit_pipeline_failure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
