#include "kcross/report.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace kcross {

namespace {

nlohmann::json big_json(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
        return v.convert_to<std::int64_t>();
    }
    return v.str();
}

BigInt big_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    return BigInt(j.get<std::string>());
}

} // namespace

nlohmann::json rational_json(const Rational& q) {
    return {{"num", big_json(numerator_of(q))}, {"den", big_json(denominator_of(q))}, {"decimal", to_decimal_string(q)}};
}

Rational rational_from_json(const nlohmann::json& j) {
    return Rational(big_from_json(j.at("num")), big_from_json(j.at("den")));
}

nlohmann::json stats_json(const ColoringStats& stats) {
    return {{"mono", stats.mono},
            {"hetero", stats.hetero},
            {"total", stats.total},
            {"ratio", rational_json(stats.ratio)},
            {"vacuous", stats.vacuous}};
}

nlohmann::json certificate_json(const Certificate& cert) {
    return {{"k", cert.k},
            {"n", cert.n},
            {"c1", rational_json(cert.c1)},
            {"c2", rational_json(cert.c2)},
            {"c3", rational_json(cert.c3)},
            {"s", cert.s},
            {"crs_Gprime", cert.crs_gprime},
            {"C1", cert.c1_pairs},
            {"C2", cert.c2_pairs},
            {"c_prime", rational_json(cert.c_prime)},
            {"c", rational_json(cert.c)},
            {"bound", rational_json(cert.bound)},
            {"achieved_ratio", rational_json(cert.achieved_ratio)},
            {"mono", cert.mono},
            {"crossings", cert.crossings},
            {"conditions_passed", cert.conditions_passed},
            {"bound_holds", cert.bound_holds}};
}

nlohmann::json conditions_json(const ConditionReport& report) {
    nlohmann::json j = {{"a", report.a},     {"b", report.b},
                        {"c", report.c},     {"d", report.d},
                        {"passed", report.passed()},
                        {"edge_counts", report.edge_counts},
                        {"s", report.s},     {"failures", report.failures}};
    if (report.c_witness) j["c_witness"] = {report.c_witness->first, report.c_witness->second};
    return j;
}

nlohmann::json box_partition_json(const GeometricGraph& g, const BoxPartition& partition) {
    nlohmann::json boxes = nlohmann::json::array();
    for (const auto& box : partition.boxes) {
        boxes.push_back({{"factors", box.factors},
                         {"regular", to_string(box.regular)},
                         {"tuples", box.tuple_count().str()},
                         {"density", rational_json(box_density(g, box))}});
    }
    return {{"epsilon", rational_json(partition.epsilon)},
            {"irregular_mass", partition.irregular_mass.str()},
            {"total_mass", partition.total_mass.str()},
            {"unknown_boxes", partition.unknown_boxes},
            {"iterations", partition.iterations},
            {"failed", partition.failed},
            {"boxes", boxes}};
}

nlohmann::json same_type_json(const SameTypeCheck& check) {
    nlohmann::json j = {{"same_type", check.same_type}};
    if (check.witness) {
        const auto& w = *check.witness;
        j["witness"] = {{"parts", w.parts},
                        {"first", w.first},
                        {"first_sign", to_string(w.first_sign)},
                        {"second", w.second},
                        {"second_sign", to_string(w.second_sign)}};
    }
    return j;
}

const char* to_string(Pipeline p) {
    switch (p) {
    case Pipeline::BaselineRandom: return "baseline-random";
    case Pipeline::Greedy: return "greedy";
    case Pipeline::FullTheorem: return "full-theorem";
    }
    return "?";
}

Pipeline parse_pipeline(const std::string& name) {
    for (auto p : {Pipeline::BaselineRandom, Pipeline::Greedy, Pipeline::FullTheorem}) {
        if (name == to_string(p)) return p;
    }
    throw std::invalid_argument("unknown pipeline: " + name);
}

nlohmann::json report_json(const Report& report) {
    nlohmann::json j = {{"instance", report.instance},
                        {"n", report.n},
                        {"m", report.m},
                        {"density", rational_json(report.density)},
                        {"crossings", report.crossings},
                        {"pipeline", to_string(report.pipeline)},
                        {"k", report.k},
                        {"seed", report.seed},
                        {"stats", stats_json(report.stats)},
                        {"ok", report.ok},
                        {"timings_ms", report.timings_ms}};
    if (report.certificate) j["certificate"] = certificate_json(*report.certificate);
    if (!report.ok) {
        j["failed_stage"] = report.failed_stage;
        j["message"] = report.message;
    }
    return j;
}

const std::string& csv_header() {
    static const std::string header =
        "instance,pipeline,n,m,k,seed,crossings,mono,hetero,ratio_num,ratio_den,ratio,vacuous,"
        "c_num,c_den,c,bound_num,bound_den,bound,status,failed_stage,total_ms";
    return header;
}

std::string csv_row(const Report& report) {
    std::ostringstream row;
    auto frac = [&](const Rational& q) {
        row << numerator_of(q) << ',' << denominator_of(q) << ',' << to_decimal_string(q) << ',';
    };
    row << report.instance << ',' << to_string(report.pipeline) << ',' << report.n << ',' << report.m << ','
        << report.k << ',' << report.seed << ',' << report.crossings << ',' << report.stats.mono << ','
        << report.stats.hetero << ',';
    frac(report.stats.ratio);
    row << (report.stats.vacuous ? 1 : 0) << ',';
    if (report.certificate) {
        frac(report.certificate->c);
        frac(report.certificate->bound);
    } else {
        row << ",,,,,,";
    }
    double total = 0;
    for (const auto& [_, ms] : report.timings_ms) total += ms;
    row << (report.ok ? "ok" : "failed") << ',' << report.failed_stage << ',' << total;
    return row.str();
}

void write_svg(std::ostream& out, const GeometricGraph& g, const EdgeColoring* coloring) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    const double size = 800.0;
    const double margin = 20.0;
    std::int64_t min_x = 0, max_x = 1, min_y = 0, max_y = 1;
    if (g.vertex_count() > 0) {
        min_x = max_x = g.point(0).x;
        min_y = max_y = g.point(0).y;
        for (const auto& p : g.vertices().points()) {
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_y = std::min(min_y, p.y);
            max_y = std::max(max_y, p.y);
        }
    }
    const double span = static_cast<double>(std::max<std::int64_t>({max_x - min_x, max_y - min_y, 1}));
    const double scale = (size - 2 * margin) / span;
    auto sx = [&](std::int64_t x) { return margin + static_cast<double>(x - min_x) * scale; };
    // SVG y grows downward.
    auto sy = [&](std::int64_t y) { return size - margin - static_cast<double>(y - min_y) * scale; };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
        << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const auto& edge = g.edge(static_cast<EdgeIndex>(e));
        const char* color = "#000000";
        if (coloring) color = palette[((*coloring)[static_cast<EdgeIndex>(e)] - 1) % std::size(palette)];
        out << "<line x1=\"" << sx(g.point(edge.u).x) << "\" y1=\"" << sy(g.point(edge.u).y) << "\" x2=\""
            << sx(g.point(edge.v).x) << "\" y2=\"" << sy(g.point(edge.v).y) << "\" stroke=\"" << color
            << "\" stroke-width=\"1\" stroke-opacity=\"0.7\"/>\n";
    }
    for (const auto& p : g.vertices().points()) {
        out << "<circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"3\" fill=\"black\"/>\n";
    }
    out << "</svg>\n";
}

Report run_experiment(const GeometricGraph& g, const ExperimentConfig& config, EdgeColoring* coloring_out) {
    using Clock = std::chrono::steady_clock;
    auto elapsed = [](Clock::time_point since) {
        return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
    };

    Report report;
    report.instance = config.instance;
    report.n = g.vertex_count();
    report.m = g.edge_count();
    report.density = g.vertex_count() >= 2 ? density(g) : Rational(0);
    report.pipeline = config.pipeline;
    report.k = config.k;
    report.seed = config.seed;

    auto start = Clock::now();
    const auto crossings = crossing_set(g);
    report.crossings = crossings.count;
    report.timings_ms["crossings"] = elapsed(start);

    start = Clock::now();
    EdgeColoring coloring;
    auto greedy = [&] {
        const auto order = crossing_degree_order(g, crossings);
        return derandomized_coloring(g, config.k, order, crossings);
    };
    switch (config.pipeline) {
    case Pipeline::BaselineRandom:
        coloring = random_coloring(g, config.k, config.seed);
        break;
    case Pipeline::Greedy:
        coloring = greedy();
        break;
    case Pipeline::FullTheorem:
        try {
            auto params = config.build;
            params.seed = config.seed;
            auto result = end_to_end(g, config.k, params);
            coloring = std::move(result.coloring);
            report.certificate = std::move(result.certificate);
        } catch (const PipelineError& e) {
            report.ok = false;
            report.failed_stage = e.stage();
            report.message = e.what();
            coloring = greedy();
        }
        break;
    }
    report.timings_ms["coloring"] = elapsed(start);
    report.stats = coloring_stats(g, coloring, crossings);

    if (!config.out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(config.out_dir);
        const std::string stem = config.instance + "." + to_string(config.pipeline);
        if (config.write_json) {
            std::ofstream out(fs::path(config.out_dir) / (stem + ".json"));
            out << report_json(report).dump(2) << '\n';
        }
        if (config.write_csv) {
            const auto path = fs::path(config.out_dir) / "summary.csv";
            const bool fresh = !fs::exists(path);
            std::ofstream out(path, std::ios::app);
            if (fresh) out << csv_header() << '\n';
            out << csv_row(report) << '\n';
        }
        if (config.write_svg) {
            std::ofstream out(fs::path(config.out_dir) / (stem + ".svg"));
            write_svg(out, g, &coloring);
        }
    }
    if (coloring_out) *coloring_out = std::move(coloring);
    return report;
}

} // namespace kcross
