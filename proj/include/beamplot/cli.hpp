#pragma once

#include "beamplot/beam_model.hpp"
#include "beamplot/error.hpp"
#include "beamplot/metrics.hpp"
#include "beamplot/svg_render.hpp"
#include "beamplot/wos_ingest.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace beamplot::cli {

enum class Command { Inspect, Stats, Plot };

struct RunConfig {
    std::vector<std::string> inputs;
    Command command = Command::Plot;
    std::string mode = "raw";
    std::optional<int> census_year;
    std::string output_path; // empty = standard output
    std::string format;      // empty = command default
    std::optional<int> min_year;
    std::optional<int> max_year;
    int width = RenderConfig{}.width_px;
    int height = RenderConfig{}.height_px;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

inline int current_calendar_year()
{
    const auto today = std::chrono::floor<std::chrono::days>(std::chrono::system_clock::now());
    return static_cast<int>(std::chrono::year_month_day(today).year());
}

namespace detail {

inline std::optional<std::string> read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        return std::nullopt;
    }
    return bytes;
}

inline bool write_output(const RunConfig& config, const std::string& text, std::ostream& out, std::ostream& err)
{
    if (config.output_path.empty() || config.output_path == "-") {
        out << text;
        return true;
    }
    std::ofstream file(config.output_path, std::ios::binary);
    file << text;
    if (!file) {
        err << "beamplot: cannot write '" << config.output_path << "'\n";
        return false;
    }
    return true;
}

} // namespace detail

/// Executes a validated configuration. Results go to `out` (or the output
/// file), diagnostics to `err`.
inline int execute(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    const int census_year = config.census_year.value_or(current_calendar_year());
    const ParseOptions options{census_year};

    std::vector<std::vector<PublicationRecord>> sets;
    nlohmann::ordered_json files = nlohmann::ordered_json::array();
    for (const auto& path : config.inputs) {
        const auto bytes = detail::read_file(path);
        if (!bytes) {
            err << "beamplot: cannot read '" << path << "'\n";
            return kExitData;
        }
        ParseResult parsed;
        try {
            parsed = parse_wos_export(*bytes, options);
        } catch (const Error& e) {
            err << path << ": " << e.what() << '\n';
            return kExitData;
        }
        for (const auto& w : parsed.report.warnings) {
            err << path << ':' << w.line << ": " << to_string(w.code) << ": " << w.message << '\n';
        }
        nlohmann::ordered_json entry{{"path", path}};
        entry.update(to_json(parsed.report));
        files.push_back(std::move(entry));
        sets.push_back(std::move(parsed.records));
    }

    auto records = merge_datasets(sets);

    if (config.command == Command::Inspect) {
        const nlohmann::ordered_json summary{
            {"census_year", census_year},
            {"files", std::move(files)},
            {"records_merged", records.size()},
        };
        return detail::write_output(config, summary.dump(2) + "\n", out, err) ? kExitOk : kExitData;
    }

    std::erase_if(records, [&](const PublicationRecord& r) {
        return (config.min_year && r.pub_year < *config.min_year) || (config.max_year && r.pub_year > *config.max_year);
    });
    if (records.empty()) {
        err << "beamplot: no usable records";
        if (config.min_year || config.max_year) {
            err << " in the requested year range";
        }
        err << '\n';
        return kExitData;
    }

    const auto mode = config.mode == "weighted" ? ValueMode::AgeWeighted : ValueMode::Raw;
    std::string text;
    try {
        const auto model = build_model(records, mode, WeightingPolicy{census_year});
        if (config.command == Command::Stats) {
            const auto table = model_to_table(model);
            text = config.format == "json" ? to_json(table).dump(2) + "\n" : to_csv(table);
        } else {
            RenderConfig render;
            render.width_px = config.width;
            render.height_px = config.height;
            text = render_beamplot(model, render);
        }
    } catch (const Error& e) {
        err << "beamplot: " << e.what() << '\n';
        return e.code() == ErrorCode::DegenerateCanvas ? kExitUsage : kExitData;
    }
    return detail::write_output(config, text, out, err) ? kExitOk : kExitData;
}

/// Parses command-line arguments (args[0] is the program name) and runs.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Beamplots and citation statistics from Web of Science tab-delimited exports", "beamplot"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    RunConfig config;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-i,--input", config.inputs, "Web of Science tab-delimited export (repeatable)")
            ->required();
        sub->add_option("-o,--output", config.output_path, "Output file (default: standard output)");
        sub->add_option("--census-year", config.census_year, "Year up to which citations are counted")
            ->check(CLI::Range(kEarliestPubYear, 9999));
    };
    auto add_selection = [&](CLI::App* sub) {
        sub->add_option("--mode", config.mode, "Citation values: raw or age-weighted")
            ->check(CLI::IsMember({"raw", "weighted"}));
        sub->add_option("--min-year", config.min_year, "Drop papers published before this year");
        sub->add_option("--max-year", config.max_year, "Drop papers published after this year");
    };

    auto* inspect = app.add_subcommand("inspect", "Report parse diagnostics as JSON");
    add_common(inspect);
    inspect->add_option("--format", config.format, "Output format")->check(CLI::IsMember({"json"}));

    auto* stats = app.add_subcommand("stats", "Per-year statistics and h-index as CSV or JSON");
    add_common(stats);
    add_selection(stats);
    stats->add_option("--format", config.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

    auto* plot = app.add_subcommand("plot", "Render the beamplot as SVG");
    add_common(plot);
    add_selection(plot);
    plot->add_option("--format", config.format, "Output format")->check(CLI::IsMember({"svg"}));
    plot->add_option("--width", config.width, "Canvas width in px")->check(CLI::PositiveNumber);
    plot->add_option("--height", config.height, "Canvas height in px")->check(CLI::PositiveNumber);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (config.min_year && config.max_year && *config.min_year > *config.max_year) {
            throw CLI::ValidationError("--min-year", "must not exceed --max-year");
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    config.command = inspect->parsed() ? Command::Inspect : stats->parsed() ? Command::Stats : Command::Plot;
    return execute(config, out, err);
}

} // namespace beamplot::cli
