#pragma once

#include "beamplot/error.hpp"
#include "beamplot/format.hpp"
#include "beamplot/metrics.hpp"
#include "beamplot/record.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace beamplot {

enum class ValueMode { Raw, AgeWeighted };

constexpr std::string_view to_string(ValueMode mode) noexcept
{
    return mode == ValueMode::Raw ? "raw" : "age_weighted";
}

/// One publication year. Gap years have paper_count 0 and no min/max/median.
struct BeamRow {
    int year = 0;
    std::vector<Rational> values; // ascending
    std::optional<Rational> min_value;
    std::optional<Rational> max_value;
    std::optional<Rational> median_value;
    std::size_t paper_count = 0;

    friend bool operator==(const BeamRow&, const BeamRow&) = default;
};

struct BeamplotModel {
    std::vector<BeamRow> rows; // contiguous, ascending years
    Rational overall_value_median;
    Rational overall_count_median;
    int census_year = 0;
    ValueMode mode = ValueMode::Raw;
    std::size_t total_papers = 0;
    std::int64_t raw_h_index = 0;

    Rational max_value() const
    {
        Rational best(0);
        for (const auto& row : rows) {
            if (row.max_value && *row.max_value > best) {
                best = *row.max_value;
            }
        }
        return best;
    }

    std::size_t max_paper_count() const
    {
        std::size_t best = 0;
        for (const auto& row : rows) {
            best = std::max(best, row.paper_count);
        }
        return best;
    }

    friend bool operator==(const BeamplotModel&, const BeamplotModel&) = default;
};

/// Groups records by publication year into one row per year of the span,
/// gap years included. The pooled value median runs over every paper; the
/// count median runs over every row including gaps. The h-index always uses
/// raw citation counts.
inline BeamplotModel build_model(std::span<const PublicationRecord> records, ValueMode mode,
                                 const WeightingPolicy& policy)
{
    if (records.empty()) {
        throw Error(ErrorCode::EmptyDataset, "no publication records");
    }

    std::map<int, std::vector<Rational>> by_year;
    std::vector<std::int64_t> raw_counts;
    raw_counts.reserve(records.size());
    for (const auto& record : records) {
        // weighted_citations also rejects future years in raw mode
        const Rational weighted = weighted_citations(record, policy);
        by_year[record.pub_year].push_back(mode == ValueMode::Raw ? Rational(record.times_cited) : weighted);
        raw_counts.push_back(record.times_cited);
    }

    BeamplotModel model;
    model.census_year = policy.census_year;
    model.mode = mode;
    model.total_papers = records.size();
    model.raw_h_index = h_index(raw_counts);

    std::vector<Rational> pooled;
    std::vector<Rational> counts;
    const int first = by_year.begin()->first;
    const int last = by_year.rbegin()->first;
    for (int year = first; year <= last; ++year) {
        BeamRow row;
        row.year = year;
        if (const auto it = by_year.find(year); it != by_year.end()) {
            row.values = std::move(it->second);
            std::sort(row.values.begin(), row.values.end());
            row.paper_count = row.values.size();
            row.min_value = row.values.front();
            row.max_value = row.values.back();
            row.median_value = median(row.values);
            pooled.insert(pooled.end(), row.values.begin(), row.values.end());
        }
        counts.emplace_back(static_cast<std::int64_t>(row.paper_count));
        model.rows.push_back(std::move(row));
    }
    model.overall_value_median = median(std::move(pooled));
    model.overall_count_median = median(std::move(counts));
    return model;
}

struct TableRow {
    int year = 0;
    std::size_t count = 0;
    std::optional<Rational> min;
    std::optional<Rational> median;
    std::optional<Rational> max;
};

/// Flat per-year summary plus the footer statistics.
struct StatsTable {
    std::vector<TableRow> rows;
    Rational overall_value_median;
    Rational overall_count_median;
    std::int64_t h_index = 0;
    std::size_t total_papers = 0;
    int census_year = 0;
    ValueMode mode = ValueMode::Raw;
};

inline StatsTable model_to_table(const BeamplotModel& model)
{
    StatsTable table;
    for (const auto& row : model.rows) {
        table.rows.push_back({row.year, row.paper_count, row.min_value, row.median_value, row.max_value});
    }
    table.overall_value_median = model.overall_value_median;
    table.overall_count_median = model.overall_count_median;
    table.h_index = model.raw_h_index;
    table.total_papers = model.total_papers;
    table.census_year = model.census_year;
    table.mode = model.mode;
    return table;
}

inline std::string to_csv(const StatsTable& table)
{
    auto cell = [](const std::optional<Rational>& v) { return v ? format_decimal(*v) : std::string(); };
    std::ostringstream out;
    out << "year,count,min,median,max\n";
    for (const auto& row : table.rows) {
        out << row.year << ',' << row.count << ',' << cell(row.min) << ',' << cell(row.median) << ','
            << cell(row.max) << '\n';
    }
    out << '\n'
        << "key,value\n"
        << "overall_value_median," << format_decimal(table.overall_value_median) << '\n'
        << "overall_count_median," << format_decimal(table.overall_count_median) << '\n'
        << "h_index," << table.h_index << '\n'
        << "total_papers," << table.total_papers << '\n'
        << "census_year," << table.census_year << '\n'
        << "mode," << to_string(table.mode) << '\n';
    return out.str();
}

namespace detail {

inline nlohmann::ordered_json optional_decimal(const std::optional<Rational>& v)
{
    return v ? json_decimal(*v) : nlohmann::ordered_json(nullptr);
}

} // namespace detail

inline nlohmann::ordered_json to_json(const StatsTable& table)
{
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        rows.push_back({
            {"year", row.year},
            {"count", row.count},
            {"min", detail::optional_decimal(row.min)},
            {"median", detail::optional_decimal(row.median)},
            {"max", detail::optional_decimal(row.max)},
        });
    }
    return {
        {"rows", std::move(rows)},
        {"overall_value_median", json_decimal(table.overall_value_median)},
        {"overall_count_median", json_decimal(table.overall_count_median)},
        {"h_index", table.h_index},
        {"total_papers", table.total_papers},
        {"census_year", table.census_year},
        {"mode", to_string(table.mode)},
    };
}

/// Canonical model document, per-paper values included.
inline nlohmann::ordered_json to_json(const BeamplotModel& model)
{
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : model.rows) {
        nlohmann::ordered_json values = nlohmann::ordered_json::array();
        for (const auto& v : row.values) {
            values.push_back(json_decimal(v));
        }
        rows.push_back({
            {"year", row.year},
            {"values", std::move(values)},
            {"min", detail::optional_decimal(row.min_value)},
            {"max", detail::optional_decimal(row.max_value)},
            {"median", detail::optional_decimal(row.median_value)},
            {"count", row.paper_count},
        });
    }
    return {
        {"rows", std::move(rows)},
        {"overall_value_median", json_decimal(model.overall_value_median)},
        {"overall_count_median", json_decimal(model.overall_count_median)},
        {"census_year", model.census_year},
        {"mode", to_string(model.mode)},
        {"total_papers", model.total_papers},
    };
}

} // namespace beamplot
