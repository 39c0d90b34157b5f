#pragma once

#include "beamplot/error.hpp"
#include "beamplot/record.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace beamplot {

/// Per-line diagnostic codes. Everything except ExtraFields causes the
/// line to be skipped.
enum class IssueCode {
    MissingPY,
    InvalidPY,
    MissingTC,
    InvalidTC,
    MissingUT,
    FutureYear,
    DuplicateUT,
    ExtraFields,
};

constexpr std::string_view to_string(IssueCode code) noexcept
{
    switch (code) {
        case IssueCode::MissingPY: return "MISSING_PY";
        case IssueCode::InvalidPY: return "INVALID_PY";
        case IssueCode::MissingTC: return "MISSING_TC";
        case IssueCode::InvalidTC: return "INVALID_TC";
        case IssueCode::MissingUT: return "MISSING_UT";
        case IssueCode::FutureYear: return "FUTURE_YEAR";
        case IssueCode::DuplicateUT: return "DUPLICATE_UT";
        case IssueCode::ExtraFields: return "EXTRA_FIELDS";
    }
    return "UNKNOWN";
}

struct ParseWarning {
    std::size_t line = 0;
    IssueCode code{};
    std::string message;

    friend bool operator==(const ParseWarning&, const ParseWarning&) = default;
};

struct SkippedLine {
    std::size_t line = 0;
    IssueCode reason{};

    friend bool operator==(const SkippedLine&, const SkippedLine&) = default;
};

/// Invariant: records_kept + skipped.size() == records_read.
struct ParseReport {
    std::size_t records_read = 0;
    std::size_t records_kept = 0;
    std::vector<ParseWarning> warnings;
    std::vector<SkippedLine> skipped;

    friend bool operator==(const ParseReport&, const ParseReport&) = default;
};

struct ParseOptions {
    /// Records published after this year are skipped. Unset disables the check.
    std::optional<int> census_year;
};

struct ParseResult {
    std::vector<PublicationRecord> records;
    ParseReport report;
};

inline constexpr int kEarliestPubYear = 1500;

namespace detail {

/// Returns the byte offset of the first invalid sequence, if any.
inline std::optional<std::size_t> find_invalid_utf8(std::string_view text)
{
    const auto* p = reinterpret_cast<const unsigned char*>(text.data());
    const std::size_t n = text.size();
    std::size_t i = 0;
    while (i < n) {
        const unsigned char c = p[i];
        if (c < 0x80) {
            ++i;
            continue;
        }
        std::size_t len = 0;
        std::uint32_t cp = 0;
        std::uint32_t min_cp = 0;
        if ((c & 0xE0) == 0xC0) {
            len = 2;
            cp = c & 0x1F;
            min_cp = 0x80;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3;
            cp = c & 0x0F;
            min_cp = 0x800;
        } else if ((c & 0xF8) == 0xF0) {
            len = 4;
            cp = c & 0x07;
            min_cp = 0x10000;
        } else {
            return i;
        }
        if (i + len > n) {
            return i;
        }
        for (std::size_t k = 1; k < len; ++k) {
            if ((p[i + k] & 0xC0) != 0x80) {
                return i;
            }
            cp = (cp << 6) | (p[i + k] & 0x3F);
        }
        if (cp < min_cp || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
            return i;
        }
        i += len;
    }
    return std::nullopt;
}

inline std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

inline std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

/// Unsigned decimal only; signs, spaces inside, and overflow are rejected.
inline std::optional<std::int64_t> parse_count(std::string_view s)
{
    if (s.empty() || s.front() < '0' || s.front() > '9') {
        return std::nullopt;
    }
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return value;
}

inline std::vector<std::string> split_authors(std::string_view field)
{
    std::vector<std::string> authors;
    for (auto part : split(field, ';')) {
        part = trim(part);
        if (!part.empty()) {
            authors.emplace_back(part);
        }
    }
    return authors;
}

/// Total order used to pick a survivor among records sharing a UT:
/// more citations wins, remaining fields only break ties.
inline bool less_preferred(const PublicationRecord& a, const PublicationRecord& b)
{
    return std::tie(a.times_cited, a.pub_year, a.title, a.source, a.doc_type, a.authors)
         < std::tie(b.times_cited, b.pub_year, b.title, b.source, b.doc_type, b.authors);
}

} // namespace detail

/// Parses a Web of Science "Tab-delimited (Win, UTF-8)" export.
///
/// The first non-empty line names the columns; PY, TC and UT are required,
/// AU, TI, SO and DT are picked up when present and every other column is
/// ignored. Data lines that cannot yield a valid record are skipped and
/// reported, never fatal. Throws Error for input that has no usable header
/// or is not valid UTF-8.
inline ParseResult parse_wos_export(std::string_view bytes, const ParseOptions& options = {})
{
    if (bytes.starts_with("\xEF\xBB\xBF")) {
        bytes.remove_prefix(3);
    }
    if (const auto bad = detail::find_invalid_utf8(bytes)) {
        throw Error(ErrorCode::MalformedEncoding,
                    "invalid UTF-8 sequence at byte offset " + std::to_string(*bad));
    }

    auto lines = detail::split(bytes, '\n');
    for (auto& line : lines) {
        if (line.ends_with('\r')) {
            line.remove_suffix(1);
        }
    }

    std::size_t header_index = 0;
    while (header_index < lines.size() && lines[header_index].empty()) {
        ++header_index;
    }
    if (header_index == lines.size()) {
        throw Error(ErrorCode::EmptyInput, "no header line");
    }

    const auto tags = detail::split(lines[header_index], '\t');
    std::map<std::string_view, std::size_t> column;
    for (std::size_t i = 0; i < tags.size(); ++i) {
        if (!tags[i].empty()) {
            column.emplace(tags[i], i);
        }
    }
    std::string missing;
    for (const std::string_view tag : {"PY", "TC", "UT"}) {
        if (!column.contains(tag)) {
            missing += missing.empty() ? "" : ", ";
            missing += tag;
        }
    }
    if (!missing.empty()) {
        throw Error(ErrorCode::MissingRequiredColumns, "header lacks " + missing);
    }
    auto column_of = [&](std::string_view tag) -> std::optional<std::size_t> {
        const auto it = column.find(tag);
        return it == column.end() ? std::nullopt : std::optional(it->second);
    };
    const std::size_t py_col = column.at("PY");
    const std::size_t tc_col = column.at("TC");
    const std::size_t ut_col = column.at("UT");
    const auto au_col = column_of("AU");
    const auto ti_col = column_of("TI");
    const auto so_col = column_of("SO");
    const auto dt_col = column_of("DT");

    ParseResult result;
    auto& report = result.report;
    std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> seen; // ut -> (index, line)

    auto skip = [&](std::size_t line, IssueCode code, std::string message) {
        report.warnings.push_back({line, code, std::move(message)});
        report.skipped.push_back({line, code});
    };

    for (std::size_t i = header_index + 1; i < lines.size(); ++i) {
        if (lines[i].empty()) {
            continue;
        }
        const std::size_t line_no = i + 1;
        ++report.records_read;

        const auto fields = detail::split(lines[i], '\t');
        auto field = [&](std::size_t col) -> std::string_view {
            return col < fields.size() ? fields[col] : std::string_view{};
        };

        const auto py_text = detail::trim(field(py_col));
        if (py_text.empty()) {
            skip(line_no, IssueCode::MissingPY, "PY is empty");
            continue;
        }
        const auto year = detail::parse_count(py_text);
        if (!year || *year < kEarliestPubYear || *year > 9999) {
            skip(line_no, IssueCode::InvalidPY, "PY \"" + std::string(py_text) + "\" is not a valid year");
            continue;
        }

        const auto tc_text = detail::trim(field(tc_col));
        if (tc_text.empty()) {
            skip(line_no, IssueCode::MissingTC, "TC is empty");
            continue;
        }
        const auto cited = detail::parse_count(tc_text);
        if (!cited) {
            skip(line_no, IssueCode::InvalidTC,
                 "TC \"" + std::string(tc_text) + "\" is not a non-negative integer");
            continue;
        }

        const auto ut_text = detail::trim(field(ut_col));
        if (ut_text.empty()) {
            skip(line_no, IssueCode::MissingUT, "UT is empty");
            continue;
        }

        if (options.census_year && *year > *options.census_year) {
            skip(line_no, IssueCode::FutureYear,
                 "PY " + std::to_string(*year) + " is after census year "
                     + std::to_string(*options.census_year));
            continue;
        }

        if (fields.size() > tags.size()) {
            const bool extra_content = std::any_of(fields.begin() + static_cast<std::ptrdiff_t>(tags.size()),
                                                   fields.end(), [](auto f) { return !f.empty(); });
            if (extra_content) {
                report.warnings.push_back({line_no, IssueCode::ExtraFields,
                                           std::to_string(fields.size() - tags.size())
                                               + " field(s) beyond the header ignored"});
            }
        }

        PublicationRecord record;
        record.ut = std::string(ut_text);
        record.pub_year = static_cast<int>(*year);
        record.times_cited = *cited;
        if (ti_col) record.title = std::string(field(*ti_col));
        if (so_col) record.source = std::string(field(*so_col));
        if (dt_col) record.doc_type = std::string(field(*dt_col));
        if (au_col) record.authors = detail::split_authors(field(*au_col));

        if (const auto it = seen.find(record.ut); it != seen.end()) {
            auto& [index, kept_line] = it->second;
            auto& kept = result.records[index];
            if (detail::less_preferred(kept, record)) {
                skip(kept_line, IssueCode::DuplicateUT,
                     "UT " + record.ut + " repeated on line " + std::to_string(line_no)
                         + " with more citations");
                kept = std::move(record);
                kept_line = line_no;
            } else {
                skip(line_no, IssueCode::DuplicateUT,
                     "UT " + record.ut + " already read on line " + std::to_string(kept_line));
            }
            continue;
        }
        seen.emplace(record.ut, std::pair{result.records.size(), line_no});
        result.records.push_back(std::move(record));
    }

    auto by_line = [](const auto& a, const auto& b) { return a.line < b.line; };
    std::stable_sort(report.warnings.begin(), report.warnings.end(), by_line);
    std::stable_sort(report.skipped.begin(), report.skipped.end(), by_line);
    report.records_kept = result.records.size();
    return result;
}

/// Union of several record lists. A UT seen more than once keeps the copy
/// with the higher times_cited. Output is ordered by (pub_year, ut).
inline std::vector<PublicationRecord> merge_datasets(std::span<const std::vector<PublicationRecord>> sets)
{
    std::map<std::string, PublicationRecord> by_ut;
    for (const auto& set : sets) {
        for (const auto& record : set) {
            auto [it, inserted] = by_ut.try_emplace(record.ut, record);
            if (!inserted && detail::less_preferred(it->second, record)) {
                it->second = record;
            }
        }
    }
    std::vector<PublicationRecord> merged;
    merged.reserve(by_ut.size());
    for (auto& [ut, record] : by_ut) {
        merged.push_back(std::move(record));
    }
    std::stable_sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) {
        return std::tie(a.pub_year, a.ut) < std::tie(b.pub_year, b.ut);
    });
    return merged;
}

inline nlohmann::ordered_json to_json(const ParseReport& report)
{
    nlohmann::ordered_json warnings = nlohmann::ordered_json::array();
    for (const auto& w : report.warnings) {
        warnings.push_back({{"line", w.line}, {"code", to_string(w.code)}, {"message", w.message}});
    }
    nlohmann::ordered_json skipped = nlohmann::ordered_json::array();
    for (const auto& s : report.skipped) {
        skipped.push_back({{"line", s.line}, {"reason", to_string(s.reason)}});
    }
    return {
        {"records_read", report.records_read},
        {"records_kept", report.records_kept},
        {"warnings", std::move(warnings)},
        {"skipped", std::move(skipped)},
    };
}

inline nlohmann::ordered_json to_json(const PublicationRecord& record)
{
    return {
        {"ut", record.ut},
        {"pub_year", record.pub_year},
        {"times_cited", record.times_cited},
        {"title", record.title},
        {"authors", record.authors},
        {"source", record.source},
        {"doc_type", record.doc_type},
    };
}

inline nlohmann::ordered_json to_json(std::span<const PublicationRecord> records)
{
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        out.push_back(to_json(r));
    }
    return out;
}

} // namespace beamplot
