#pragma once

// Table and figure rendering. Every function here is a pure function of its
// inputs; files are returned as (name, bytes) pairs for the caller to write.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "govpulse/centrality.hpp"
#include "govpulse/econ.hpp"
#include "govpulse/profiles.hpp"

namespace govpulse::report {

enum class Format { csv, markdown, svg };
std::optional<Format> parse_format(std::string_view text);
std::string_view format_name(Format f);

struct Cell {
    std::string text;  ///< rounded, as shown in Markdown
    std::string raw;   ///< full precision for CSV; empty means same as text
};

struct Table {
    std::string name;  ///< file stem
    std::string title;
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
    std::string note;
};

std::string to_markdown(const Table& t);
std::string to_csv(const Table& t);

/// "2.13* (1.86)": two-decimal coefficient, stars, parenthesized statistic.
std::string coef_cell(double beta, const std::string& stars, double stat);

Table poll_table(const profiles::PollDescriptives& d);
Table voter_table(std::span<const profiles::DescribedColumn> columns);
Table known_voters_table(std::span<const profiles::VoterProfile> voters);
Table top_voters_table(std::span<const profiles::VoterProfile> voters, profiles::RankCriterion criterion,
                       std::size_t n = 10);
Table gini_table(std::span<const centrality::PollMetrics> polls, std::span<const centrality::DailyMetrics> days);
Table measures_table(std::span<const centrality::DailyMetrics> days);

/// One table per factor category, a panel per token (factor rows by measure
/// columns).
std::vector<Table> ols_tables(const econ::OlsGrid& grid, const stats::StarThresholds& thresholds = {});

/// Per token: measure rows by category columns, listing every factor whose
/// coefficient is significant at `bar` with an arrow for its sign.
std::vector<Table> effects_tables(const econ::OlsGrid& grid, double bar);

/// One table per token and category, a panel per instrumented measure.
std::vector<Table> iv_tables(const econ::IvGrid& grid, const stats::StarThresholds& thresholds = {});

/// F statistics (p-values) per measure, and the instrument's descriptives.
std::vector<Table> instrument_tables(const econ::InstrumentScreen& screen);

struct ReportInputs {
    std::span<const centrality::PollMetrics> polls;
    std::span<const centrality::DailyMetrics> days;
    std::optional<profiles::PollDescriptives> poll_descriptives;
    std::span<const profiles::VoterProfile> voters;
    /// Per-voter total votes for the Lorenz curve.
    std::span<const double> voter_totals;
    const econ::OlsGrid* ols = nullptr;
    const econ::IvGrid* iv = nullptr;
    const econ::InstrumentScreen* screen = nullptr;
    stats::StarThresholds thresholds;
};

using Files = std::map<std::string, std::string>;

/// Tables for whatever inputs are present, in each requested format, plus
/// figure data (always CSV; SVG when requested).
Files render_report(const ReportInputs& inputs, std::span<const Format> formats);

}  // namespace govpulse::report
