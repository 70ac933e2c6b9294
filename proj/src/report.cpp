#include "govpulse/report.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "govpulse/csv.hpp"
#include "govpulse/io.hpp"

namespace govpulse::report {
namespace {

using centrality::Measure;

std::string fixed2(double v) {
    if (std::isnan(v)) return "";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::string s = fmt::format("{:.2f}", v);
    if (s == "-0.00") s = "0.00";
    return s;
}

std::string pct(double v) { return std::isnan(v) ? "" : fixed2(100.0 * v) + "%"; }

Cell num(double v) { return {fixed2(v), format_double(v)}; }
Cell percent(double v) { return {pct(v), format_double(v)}; }
Cell text(std::string s) { return {std::move(s), {}}; }

const std::array<std::string_view, 5> kStatRows{"Mean", "Median", "Maximum", "Minimum", "Std"};

double stat_at(const stats::SummaryStats& s, std::size_t row) {
    switch (row) {
        case 0: return s.mean;
        case 1: return s.median;
        case 2: return s.maximum;
        case 3: return s.minimum;
        default: return s.std;
    }
}

std::string star_note(const stats::StarThresholds& t) {
    return fmt::format("*, ** and *** mark p-values at or below {}, {} and {}.", format_double(t.levels[0]),
                       format_double(t.levels[1]), format_double(t.levels[2]));
}

std::string scaling_note(bool standardized) {
    return standardized ? "Variables are z-scored over each aligned sample." : "Variables are in raw units.";
}

std::string md_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '|') out += '\\';
        out += c == '\n' ? ' ' : c;
    }
    return out;
}

template <typename T>
void push_unique(std::vector<T>& v, const T& x) {
    if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

constexpr std::array<govdata::Category, 5> kFactorCategories{
    govdata::Category::financial, govdata::Category::transaction, govdata::Category::exchange,
    govdata::Category::network, govdata::Category::sentiment};

std::string category_title(govdata::Category c) {
    switch (c) {
        case govdata::Category::financial: return "Financial";
        case govdata::Category::transaction: return "Transaction";
        case govdata::Category::exchange: return "Exchange";
        case govdata::Category::network: return "Network";
        case govdata::Category::sentiment: return "Sentiment";
        case govdata::Category::instrument: return "Instrument";
    }
    return "";
}

}  // namespace

std::optional<Format> parse_format(std::string_view s) {
    if (s == "csv") return Format::csv;
    if (s == "markdown" || s == "md") return Format::markdown;
    if (s == "svg") return Format::svg;
    return std::nullopt;
}

std::string_view format_name(Format f) {
    switch (f) {
        case Format::csv: return "csv";
        case Format::markdown: return "markdown";
        case Format::svg: return "svg";
    }
    return "";
}

std::string to_markdown(const Table& t) {
    std::string out = fmt::format("## {}\n\n", t.title);
    const auto row_text = [](const std::vector<std::string>& cells) {
        std::string line = "|";
        for (const auto& c : cells) line += " " + md_escape(c) + " |";
        return line + "\n";
    };
    out += row_text(t.header);
    out += "|";
    for (std::size_t i = 0; i < t.header.size(); ++i) out += i == 0 ? "---|" : "---:|";
    out += "\n";
    for (const auto& row : t.rows) {
        std::vector<std::string> cells;
        for (const auto& c : row) cells.push_back(c.text);
        out += row_text(cells);
    }
    if (!t.note.empty()) out += "\n" + t.note + "\n";
    return out;
}

std::string to_csv(const Table& t) {
    std::string out = csv::join_row(t.header) + "\n";
    for (const auto& row : t.rows) {
        std::vector<std::string> cells;
        for (const auto& c : row) cells.push_back(c.raw.empty() ? c.text : c.raw);
        out += csv::join_row(cells) + "\n";
    }
    return out;
}

std::string coef_cell(double beta, const std::string& stars, double stat) {
    return fmt::format("{}{} ({})", fixed2(beta), stars, fixed2(stat));
}

namespace {

Cell coef(double beta, const std::string& stars, double stat) {
    return {coef_cell(beta, stars, stat), fmt::format("{}{} ({})", format_double(beta), stars, format_double(stat))};
}

Table summary_table(std::string name, std::string title, std::span<const profiles::DescribedColumn> columns,
                    const std::set<std::string>& percent_columns, std::string note) {
    Table t{std::move(name), std::move(title), {""}, {}, std::move(note)};
    for (const auto& c : columns) t.header.push_back(c.name);
    for (std::size_t r = 0; r < kStatRows.size(); ++r) {
        std::vector<Cell> row{text(std::string(kStatRows[r]))};
        for (const auto& c : columns) {
            const double v = stat_at(c.stats, r);
            row.push_back(percent_columns.contains(c.name) ? percent(v) : num(v));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::vector<Cell> profile_row(const profiles::VoterProfile& p, bool with_identity) {
    std::vector<Cell> row{text(p.address)};
    if (with_identity) row.push_back(text(p.identity.value_or("")));
    row.push_back(text(std::to_string(p.involved_polls)));
    row.push_back({fixed2(p.total_votes.to_double()), p.total_votes.to_string()});
    row.push_back(text(std::to_string(p.first_poll)));
    row.push_back({fixed2(p.highest_single_vote.to_double()), p.highest_single_vote.to_string()});
    row.push_back(text(p.first_date.to_string()));
    return row;
}

}  // namespace

Table poll_table(const profiles::PollDescriptives& d) {
    return summary_table("poll_descriptives", "Descriptive statistics of governance polls", d.columns,
                         {"Breakdown ratio", "Vote share of the largest voter"},
                         fmt::format("Per-poll statistics over polls with positive total votes. Breakdown: {}.",
                                     d.breakdown_definition));
}

Table voter_table(std::span<const profiles::DescribedColumn> columns) {
    return summary_table("voter_descriptives", "Descriptive statistics of voters", columns, {},
                         "Per-voter involved polls, total votes, first poll id and highest single vote, in tokens.");
}

Table known_voters_table(std::span<const profiles::VoterProfile> voters) {
    Table t{"known_voters",
            "Known voters",
            {"Address", "Identity", "Involved polls", "Total votes", "First poll", "The highest votes", "Since"},
            {},
            "Voters with an identity label, ordered by identity then address."};
    std::vector<const profiles::VoterProfile*> known;
    for (const auto& v : voters) {
        if (v.identity) known.push_back(&v);
    }
    std::stable_sort(known.begin(), known.end(), [](const auto* a, const auto* b) {
        return std::tie(*a->identity, a->address) < std::tie(*b->identity, b->address);
    });
    for (const auto* v : known) t.rows.push_back(profile_row(*v, true));
    return t;
}

Table top_voters_table(std::span<const profiles::VoterProfile> voters, profiles::RankCriterion criterion,
                       std::size_t n) {
    std::string what;
    switch (criterion) {
        case profiles::RankCriterion::involved_polls: what = "participate in the most polls"; break;
        case profiles::RankCriterion::total_votes: what = "have the largest total votes"; break;
        case profiles::RankCriterion::highest_single_vote: what = "have the largest single votes"; break;
    }
    Table t{fmt::format("top_voters_{}", profiles::criterion_name(criterion)),
            fmt::format("Top {} voters that {}", n, what),
            {"Address", "Identity", "Involved polls", "Total votes", "First poll", "The highest votes", "Since"},
            {},
            "Ties are ordered by address."};
    for (const auto& v : profiles::rank_voters(voters, criterion, n)) t.rows.push_back(profile_row(v, true));
    return t;
}

Table gini_table(std::span<const centrality::PollMetrics> polls, std::span<const centrality::DailyMetrics> days) {
    Table t{"gini", "Gini coefficient in governance polls", {"", "Poll-level", "Daily"}, {},
            "Poll-level: Gini of final ballots in each poll. Daily: Pareto tail estimate on each voter's summed "
            "votes of the day."};
    std::vector<double> poll_g, day_g;
    for (const auto& p : polls) poll_g.push_back(p.gini);
    for (const auto& d : days) day_g.push_back(d.gini);
    std::optional<stats::SummaryStats> ps, ds;
    if (!poll_g.empty()) ps = stats::summarize(poll_g);
    if (!day_g.empty()) ds = stats::summarize(day_g);
    for (std::size_t r = 0; r < kStatRows.size(); ++r) {
        std::vector<Cell> row{text(std::string(kStatRows[r]))};
        for (const auto& s : {ps, ds}) {
            if (!s) {
                row.push_back(text(""));
            } else {
                const double v = stat_at(*s, r);
                row.push_back(r == 4 ? num(v) : percent(v));
            }
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table measures_table(std::span<const centrality::DailyMetrics> days) {
    constexpr std::array<Measure, 6> kColumns{Measure::voters,           Measure::total_votes, Measure::largest_share,
                                              Measure::largest_share_win, Measure::order,       Measure::speed};
    Table t{"measures", "Measurements of governance centralization", {""}, {},
            "Daily values over days with at least one poll. Voters and total votes are summed over the day's polls; "
            "the other measures are averaged."};
    std::vector<profiles::DescribedColumn> cols;
    for (auto m : kColumns) {
        std::vector<double> v;
        for (const auto& d : days) {
            if (!d.missing) v.push_back(centrality::measure_value(d, m));
        }
        t.header.emplace_back(centrality::measure_name(m));
        cols.push_back({std::string(centrality::measure_name(m)), v.empty() ? stats::SummaryStats{} : stats::summarize(v)});
    }
    for (std::size_t r = 0; r < kStatRows.size(); ++r) {
        std::vector<Cell> row{text(std::string(kStatRows[r]))};
        for (const auto& c : cols) row.push_back(c.stats.n == 0 ? text("") : num(stat_at(c.stats, r)));
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::vector<Table> ols_tables(const econ::OlsGrid& grid, const stats::StarThresholds& thresholds) {
    std::vector<Measure> measures;
    for (const auto& c : grid.cells) push_unique(measures, c.key.measure);
    std::vector<Table> out;
    for (auto category : kFactorCategories) {
        Table t{fmt::format("ols_{}", govdata::category_name(category)),
                fmt::format("{} factors: univariate regressions", category_title(category)),
                {"Token", "Factor"},
                {},
                fmt::format("Coefficients with t-statistics in parentheses. {} {}", star_note(thresholds),
                            scaling_note(grid.standardized))};
        for (auto m : measures) t.header.emplace_back(centrality::measure_name(m));
        // rows keyed by (token, factor) in grid order
        std::vector<std::pair<std::string, std::string>> keys;
        for (const auto& c : grid.cells) {
            if (c.key.category == category) push_unique(keys, {c.key.token, c.key.factor});
        }
        for (const auto& [token, factor] : keys) {
            std::vector<Cell> row{text(token), text(factor)};
            for (auto m : measures) {
                const auto it = std::find_if(grid.cells.begin(), grid.cells.end(), [&](const econ::OlsCell& c) {
                    return c.key.token == token && c.key.category == category && c.key.factor == factor &&
                           c.key.measure == m;
                });
                if (it == grid.cells.end()) {
                    row.push_back(text(""));
                } else if (it->status == econ::CellStatus::ok) {
                    row.push_back(coef(it->fit.beta1, it->fit.stars, it->fit.t1));
                } else {
                    row.push_back(text(std::string(econ::status_name(it->status))));
                }
            }
            t.rows.push_back(std::move(row));
        }
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<Table> effects_tables(const econ::OlsGrid& grid, double bar) {
    std::vector<std::string> tokens;
    std::vector<Measure> measures;
    for (const auto& c : grid.cells) {
        push_unique(tokens, c.key.token);
        push_unique(measures, c.key.measure);
    }
    std::vector<Table> out;
    for (const auto& token : tokens) {
        Table t{fmt::format("effects_{}", token),
                fmt::format("Significant factors by measure ({})", token),
                {"Measure"},
                {},
                fmt::format("Factors whose coefficient has p <= {}; the arrow gives the coefficient's sign.",
                            format_double(bar))};
        for (auto c : kFactorCategories) t.header.push_back(category_title(c));
        for (auto m : measures) {
            std::vector<Cell> row{text(std::string(centrality::measure_name(m)))};
            for (auto category : kFactorCategories) {
                std::vector<std::string> items;
                for (const auto& c : grid.cells) {
                    if (c.key.token != token || c.key.measure != m || c.key.category != category) continue;
                    if (c.status != econ::CellStatus::ok || !(c.fit.p1 <= bar)) continue;
                    items.push_back(fmt::format("{} {}", c.key.factor, c.fit.beta1 > 0 ? "↑" : "↓"));
                }
                row.push_back(text(fmt::format("{}", fmt::join(items, ", "))));
            }
            t.rows.push_back(std::move(row));
        }
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<Table> iv_tables(const econ::IvGrid& grid, const stats::StarThresholds& thresholds) {
    std::vector<std::string> tokens;
    std::vector<Measure> measures;
    for (const auto& c : grid.cells) {
        push_unique(tokens, c.key.token);
        push_unique(measures, c.key.measure);
    }
    std::vector<Table> out;
    for (const auto& token : tokens) {
        for (auto category : kFactorCategories) {
            std::vector<std::string> factors;
            for (const auto& c : grid.cells) {
                if (c.key.token == token && c.key.category == category) push_unique(factors, c.key.factor);
            }
            Table t{fmt::format("iv_{}_{}", token, govdata::category_name(category)),
                    fmt::format("2SLS regressions ({} factors, {})", category_title(category), token),
                    {"Panel", "", "First stage"},
                    {},
                    fmt::format("First stage: measure on the instrument, partial F in parentheses. Second stage: "
                                "factor on the fitted measure, t-statistics in parentheses. {} {}",
                                star_note(thresholds), scaling_note(grid.standardized))};
            for (const auto& f : factors) t.header.push_back(f);

            for (auto m : measures) {
                const std::string panel(centrality::measure_name(m));
                std::vector<const econ::IvCell*> cells;
                for (const auto& f : factors) {
                    const auto it = std::find_if(grid.cells.begin(), grid.cells.end(), [&](const econ::IvCell& c) {
                        return c.key.token == token && c.key.category == category && c.key.factor == f &&
                               c.key.measure == m;
                    });
                    cells.push_back(it == grid.cells.end() ? nullptr : &*it);
                }
                const econ::IvCell* first = nullptr;
                for (const auto* c : cells) {
                    if (c && c->status == econ::CellStatus::ok) {
                        first = c;
                        break;
                    }
                }
                const auto ok = [](const econ::IvCell* c) { return c && c->status == econ::CellStatus::ok; };

                std::vector<Cell> fs_row{text(panel), text("Instrument")};
                fs_row.push_back(first ? coef(first->fit.first_stage.beta1, first->fit.first_stage.stars,
                                              first->fit.partial_f)
                                       : text(""));
                for (std::size_t i = 0; i < cells.size(); ++i) fs_row.push_back(text(""));
                t.rows.push_back(std::move(fs_row));

                std::vector<Cell> main_row{text(panel), text(panel), text("")};
                for (const auto* c : cells) {
                    if (ok(c)) {
                        const auto& s = c->fit.second_stage;
                        main_row.push_back(coef(s.beta1, s.stars, s.t1));
                    } else {
                        main_row.push_back(text(c ? std::string(econ::status_name(c->status)) : ""));
                    }
                }
                t.rows.push_back(std::move(main_row));

                const auto stat_row = [&](std::string label, auto&& get) {
                    std::vector<Cell> row{text(panel), text(std::move(label)), text("")};
                    for (const auto* c : cells) row.push_back(ok(c) ? num(get(c->fit)) : text(""));
                    t.rows.push_back(std::move(row));
                };
                stat_row("Durbin's test", [](const econ::IvFit& f) { return f.durbin_stat; });
                stat_row("p-value", [](const econ::IvFit& f) { return f.durbin_p; });
                stat_row("Wu-Hausman test", [](const econ::IvFit& f) { return f.wu_hausman_stat; });
                stat_row("p-value", [](const econ::IvFit& f) { return f.wu_hausman_p; });
                stat_row("Adj. R-sq", [](const econ::IvFit& f) { return f.adj_r2; });

                std::vector<Cell> n_row{text(panel), text("N"), text(first ? std::to_string(first->fit.n) : "")};
                for (const auto* c : cells) n_row.push_back(text(ok(c) ? std::to_string(c->fit.n) : ""));
                t.rows.push_back(std::move(n_row));
            }
            out.push_back(std::move(t));
        }
    }
    return out;
}

std::vector<Table> instrument_tables(const econ::InstrumentScreen& screen) {
    Table corr{"instrument_correlations", "Instrument strength by measure", {""}, {},
               "F statistic of each measure regressed on the instrument, p-value in parentheses."};
    std::vector<Cell> row{text("Instrument")};
    for (const auto& r : screen.rows) {
        corr.header.emplace_back(centrality::measure_name(r.measure));
        row.push_back({fmt::format("{}{} ({})", fixed2(r.f_stat), r.stars, fixed2(r.p_value)),
                       fmt::format("{}{} ({})", format_double(r.f_stat), r.stars, format_double(r.p_value))});
    }
    corr.rows.push_back(std::move(row));

    Table desc{"instrument_descriptives", "Instrument descriptive statistics",
               {"", "Mean", "Median", "Maximum", "Minimum", "Std"}, {}, ""};
    if (screen.instrument) {
        std::vector<Cell> r{text("Instrument")};
        for (std::size_t i = 0; i < kStatRows.size(); ++i) r.push_back(num(stat_at(*screen.instrument, i)));
        desc.rows.push_back(std::move(r));
    }
    return {std::move(corr), std::move(desc)};
}

// ---------------------------------------------------------------------------
// Figures

namespace {

struct Line {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

std::string svg_chart(const std::string& title, const std::vector<Line>& lines) {
    constexpr double kW = 640, kH = 320, kPad = 40;
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    bool any = false;
    for (const auto& l : lines) {
        for (const auto& [x, y] : l.points) {
            if (!any) {
                x0 = x1 = x;
                y0 = y1 = y;
                any = true;
            }
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    }
    if (x1 == x0) x1 = x0 + 1;
    if (y1 == y0) y1 = y0 + 1;
    static constexpr std::array<std::string_view, 4> kColors{"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    std::string out = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n"
        "<rect x=\"{2}\" y=\"{2}\" width=\"{3}\" height=\"{4}\" fill=\"none\" stroke=\"#888\"/>\n"
        "<text x=\"{2}\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">{5}</text>\n",
        kW, kH, kPad, kW - 2 * kPad, kH - 2 * kPad, title);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string pts;
        for (const auto& [x, y] : lines[i].points) {
            const double px = kPad + (x - x0) / (x1 - x0) * (kW - 2 * kPad);
            const double py = kH - kPad - (y - y0) / (y1 - y0) * (kH - 2 * kPad);
            pts += fmt::format("{:.2f},{:.2f} ", px, py);
        }
        if (!pts.empty()) pts.pop_back();
        out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1\" points=\"{}\"/>\n",
                           kColors[i % kColors.size()], pts);
        out += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" fill=\"{}\">{}</text>\n",
                           kW - kPad - 120, kPad + 14 * (i + 1), kColors[i % kColors.size()], lines[i].label);
    }
    out += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"10\">{}</text>\n", kPad,
                       kH - kPad + 14, fixed2(y0));
    out += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"10\">{}</text>\n", 4,
                       kPad + 4, fixed2(y1));
    out += "</svg>\n";
    return out;
}

}  // namespace

Files render_report(const ReportInputs& in, std::span<const Format> formats) {
    const auto wants = [&](Format f) { return std::find(formats.begin(), formats.end(), f) != formats.end(); };
    std::vector<Table> tables;
    if (in.poll_descriptives) tables.push_back(poll_table(*in.poll_descriptives));
    if (!in.voters.empty()) {
        const auto cols = profiles::voter_descriptives(in.voters);
        tables.push_back(voter_table(cols));
        tables.push_back(known_voters_table(in.voters));
        for (auto c : {profiles::RankCriterion::involved_polls, profiles::RankCriterion::total_votes,
                       profiles::RankCriterion::highest_single_vote}) {
            tables.push_back(top_voters_table(in.voters, c));
        }
    }
    if (!in.polls.empty() || !in.days.empty()) tables.push_back(gini_table(in.polls, in.days));
    if (!in.days.empty()) tables.push_back(measures_table(in.days));
    if (in.ols) {
        for (auto& t : ols_tables(*in.ols, in.thresholds)) tables.push_back(std::move(t));
        for (auto& t : effects_tables(*in.ols, in.thresholds.levels[0])) tables.push_back(std::move(t));
    }
    if (in.iv) {
        for (auto& t : iv_tables(*in.iv, in.thresholds)) tables.push_back(std::move(t));
    }
    if (in.screen) {
        for (auto& t : instrument_tables(*in.screen)) tables.push_back(std::move(t));
    }

    Files files;
    std::string combined = "# Governance centralization report\n";
    for (const auto& t : tables) {
        if (wants(Format::csv)) files["tables/" + t.name + ".csv"] = to_csv(t);
        if (wants(Format::markdown)) {
            files["tables/" + t.name + ".md"] = to_markdown(t);
            combined += "\n" + to_markdown(t);
        }
    }
    if (wants(Format::markdown)) files["report.md"] = combined;

    // figure data
    if (!in.days.empty()) {
        std::string f2 = "date,polls,voters\n";
        std::string f4 = "date,gini,missing_flag\n";
        Line polls{"polls", {}}, voters{"voters", {}}, gini{"daily gini", {}};
        for (const auto& d : in.days) {
            f2 += fmt::format("{},{},{}\n", d.date.to_string(), d.poll_count, d.voters);
            f4 += fmt::format("{},{},{}\n", d.date.to_string(), format_double(d.gini), d.missing ? 1 : 0);
            const double x = d.date.days();
            polls.points.emplace_back(x, static_cast<double>(d.poll_count));
            voters.points.emplace_back(x, static_cast<double>(d.voters));
            gini.points.emplace_back(x, d.gini);
        }
        files["figures/daily_counts.csv"] = f2;
        files["figures/daily_gini.csv"] = f4;
        if (wants(Format::svg)) {
            files["figures/daily_voters.svg"] = svg_chart("Daily voters", {voters});
            files["figures/daily_polls.svg"] = svg_chart("Daily polls", {polls});
            files["figures/daily_gini.svg"] = svg_chart("Daily Gini", {gini});
        }
    }
    if (!in.polls.empty()) {
        std::string f3 = "poll_id,date,total_votes,largest_votes\n";
        std::string fg = "poll_id,date,gini\n";
        Line total{"total votes", {}}, largest{"largest voter", {}}, gini{"poll gini", {}};
        for (const auto& p : in.polls) {
            f3 += fmt::format("{},{},{},{}\n", p.poll_id, p.date.to_string(), p.total_votes.to_string(),
                              p.largest_votes.to_string());
            fg += fmt::format("{},{},{}\n", p.poll_id, p.date.to_string(), format_double(p.gini));
            total.points.emplace_back(p.poll_id, p.total_votes.to_double());
            largest.points.emplace_back(p.poll_id, p.largest_votes.to_double());
            gini.points.emplace_back(p.poll_id, p.gini);
        }
        files["figures/poll_votes.csv"] = f3;
        files["figures/poll_gini.csv"] = fg;
        if (wants(Format::svg)) {
            files["figures/poll_votes.svg"] = svg_chart("Votes per poll", {total, largest});
            files["figures/poll_gini.svg"] = svg_chart("Poll Gini", {gini});
        }
    }
    if (std::any_of(in.voter_totals.begin(), in.voter_totals.end(), [](double v) { return v > 0.0; })) {
        const auto curve = centrality::lorenz_points(in.voter_totals);
        std::string fl = "population,share\n";
        Line lorenz{"Lorenz", {}}, equality{"equality", {{0.0, 0.0}, {1.0, 1.0}}};
        for (const auto& p : curve.points) {
            fl += fmt::format("{},{}\n", format_double(p.population), format_double(p.share));
            lorenz.points.emplace_back(p.population, p.share);
        }
        files["figures/lorenz.csv"] = fl;
        if (wants(Format::svg)) files["figures/lorenz.svg"] = svg_chart("Lorenz curve of voter totals", {lorenz, equality});
    }
    return files;
}

}  // namespace govpulse::report
