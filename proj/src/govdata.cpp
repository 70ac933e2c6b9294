#include "govpulse/govdata.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <unordered_map>

#include <fmt/format.h>

#include "govpulse/catalogue.hpp"
#include "govpulse/csv.hpp"
#include "govpulse/errors.hpp"
#include "govpulse/io.hpp"

namespace govpulse::govdata {
namespace {

constexpr std::string_view kVotesHeader[] = {"poll_id", "voter", "option_id", "weight", "timestamp"};
constexpr std::string_view kPollsHeader[] = {"poll_id", "deploy_timestamp", "title", "options", "abstain_options"};
constexpr std::string_view kIdentitiesHeader[] = {"address", "name"};
constexpr std::string_view kFactorsHeader[] = {"date", "token", "category", "factor", "value"};

std::string header_text(std::span<const std::string_view> expected) {
    std::string out;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) out += ',';
        out += expected[i];
    }
    return out;
}

/// Throws SchemaError unless the header starts with `expected` and has at
/// most `optional` further columns drawn from `extra`.
std::size_t check_header(const std::vector<csv::Record>& records, std::span<const std::string_view> expected,
                         const std::filesystem::path& path, std::span<const std::string_view> extra = {}) {
    if (records.empty()) {
        throw SchemaError(fmt::format("{}: missing header, expected '{}'", path.string(), header_text(expected)));
    }
    const auto& fields = records.front().fields;
    bool ok = fields.size() >= expected.size() && fields.size() <= expected.size() + extra.size();
    for (std::size_t i = 0; ok && i < fields.size(); ++i) {
        const std::string name = csv::trim(fields[i]);
        ok = i < expected.size() ? name == expected[i] : name == extra[i - expected.size()];
    }
    if (!ok) {
        throw SchemaError(fmt::format("{}: header mismatch, expected '{}'", path.string(), header_text(expected)));
    }
    return fields.size();
}

template <typename Int>
std::optional<Int> parse_int(std::string_view s) {
    const std::string t = csv::trim(s);
    Int v{};
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) return std::nullopt;
    return v;
}

std::optional<double> parse_double(std::string_view s) {
    const std::string t = csv::trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) return std::nullopt;
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto at = s.find(sep, start);
        parts.push_back(s.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
        if (at == std::string_view::npos) break;
        start = at + 1;
    }
    return parts;
}

std::string file_label(const std::filesystem::path& p) { return p.filename().string(); }

Anomaly skipped(const std::filesystem::path& path, std::size_t line, std::string_view kind, std::string detail,
                Severity sev = Severity::error) {
    return Anomaly{file_label(path), line, std::string(kind), std::move(detail), sev, true};
}

std::string upper(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace

std::string_view severity_name(Severity s) {
    switch (s) {
        case Severity::info: return "info";
        case Severity::warning: return "warning";
        case Severity::error: return "error";
        case Severity::fatal: return "fatal";
    }
    return "unknown";
}

bool PollRecord::is_abstain(OptionId id) const {
    return std::find(abstain_option_ids.begin(), abstain_option_ids.end(), id) != abstain_option_ids.end();
}

bool ValidationReport::has_fatal() const {
    return std::any_of(anomalies.begin(), anomalies.end(), [](const Anomaly& a) { return a.severity == Severity::fatal; });
}

std::size_t ValidationReport::count(std::string_view kind) const {
    return static_cast<std::size_t>(
        std::count_if(anomalies.begin(), anomalies.end(), [&](const Anomaly& a) { return a.kind == kind; }));
}

std::size_t ValidationReport::skipped_rows() const {
    return static_cast<std::size_t>(
        std::count_if(anomalies.begin(), anomalies.end(), [](const Anomaly& a) { return a.row_skipped; }));
}

// ---------------------------------------------------------------------------

VoteLog::VoteLog(std::vector<VoteEvent> events, std::map<PollId, PollRecord> registry,
                 std::map<Address, std::string> identities)
    : events_(std::move(events)), registry_(std::move(registry)), identities_(std::move(identities)) {
    // stable: equal timestamps keep input order
    std::stable_sort(events_.begin(), events_.end(),
                     [](const VoteEvent& a, const VoteEvent& b) { return a.timestamp < b.timestamp; });
    for (std::size_t i = 0; i < events_.size(); ++i) by_poll_[events_[i].poll_id].push_back(i);
}

std::span<const std::size_t> VoteLog::poll_events(PollId poll) const {
    const auto it = by_poll_.find(poll);
    if (it == by_poll_.end()) return {};
    return it->second;
}

const PollRecord* VoteLog::find_poll(PollId poll) const {
    const auto it = registry_.find(poll);
    return it == registry_.end() ? nullptr : &it->second;
}

std::optional<std::string> VoteLog::identity(std::string_view address) const {
    const auto it = identities_.find(std::string(address));
    if (it == identities_.end()) return std::nullopt;
    return it->second;
}

// ---------------------------------------------------------------------------

std::optional<Address> normalize_address(std::string_view text) {
    std::string a = csv::trim(text);
    for (auto& c : a) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (a.size() != 42 || a[0] != '0' || a[1] != 'x') return std::nullopt;
    for (std::size_t i = 2; i < a.size(); ++i) {
        if (!std::isxdigit(static_cast<unsigned char>(a[i]))) return std::nullopt;
    }
    return a;
}

std::optional<std::vector<PollOption>> parse_options(std::string_view text) {
    std::vector<PollOption> out;
    const std::string trimmed = csv::trim(text);
    if (trimmed.empty()) return out;
    std::set<OptionId> seen;
    for (std::string_view part : split(trimmed, '|')) {
        const auto colon = part.find(':');
        if (colon == std::string_view::npos) return std::nullopt;
        const auto id = parse_int<OptionId>(part.substr(0, colon));
        if (!id || *id < 0 || !seen.insert(*id).second) return std::nullopt;
        out.push_back({*id, std::string(part.substr(colon + 1))});
    }
    return out;
}

VoteLog load_vote_log(const std::filesystem::path& votes_path, const std::filesystem::path& polls_path,
                      const std::optional<std::filesystem::path>& identities_path) {
    ValidationReport report;

    // polls
    std::map<PollId, PollRecord> registry;
    {
        const auto records = csv::read_file(polls_path);
        constexpr std::string_view extra[] = {"category"};
        const std::size_t columns = check_header(records, kPollsHeader, polls_path, extra);
        for (std::size_t r = 1; r < records.size(); ++r) {
            const auto& rec = records[r];
            if (rec.fields.size() != columns) {
                report.anomalies.push_back(skipped(polls_path, rec.line, anomaly::kMalformedRow,
                                                   fmt::format("expected {} fields, got {}", columns, rec.fields.size())));
                continue;
            }
            PollRecord poll;
            const auto id = parse_int<PollId>(rec.fields[0]);
            const auto deployed = parse_timestamp(csv::trim(rec.fields[1]));
            auto options = parse_options(rec.fields[3]);
            if (!id || *id == 0 || !deployed || *deployed <= 0 || !options) {
                report.anomalies.push_back(
                    skipped(polls_path, rec.line, anomaly::kMalformedRow, "bad poll_id, deploy_timestamp or options"));
                continue;
            }
            poll.poll_id = *id;
            poll.deploy_timestamp = *deployed;
            poll.title = rec.fields[2];
            poll.options = std::move(*options);
            bool abstain_ok = true;
            const std::string abstain = csv::trim(rec.fields[4]);
            if (!abstain.empty()) {
                for (std::string_view part : split(abstain, '|')) {
                    const auto aid = parse_int<OptionId>(part);
                    const bool known = aid && std::any_of(poll.options.begin(), poll.options.end(),
                                                          [&](const PollOption& o) { return o.id == *aid; });
                    if (!known) {
                        abstain_ok = false;
                        break;
                    }
                    poll.abstain_option_ids.push_back(*aid);
                }
            }
            if (!abstain_ok) {
                report.anomalies.push_back(skipped(polls_path, rec.line, anomaly::kMalformedRow,
                                                   "abstain option not among the poll's options"));
                continue;
            }
            if (columns > 5) poll.category = rec.fields[5];
            if (registry.contains(poll.poll_id)) {
                report.anomalies.push_back(skipped(polls_path, rec.line, anomaly::kDuplicateKey,
                                                   fmt::format("poll {} defined twice", poll.poll_id), Severity::fatal));
                continue;
            }
            registry.emplace(poll.poll_id, std::move(poll));
        }
    }

    // identities
    std::map<Address, std::string> identities;
    if (identities_path) {
        const auto records = csv::read_file(*identities_path);
        check_header(records, kIdentitiesHeader, *identities_path);
        for (std::size_t r = 1; r < records.size(); ++r) {
            const auto& rec = records[r];
            const auto addr = rec.fields.size() == 2 ? normalize_address(rec.fields[0]) : std::nullopt;
            if (!addr) {
                report.anomalies.push_back(
                    skipped(*identities_path, rec.line, anomaly::kMalformedRow, "bad address", Severity::warning));
                continue;
            }
            identities[*addr] = csv::trim(rec.fields[1]);
        }
    }

    // votes
    std::vector<VoteEvent> events;
    {
        const auto records = csv::read_file(votes_path);
        check_header(records, kVotesHeader, votes_path);
        report.input_rows = records.size() - 1;
        events.reserve(records.size());
        for (std::size_t r = 1; r < records.size(); ++r) {
            const auto& rec = records[r];
            if (rec.fields.size() != 5) {
                report.anomalies.push_back(skipped(votes_path, rec.line, anomaly::kMalformedRow,
                                                   fmt::format("expected 5 fields, got {}", rec.fields.size())));
                continue;
            }
            const auto poll = parse_int<PollId>(rec.fields[0]);
            const auto voter = normalize_address(rec.fields[1]);
            const auto option = parse_int<OptionId>(rec.fields[2]);
            const auto weight = TokenAmount::parse(csv::trim(rec.fields[3]));
            const auto ts = parse_timestamp(csv::trim(rec.fields[4]));
            if (!poll || !voter || !option || *option < 0 || !weight || weight->is_negative() || !ts) {
                report.anomalies.push_back(skipped(votes_path, rec.line, anomaly::kMalformedRow, "unparseable field"));
                continue;
            }
            const auto it = registry.find(*poll);
            if (it == registry.end()) {
                report.anomalies.push_back(
                    skipped(votes_path, rec.line, anomaly::kUnknownPoll, fmt::format("poll {} not in registry", *poll)));
                continue;
            }
            const auto& opts = it->second.options;
            if (!opts.empty() &&
                std::none_of(opts.begin(), opts.end(), [&](const PollOption& o) { return o.id == *option; })) {
                report.anomalies.push_back(Anomaly{file_label(votes_path), rec.line, std::string(anomaly::kUnknownOption),
                                                   fmt::format("option {} not listed for poll {}", *option, *poll),
                                                   Severity::warning, false});
            }
            events.push_back(VoteEvent{*poll, *voter, *option, *weight, *ts, rec.line});
        }
    }

    VoteLog log(std::move(events), std::move(registry), std::move(identities));
    report.events = log.events().size();
    report.polls = log.registry().size();
    std::set<std::string_view> voters;
    for (const auto& e : log.events()) voters.insert(e.voter);
    report.voters = voters.size();
    log.set_ingest_report(std::move(report));
    return log;
}

std::vector<FinalBallot> final_ballots(const VoteLog& log, PollId poll, BallotRule rule) {
    const auto indices = log.poll_events(poll);
    if (indices.empty()) return {};

    struct Track {
        std::size_t first = 0;  // 1-based positions
        std::size_t last = 0;
        std::vector<std::int64_t> stamps;
    };
    std::unordered_map<std::string_view, Track> by_voter;
    const auto& events = log.events();
    for (std::size_t pos = 1; pos <= indices.size(); ++pos) {
        const auto& e = events[indices[pos - 1]];
        auto& t = by_voter[e.voter];
        if (t.first == 0) t.first = pos;
        t.last = pos;
        t.stamps.push_back(e.timestamp);
    }

    std::vector<FinalBallot> out;
    out.reserve(by_voter.size());
    for (const auto& [voter, t] : by_voter) {
        const std::size_t counted = rule == BallotRule::last ? t.last : t.first;
        const auto& e = events[indices[counted - 1]];
        FinalBallot b;
        b.voter = e.voter;
        b.option_id = e.option_id;
        b.weight = e.weight;
        b.final_timestamp = e.timestamp;
        b.history_order_index = counted;
        b.first_order_index = t.first;
        b.history_size = indices.size();
        b.timestamp_tie = std::count(t.stamps.begin(), t.stamps.end(), e.timestamp) > 1;
        out.push_back(std::move(b));
    }
    std::sort(out.begin(), out.end(), [](const FinalBallot& a, const FinalBallot& b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        if (a.final_timestamp != b.final_timestamp) return a.final_timestamp < b.final_timestamp;
        return a.voter < b.voter;
    });
    return out;
}

Winner winning_option(std::span<const FinalBallot> ballots, std::span<const OptionId> excluded) {
    std::map<OptionId, TokenAmount> totals;
    for (const auto& b : ballots) {
        if (std::find(excluded.begin(), excluded.end(), b.option_id) != excluded.end()) continue;
        totals[b.option_id] += b.weight;
    }
    if (totals.empty()) throw DomainError("no votes");
    Winner w{totals.begin()->first, false};
    TokenAmount best = totals.begin()->second;
    for (auto it = std::next(totals.begin()); it != totals.end(); ++it) {
        if (it->second > best) {
            best = it->second;
            w = {it->first, false};
        } else if (it->second == best) {
            w.tie = true;  // smaller id already holds the slot
        }
    }
    return w;
}

ValidationReport validate_dataset(const VoteLog& log) {
    ValidationReport report = log.ingest_report();
    report.events = log.events().size();
    report.polls = log.registry().size();

    std::set<std::string_view> voters;
    std::set<std::tuple<PollId, std::string_view, std::int64_t>> keys;
    std::vector<Anomaly> scan;
    for (const auto& e : log.events()) {
        voters.insert(e.voter);
        const PollRecord* poll = log.find_poll(e.poll_id);
        if (!poll) {
            scan.push_back({"log", e.source_row, std::string(anomaly::kUnknownPoll),
                            fmt::format("poll {} not in registry", e.poll_id), Severity::error, false});
            continue;
        }
        if (e.timestamp < poll->deploy_timestamp) {
            scan.push_back({"log", e.source_row, std::string(anomaly::kPreDeploy),
                            fmt::format("poll {} voter {} at {} before deploy {}", e.poll_id, e.voter, e.timestamp,
                                        poll->deploy_timestamp),
                            Severity::warning, false});
        }
        if (e.weight.is_zero()) {
            scan.push_back({"log", e.source_row, std::string(anomaly::kZeroWeight),
                            fmt::format("poll {} voter {}", e.poll_id, e.voter), Severity::warning, false});
        }
        if (!keys.emplace(e.poll_id, e.voter, e.timestamp).second) {
            scan.push_back({"log", e.source_row, std::string(anomaly::kDuplicateKey),
                            fmt::format("poll {} voter {} twice at {}", e.poll_id, e.voter, e.timestamp),
                            Severity::warning, false});
        }
    }
    report.voters = voters.size();
    std::stable_sort(scan.begin(), scan.end(),
                     [](const Anomaly& a, const Anomaly& b) { return a.line < b.line; });
    report.anomalies.insert(report.anomalies.end(), scan.begin(), scan.end());
    return report;
}

std::string votes_csv(const VoteLog& log) {
    std::string out = header_text(kVotesHeader) + "\n";
    for (const auto& e : log.events()) {
        out += fmt::format("{},{},{},{},{}\n", e.poll_id, e.voter, e.option_id, e.weight.to_string(), e.timestamp);
    }
    return out;
}

void write_votes_csv(const VoteLog& log, const std::filesystem::path& path) { write_file_atomic(path, votes_csv(log)); }

std::string polls_csv(const VoteLog& log) {
    const bool with_category = std::any_of(log.registry().begin(), log.registry().end(),
                                           [](const auto& kv) { return !kv.second.category.empty(); });
    std::string out = header_text(kPollsHeader) + (with_category ? ",category\n" : "\n");
    for (const auto& [id, p] : log.registry()) {
        std::string options;
        for (std::size_t i = 0; i < p.options.size(); ++i) {
            if (i) options += '|';
            options += fmt::format("{}:{}", p.options[i].id, p.options[i].label);
        }
        std::string abstain;
        for (std::size_t i = 0; i < p.abstain_option_ids.size(); ++i) {
            if (i) abstain += '|';
            abstain += std::to_string(p.abstain_option_ids[i]);
        }
        std::vector<std::string> row{std::to_string(id), std::to_string(p.deploy_timestamp), p.title, options, abstain};
        if (with_category) row.push_back(p.category);
        out += csv::join_row(row) + "\n";
    }
    return out;
}

void write_polls_csv(const VoteLog& log, const std::filesystem::path& path) { write_file_atomic(path, polls_csv(log)); }

std::string identities_csv(const VoteLog& log) {
    std::string out = header_text(kIdentitiesHeader) + "\n";
    for (const auto& [addr, name] : log.identities()) out += csv::join_row({addr, name}) + "\n";
    return out;
}

void write_identities_csv(const VoteLog& log, const std::filesystem::path& path) { write_file_atomic(path, identities_csv(log)); }

// ---------------------------------------------------------------------------

std::string_view category_name(Category c) {
    switch (c) {
        case Category::financial: return "financial";
        case Category::transaction: return "transaction";
        case Category::exchange: return "exchange";
        case Category::network: return "network";
        case Category::sentiment: return "sentiment";
        case Category::instrument: return "instrument";
    }
    return "unknown";
}

std::optional<Category> parse_category(std::string_view text) {
    for (Category c : {Category::financial, Category::transaction, Category::exchange, Category::network,
                       Category::sentiment, Category::instrument}) {
        if (category_name(c) == text) return c;
    }
    return std::nullopt;
}

std::optional<double> FactorPanel::get(const FactorKey& key) const {
    const auto it = cells_.find(key);
    if (it == cells_.end()) return std::nullopt;
    return it->second;
}

Series FactorPanel::series(std::string_view token, Category category, std::string_view factor) const {
    Series s;
    for (const auto& [key, value] : cells_) {
        if (key.category == category && key.token == token && key.factor == factor) s.push_back(key.date, value);
    }
    return s;
}

Series FactorPanel::instrument() const {
    std::string chosen;
    for (const auto& [key, value] : cells_) {
        if (key.category == Category::instrument && key.factor == kInstrumentFactor &&
            (chosen.empty() || key.token < chosen)) {
            chosen = key.token;
        }
    }
    if (chosen.empty()) return {};
    return series(chosen, Category::instrument, kInstrumentFactor);
}

std::vector<std::string> FactorPanel::tokens() const {
    std::set<std::string> set;
    for (const auto& [key, value] : cells_) {
        if (key.category != Category::instrument) set.insert(key.token);
    }
    return {set.begin(), set.end()};
}

std::map<FactorPanel::SeriesKey, Series> FactorPanel::split() const {
    std::map<SeriesKey, Series> out;
    // cells_ iterates in date order, so each series comes out date-ordered
    for (const auto& [key, value] : cells_) out[SeriesKey{key.token, key.category, key.factor}].push_back(key.date, value);
    return out;
}

FactorPanel load_factors(const std::filesystem::path& path) {
    FactorPanel panel;
    const auto records = csv::read_file(path);
    check_header(records, kFactorsHeader, path);
    panel.report.input_rows = records.size() - 1;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.fields.size() != 5) {
            panel.report.anomalies.push_back(skipped(path, rec.line, anomaly::kMalformedRow, "expected 5 fields"));
            continue;
        }
        const auto date = Date::parse(csv::trim(rec.fields[0]));
        if (!date) {
            panel.report.anomalies.push_back(skipped(path, rec.line, anomaly::kBadDate, csv::trim(rec.fields[0])));
            continue;
        }
        const std::string token = upper(csv::trim(rec.fields[1]));
        const auto category = parse_category(csv::trim(rec.fields[2]));
        const std::string factor = csv::trim(rec.fields[3]);
        const auto value = parse_double(rec.fields[4]);
        if (token.empty() || !category || factor.empty() || !value) {
            panel.report.anomalies.push_back(skipped(path, rec.line, anomaly::kMalformedRow, "unparseable field"));
            continue;
        }
        if (!factorlab::is_registered(token, *category, factor)) {
            panel.report.anomalies.push_back(Anomaly{file_label(path), rec.line, std::string(anomaly::kUnknownFactor),
                                                     fmt::format("{} {} '{}'", token, category_name(*category), factor),
                                                     Severity::warning, false});
        }
        FactorKey key{*date, token, *category, factor};
        if (panel.get(key)) {
            panel.report.anomalies.push_back(Anomaly{file_label(path), rec.line, std::string(anomaly::kDuplicateKey),
                                                     fmt::format("{} {} {} repeated; last value kept",
                                                                 date->to_string(), token, factor),
                                                     Severity::warning, false});
        }
        panel.set(key, *value);
    }
    panel.report.events = panel.size();
    return panel;
}

std::string factors_csv(const FactorPanel& panel) {
    std::string out = header_text(kFactorsHeader) + "\n";
    for (const auto& [key, value] : panel.cells()) {
        out += csv::join_row({key.date.to_string(), key.token, std::string(category_name(key.category)), key.factor,
                              format_double(value)}) +
               "\n";
    }
    return out;
}

void write_factors_csv(const FactorPanel& panel, const std::filesystem::path& path) { write_file_atomic(path, factors_csv(panel)); }

}  // namespace govpulse::govdata
