#pragma once

// Voting histories, poll registries, identities and factor series: the
// canonical data model and its CSV ingestion.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "govpulse/amount.hpp"
#include "govpulse/date.hpp"
#include "govpulse/series.hpp"

namespace govpulse::govdata {

using PollId = std::uint32_t;
using OptionId = std::int32_t;
using Address = std::string;

/// One weighted ballot action.
struct VoteEvent {
    PollId poll_id = 0;
    Address voter;
    OptionId option_id = 0;
    TokenAmount weight;
    std::int64_t timestamp = 0;
    std::size_t source_row = 0;  ///< 1-based line in the input file; 0 if generated

    /// Provenance (source_row) is not part of the value.
    friend bool operator==(const VoteEvent& a, const VoteEvent& b) {
        return a.poll_id == b.poll_id && a.voter == b.voter && a.option_id == b.option_id && a.weight == b.weight &&
               a.timestamp == b.timestamp;
    }
};

struct PollOption {
    OptionId id = 0;
    std::string label;
    friend bool operator==(const PollOption&, const PollOption&) = default;
};

struct PollRecord {
    PollId poll_id = 0;
    std::int64_t deploy_timestamp = 0;
    std::vector<PollOption> options;
    std::vector<OptionId> abstain_option_ids;
    std::string title;
    std::string category;

    [[nodiscard]] bool is_abstain(OptionId id) const;
    [[nodiscard]] Date deploy_date() const { return Date::from_unix_seconds(deploy_timestamp); }

    friend bool operator==(const PollRecord&, const PollRecord&) = default;
};

enum class Severity { info, warning, error, fatal };
std::string_view severity_name(Severity s);

namespace anomaly {
inline constexpr std::string_view kMalformedRow = "malformed row";
inline constexpr std::string_view kUnknownPoll = "unknown poll";
inline constexpr std::string_view kPreDeploy = "pre-deploy vote";
inline constexpr std::string_view kZeroWeight = "zero weight";
inline constexpr std::string_view kDuplicateKey = "duplicate key";
inline constexpr std::string_view kUnknownFactor = "unknown factor";
inline constexpr std::string_view kBadDate = "unparseable date";
inline constexpr std::string_view kUnknownOption = "unknown option";
}  // namespace anomaly

struct Anomaly {
    std::string source;  ///< file or logical origin ("votes.csv", "log")
    std::size_t line = 0;
    std::string kind;    ///< one of the anomaly:: constants
    std::string detail;
    Severity severity = Severity::warning;
    bool row_skipped = false;

    friend bool operator==(const Anomaly&, const Anomaly&) = default;
};

struct ValidationReport {
    std::size_t events = 0;
    std::size_t polls = 0;
    std::size_t voters = 0;
    std::size_t input_rows = 0;  ///< data rows read from the votes file
    std::vector<Anomaly> anomalies;

    [[nodiscard]] bool has_fatal() const;
    [[nodiscard]] std::size_t count(std::string_view kind) const;
    [[nodiscard]] std::size_t skipped_rows() const;
};

/// Which of a voter's records in a poll is the counted one.
enum class BallotRule { first, last };

/// Immutable voting history. Events are kept sorted by (timestamp, input
/// order); per-poll chronological indices are built once on construction.
class VoteLog {
public:
    VoteLog() = default;
    VoteLog(std::vector<VoteEvent> events, std::map<PollId, PollRecord> registry,
            std::map<Address, std::string> identities = {});

    [[nodiscard]] const std::vector<VoteEvent>& events() const { return events_; }
    [[nodiscard]] const std::map<PollId, PollRecord>& registry() const { return registry_; }
    [[nodiscard]] const std::map<Address, std::string>& identities() const { return identities_; }

    /// Indices into events() for one poll, chronological. Empty if none.
    [[nodiscard]] std::span<const std::size_t> poll_events(PollId poll) const;

    [[nodiscard]] const PollRecord* find_poll(PollId poll) const;
    [[nodiscard]] std::optional<std::string> identity(std::string_view address) const;

    /// Anomalies found while parsing the input files.
    [[nodiscard]] const ValidationReport& ingest_report() const { return ingest_; }
    void set_ingest_report(ValidationReport report) { ingest_ = std::move(report); }

    friend bool operator==(const VoteLog& a, const VoteLog& b) {
        return a.events_ == b.events_ && a.registry_ == b.registry_ && a.identities_ == b.identities_;
    }

private:
    std::vector<VoteEvent> events_;
    std::map<PollId, PollRecord> registry_;
    std::map<Address, std::string> identities_;
    std::map<PollId, std::vector<std::size_t>> by_poll_;
    ValidationReport ingest_;
};

/// A voter's counted ballot in one poll.
struct FinalBallot {
    Address voter;
    OptionId option_id = 0;
    TokenAmount weight;
    std::int64_t final_timestamp = 0;
    std::size_t history_order_index = 0;  ///< 1-based position of the counted record
    std::size_t first_order_index = 0;    ///< 1-based position of the voter's first record
    std::size_t history_size = 0;         ///< records in the poll's history
    bool timestamp_tie = false;           ///< counted record shares its timestamp with another of the voter's

    friend bool operator==(const FinalBallot&, const FinalBallot&) = default;
};

struct Winner {
    OptionId option_id = 0;
    bool tie = false;
};

/// Lowercases and trims; returns nullopt unless the result is `0x` + 40 hex.
std::optional<Address> normalize_address(std::string_view text);

/// Parses `id:label|id:label`. Nullopt on malformed text or duplicate ids.
std::optional<std::vector<PollOption>> parse_options(std::string_view text);

VoteLog load_vote_log(const std::filesystem::path& votes_path, const std::filesystem::path& polls_path,
                      const std::optional<std::filesystem::path>& identities_path = std::nullopt);

/// One ballot per voter, sorted by weight descending then final timestamp
/// ascending then address. Unknown poll or no events gives an empty list.
std::vector<FinalBallot> final_ballots(const VoteLog& log, PollId poll, BallotRule rule = BallotRule::last);

/// Option with the largest summed weight; ties go to the smallest id.
/// Options listed in `excluded` never win. Throws DomainError on no votes.
Winner winning_option(std::span<const FinalBallot> ballots, std::span<const OptionId> excluded = {});

/// Ingestion anomalies plus a full scan of the log, in deterministic order.
ValidationReport validate_dataset(const VoteLog& log);

std::string votes_csv(const VoteLog& log);
std::string polls_csv(const VoteLog& log);
std::string identities_csv(const VoteLog& log);
void write_votes_csv(const VoteLog& log, const std::filesystem::path& path);
void write_polls_csv(const VoteLog& log, const std::filesystem::path& path);
void write_identities_csv(const VoteLog& log, const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Factor panel

enum class Category { financial, transaction, exchange, network, sentiment, instrument };

std::string_view category_name(Category c);
std::optional<Category> parse_category(std::string_view text);

struct FactorKey {
    Date date;
    std::string token;
    Category category = Category::financial;
    std::string factor;

    friend auto operator<=>(const FactorKey&, const FactorKey&) = default;
};

inline constexpr std::string_view kInstrumentFactor = "offchain_voters";

/// Long-format factor values keyed by (date, token, category, factor).
class FactorPanel {
public:
    void set(const FactorKey& key, double value) { cells_[key] = value; }
    [[nodiscard]] std::optional<double> get(const FactorKey& key) const;
    [[nodiscard]] const std::map<FactorKey, double>& cells() const { return cells_; }
    [[nodiscard]] std::size_t size() const { return cells_.size(); }

    /// Date-ordered observations of one factor; empty if absent.
    [[nodiscard]] Series series(std::string_view token, Category category, std::string_view factor) const;

    /// Instrument rows (category instrument, factor offchain_voters). When
    /// several tokens carry them, the lexicographically first token is used.
    [[nodiscard]] Series instrument() const;

    [[nodiscard]] std::vector<std::string> tokens() const;

    struct SeriesKey {
        std::string token;
        Category category = Category::financial;
        std::string factor;
        friend auto operator<=>(const SeriesKey&, const SeriesKey&) = default;
    };
    /// Every series in one pass.
    [[nodiscard]] std::map<SeriesKey, Series> split() const;

    ValidationReport report;

    friend bool operator==(const FactorPanel& a, const FactorPanel& b) { return a.cells_ == b.cells_; }

private:
    std::map<FactorKey, double> cells_;
};

FactorPanel load_factors(const std::filesystem::path& path);
std::string factors_csv(const FactorPanel& panel);
void write_factors_csv(const FactorPanel& panel, const std::filesystem::path& path);

}  // namespace govpulse::govdata
