#pragma once

// Poll-level centralization measurements and their daily aggregation:
// participation, Gini concentration, largest-voter power, voting order and
// speed.

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "govpulse/amount.hpp"
#include "govpulse/date.hpp"
#include "govpulse/govdata.hpp"

namespace govpulse::centrality {

using govdata::FinalBallot;

/// Which appearance of the largest voter defines Order.
enum class OrderRule { first, last };

/// How the daily Gini is estimated from a day's ballots.
enum class DailyGiniMode { mle, mean_of_polls, pooled_sample };

enum class CalendarMode { drop_missing, full_calendar };

struct MetricOptions {
    govdata::BallotRule ballot = govdata::BallotRule::last;
    OrderRule order = OrderRule::last;
    DailyGiniMode daily_gini = DailyGiniMode::mle;
    CalendarMode calendar = CalendarMode::drop_missing;
    bool winner_excludes_abstain = false;
    /// Breakdown votes count only non-abstain options when true.
    bool breakdown_excludes_abstain = true;
    unsigned threads = 1;
};

/// Upper clip for the daily Gini when the fitted tail index is <= 1/2.
inline constexpr double kGiniCeilingGap = 1e-9;

struct Participation {
    TokenAmount total_votes;
    std::size_t voters = 0;
};

Participation poll_participation(std::span<const FinalBallot> ballots);

/// Mean absolute difference form: sum_i sum_j |v_i - v_j| / (2 n^2 mean).
/// 0 for fewer than two weights or an all-zero vector.
double gini(std::span<const double> weights);
double poll_gini(std::span<const FinalBallot> ballots);

/// Paretian tail fit: alpha = n / sum ln(x_i / x_min) over positive totals,
/// Gini = 1 / (2 alpha - 1) clipped to [0, 1 - kGiniCeilingGap].
double pareto_mle_gini(std::span<const double> totals);

/// Sums each voter's weight across the given ballots (one day's polls) and
/// applies pareto_mle_gini to the per-voter totals.
double daily_gini(std::span<const FinalBallot> ballots_of_day);

/// Per-voter totals across a day's ballots, ordered by address.
std::vector<double> pooled_voter_totals(std::span<const FinalBallot> ballots_of_day);

struct LargestVoterStats {
    double largest_share = 0.0;
    int ifwin = 0;
    double largest_share_win = 0.0;
    double order = 0.0;
    TokenAmount largest_votes;
    govdata::Address voter;
};

/// `ballots` must be in final_ballots order (largest first). Throws
/// DomainError on empty input or a zero total.
LargestVoterStats largest_voter_stats(std::span<const FinalBallot> ballots, govdata::OptionId winner,
                                      OrderRule order = OrderRule::last);

struct SpeedResult {
    double seconds = 0.0;
    std::size_t clamped = 0;  ///< ballots cast before deployment, counted as 0
};

SpeedResult poll_speed(std::span<const FinalBallot> ballots, std::int64_t deploy_timestamp);

struct PollMetrics {
    govdata::PollId poll_id = 0;
    Date date;
    TokenAmount total_votes;
    std::size_t voters = 0;
    double gini = 0.0;
    double largest_share = 0.0;
    int ifwin = 0;
    double largest_share_win = 0.0;
    double order = 0.0;
    double speed_seconds = 0.0;
    TokenAmount breakdown_votes;
    double breakdown_ratio = 0.0;
    std::size_t breakdown_voters = 0;
    TokenAmount largest_votes;
    govdata::Address largest_voter;
    govdata::OptionId winner = 0;
    bool winner_tie = false;
    std::size_t clamped_speed_gaps = 0;
};

/// Nullopt for polls with no ballots or zero total weight.
std::optional<PollMetrics> poll_metrics(const govdata::VoteLog& log, govdata::PollId poll,
                                        const MetricOptions& options = {});

/// Metrics for every poll with positive total, ordered by poll id.
std::vector<PollMetrics> all_poll_metrics(const govdata::VoteLog& log, const MetricOptions& options = {});

struct DailyMetrics {
    Date date;
    std::size_t poll_count = 0;
    std::size_t voters = 0;
    TokenAmount total_votes;
    double largest_share = 0.0;
    double largest_share_win = 0.0;
    double order = 0.0;
    double speed = 0.0;
    double gini = 0.0;
    bool missing = false;
};

std::vector<DailyMetrics> daily_metrics(const govdata::VoteLog& log, const MetricOptions& options = {});

/// Same, reusing poll metrics already computed with the same options.
std::vector<DailyMetrics> aggregate_daily(const govdata::VoteLog& log, std::span<const PollMetrics> polls,
                                          const MetricOptions& options = {});

struct LorenzPoint {
    double population = 0.0;  ///< p in [0, 1]
    double share = 0.0;       ///< L(p) in [0, 1]
};

struct LorenzCurve {
    std::vector<LorenzPoint> points;
    /// 1 - 2 * trapezoid area under the curve.
    [[nodiscard]] double area_gini() const;
};

/// Throws DomainError if no weight is positive.
LorenzCurve lorenz_points(std::span<const double> weights);
LorenzCurve lorenz_points(std::span<const FinalBallot> ballots);

// ---------------------------------------------------------------------------
// The seven daily measures used as regressors.

enum class Measure { voters, total_votes, largest_share, largest_share_win, gini, order, speed };

inline constexpr std::array<Measure, 7> kAllMeasures{Measure::voters,           Measure::total_votes,
                                                     Measure::largest_share,    Measure::largest_share_win,
                                                     Measure::gini,             Measure::order,
                                                     Measure::speed};

/// Display names: Voters, TotalVotes, LargestShare, ...
std::string_view measure_name(Measure m);
/// Accepts display names case-insensitively and snake_case.
std::optional<Measure> parse_measure(std::string_view text);
double measure_value(const DailyMetrics& d, Measure m);

std::string metrics_csv(std::span<const DailyMetrics> days);
std::string poll_metrics_csv(std::span<const PollMetrics> polls);

}  // namespace govpulse::centrality
