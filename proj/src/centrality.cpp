#include "govpulse/centrality.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "govpulse/errors.hpp"
#include "govpulse/io.hpp"
#include "govpulse/kernels.hpp"
#include "govpulse/parallel.hpp"

namespace govpulse::centrality {
namespace {

std::vector<double> weights_of(std::span<const FinalBallot> ballots) {
    std::vector<double> w;
    w.reserve(ballots.size());
    for (const auto& b : ballots) w.push_back(b.weight.to_double());
    return w;
}

double ratio(TokenAmount num, TokenAmount den) {
    // both sides share the 1e-18 scale, so divide the raw counts
    return static_cast<double>(num.units()) / static_cast<double>(den.units());
}

}  // namespace

Participation poll_participation(std::span<const FinalBallot> ballots) {
    Participation p;
    for (const auto& b : ballots) p.total_votes += b.weight;
    p.voters = ballots.size();
    return p;
}

double gini(std::span<const double> weights) {
    const std::size_t n = weights.size();
    if (n < 2) return 0.0;
    const double total = kernels::sum(weights);
    if (total <= 0.0) return 0.0;
    // 2 n^2 mean = 2 n total
    return kernels::pairwise_abs_diff(weights) / (2.0 * static_cast<double>(n) * total);
}

double poll_gini(std::span<const FinalBallot> ballots) {
    const auto w = weights_of(ballots);
    return gini(w);
}

double pareto_mle_gini(std::span<const double> totals) {
    std::vector<double> positive;
    positive.reserve(totals.size());
    for (double x : totals) {
        if (x > 0.0) positive.push_back(x);
    }
    if (positive.size() < 2) return 0.0;
    const double x_min = *std::min_element(positive.begin(), positive.end());
    double log_sum = 0.0;
    for (double x : positive) log_sum += std::log(x / x_min);
    if (log_sum <= 0.0) return 0.0;  // all equal: alpha -> infinity
    const double alpha = static_cast<double>(positive.size()) / log_sum;
    constexpr double ceiling = 1.0 - kGiniCeilingGap;
    if (alpha <= 0.5) return ceiling;
    return std::clamp(1.0 / (2.0 * alpha - 1.0), 0.0, ceiling);
}

std::vector<double> pooled_voter_totals(std::span<const FinalBallot> ballots_of_day) {
    std::map<std::string_view, TokenAmount> by_voter;
    for (const auto& b : ballots_of_day) by_voter[b.voter] += b.weight;
    std::vector<double> totals;
    totals.reserve(by_voter.size());
    for (const auto& [voter, amount] : by_voter) totals.push_back(amount.to_double());
    return totals;
}

double daily_gini(std::span<const FinalBallot> ballots_of_day) {
    const auto totals = pooled_voter_totals(ballots_of_day);
    return pareto_mle_gini(totals);
}

LargestVoterStats largest_voter_stats(std::span<const FinalBallot> ballots, govdata::OptionId winner,
                                      OrderRule order) {
    if (ballots.empty()) throw DomainError("largest voter of an empty poll");
    const auto participation = poll_participation(ballots);
    if (participation.total_votes.is_zero()) throw DomainError("largest voter share with zero total votes");
    const FinalBallot& top = ballots.front();
    LargestVoterStats s;
    s.largest_share = ratio(top.weight, participation.total_votes);
    s.ifwin = top.option_id == winner ? 1 : 0;
    s.largest_share_win = s.largest_share * s.ifwin;
    const std::size_t position = order == OrderRule::last ? top.history_order_index : top.first_order_index;
    s.order = static_cast<double>(position) / static_cast<double>(top.history_size);
    s.largest_votes = top.weight;
    s.voter = top.voter;
    return s;
}

SpeedResult poll_speed(std::span<const FinalBallot> ballots, std::int64_t deploy_timestamp) {
    if (ballots.empty()) throw DomainError("speed of an empty poll");
    SpeedResult r;
    double total = 0.0;
    for (const auto& b : ballots) {
        const std::int64_t gap = b.final_timestamp - deploy_timestamp;
        if (gap < 0) {
            ++r.clamped;
            continue;
        }
        total += static_cast<double>(gap);
    }
    r.seconds = total / static_cast<double>(ballots.size());
    return r;
}

std::optional<PollMetrics> poll_metrics(const govdata::VoteLog& log, govdata::PollId poll,
                                        const MetricOptions& options) {
    const govdata::PollRecord* record = log.find_poll(poll);
    if (!record) return std::nullopt;
    const auto ballots = govdata::final_ballots(log, poll, options.ballot);
    if (ballots.empty()) return std::nullopt;
    const auto participation = poll_participation(ballots);
    if (participation.total_votes.is_zero()) return std::nullopt;

    PollMetrics m;
    m.poll_id = poll;
    m.date = record->deploy_date();
    m.total_votes = participation.total_votes;
    m.voters = participation.voters;
    m.gini = poll_gini(ballots);

    const std::span<const govdata::OptionId> excluded =
        options.winner_excludes_abstain ? std::span<const govdata::OptionId>(record->abstain_option_ids)
                                        : std::span<const govdata::OptionId>{};
    govdata::Winner winner;
    try {
        winner = govdata::winning_option(ballots, excluded);
    } catch (const DomainError&) {
        // every ballot went to an excluded option: fall back to all options
        winner = govdata::winning_option(ballots);
    }
    m.winner = winner.option_id;
    m.winner_tie = winner.tie;

    const auto largest = largest_voter_stats(ballots, winner.option_id, options.order);
    m.largest_share = largest.largest_share;
    m.ifwin = largest.ifwin;
    m.largest_share_win = largest.largest_share_win;
    m.order = largest.order;
    m.largest_votes = largest.largest_votes;
    m.largest_voter = largest.voter;

    const auto speed = poll_speed(ballots, record->deploy_timestamp);
    m.speed_seconds = speed.seconds;
    m.clamped_speed_gaps = speed.clamped;

    for (const auto& b : ballots) {
        if (options.breakdown_excludes_abstain && record->is_abstain(b.option_id)) continue;
        m.breakdown_votes += b.weight;
        ++m.breakdown_voters;
    }
    m.breakdown_ratio = ratio(m.breakdown_votes, m.total_votes);
    return m;
}

std::vector<PollMetrics> all_poll_metrics(const govdata::VoteLog& log, const MetricOptions& options) {
    std::vector<govdata::PollId> ids;
    ids.reserve(log.registry().size());
    for (const auto& [id, poll] : log.registry()) ids.push_back(id);
    auto computed = parallel_map(ids.size(), options.threads,
                                 [&](std::size_t i) { return poll_metrics(log, ids[i], options); });
    std::vector<PollMetrics> out;
    out.reserve(computed.size());
    for (auto& m : computed) {
        if (m) out.push_back(std::move(*m));
    }
    return out;
}

std::vector<DailyMetrics> aggregate_daily(const govdata::VoteLog& log, std::span<const PollMetrics> polls,
                                          const MetricOptions& options) {
    std::map<Date, std::vector<const PollMetrics*>> by_day;
    for (const auto& p : polls) by_day[p.date].push_back(&p);

    std::vector<DailyMetrics> out;
    for (const auto& [date, day_polls] : by_day) {
        DailyMetrics d;
        d.date = date;
        d.poll_count = day_polls.size();
        std::vector<FinalBallot> pooled;
        double gini_sum = 0.0;
        for (const PollMetrics* p : day_polls) {
            d.voters += p->voters;
            d.total_votes += p->total_votes;
            d.largest_share += p->largest_share;
            d.largest_share_win += p->largest_share_win;
            d.order += p->order;
            d.speed += p->speed_seconds;
            gini_sum += p->gini;
            if (options.daily_gini != DailyGiniMode::mean_of_polls) {
                auto ballots = govdata::final_ballots(log, p->poll_id, options.ballot);
                pooled.insert(pooled.end(), std::make_move_iterator(ballots.begin()),
                              std::make_move_iterator(ballots.end()));
            }
        }
        const auto n = static_cast<double>(d.poll_count);
        d.largest_share /= n;
        d.largest_share_win /= n;
        d.order /= n;
        d.speed /= n;
        switch (options.daily_gini) {
            case DailyGiniMode::mle: d.gini = daily_gini(pooled); break;
            case DailyGiniMode::mean_of_polls: d.gini = gini_sum / n; break;
            case DailyGiniMode::pooled_sample: {
                const auto totals = pooled_voter_totals(pooled);
                d.gini = gini(totals);
                break;
            }
        }
        out.push_back(std::move(d));
    }

    if (options.calendar == CalendarMode::full_calendar && !out.empty()) {
        std::vector<DailyMetrics> filled;
        std::size_t next = 0;
        for (Date day = out.front().date; day <= out.back().date; day = day + 1) {
            if (next < out.size() && out[next].date == day) {
                filled.push_back(out[next++]);
            } else {
                DailyMetrics empty;
                empty.date = day;
                empty.missing = true;
                filled.push_back(empty);
            }
        }
        out = std::move(filled);
    }
    return out;
}

std::vector<DailyMetrics> daily_metrics(const govdata::VoteLog& log, const MetricOptions& options) {
    const auto polls = all_poll_metrics(log, options);
    return aggregate_daily(log, polls, options);
}

double LorenzCurve::area_gini() const {
    double area = 0.0;
    for (std::size_t k = 1; k < points.size(); ++k) {
        area += (points[k].population - points[k - 1].population) * (points[k].share + points[k - 1].share) * 0.5;
    }
    return 1.0 - 2.0 * area;
}

LorenzCurve lorenz_points(std::span<const double> weights) {
    std::vector<double> sorted(weights.begin(), weights.end());
    std::sort(sorted.begin(), sorted.end());
    double total = 0.0;
    for (double w : sorted) total += w;
    if (!(total > 0.0)) throw DomainError("Lorenz curve needs a positive weight");
    LorenzCurve curve;
    curve.points.reserve(sorted.size() + 1);
    curve.points.push_back({0.0, 0.0});
    const auto n = static_cast<double>(sorted.size());
    double cum = 0.0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        cum += sorted[k];
        curve.points.push_back({static_cast<double>(k + 1) / n, cum / total});
    }
    curve.points.back().share = 1.0;
    return curve;
}

LorenzCurve lorenz_points(std::span<const FinalBallot> ballots) {
    const auto w = weights_of(ballots);
    return lorenz_points(w);
}

std::string_view measure_name(Measure m) {
    switch (m) {
        case Measure::voters: return "Voters";
        case Measure::total_votes: return "TotalVotes";
        case Measure::largest_share: return "LargestShare";
        case Measure::largest_share_win: return "LargestShareWin";
        case Measure::gini: return "Gini";
        case Measure::order: return "Order";
        case Measure::speed: return "Speed";
    }
    return "unknown";
}

std::optional<Measure> parse_measure(std::string_view text) {
    auto squash = [](std::string_view s) {
        std::string out;
        for (char c : s) {
            if (c != '_' && c != '-') out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
        return out;
    };
    const std::string wanted = squash(text);
    for (Measure m : kAllMeasures) {
        if (squash(measure_name(m)) == wanted) return m;
    }
    return std::nullopt;
}

double measure_value(const DailyMetrics& d, Measure m) {
    switch (m) {
        case Measure::voters: return static_cast<double>(d.voters);
        case Measure::total_votes: return d.total_votes.to_double();
        case Measure::largest_share: return d.largest_share;
        case Measure::largest_share_win: return d.largest_share_win;
        case Measure::gini: return d.gini;
        case Measure::order: return d.order;
        case Measure::speed: return d.speed;
    }
    return 0.0;
}

std::string metrics_csv(std::span<const DailyMetrics> days) {
    std::string out = "date,poll_count,voters,total_votes,largest_share,largest_share_win,order,speed,gini,missing_flag\n";
    for (const auto& d : days) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", d.date.to_string(), d.poll_count, d.voters,
                           d.total_votes.to_string(), format_double(d.largest_share),
                           format_double(d.largest_share_win), format_double(d.order), format_double(d.speed),
                           format_double(d.gini), d.missing ? 1 : 0);
    }
    return out;
}

std::string poll_metrics_csv(std::span<const PollMetrics> polls) {
    std::string out =
        "poll_id,date,total_votes,voters,gini,largest_share,ifwin,largest_share_win,order,speed,"
        "breakdown_votes,breakdown_ratio,breakdown_voters,largest_votes,largest_voter,winner,winner_tie\n";
    for (const auto& p : polls) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", p.poll_id, p.date.to_string(),
                           p.total_votes.to_string(), p.voters, format_double(p.gini), format_double(p.largest_share),
                           p.ifwin, format_double(p.largest_share_win), format_double(p.order),
                           format_double(p.speed_seconds), p.breakdown_votes.to_string(),
                           format_double(p.breakdown_ratio), p.breakdown_voters, p.largest_votes.to_string(),
                           p.largest_voter, p.winner, p.winner_tie ? 1 : 0);
    }
    return out;
}

}  // namespace govpulse::centrality
