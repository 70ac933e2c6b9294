#include "govpulse/profiles.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>

#include "govpulse/csv.hpp"
#include "govpulse/errors.hpp"
#include "govpulse/io.hpp"

namespace govpulse::profiles {

PollDescriptives poll_descriptives(std::span<const centrality::PollMetrics> polls,
                                   const centrality::MetricOptions& options) {
    if (polls.empty()) throw DomainError("no polls with votes to describe");
    std::vector<double> total, voters, breakdown, ratio, breakdown_voters, largest, share;
    for (const auto& p : polls) {
        total.push_back(p.total_votes.to_double());
        voters.push_back(static_cast<double>(p.voters));
        breakdown.push_back(p.breakdown_votes.to_double());
        ratio.push_back(p.breakdown_ratio);
        breakdown_voters.push_back(static_cast<double>(p.breakdown_voters));
        largest.push_back(p.largest_votes.to_double());
        share.push_back(p.largest_share);
    }
    PollDescriptives d;
    d.columns = {
        {"Total votes", stats::summarize(total)},
        {"Total voters", stats::summarize(voters)},
        {"Breakdown votes", stats::summarize(breakdown)},
        {"Breakdown ratio", stats::summarize(ratio)},
        {"Breakdown voters", stats::summarize(breakdown_voters)},
        {"Votes of the largest voter", stats::summarize(largest)},
        {"Vote share of the largest voter", stats::summarize(share)},
    };
    d.breakdown_definition = options.breakdown_excludes_abstain ? "configured: votes on non-abstain options"
                                                                : "configured: all options";
    return d;
}

PollDescriptives poll_descriptives(const govdata::VoteLog& log, const centrality::MetricOptions& options) {
    const auto polls = centrality::all_poll_metrics(log, options);
    return poll_descriptives(polls, options);
}

std::vector<VoterProfile> voter_profiles(const govdata::VoteLog& log, govdata::BallotRule rule) {
    struct Acc {
        VoterProfile profile;
        std::int64_t first_ts = 0;
    };
    std::map<govdata::Address, Acc> by_voter;
    for (const auto& [poll_id, poll] : log.registry()) {
        for (const auto& b : govdata::final_ballots(log, poll_id, rule)) {
            auto [it, fresh] = by_voter.try_emplace(b.voter);
            Acc& acc = it->second;
            VoterProfile& p = acc.profile;
            if (fresh) {
                p.address = b.voter;
                p.first_poll = poll_id;
                p.highest_single_vote = b.weight;
                acc.first_ts = b.final_timestamp;
            }
            ++p.involved_polls;
            p.total_votes += b.weight;
            p.first_poll = std::min(p.first_poll, poll_id);
            p.highest_single_vote = std::max(p.highest_single_vote, b.weight);
            acc.first_ts = std::min(acc.first_ts, b.final_timestamp);
        }
    }
    std::vector<VoterProfile> out;
    out.reserve(by_voter.size());
    for (auto& [addr, acc] : by_voter) {
        acc.profile.first_date = Date::from_unix_seconds(acc.first_ts);
        acc.profile.identity = log.identity(addr);
        out.push_back(std::move(acc.profile));
    }
    return out;
}

std::string_view criterion_name(RankCriterion c) {
    switch (c) {
        case RankCriterion::involved_polls: return "involved_polls";
        case RankCriterion::total_votes: return "total_votes";
        case RankCriterion::highest_single_vote: return "highest_single_vote";
    }
    return "unknown";
}

std::optional<RankCriterion> parse_criterion(std::string_view text) {
    for (auto c : {RankCriterion::involved_polls, RankCriterion::total_votes, RankCriterion::highest_single_vote}) {
        if (criterion_name(c) == text) return c;
    }
    return std::nullopt;
}

std::vector<VoterProfile> rank_voters(std::span<const VoterProfile> profiles, RankCriterion criterion,
                                      std::size_t n) {
    std::vector<VoterProfile> sorted(profiles.begin(), profiles.end());
    auto key_greater = [criterion](const VoterProfile& a, const VoterProfile& b) {
        switch (criterion) {
            case RankCriterion::involved_polls: return a.involved_polls > b.involved_polls;
            case RankCriterion::total_votes: return a.total_votes > b.total_votes;
            case RankCriterion::highest_single_vote: return a.highest_single_vote > b.highest_single_vote;
        }
        return false;
    };
    std::stable_sort(sorted.begin(), sorted.end(), [&](const VoterProfile& a, const VoterProfile& b) {
        if (key_greater(a, b)) return true;
        if (key_greater(b, a)) return false;
        return a.address < b.address;
    });
    if (sorted.size() > n) sorted.resize(n);
    return sorted;
}

std::vector<DescribedColumn> voter_descriptives(std::span<const VoterProfile> profiles) {
    if (profiles.empty()) throw DomainError("no voters to describe");
    std::vector<double> involved, total, first, highest;
    for (const auto& p : profiles) {
        involved.push_back(static_cast<double>(p.involved_polls));
        total.push_back(p.total_votes.to_double());
        first.push_back(static_cast<double>(p.first_poll));
        highest.push_back(p.highest_single_vote.to_double());
    }
    return {
        {"Involved polls", stats::summarize(involved)},
        {"Total votes", stats::summarize(total)},
        {"First poll", stats::summarize(first)},
        {"The highest votes", stats::summarize(highest)},
    };
}

std::string profiles_csv(std::span<const VoterProfile> profiles) {
    std::string out = "address,identity,involved_polls,total_votes,first_poll,highest_single_vote,since\n";
    for (const auto& p : profiles) {
        out += csv::join_row({p.address, p.identity.value_or(""), std::to_string(p.involved_polls),
                              p.total_votes.to_string(), std::to_string(p.first_poll),
                              p.highest_single_vote.to_string(), p.first_date.to_string()}) +
               "\n";
    }
    return out;
}

std::string descriptives_csv(std::span<const DescribedColumn> columns) {
    std::string out = "column,mean,median,maximum,minimum,std,n\n";
    for (const auto& c : columns) {
        out += fmt::format("{},{},{},{},{},{},{}\n", csv::escape(c.name), format_double(c.stats.mean),
                           format_double(c.stats.median), format_double(c.stats.maximum),
                           format_double(c.stats.minimum), format_double(c.stats.std), c.stats.n);
    }
    return out;
}

}  // namespace govpulse::profiles
