#pragma once

// Descriptive statistics over polls and voters.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "govpulse/centrality.hpp"
#include "govpulse/govdata.hpp"
#include "govpulse/stats.hpp"

namespace govpulse::profiles {

struct VoterProfile {
    govdata::Address address;
    std::optional<std::string> identity;
    std::size_t involved_polls = 0;
    TokenAmount total_votes;
    govdata::PollId first_poll = 0;  ///< smallest poll id participated in
    TokenAmount highest_single_vote;
    Date first_date;                 ///< UTC date of the earliest counted ballot
};

struct DescribedColumn {
    std::string name;
    stats::SummaryStats stats;
};

/// Column-wise summary across polls. The breakdown columns follow the
/// configured abstain rule; `breakdown_definition` records which.
struct PollDescriptives {
    std::vector<DescribedColumn> columns;
    std::string breakdown_definition;
};

/// Over polls with positive total votes. Throws DomainError if there are none.
PollDescriptives poll_descriptives(std::span<const centrality::PollMetrics> polls,
                                   const centrality::MetricOptions& options = {});
PollDescriptives poll_descriptives(const govdata::VoteLog& log, const centrality::MetricOptions& options = {});

/// One profile per address over counted ballots, ordered by address.
std::vector<VoterProfile> voter_profiles(const govdata::VoteLog& log,
                                         govdata::BallotRule rule = govdata::BallotRule::last);

enum class RankCriterion { involved_polls, total_votes, highest_single_vote };
std::string_view criterion_name(RankCriterion c);
std::optional<RankCriterion> parse_criterion(std::string_view text);

/// Top `n` by criterion, descending; ties by address ascending.
std::vector<VoterProfile> rank_voters(std::span<const VoterProfile> profiles, RankCriterion criterion, std::size_t n);

/// Summary of involved polls, total votes, first poll and highest vote.
std::vector<DescribedColumn> voter_descriptives(std::span<const VoterProfile> profiles);

std::string profiles_csv(std::span<const VoterProfile> profiles);
std::string descriptives_csv(std::span<const DescribedColumn> columns);

}  // namespace govpulse::profiles
