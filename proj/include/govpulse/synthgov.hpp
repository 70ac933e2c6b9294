#pragma once

// Seeded synthetic governance histories and factor panels.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "govpulse/centrality.hpp"
#include "govpulse/date.hpp"
#include "govpulse/govdata.hpp"

namespace govpulse::synthgov {

struct CountSpec {
    enum class Kind { constant, poisson };
    Kind kind = Kind::poisson;
    double mean = 0.8;
};

/// Seconds between deployment (or a previous record) and a vote.
struct DelaySpec {
    enum class Kind { constant, exponential, uniform };
    Kind kind = Kind::exponential;
    double a = 2.0 * 86400.0;  ///< constant value, exponential mean, or uniform low
    double b = 0.0;            ///< uniform high
};

struct SynthConfig {
    int days = 800;
    /// When set, exactly this many polls are spread uniformly over the days
    /// and polls_per_day is ignored.
    std::optional<std::size_t> total_polls = 638;
    CountSpec polls_per_day;
    std::size_t voter_pool = 200;
    double holdings_alpha = 1.2;
    double holdings_scale = 100.0;  ///< Pareto minimum, in tokens
    /// Share of the pool holding only dust; their Pareto draw is scaled by dust_scale.
    double dust_fraction = 0.8;
    double dust_scale = 1e-3;
    double participation_rate = 0.125;
    double revision_rate = 0.1;
    double largest_wins_prob = 0.7;
    double abstain_rate = 0.05;
    int options = 2;  ///< non-abstain options per poll; an abstain option is always added
    DelaySpec vote_delay;
    std::size_t identified_voters = 10;  ///< largest holders given an identity label
    std::uint64_t seed = 1;
    Date start_date{17897};  // 2019-01-01

    /// Throws DomainError naming the first invalid field.
    void validate() const;
};

SynthConfig config_from_json(std::string_view text);
std::string config_to_json(const SynthConfig& config);

/// Deterministic in (config, seed). Polls where the requested outcome for the
/// largest voter could not be arranged are recorded as info anomalies of kind
/// "forcing infeasible" in the log's ingest report.
govdata::VoteLog gen_history(const SynthConfig& config);

inline constexpr std::string_view kForcingInfeasible = "forcing infeasible";

struct FactorPlan {
    std::string token;
    govdata::Category category = govdata::Category::financial;
    std::string factor;
    double intercept = 0.0;
    /// Loadings on z-scored daily measures.
    std::map<centrality::Measure, double> loadings;
    double noise_std = 1.0;
    bool confounded = true;  ///< receives the shared confound in endogenous mode
};

struct InstrumentPlan {
    bool emit = true;
    std::string token = "MKR";
    centrality::Measure measure = centrality::Measure::voters;
    double strength = 1.0;  ///< weight of the z-scored measure against unit noise
    double mean = 60.0;
    double sd = 15.0;
    bool integer = true;
    std::size_t days = 0;  ///< emit only the last `days` metric dates; 0 for all
};

struct EndogeneityPlan {
    bool enabled = false;
    double gamma = 0.8;  ///< confound loading in the factor
};

struct PanelPlan {
    std::vector<std::string> tokens{"MKR", "ETH", "DAI"};
    /// Generate every ingested catalogue factor of every token; Price as a
    /// positive random walk, the rest as intercept plus noise.
    bool fill_catalogue = true;
    double default_noise_std = 1.0;
    double price_start = 100.0;
    double price_vol = 0.04;
    std::vector<FactorPlan> factors;  ///< explicit plans override catalogue fill
    InstrumentPlan instrument;
    EndogeneityPlan endogeneity;

    void validate() const;
};

PanelPlan plan_from_json(std::string_view text);

/// factor_t = intercept + sum loading * zmeasure_t + noise over the calendar
/// spanned by `metrics` (measure terms only on dates with metrics). The
/// instrument is s * zmeasure + noise; in endogenous mode the part of the
/// measure orthogonal to the instrument is added to planned factors with
/// weight gamma. Throws DomainError on empty metrics.
govdata::FactorPanel gen_panel(std::span<const centrality::DailyMetrics> metrics, const PanelPlan& plan,
                               std::uint64_t seed);

}  // namespace govpulse::synthgov
