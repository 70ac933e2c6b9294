#pragma once

// End-to-end computation shared by the CLI and the tests: metrics, panel,
// regression grids.

#include <optional>
#include <string>
#include <vector>

#include "govpulse/centrality.hpp"
#include "govpulse/econ.hpp"
#include "govpulse/factorlab.hpp"
#include "govpulse/govdata.hpp"

namespace govpulse {

struct PipelineConfig {
    centrality::MetricOptions metrics;
    factorlab::PanelOptions panel;
    econ::GridOptions grid;
    std::vector<std::string> tokens;  ///< empty: every token in the factor file
    std::vector<centrality::Measure> ols_measures{centrality::kAllMeasures.begin(), centrality::kAllMeasures.end()};
    std::vector<centrality::Measure> iv_measures{econ::kDefaultIvMeasures.begin(), econ::kDefaultIvMeasures.end()};
    bool run_ols = true;
    bool run_iv = true;
};

struct PipelineResult {
    std::vector<centrality::PollMetrics> polls;
    std::vector<centrality::DailyMetrics> days;
    factorlab::Panel panel;
    std::vector<std::string> tokens;
    std::optional<econ::OlsGrid> ols;
    std::optional<econ::IvGrid> iv;               ///< only when the factors carry an instrument
    std::optional<econ::InstrumentScreen> screen;
};

std::vector<centrality::DailyMetrics> compute_days(const govdata::VoteLog& log,
                                                   std::vector<centrality::PollMetrics>& polls_out,
                                                   const centrality::MetricOptions& options);

PipelineResult run_pipeline(const govdata::VoteLog& log, const govdata::FactorPanel& factors,
                            const PipelineConfig& config);

}  // namespace govpulse
