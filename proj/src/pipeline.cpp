#include "govpulse/pipeline.hpp"

namespace govpulse {

std::vector<centrality::DailyMetrics> compute_days(const govdata::VoteLog& log,
                                                   std::vector<centrality::PollMetrics>& polls_out,
                                                   const centrality::MetricOptions& options) {
    polls_out = centrality::all_poll_metrics(log, options);
    return centrality::aggregate_daily(log, polls_out, options);
}

PipelineResult run_pipeline(const govdata::VoteLog& log, const govdata::FactorPanel& factors,
                            const PipelineConfig& config) {
    PipelineResult r;
    r.days = compute_days(log, r.polls, config.metrics);
    r.panel = factorlab::build_panel(factors, r.days, config.panel);
    r.tokens = config.tokens.empty() ? factors.tokens() : config.tokens;
    if (config.run_ols) r.ols = econ::run_factor_matrix(r.panel, r.tokens, config.ols_measures, config.grid);
    if (config.run_iv && !r.panel.instrument.empty()) {
        r.iv = econ::run_iv_suite(r.panel, r.tokens, config.iv_measures, config.grid);
        r.screen = econ::instrument_screen(r.panel.instrument, r.panel, centrality::kAllMeasures,
                                           config.grid.thresholds);
    }
    return r;
}

}  // namespace govpulse
