#pragma once

// Univariate OLS, single-instrument 2SLS with endogeneity diagnostics, and the
// factor-by-measure regression grids.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "govpulse/centrality.hpp"
#include "govpulse/factorlab.hpp"
#include "govpulse/stats.hpp"

namespace govpulse::econ {

struct OlsFit {
    double beta0 = 0.0;
    double beta1 = 0.0;
    double se0 = 0.0;
    double se1 = 0.0;
    double t0 = 0.0;
    double t1 = 0.0;
    double p1 = 1.0;
    std::string stars;
    double r2 = 0.0;
    double adj_r2 = 0.0;
    double ssr = 0.0;  ///< sum of squared residuals
    std::size_t n = 0;
};

/// y = beta0 + beta1 x + e with classical standard errors and n - 2 dof.
/// Throws DomainError("degenerate regressor") for constant x and for n < 3.
OlsFit ols(std::span<const double> y, std::span<const double> x, const stats::StarThresholds& thresholds = {});

struct EndogeneityTests {
    double durbin_stat = 0.0;
    double durbin_p = 1.0;
    double wu_hausman_stat = 0.0;
    double wu_hausman_p = 1.0;
};

/// Residual-augmentation tests of the exogeneity of x. Durbin is the
/// n * (SSR_r - SSR_u) / SSR_r score form against chi2(1); Wu-Hausman the
/// F(1, n - 3) test on the first-stage residual's coefficient. Throws
/// DomainError("collinear augmentation") when that residual is (near) zero
/// or collinear with x.
EndogeneityTests endogeneity_tests(std::span<const double> y, std::span<const double> x, std::span<const double> z);

struct IvFit {
    OlsFit first_stage;          ///< x on z
    double partial_f = 0.0;      ///< first-stage t1 squared
    double partial_f_p = 1.0;
    OlsFit second_stage;         ///< y on fitted x, residuals from actual x
    /// NaN when the augmentation is collinear (e.g. z = x).
    double durbin_stat = 0.0;
    double durbin_p = 1.0;
    double wu_hausman_stat = 0.0;
    double wu_hausman_p = 1.0;
    double adj_r2 = 0.0;
    std::size_t n = 0;
};

/// Throws DomainError("degenerate instrument") for constant z and
/// DomainError for n < 4 or an instrument exactly uncorrelated with x.
/// A weak instrument is reported through partial_f, not rejected.
IvFit two_sls(std::span<const double> y, std::span<const double> x, std::span<const double> z,
              const stats::StarThresholds& thresholds = {});

// ---------------------------------------------------------------------------
// Regression grids

enum class CellStatus { ok, no_data, error };
std::string_view status_name(CellStatus s);

struct CellKey {
    std::string token;
    govdata::Category category = govdata::Category::financial;
    std::string factor;
    centrality::Measure measure = centrality::Measure::voters;
};

struct GridOptions {
    bool standardize = true;
    stats::StarThresholds thresholds;
    unsigned threads = 1;
};

struct OlsCell {
    CellKey key;
    CellStatus status = CellStatus::no_data;
    std::string message;
    OlsFit fit;
};

struct IvCell {
    CellKey key;
    CellStatus status = CellStatus::no_data;
    std::string message;
    IvFit fit;
};

struct OlsGrid {
    std::vector<OlsCell> cells;  ///< token, then catalogue order, then measure
    bool standardized = true;
};

struct IvGrid {
    std::vector<IvCell> cells;
    bool standardized = true;
};

inline constexpr std::array<centrality::Measure, 3> kDefaultIvMeasures{
    centrality::Measure::voters, centrality::Measure::total_votes, centrality::Measure::speed};

/// factor_t = beta0 + beta1 measure_t over pairwise-complete dates, for every
/// catalogue factor of each token and every measure. Failed or empty cells
/// carry a status instead of aborting the grid.
OlsGrid run_factor_matrix(const factorlab::Panel& panel, std::span<const std::string> tokens,
                          std::span<const centrality::Measure> measures = centrality::kAllMeasures,
                          const GridOptions& options = {});

/// 2SLS of each factor on each instrumented measure.
IvGrid run_iv_suite(const factorlab::Panel& panel, std::span<const std::string> tokens,
                    std::span<const centrality::Measure> measures = kDefaultIvMeasures,
                    const GridOptions& options = {});

struct ScreenRow {
    centrality::Measure measure = centrality::Measure::voters;
    std::size_t n = 0;
    double correlation = 0.0;
    double f_stat = 0.0;
    double p_value = 1.0;
    std::string stars;
    std::string message;  ///< non-empty when the regression could not be run
};

struct InstrumentScreen {
    std::vector<ScreenRow> rows;
    std::optional<stats::SummaryStats> instrument;  ///< empty when no observations
};

/// Strength of the instrument for each measure: F of measure on instrument.
InstrumentScreen instrument_screen(const Series& instrument, const factorlab::Panel& panel,
                                   std::span<const centrality::Measure> measures = centrality::kAllMeasures,
                                   const stats::StarThresholds& thresholds = {});

std::string ols_grid_csv(const OlsGrid& grid);
std::string iv_grid_csv(const IvGrid& grid);
std::string instrument_screen_csv(const InstrumentScreen& screen);

}  // namespace govpulse::econ
