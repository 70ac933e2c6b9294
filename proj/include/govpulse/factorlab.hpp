#pragma once

// Regression-ready factor panel: derived return and volatility series,
// pass-through of ingested factors, and date alignment against the daily
// centralization measures.

#include <map>
#include <span>
#include <string>
#include <vector>

#include "govpulse/catalogue.hpp"
#include "govpulse/centrality.hpp"
#include "govpulse/govdata.hpp"
#include "govpulse/series.hpp"

namespace govpulse::factorlab {

enum class VolBasis { simple, log };
std::string_view vol_basis_name(VolBasis b);

struct PanelOptions {
    VolBasis vol = VolBasis::simple;
};

/// r_t = P_t / P_{t-1} - 1 over consecutive observations. The first value
/// is missing; so is any value touching a non-positive price (recorded in
/// `anomalies` when given).
Series daily_return(const Series& prices, std::vector<govdata::Anomaly>* anomalies = nullptr);

/// ln(P_t / P_{t-1}), same missing-value rules as daily_return.
Series log_return(const Series& prices, std::vector<govdata::Anomaly>* anomalies = nullptr);

/// Sample standard deviation of the k most recent returns ending at t;
/// missing unless all k are present. Throws DomainError for k < 2.
Series rolling_vol(const Series& returns, int k);

using SeriesKey = govdata::FactorPanel::SeriesKey;

struct Panel {
    std::map<SeriesKey, Series> factors;
    std::map<centrality::Measure, Series> measures;
    Series instrument;
    std::string instrument_token;  ///< token whose rows carried the instrument
    std::vector<govdata::Anomaly> anomalies;
    VolBasis vol = VolBasis::simple;

    /// nullptr when the token has no such factor.
    [[nodiscard]] const Series* factor(std::string_view token, govdata::Category category,
                                       std::string_view name) const;
    [[nodiscard]] const Series& measure(centrality::Measure m) const { return measures.at(m); }
    [[nodiscard]] std::vector<std::string> tokens() const;

    /// Ingested plus derived factor rows and the instrument, long format.
    [[nodiscard]] govdata::FactorPanel to_long() const;
};

/// Derives r and v2..v60 for every token with a Price series, keeps every
/// other ingested series, and attaches the daily measures and instrument.
Panel build_panel(const govdata::FactorPanel& raw, std::span<const centrality::DailyMetrics> metrics,
                  const PanelOptions& options = {});

/// Pairwise-complete observations on the dates both series share.
struct AlignedSample {
    std::vector<Date> dates;
    std::vector<double> y;
    std::vector<double> x;
};

struct AlignedTriple {
    std::vector<Date> dates;
    std::vector<double> y;
    std::vector<double> x;
    std::vector<double> z;
};

AlignedSample align(const Series& y, const Series& x);
AlignedTriple align(const Series& y, const Series& x, const Series& z);

/// In-place z-score using the sample standard deviation. A constant column
/// is only centered. Returns the standard deviation used (0 if constant).
double standardize(std::vector<double>& values);

}  // namespace govpulse::factorlab
