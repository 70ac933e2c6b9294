#include "govpulse/econ.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "govpulse/catalogue.hpp"
#include "govpulse/csv.hpp"
#include "govpulse/errors.hpp"
#include "govpulse/io.hpp"
#include "govpulse/kernels.hpp"
#include "govpulse/parallel.hpp"

namespace govpulse::econ {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double mean_of(std::span<const double> v) { return kernels::sum(v) / static_cast<double>(v.size()); }

bool is_constant(std::span<const double> v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *lo == *hi;
}

// b / se, with an exact fit giving 0 or +-inf instead of NaN.
double t_ratio(double b, double se) {
    if (se > 0.0) return b / se;
    if (b == 0.0) return 0.0;
    return std::copysign(std::numeric_limits<double>::infinity(), b);
}

void require_equal(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DomainError("series lengths differ");
}

std::vector<double> residuals_of(std::span<const double> y, std::span<const double> x, double b0, double b1) {
    std::vector<double> out(y.size());
    kernels::residuals(y, x, b0, b1, out);
    return out;
}

void fill_inference(OlsFit& fit, double dof, double x_mean, double sxx_effective,
                    const stats::StarThresholds& thresholds) {
    const double n = static_cast<double>(fit.n);
    const double s2 = fit.ssr / dof;
    fit.se1 = std::sqrt(s2 / sxx_effective);
    fit.se0 = std::sqrt(s2 * (1.0 / n + x_mean * x_mean / sxx_effective));
    fit.t0 = t_ratio(fit.beta0, fit.se0);
    fit.t1 = t_ratio(fit.beta1, fit.se1);
    fit.p1 = stats::t_two_sided_p(fit.t1, dof);
    fit.stars = stats::stars(fit.p1, thresholds);
}

}  // namespace

OlsFit ols(std::span<const double> y, std::span<const double> x, const stats::StarThresholds& thresholds) {
    require_equal(y, x);
    if (y.size() < 3) throw DomainError(fmt::format("at least 3 observations required, got {}", y.size()));
    if (is_constant(x)) throw DomainError("degenerate regressor");

    OlsFit fit;
    fit.n = y.size();
    const double mx = mean_of(x);
    const double my = mean_of(y);
    const auto m = kernels::cross_moments(x, y, mx, my);
    if (!(m.sxx > 0.0)) throw DomainError("degenerate regressor");
    fit.beta1 = m.sxy / m.sxx;
    fit.beta0 = my - fit.beta1 * mx;

    const auto res = residuals_of(y, x, fit.beta0, fit.beta1);
    fit.ssr = kernels::dot(res, res);
    const double n = static_cast<double>(fit.n);
    fill_inference(fit, n - 2.0, mx, m.sxx, thresholds);
    fit.r2 = m.syy > 0.0 ? std::clamp(1.0 - fit.ssr / m.syy, 0.0, 1.0) : 0.0;
    fit.adj_r2 = 1.0 - (1.0 - fit.r2) * (n - 1.0) / (n - 2.0);
    return fit;
}

EndogeneityTests endogeneity_tests(std::span<const double> y, std::span<const double> x, std::span<const double> z) {
    require_equal(y, x);
    require_equal(y, z);
    if (y.size() < 4) throw DomainError(fmt::format("at least 4 observations required, got {}", y.size()));
    if (is_constant(z)) throw DomainError("degenerate instrument");

    const OlsFit first = ols(x, z);
    const auto v = residuals_of(x, z, first.beta0, first.beta1);
    const OlsFit restricted = ols(y, x);
    const auto u = residuals_of(y, x, restricted.beta0, restricted.beta1);

    // Frisch-Waugh: the SSR drop from adding v equals (u'v)^2 / |v residualized on (1, x)|^2.
    const double mx = mean_of(x);
    const auto xv = kernels::cross_moments(x, v, mx, 0.0);
    const double svv = kernels::dot(v, v);
    const double v_perp = svv - xv.sxy * xv.sxy / xv.sxx;
    if (!(svv > 1e-12 * xv.sxx) || !(v_perp > 1e-12 * svv)) throw DomainError("collinear augmentation");

    const double uv = kernels::dot(u, v);
    const double ssr_r = restricted.ssr;
    const double drop = std::min(uv * uv / v_perp, ssr_r);
    const double ssr_u = ssr_r - drop;
    const double n = static_cast<double>(y.size());

    EndogeneityTests out;
    out.durbin_stat = ssr_r > 0.0 ? n * drop / ssr_r : 0.0;
    out.durbin_p = std::isinf(out.durbin_stat) ? 0.0 : stats::chi2_survival(out.durbin_stat, 1.0);
    if (ssr_u > 0.0) {
        out.wu_hausman_stat = drop / (ssr_u / (n - 3.0));
    } else {
        out.wu_hausman_stat = drop > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    out.wu_hausman_p = stats::f_survival(out.wu_hausman_stat, 1.0, n - 3.0);
    return out;
}

IvFit two_sls(std::span<const double> y, std::span<const double> x, std::span<const double> z,
              const stats::StarThresholds& thresholds) {
    require_equal(y, x);
    require_equal(y, z);
    if (y.size() < 4) throw DomainError(fmt::format("at least 4 observations required, got {}", y.size()));
    if (is_constant(z)) throw DomainError("degenerate instrument");

    IvFit fit;
    fit.n = y.size();
    const double n = static_cast<double>(fit.n);
    fit.first_stage = ols(x, z, thresholds);
    fit.partial_f = fit.first_stage.t1 * fit.first_stage.t1;
    fit.partial_f_p = stats::f_survival(fit.partial_f, 1.0, n - 2.0);

    const double mx = mean_of(x);
    const double my = mean_of(y);
    const double mz = mean_of(z);
    const auto zx = kernels::cross_moments(z, x, mz, mx);
    const auto zy = kernels::cross_moments(z, y, mz, my);
    if (zx.sxy == 0.0) throw DomainError("instrument uncorrelated with regressor");

    OlsFit& second = fit.second_stage;
    second.n = fit.n;
    second.beta1 = zy.sxy / zx.sxy;
    second.beta0 = my - second.beta1 * mx;
    const auto res = residuals_of(y, x, second.beta0, second.beta1);
    second.ssr = kernels::dot(res, res);
    const double s_fitted = zx.sxy * zx.sxy / zx.sxx;  // sum (xhat - mean)^2
    fill_inference(second, n - 2.0, mx, s_fitted, thresholds);
    second.r2 = zy.syy > 0.0 ? 1.0 - second.ssr / zy.syy : 0.0;
    second.adj_r2 = 1.0 - (1.0 - second.r2) * (n - 1.0) / (n - 2.0);
    fit.adj_r2 = second.adj_r2;

    try {
        const auto e = endogeneity_tests(y, x, z);
        fit.durbin_stat = e.durbin_stat;
        fit.durbin_p = e.durbin_p;
        fit.wu_hausman_stat = e.wu_hausman_stat;
        fit.wu_hausman_p = e.wu_hausman_p;
    } catch (const DomainError&) {
        fit.durbin_stat = fit.durbin_p = fit.wu_hausman_stat = fit.wu_hausman_p = kNaN;
    }
    return fit;
}

std::string_view status_name(CellStatus s) {
    switch (s) {
        case CellStatus::ok: return "ok";
        case CellStatus::no_data: return "no data";
        case CellStatus::error: return "error";
    }
    return "?";
}

namespace {

std::vector<CellKey> grid_keys(std::span<const std::string> tokens, std::span<const centrality::Measure> measures) {
    std::vector<CellKey> keys;
    for (const auto& token : tokens) {
        for (const auto& spec : factorlab::catalogue_for(token)) {
            for (auto m : measures) keys.push_back({token, spec.category, spec.name, m});
        }
    }
    return keys;
}

template <typename Cell, typename Fit>
Cell run_cell(const CellKey& key, const factorlab::Panel& panel, Fit&& fit) {
    Cell cell;
    cell.key = key;
    const Series* factor = panel.factor(key.token, key.category, key.factor);
    if (factor == nullptr || factor->empty()) {
        cell.message = "factor absent";
        return cell;
    }
    try {
        if (fit(*factor, panel.measure(key.measure), cell)) cell.status = CellStatus::ok;
    } catch (const DomainError& e) {
        cell.status = CellStatus::error;
        cell.message = e.what();
    }
    return cell;
}

}  // namespace

OlsGrid run_factor_matrix(const factorlab::Panel& panel, std::span<const std::string> tokens,
                          std::span<const centrality::Measure> measures, const GridOptions& options) {
    const auto keys = grid_keys(tokens, measures);
    OlsGrid grid;
    grid.standardized = options.standardize;
    grid.cells = parallel_map(keys.size(), options.threads, [&](std::size_t i) {
        return run_cell<OlsCell>(keys[i], panel, [&](const Series& y, const Series& x, OlsCell& cell) {
            auto s = factorlab::align(y, x);
            if (s.y.size() < 3) {
                cell.message = fmt::format("{} aligned observations", s.y.size());
                return false;
            }
            if (options.standardize) {
                factorlab::standardize(s.y);
                factorlab::standardize(s.x);
            }
            cell.fit = ols(s.y, s.x, options.thresholds);
            return true;
        });
    });
    return grid;
}

IvGrid run_iv_suite(const factorlab::Panel& panel, std::span<const std::string> tokens,
                    std::span<const centrality::Measure> measures, const GridOptions& options) {
    const auto keys = grid_keys(tokens, measures);
    IvGrid grid;
    grid.standardized = options.standardize;
    grid.cells = parallel_map(keys.size(), options.threads, [&](std::size_t i) {
        return run_cell<IvCell>(keys[i], panel, [&](const Series& y, const Series& x, IvCell& cell) {
            if (panel.instrument.empty()) {
                cell.message = "instrument absent";
                return false;
            }
            auto s = factorlab::align(y, x, panel.instrument);
            if (s.y.size() < 4) {
                cell.message = fmt::format("{} aligned observations", s.y.size());
                return false;
            }
            if (options.standardize) {
                factorlab::standardize(s.y);
                factorlab::standardize(s.x);
                factorlab::standardize(s.z);
            }
            cell.fit = two_sls(s.y, s.x, s.z, options.thresholds);
            return true;
        });
    });
    return grid;
}

InstrumentScreen instrument_screen(const Series& instrument, const factorlab::Panel& panel,
                                   std::span<const centrality::Measure> measures,
                                   const stats::StarThresholds& thresholds) {
    InstrumentScreen out;
    std::vector<double> present;
    for (double v : instrument.values) {
        if (!is_missing(v)) present.push_back(v);
    }
    if (!present.empty()) out.instrument = stats::summarize(present);

    for (auto m : measures) {
        ScreenRow row;
        row.measure = m;
        const auto s = factorlab::align(panel.measure(m), instrument);
        row.n = s.y.size();
        try {
            const OlsFit fit = ols(s.y, s.x, thresholds);
            row.f_stat = fit.t1 * fit.t1;
            row.p_value = stats::f_survival(row.f_stat, 1.0, static_cast<double>(fit.n) - 2.0);
            row.stars = stats::stars(row.p_value, thresholds);
            row.correlation = std::copysign(std::sqrt(fit.r2), fit.beta1);
            if (std::isinf(row.f_stat)) row.message = "exact fit";
        } catch (const DomainError& e) {
            row.f_stat = row.p_value = row.correlation = kNaN;
            row.message = e.what();
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

namespace {

std::string key_columns(const CellKey& key) {
    return fmt::format("{},{},{},{}", key.token, govdata::category_name(key.category), key.factor,
                       centrality::measure_name(key.measure));
}

std::string scaling_name(bool standardized) { return standardized ? "standardized" : "raw"; }

}  // namespace

std::string ols_grid_csv(const OlsGrid& grid) {
    std::string out =
        "token,category,factor,measure,status,message,n,beta0,beta1,se0,se1,t0,t1,p1,stars,r2,adj_r2,scaling\n";
    const auto f = [](double v) { return format_double(v); };
    for (const auto& c : grid.cells) {
        out += key_columns(c.key);
        out += fmt::format(",{},{}", status_name(c.status), csv::escape(c.message));
        if (c.status == CellStatus::ok) {
            const auto& r = c.fit;
            out += fmt::format(",{},{},{},{},{},{},{},{},{},{},{},{}", r.n, f(r.beta0), f(r.beta1), f(r.se0),
                               f(r.se1), f(r.t0), f(r.t1), f(r.p1), r.stars, f(r.r2), f(r.adj_r2),
                               scaling_name(grid.standardized));
        } else {
            out += fmt::format(",,,,,,,,,,,,{}", scaling_name(grid.standardized));
        }
        out += '\n';
    }
    return out;
}

std::string iv_grid_csv(const IvGrid& grid) {
    std::string out =
        "token,category,factor,measure,status,message,n,first_stage_beta1,first_stage_t1,partial_f,partial_f_p,"
        "beta0,beta1,se1,t1,p1,stars,adj_r2,durbin_stat,durbin_p,wu_hausman_stat,wu_hausman_p,scaling\n";
    const auto f = [](double v) { return format_double(v); };
    for (const auto& c : grid.cells) {
        out += key_columns(c.key);
        out += fmt::format(",{},{}", status_name(c.status), csv::escape(c.message));
        if (c.status == CellStatus::ok) {
            const auto& r = c.fit;
            const auto& s = r.second_stage;
            out += fmt::format(",{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}", r.n, f(r.first_stage.beta1),
                               f(r.first_stage.t1), f(r.partial_f), f(r.partial_f_p), f(s.beta0), f(s.beta1),
                               f(s.se1), f(s.t1), f(s.p1), s.stars, f(r.adj_r2), f(r.durbin_stat), f(r.durbin_p),
                               f(r.wu_hausman_stat), f(r.wu_hausman_p), scaling_name(grid.standardized));
        } else {
            out += fmt::format(",,,,,,,,,,,,,,,,,{}", scaling_name(grid.standardized));
        }
        out += '\n';
    }
    return out;
}

std::string instrument_screen_csv(const InstrumentScreen& screen) {
    std::string out = "row,n,correlation,f_stat,p_value,stars,mean,median,max,min,std,message\n";
    for (const auto& r : screen.rows) {
        out += fmt::format("{},{},{},{},{},{},,,,,,{}\n", centrality::measure_name(r.measure), r.n,
                           format_double(r.correlation), format_double(r.f_stat), format_double(r.p_value), r.stars,
                           csv::escape(r.message));
    }
    if (screen.instrument) {
        const auto& s = *screen.instrument;
        out += fmt::format("instrument,{},,,,,{},{},{},{},{},\n", s.n, format_double(s.mean), format_double(s.median),
                           format_double(s.maximum), format_double(s.minimum), format_double(s.std));
    }
    return out;
}

}  // namespace govpulse::econ
