#pragma once

#include <string>
#include <vector>

#include "newsnet/econ.hpp"
#include "newsnet/network.hpp"
#include "newsnet/portfolio.hpp"

namespace newsnet {

// "112.6 bps" for beta = 0.752, sigma = 0.01497
std::string format_effect_size(double beta, double sigma_x);

struct RegressionTableColumn {
    std::string title;
    RegressionResult result;
};

std::string regression_table_csv(const std::vector<RegressionTableColumn>& columns);
std::string regression_table_markdown(const std::vector<RegressionTableColumn>& columns);

struct PortfolioTableRow {
    std::string label;  // "1".."K", "5-1", "Mkt"
    PerformanceRow perf;
    bool has_characteristics = true;
};

std::string portfolio_table_csv(const std::vector<PortfolioTableRow>& rows);
std::string portfolio_table_markdown(const std::vector<PortfolioTableRow>& rows);

// Scatter with one OLS line and a seeded pair-bootstrap percentile band.
void svg_scatter_fit(const std::string& path, const std::vector<double>& x,
                     const std::vector<double>& y, const std::string& x_label,
                     const std::string& y_label, int bootstrap_samples,
                     unsigned long long bootstrap_seed);

struct SvgSeries {
    std::string label;
    std::string color;
    std::vector<double> values;
};

void svg_line_chart(const std::string& path, const std::vector<SvgSeries>& series,
                    const std::string& x_label, const std::string& y_label);

// log(frequency) against log(degree) with the fitted line.
void svg_loglog_degree(const std::string& path, const std::vector<int>& degrees,
                       const PowerLawFit& fit);

}  // namespace newsnet
