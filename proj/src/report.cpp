#include "newsnet/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "newsnet/synth.hpp"  // Rng

namespace newsnet {

namespace {

std::string fmt(double v, int digits = 3) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string fmtg(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::string format_effect_size(double beta, double sigma_x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f bps", effect_bps(beta, sigma_x));
    return buf;
}

std::string regression_table_csv(const std::vector<RegressionTableColumn>& columns) {
    // union of regressor names, first-seen order
    std::vector<std::string> names;
    for (const auto& col : columns)
        for (const auto& n : col.result.names)
            if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
    std::ostringstream out;
    out << "regressor";
    for (const auto& col : columns) out << ',' << col.title << ",t";
    out << "\n";
    for (const auto& name : names) {
        out << name;
        for (const auto& col : columns) {
            auto it = std::find(col.result.names.begin(), col.result.names.end(), name);
            if (it == col.result.names.end()) {
                out << ",,";
            } else {
                auto i = std::distance(col.result.names.begin(), it);
                out << ',' << fmt(col.result.beta(i)) << ',' << fmt(col.result.tstat(i));
            }
        }
        out << "\n";
    }
    out << "nobs";
    for (const auto& col : columns) out << ',' << col.result.nobs << ',';
    out << "\n";
    out << "cov";
    for (const auto& col : columns) out << ',' << cov_tag_name(col.result.cov_tag) << ',';
    out << "\n";
    return out.str();
}

std::string regression_table_markdown(const std::vector<RegressionTableColumn>& columns) {
    std::vector<std::string> names;
    for (const auto& col : columns)
        for (const auto& n : col.result.names)
            if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
    std::ostringstream out;
    out << "| regressor |";
    for (const auto& col : columns) out << ' ' << col.title << " |";
    out << "\n|---|";
    for (std::size_t i = 0; i < columns.size(); ++i) out << "---|";
    out << "\n";
    for (const auto& name : names) {
        out << "| " << name << " |";
        for (const auto& col : columns) {
            auto it = std::find(col.result.names.begin(), col.result.names.end(), name);
            if (it == col.result.names.end()) {
                out << "  |";
            } else {
                auto i = std::distance(col.result.names.begin(), it);
                out << ' ' << fmt(col.result.beta(i)) << " (" << fmt(col.result.tstat(i))
                    << ") |";
            }
        }
        out << "\n";
    }
    out << "| nobs |";
    for (const auto& col : columns) out << ' ' << col.result.nobs << " |";
    out << "\n";
    return out.str();
}

std::string portfolio_table_csv(const std::vector<PortfolioTableRow>& rows) {
    std::ostringstream out;
    out << "rank,mean,sr,pct_mv,bm,liquidity,alpha_ff3,t_ff3,r2_ff3,alpha_ff5,t_ff5,r2_ff5\n";
    for (const auto& row : rows) {
        out << row.label << ',' << fmt(row.perf.mean, 2) << ',' << fmt(row.perf.sharpe, 2) << ',';
        if (row.has_characteristics)
            out << fmt(row.perf.pct_mv, 2) << ',' << fmt(row.perf.bm, 2) << ','
                << fmt(row.perf.liquidity, 2);
        else
            out << ",,";
        out << ',' << fmt(row.perf.alpha_ff3, 2) << ',' << fmt(row.perf.t_ff3, 2) << ','
            << fmt(row.perf.r2_ff3, 2) << ',' << fmt(row.perf.alpha_ff5, 2) << ','
            << fmt(row.perf.t_ff5, 2) << ',' << fmt(row.perf.r2_ff5, 2) << "\n";
    }
    return out.str();
}

std::string portfolio_table_markdown(const std::vector<PortfolioTableRow>& rows) {
    std::ostringstream out;
    out << "| Rank | Mean | SR | %MV | B/M | Liquidity | α(FF3) | t | R²(FF3) | α(FF5) | t | "
           "R²(FF5) |\n";
    out << "|---|---|---|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& row : rows) {
        out << "| " << row.label << " | " << fmt(row.perf.mean, 2) << " | "
            << fmt(row.perf.sharpe, 2) << " | ";
        if (row.has_characteristics)
            out << fmt(row.perf.pct_mv, 2) << " | " << fmt(row.perf.bm, 2) << " | "
                << fmt(row.perf.liquidity, 2);
        else
            out << " |  | ";
        out << " | " << fmt(row.perf.alpha_ff3, 2) << " | (" << fmt(row.perf.t_ff3, 2) << ") | "
            << fmt(row.perf.r2_ff3, 2) << " | " << fmt(row.perf.alpha_ff5, 2) << " | ("
            << fmt(row.perf.t_ff5, 2) << ") | " << fmt(row.perf.r2_ff5, 2) << " |\n";
    }
    return out.str();
}

namespace {

constexpr int kWidth = 720, kHeight = 480, kMargin = 56;

struct Scale {
    double x_min, x_max, y_min, y_max;

    double px(double x) const {
        return kMargin + (x - x_min) / (x_max - x_min) * (kWidth - 2 * kMargin);
    }
    double py(double y) const {
        return kHeight - kMargin - (y - y_min) / (y_max - y_min) * (kHeight - 2 * kMargin);
    }
};

Scale make_scale(const std::vector<double>& xs, const std::vector<double>& ys) {
    auto [xmin, xmax] = std::minmax_element(xs.begin(), xs.end());
    auto [ymin, ymax] = std::minmax_element(ys.begin(), ys.end());
    Scale s{*xmin, *xmax, *ymin, *ymax};
    if (s.x_max == s.x_min) {
        s.x_min -= 1;
        s.x_max += 1;
    }
    if (s.y_max == s.y_min) {
        s.y_min -= 1;
        s.y_max += 1;
    }
    double xpad = 0.05 * (s.x_max - s.x_min), ypad = 0.05 * (s.y_max - s.y_min);
    s.x_min -= xpad;
    s.x_max += xpad;
    s.y_min -= ypad;
    s.y_max += ypad;
    return s;
}

void svg_open(std::ofstream& out, const std::string& x_label, const std::string& y_label) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    out << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
        << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
        << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label << "</text>\n";
    out << "<text x=\"16\" y=\"" << kHeight / 2 << "\" text-anchor=\"middle\" font-size=\"13\" "
        << "transform=\"rotate(-90 16 " << kHeight / 2 << ")\">" << y_label << "</text>\n";
}

}  // namespace

void svg_scatter_fit(const std::string& path, const std::vector<double>& x,
                     const std::vector<double>& y, const std::string& x_label,
                     const std::string& y_label, int bootstrap_samples,
                     unsigned long long bootstrap_seed) {
    if (x.size() != y.size() || x.size() < 3)
        throw std::runtime_error("svg_scatter_fit: need at least 3 aligned points");
    const int n = static_cast<int>(x.size());

    auto fit_line = [](const std::vector<double>& xs, const std::vector<double>& ys) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int m = static_cast<int>(xs.size());
        for (int i = 0; i < m; ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        double denom = m * sxx - sx * sx;
        double b = denom != 0 ? (m * sxy - sx * sy) / denom : 0.0;
        double a = (sy - b * sx) / m;
        return std::pair<double, double>{a, b};
    };
    auto [a, b] = fit_line(x, y);

    Scale s = make_scale(x, y);
    constexpr int kGrid = 25;
    std::vector<double> grid(kGrid);
    for (int g = 0; g < kGrid; ++g)
        grid[g] = s.x_min + (s.x_max - s.x_min) * g / (kGrid - 1);

    // pair bootstrap, percentile band at each grid point
    std::vector<std::vector<double>> band(kGrid);
    Rng rng(bootstrap_seed);
    std::vector<double> bx(n), by(n);
    for (int rep = 0; rep < bootstrap_samples; ++rep) {
        for (int i = 0; i < n; ++i) {
            int j = rng.uniform_int(0, n - 1);
            bx[i] = x[j];
            by[i] = y[j];
        }
        auto [ba, bb] = fit_line(bx, by);
        for (int g = 0; g < kGrid; ++g) band[g].push_back(ba + bb * grid[g]);
    }
    std::vector<double> lo(kGrid), hi(kGrid);
    for (int g = 0; g < kGrid; ++g) {
        std::sort(band[g].begin(), band[g].end());
        auto pick = [&](double q) {
            int idx = std::clamp(static_cast<int>(q * (band[g].size() - 1)), 0,
                                 static_cast<int>(band[g].size()) - 1);
            return band[g][idx];
        };
        lo[g] = pick(0.025);
        hi[g] = pick(0.975);
    }

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open file '" + path + "' for writing");
    svg_open(out, x_label, y_label);
    out << "<polygon class=\"band\" fill=\"#9ecae1\" fill-opacity=\"0.45\" stroke=\"none\" "
           "points=\"";
    for (int g = 0; g < kGrid; ++g) out << s.px(grid[g]) << ',' << s.py(lo[g]) << ' ';
    for (int g = kGrid - 1; g >= 0; --g) out << s.px(grid[g]) << ',' << s.py(hi[g]) << ' ';
    out << "\"/>\n";
    for (int i = 0; i < n; ++i)
        out << "<circle cx=\"" << s.px(x[i]) << "\" cy=\"" << s.py(y[i])
            << "\" r=\"2.2\" fill=\"#333333\" fill-opacity=\"0.6\"/>\n";
    out << "<path class=\"fit\" stroke=\"#d62728\" stroke-width=\"2\" fill=\"none\" d=\"M "
        << s.px(s.x_min) << ' ' << s.py(a + b * s.x_min) << " L " << s.px(s.x_max) << ' '
        << s.py(a + b * s.x_max) << "\"/>\n";
    out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kMargin - 8
        << "\" text-anchor=\"end\" font-size=\"12\">slope " << fmtg(b) << "</text>\n";
    out << "</svg>\n";
}

void svg_line_chart(const std::string& path, const std::vector<SvgSeries>& series,
                    const std::string& x_label, const std::string& y_label) {
    if (series.empty() || series.front().values.empty())
        throw std::runtime_error("svg_line_chart: empty series");
    std::vector<double> xs, ys;
    for (const auto& ser : series)
        for (std::size_t t = 0; t < ser.values.size(); ++t) {
            xs.push_back(static_cast<double>(t));
            ys.push_back(ser.values[t]);
        }
    Scale s = make_scale(xs, ys);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open file '" + path + "' for writing");
    svg_open(out, x_label, y_label);
    int li = 0;
    for (const auto& ser : series) {
        out << "<polyline fill=\"none\" stroke=\"" << ser.color << "\" stroke-width=\"1.6\""
            << (ser.label == "market" ? " stroke-dasharray=\"5,4\"" : "") << " points=\"";
        for (std::size_t t = 0; t < ser.values.size(); ++t)
            out << s.px(static_cast<double>(t)) << ',' << s.py(ser.values[t]) << ' ';
        out << "\"/>\n";
        out << "<text x=\"" << kWidth - kMargin + 4 << "\" y=\"" << kMargin + 16 * li
            << "\" font-size=\"11\" fill=\"" << ser.color << "\">" << ser.label << "</text>\n";
        ++li;
    }
    out << "</svg>\n";
}

void svg_loglog_degree(const std::string& path, const std::vector<int>& degrees,
                       const PowerLawFit& fit) {
    std::map<int, int> freq;
    for (int d : degrees)
        if (d >= 1) ++freq[d];
    if (freq.empty()) throw std::runtime_error("svg_loglog_degree: no positive degrees");
    std::vector<double> xs, ys;
    for (const auto& [d, f] : freq) {
        xs.push_back(std::log(static_cast<double>(d)));
        ys.push_back(std::log(static_cast<double>(f)));
    }
    Scale s = make_scale(xs, ys);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open file '" + path + "' for writing");
    svg_open(out, "log degree", "log frequency");
    for (std::size_t i = 0; i < xs.size(); ++i)
        out << "<circle cx=\"" << s.px(xs[i]) << "\" cy=\"" << s.py(ys[i])
            << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
    auto line_y = [&](double lx) { return fit.c_log - fit.gamma * lx; };
    out << "<path class=\"fit\" stroke=\"#d62728\" stroke-width=\"2\" fill=\"none\" d=\"M "
        << s.px(s.x_min) << ' ' << s.py(line_y(s.x_min)) << " L " << s.px(s.x_max) << ' '
        << s.py(line_y(s.x_max)) << "\"/>\n";
    out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kMargin - 8
        << "\" text-anchor=\"end\" font-size=\"12\">gamma " << fmtg(fit.gamma) << ", R2 "
        << fmtg(fit.r2) << "</text>\n";
    out << "</svg>\n";
}

}  // namespace newsnet
