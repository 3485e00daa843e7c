#include "newsnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "newsnet/csv.hpp"

namespace newsnet {

std::string_view net_tag_name(NetTag tag) {
    switch (tag) {
        case NetTag::Full: return "full";
        case NetTag::Within: return "within";
        case NetTag::Cross: return "cross";
        case NetTag::BigLead: return "big_lead";
        case NetTag::SmallLead: return "small_lead";
        case NetTag::HighLead: return "high_lead";
        case NetTag::LowLead: return "low_lead";
    }
    return "?";
}

NetTag parse_net_tag(std::string_view name) {
    for (NetTag tag : {NetTag::Full, NetTag::Within, NetTag::Cross, NetTag::BigLead,
                       NetTag::SmallLead, NetTag::HighLead, NetTag::LowLead})
        if (net_tag_name(tag) == name) return tag;
    throw std::runtime_error("unknown network tag '" + std::string(name) + "'");
}

int NewsNetwork::count(int i, int j) const {
    auto it = counts[i].find(j);
    return it == counts[i].end() ? 0 : it->second;
}

double NewsNetwork::weight(int i, int j) const {
    auto it = weights[i].find(j);
    return it == weights[i].end() ? 0.0 : it->second;
}

double NewsNetwork::row_sum(int i) const {
    double s = 0;
    for (const auto& [j, w] : weights[i]) s += w;
    return s;
}

NewsNetwork build_network(const std::vector<Linkage>& linkages, Date window_start,
                          Date window_end, const std::vector<std::string>& universe) {
    if (window_end < window_start) throw std::runtime_error("build_network: empty window");
    NewsNetwork net;
    net.window_start = window_start;
    net.window_end = window_end;
    net.universe = universe;
    for (int i = 0; i < net.size(); ++i) net.index[universe[i]] = i;
    net.counts.resize(universe.size());
    net.weights.resize(universe.size());
    for (const Linkage& l : linkages) {
        if (l.info_day < window_start || l.info_day > window_end) continue;
        auto fi = net.index.find(l.follower);
        auto li = net.index.find(l.lead);
        if (fi == net.index.end() || li == net.index.end()) {
            ++net.skipped_out_of_universe;
            continue;
        }
        if (fi->second == li->second) continue;  // zero diagonal by construction
        ++net.counts[fi->second][li->second];
    }
    for (int i = 0; i < net.size(); ++i) {
        double n_i = 0;
        for (const auto& [j, a] : net.counts[i]) n_i += a;
        if (n_i <= 0) continue;
        for (const auto& [j, a] : net.counts[i]) net.weights[i][j] = a / n_i;
    }
    return net;
}

WindowCharacteristics window_characteristics(const PricePanel& prices,
                                             const TradingCalendar& calendar, Date window_start,
                                             Date window_end,
                                             const std::vector<std::string>& universe) {
    WindowCharacteristics out;
    for (const std::string& ticker : universe) {
        auto it = prices.by_ticker.find(ticker);
        if (it == prices.by_ticker.end()) continue;
        double mv_sum = 0, to_sum = 0;
        int n = 0;
        for (auto jt = it->second.lower_bound(window_start);
             jt != it->second.end() && jt->first <= window_end; ++jt) {
            if (!calendar.contains(jt->first)) continue;
            mv_sum += jt->second.market_value();
            to_sum += jt->second.turnover();
            ++n;
        }
        if (n > 0) {
            out.mean_mv[ticker] = mv_sum / n;
            out.mean_turnover[ticker] = to_sum / n;
        }
    }
    return out;
}

double quantile_nearest_rank(std::vector<double> values, double p) {
    if (values.empty()) throw std::runtime_error("quantile of empty set");
    if (p < 0 || p > 1) throw std::runtime_error("quantile level out of range");
    std::sort(values.begin(), values.end());
    std::size_t rank = static_cast<std::size_t>(std::ceil(p * values.size()));
    if (rank == 0) rank = 1;
    return values[rank - 1];
}

NewsNetwork decompose(const NewsNetwork& full, NetTag filter, const FirmMaster& firms,
                      const WindowCharacteristics& chars, double quantile_low,
                      double quantile_high) {
    if (filter == NetTag::Full) return full;
    NewsNetwork net = full;
    net.tag = filter;

    // Lead-firm condition for size/liquidity filters, evaluated on the
    // cross-section of window means; missing data never qualifies.
    std::vector<char> lead_ok(full.universe.size(), 0);
    if (filter == NetTag::BigLead || filter == NetTag::SmallLead || filter == NetTag::HighLead ||
        filter == NetTag::LowLead) {
        const auto& table = (filter == NetTag::BigLead || filter == NetTag::SmallLead)
                                ? chars.mean_mv
                                : chars.mean_turnover;
        std::vector<double> cross_section;
        for (const std::string& t : full.universe) {
            auto it = table.find(t);
            if (it != table.end()) cross_section.push_back(it->second);
        }
        if (!cross_section.empty()) {
            bool upper = filter == NetTag::BigLead || filter == NetTag::HighLead;
            double q = quantile_nearest_rank(cross_section, upper ? quantile_high : quantile_low);
            for (int j = 0; j < full.size(); ++j) {
                auto it = table.find(full.universe[j]);
                if (it == table.end()) continue;
                lead_ok[j] = upper ? (it->second > q) : (it->second <= q);
            }
        }
    }

    for (int i = 0; i < full.size(); ++i) {
        std::map<int, int> kept_counts;
        std::map<int, double> kept_weights;
        for (const auto& [j, w] : full.weights[i]) {
            bool keep = false;
            switch (filter) {
                case NetTag::Within:
                    keep = firms.firm(full.universe[i]).sector == firms.firm(full.universe[j]).sector;
                    break;
                case NetTag::Cross:
                    keep = firms.firm(full.universe[i]).sector != firms.firm(full.universe[j]).sector;
                    break;
                case NetTag::BigLead:
                case NetTag::SmallLead:
                case NetTag::HighLead:
                case NetTag::LowLead:
                    keep = lead_ok[j] != 0;
                    break;
                case NetTag::Full:
                    keep = true;
                    break;
            }
            if (keep) {
                kept_weights[j] = w;
                kept_counts[j] = full.count(i, j);
            }
        }
        net.weights[i] = std::move(kept_weights);
        net.counts[i] = std::move(kept_counts);
    }
    return net;
}

std::vector<int> degree(const NewsNetwork& network, DegreeMode mode) {
    std::vector<int> follower_deg(network.universe.size(), 0);
    std::vector<int> lead_deg(network.universe.size(), 0);
    for (std::size_t i = 0; i < network.weights.size(); ++i) {
        for (const auto& [j, w] : network.weights[i]) {
            if (w == 0) continue;
            ++follower_deg[i];
            ++lead_deg[j];
        }
    }
    switch (mode) {
        case DegreeMode::Follower: return follower_deg;
        case DegreeMode::Lead: return lead_deg;
        case DegreeMode::Total: break;
    }
    std::vector<int> total(network.universe.size(), 0);
    for (std::size_t i = 0; i < total.size(); ++i) total[i] = follower_deg[i] + lead_deg[i];
    return total;
}

PowerLawFit fit_power_law(const std::vector<int>& degrees) {
    std::map<int, int> freq;
    for (int d : degrees)
        if (d >= 1) ++freq[d];
    if (freq.size() < 3) throw std::runtime_error("fit_power_law: insufficient support");
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    int n = 0;
    for (const auto& [d, f] : freq) {
        double x = std::log(static_cast<double>(d));
        double y = std::log(static_cast<double>(f));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
        ++n;
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0) throw std::runtime_error("fit_power_law: degenerate support");
    double slope = (n * sxy - sx * sy) / denom;
    double intercept = (sy - slope * sx) / n;
    double ss_tot = syy - sy * sy / n;
    double ss_res = 0;
    for (const auto& [d, f] : freq) {
        double x = std::log(static_cast<double>(d));
        double y = std::log(static_cast<double>(f));
        double e = y - (intercept + slope * x);
        ss_res += e * e;
    }
    PowerLawFit fit;
    fit.gamma = -slope;
    fit.c_log = intercept;
    fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    fit.support = n;
    return fit;
}

DensityCurve degree_density(const std::vector<int>& degrees, double bandwidth, int grid_points) {
    if (degrees.empty()) throw std::runtime_error("degree_density: empty input");
    if (!(bandwidth > 0)) throw std::runtime_error("degree_density: bandwidth must be > 0");
    if (grid_points < 2) throw std::runtime_error("degree_density: need at least 2 grid points");
    auto [mn, mx] = std::minmax_element(degrees.begin(), degrees.end());
    double lo = *mn - bandwidth, hi = *mx + bandwidth;
    DensityCurve curve;
    curve.x.resize(grid_points);
    curve.y.resize(grid_points);
    double step = (hi - lo) / (grid_points - 1);
    double norm = 1.0 / (degrees.size() * bandwidth);
    for (int g = 0; g < grid_points; ++g) {
        double x = lo + g * step;
        double y = 0;
        for (int d : degrees) {
            double u = (x - d) / bandwidth;
            if (u > -1 && u < 1) y += 0.75 * (1 - u * u);
        }
        curve.x[g] = x;
        curve.y[g] = y * norm;
    }
    return curve;
}

void save_network(const std::string& path, const NewsNetwork& network) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open file '" + path + "' for writing");
    out << "follower,lead,count,weight,tag\n";
    char buf[64];
    for (int i = 0; i < network.size(); ++i) {
        for (const auto& [j, w] : network.weights[i]) {
            std::snprintf(buf, sizeof buf, "%.12g", w);
            out << network.universe[i] << ',' << network.universe[j] << ','
                << network.count(i, j) << ',' << buf << ',' << net_tag_name(network.tag) << "\n";
        }
    }
}

}  // namespace newsnet
