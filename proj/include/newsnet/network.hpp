#pragma once

#include <map>
#include <string>
#include <vector>

#include "newsnet/corpus.hpp"
#include "newsnet/identify.hpp"

namespace newsnet {

enum class NetTag { Full, Within, Cross, BigLead, SmallLead, HighLead, LowLead };
std::string_view net_tag_name(NetTag tag);
NetTag parse_net_tag(std::string_view name);

// Row-normalized directed adjacency over a fixed universe: entry (i, j) is
// follower i -> lead j. Weights of decomposed networks are masked copies of
// the full network's weights and need not sum to one per row.
struct NewsNetwork {
    Date window_start{};
    Date window_end{};
    std::vector<std::string> universe;  // ordered
    std::map<std::string, int> index;
    std::vector<std::map<int, int>> counts;      // counts[i][j] = a_ij
    std::vector<std::map<int, double>> weights;  // weights[i][j] = omega_ij
    NetTag tag = NetTag::Full;
    int skipped_out_of_universe = 0;

    int size() const { return static_cast<int>(universe.size()); }
    int count(int i, int j) const;
    double weight(int i, int j) const;
    double row_sum(int i) const;
};

NewsNetwork build_network(const std::vector<Linkage>& linkages, Date window_start,
                          Date window_end, const std::vector<std::string>& universe);

// Per-firm mean market value and mean turnover over the trading days of a
// window; firms without any data are absent.
struct WindowCharacteristics {
    std::map<std::string, double> mean_mv;
    std::map<std::string, double> mean_turnover;
};

WindowCharacteristics window_characteristics(const PricePanel& prices,
                                             const TradingCalendar& calendar, Date window_start,
                                             Date window_end,
                                             const std::vector<std::string>& universe);

// Nearest-rank (type-1) quantile of the given values.
double quantile_nearest_rank(std::vector<double> values, double p);

NewsNetwork decompose(const NewsNetwork& full, NetTag filter, const FirmMaster& firms,
                      const WindowCharacteristics& chars, double quantile_low = 0.3,
                      double quantile_high = 0.7);

enum class DegreeMode { Total, Lead, Follower };

// degree[i]: follower mode counts non-zero entries of row i, lead mode counts
// non-zero entries of column i, total is their sum.
std::vector<int> degree(const NewsNetwork& network, DegreeMode mode);

struct PowerLawFit {
    double gamma = 0;
    double c_log = 0;
    double r2 = 0;
    int support = 0;
};

//  OLS of log(frequency) on log(degree) over degrees >= 1 with frequency >= 1.
PowerLawFit fit_power_law(const std::vector<int>& degrees);

struct DensityCurve {
    std::vector<double> x;
    std::vector<double> y;
};

// Epanechnikov kernel density on an evenly spaced grid spanning the data
// extended by one bandwidth on each side.
DensityCurve degree_density(const std::vector<int>& degrees, double bandwidth,
                            int grid_points = 513);

void save_network(const std::string& path, const NewsNetwork& network);

}  // namespace newsnet
