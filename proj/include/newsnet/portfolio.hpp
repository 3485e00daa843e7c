#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "newsnet/econ.hpp"

namespace newsnet {

enum class Weighting { Equal, Value };
std::string_view weighting_name(Weighting w);

struct SortSpec {
    int k = 5;
    Weighting weighting = Weighting::Equal;
    bool drop_zero_signal = false;
};

// One formation period: the signal known at formation, the simple return over
// the holding period, and the characteristics snapshot used for reporting and
// value weighting. Only firms present in `signal` and `ret` are eligible.
struct FormationPeriod {
    Date label{};
    std::map<std::string, double> signal;
    std::map<std::string, double> ret;       // simple returns
    std::map<std::string, double> control;   // second key for double sorts
    std::map<std::string, double> mv;
    std::map<std::string, double> bm;
    std::map<std::string, double> turnover;
};

struct SortOutput {
    std::vector<Date> periods;
    std::vector<std::vector<double>> bucket_returns;           // [period][rank]
    std::vector<double> long_short;                            // rank K minus rank 1
    std::vector<double> market;                                // equal-weighted universe
    std::vector<std::vector<std::vector<std::string>>> members;  // [period][rank][...]
    int skipped_periods = 0;
    int skipped_subbuckets = 0;  // double sort only
};

// Near-equal ascending buckets; the remainder goes to the lowest ranks.
std::vector<int> bucket_sizes(int n, int k);

SortOutput sort_portfolios(const std::vector<FormationPeriod>& periods, const SortSpec& spec);

// First sort on `control` into K buckets, then on `signal` within each; final
// rank k pools the k-th sub-buckets across control buckets.
SortOutput double_sort(const std::vector<FormationPeriod>& periods, const SortSpec& spec);

struct PerformanceRow {
    double mean = 0;    // bps/day (daily) or %/period (monthly)
    double sharpe = 0;  // annualized, excess of rf
    double pct_mv = 0;
    double bm = 0;
    double liquidity = 0;
    double alpha_ff3 = 0, t_ff3 = 0, r2_ff3 = 0;
    double alpha_ff5 = 0, t_ff5 = 0, r2_ff5 = 0;
};

enum class Frequency { Daily, Monthly };

// Factor rows must align one-to-one with the return series.
PerformanceRow performance(const std::vector<double>& returns,
                           const std::vector<FactorRow>& factors, Frequency freq,
                           std::optional<int> nw_lags = std::nullopt,
                           std::optional<double> periods_per_year = std::nullopt);

std::vector<double> cumulative(const std::vector<double>& returns);

// Calendar-month compounding of daily simple returns.
std::map<YearMonth, double> compound_monthly(const std::map<Date, double>& daily_simple);

// Average over periods of the bucket's MV share / B/M / turnover, in percent.
struct CharacteristicAverages {
    double pct_mv = 0, bm = 0, liquidity = 0;
};
CharacteristicAverages bucket_characteristics(const std::vector<FormationPeriod>& periods,
                                              const SortOutput& sorted, int rank);

}  // namespace newsnet
