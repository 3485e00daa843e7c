#include "newsnet/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace newsnet {

std::string_view weighting_name(Weighting w) {
    return w == Weighting::Equal ? "equal" : "value";
}

std::vector<int> bucket_sizes(int n, int k) {
    std::vector<int> sizes(k, n / k);
    for (int i = 0; i < n % k; ++i) ++sizes[i];
    return sizes;
}

namespace {

// Eligible tickers sorted ascending by value, ties broken by ticker.
std::vector<std::string> ranked_tickers(const FormationPeriod& p,
                                        const std::map<std::string, double>& key,
                                        const SortSpec& spec) {
    std::vector<std::pair<double, std::string>> items;
    for (const auto& [ticker, v] : key) {
        if (!p.ret.count(ticker)) continue;
        if (spec.drop_zero_signal && v == 0) continue;
        items.emplace_back(v, ticker);
    }
    std::sort(items.begin(), items.end());
    std::vector<std::string> out;
    out.reserve(items.size());
    for (auto& [v, t] : items) out.push_back(std::move(t));
    return out;
}

double weighted_return(const FormationPeriod& p, const std::vector<std::string>& members,
                       Weighting weighting) {
    double num = 0, den = 0;
    for (const std::string& t : members) {
        double w = 1.0;
        if (weighting == Weighting::Value) {
            auto it = p.mv.find(t);
            w = it != p.mv.end() ? it->second : 0.0;
        }
        num += w * p.ret.at(t);
        den += w;
    }
    return den > 0 ? num / den : 0.0;
}

double market_return(const FormationPeriod& p) {
    double sum = 0;
    int n = 0;
    for (const auto& [t, r] : p.ret) {
        sum += r;
        ++n;
    }
    return n > 0 ? sum / n : 0.0;
}

}  // namespace

SortOutput sort_portfolios(const std::vector<FormationPeriod>& periods, const SortSpec& spec) {
    if (spec.k < 2) throw std::runtime_error("sort_portfolios: need k >= 2");
    SortOutput out;
    for (const FormationPeriod& p : periods) {
        std::vector<std::string> ranked = ranked_tickers(p, p.signal, spec);
        if (static_cast<int>(ranked.size()) < spec.k) {
            ++out.skipped_periods;
            continue;
        }
        std::vector<int> sizes = bucket_sizes(static_cast<int>(ranked.size()), spec.k);
        std::vector<std::vector<std::string>> buckets(spec.k);
        std::size_t pos = 0;
        for (int b = 0; b < spec.k; ++b)
            for (int s = 0; s < sizes[b]; ++s) buckets[b].push_back(ranked[pos++]);
        std::vector<double> rets(spec.k);
        for (int b = 0; b < spec.k; ++b) rets[b] = weighted_return(p, buckets[b], spec.weighting);
        out.periods.push_back(p.label);
        out.long_short.push_back(rets[spec.k - 1] - rets[0]);
        out.market.push_back(market_return(p));
        out.bucket_returns.push_back(std::move(rets));
        out.members.push_back(std::move(buckets));
    }
    return out;
}

SortOutput double_sort(const std::vector<FormationPeriod>& periods, const SortSpec& spec) {
    if (spec.k < 2) throw std::runtime_error("double_sort: need k >= 2");
    SortOutput out;
    SortSpec control_spec = spec;
    control_spec.drop_zero_signal = false;  // zero filtering applies to the signal only
    for (const FormationPeriod& p : periods) {
        std::vector<std::string> by_control = ranked_tickers(p, p.control, control_spec);
        // only firms that also carry the signal participate
        by_control.erase(std::remove_if(by_control.begin(), by_control.end(),
                                        [&](const std::string& t) {
                                            auto it = p.signal.find(t);
                                            if (it == p.signal.end()) return true;
                                            return spec.drop_zero_signal && it->second == 0;
                                        }),
                         by_control.end());
        if (static_cast<int>(by_control.size()) < spec.k) {
            ++out.skipped_periods;
            continue;
        }
        std::vector<int> control_sizes = bucket_sizes(static_cast<int>(by_control.size()), spec.k);
        std::vector<std::vector<std::string>> final_buckets(spec.k);
        std::size_t pos = 0;
        for (int cb = 0; cb < spec.k; ++cb) {
            std::vector<std::pair<double, std::string>> inner;
            for (int s = 0; s < control_sizes[cb]; ++s) {
                const std::string& t = by_control[pos++];
                inner.emplace_back(p.signal.at(t), t);
            }
            std::sort(inner.begin(), inner.end());
            std::vector<int> sub_sizes = bucket_sizes(static_cast<int>(inner.size()), spec.k);
            std::size_t ipos = 0;
            for (int sb = 0; sb < spec.k; ++sb) {
                if (sub_sizes[sb] == 0) {
                    ++out.skipped_subbuckets;
                    continue;
                }
                for (int s = 0; s < sub_sizes[sb]; ++s)
                    final_buckets[sb].push_back(inner[ipos++].second);
            }
        }
        std::vector<double> rets(spec.k);
        for (int b = 0; b < spec.k; ++b) {
            if (final_buckets[b].empty()) {
                ++out.skipped_subbuckets;
                rets[b] = 0;
            } else {
                rets[b] = weighted_return(p, final_buckets[b], spec.weighting);
            }
        }
        out.periods.push_back(p.label);
        out.long_short.push_back(rets[spec.k - 1] - rets[0]);
        out.market.push_back(market_return(p));
        out.bucket_returns.push_back(std::move(rets));
        out.members.push_back(std::move(final_buckets));
    }
    return out;
}

PerformanceRow performance(const std::vector<double>& returns,
                           const std::vector<FactorRow>& factors, Frequency freq,
                           std::optional<int> nw_lags, std::optional<double> periods_per_year) {
    if (returns.size() != factors.size())
        throw std::runtime_error("performance: returns and factors misaligned");
    const int T = static_cast<int>(returns.size());
    int lags = nw_lags.value_or(newey_west_default_lags(T));
    if (T < 2 * (lags + 1))
        throw std::runtime_error("performance: series too short for Newey-West lags");

    PerformanceRow row;
    double scale = freq == Frequency::Daily ? 1e4 : 1e2;  // bps/day or %/period
    double ppy = periods_per_year.value_or(freq == Frequency::Daily ? 252.0 : 12.0);
    double ann = std::sqrt(ppy);

    Eigen::VectorXd excess(T);
    for (int t = 0; t < T; ++t) excess(t) = returns[t] - factors[t].rf;
    double mean_raw = 0;
    for (double r : returns) mean_raw += r;
    mean_raw /= T;
    row.mean = mean_raw * scale;
    double mu = excess.mean();
    double sd = std::sqrt((excess.array() - mu).square().sum() / (T - 1));
    row.sharpe = sd > 0 ? mu / sd * ann : 0.0;

    auto alpha_fit = [&](int k, double& alpha, double& tstat, double& r2) {
        Eigen::MatrixXd X(T, k + 1);
        for (int t = 0; t < T; ++t) {
            X(t, 0) = 1.0;
            X(t, 1) = factors[t].mkt_rf;
            X(t, 2) = factors[t].smb;
            X(t, 3) = factors[t].hml;
            if (k == 5) {
                X(t, 4) = factors[t].rmw;
                X(t, 5) = factors[t].cma;
            }
        }
        Eigen::VectorXd beta = X.householderQr().solve(excess);
        Eigen::VectorXd resid = excess - X * beta;
        Eigen::MatrixXd V = newey_west_cov(X, resid, lags);
        alpha = beta(0) * scale;
        tstat = beta(0) / std::sqrt(V(0, 0));
        double ss_tot = (excess.array() - mu).square().sum();
        // a (numerically) constant series has nothing to explain
        bool degenerate = ss_tot <= 1e-15 * std::max(1.0, excess.squaredNorm());
        r2 = degenerate ? 0.0 : (1.0 - resid.squaredNorm() / ss_tot) * 100.0;
    };
    alpha_fit(3, row.alpha_ff3, row.t_ff3, row.r2_ff3);
    alpha_fit(5, row.alpha_ff5, row.t_ff5, row.r2_ff5);
    return row;
}

std::vector<double> cumulative(const std::vector<double>& returns) {
    std::vector<double> path(returns.size());
    double level = 1.0;
    for (std::size_t t = 0; t < returns.size(); ++t) {
        level *= 1.0 + returns[t];
        path[t] = level - 1.0;
    }
    return path;
}

std::map<YearMonth, double> compound_monthly(const std::map<Date, double>& daily_simple) {
    std::map<YearMonth, double> out;
    for (const auto& [d, r] : daily_simple) {
        auto [it, inserted] = out.try_emplace(year_month(d), 1.0);
        it->second *= 1.0 + r;
    }
    for (auto& [ym, v] : out) v -= 1.0;
    return out;
}

CharacteristicAverages bucket_characteristics(const std::vector<FormationPeriod>& periods,
                                              const SortOutput& sorted, int rank) {
    CharacteristicAverages avg;
    int n_periods = 0;
    std::size_t pi = 0;
    for (const FormationPeriod& p : periods) {
        if (pi >= sorted.periods.size()) break;
        if (p.label != sorted.periods[pi]) continue;  // this period was skipped
        const auto& members = sorted.members[pi][rank];
        ++pi;
        if (members.empty()) continue;
        double mv_bucket = 0, mv_total = 0, bm_sum = 0, to_sum = 0;
        int n = 0;
        for (const auto& [t, r] : p.ret) {
            auto it = p.mv.find(t);
            if (it != p.mv.end()) mv_total += it->second;
        }
        for (const std::string& t : members) {
            auto mv = p.mv.find(t);
            if (mv != p.mv.end()) mv_bucket += mv->second;
            auto bm = p.bm.find(t);
            if (bm != p.bm.end()) bm_sum += bm->second;
            auto to = p.turnover.find(t);
            if (to != p.turnover.end()) to_sum += to->second;
            ++n;
        }
        if (mv_total > 0) avg.pct_mv += mv_bucket / mv_total * 100.0;
        avg.bm += bm_sum / n * 100.0;
        avg.liquidity += to_sum / n * 100.0;
        ++n_periods;
    }
    if (n_periods > 0) {
        avg.pct_mv /= n_periods;
        avg.bm /= n_periods;
        avg.liquidity /= n_periods;
    }
    return avg;
}

}  // namespace newsnet
