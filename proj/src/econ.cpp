#include "newsnet/econ.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace newsnet {

std::string_view cov_tag_name(CovTag tag) {
    switch (tag) {
        case CovTag::Iid: return "iid";
        case CovTag::TwoWayCluster: return "two-way-cluster";
        case CovTag::NeweyWest: return "newey-west";
    }
    return "?";
}

namespace {

// Throws when X is rank deficient, naming the offending column.
void check_rank(const Eigen::MatrixXd& X, const std::vector<std::string>& names) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(1e-10);
    if (qr.rank() == X.cols()) return;
    // the first pivot beyond the rank points at a dependent column
    int idx = qr.colsPermutation().indices()(qr.rank());
    std::string name = idx < static_cast<int>(names.size()) ? names[idx]
                                                            : "column " + std::to_string(idx);
    throw std::runtime_error("rank-deficient design: dependent regressor '" + name + "'");
}

Eigen::VectorXd solve_ls(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                         const std::vector<std::string>& names) {
    if (X.rows() != y.size()) throw std::runtime_error("ols: X and y row mismatch");
    if (X.rows() < X.cols() + 1)
        throw std::runtime_error("ols: need more observations than regressors");
    check_rank(X, names);
    return X.householderQr().solve(y);
}

double centered_r2(const Eigen::VectorXd& y, const Eigen::VectorXd& residuals) {
    double mean = y.mean();
    double ss_tot = (y.array() - mean).square().sum();
    double ss_res = residuals.squaredNorm();
    return ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
}

}  // namespace

RegressionResult ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                     std::vector<std::string> names) {
    RegressionResult res;
    res.beta = solve_ls(X, y, names);
    res.residuals = y - X * res.beta;
    res.nobs = static_cast<int>(X.rows());
    res.r2 = centered_r2(y, res.residuals);
    double sigma2 = res.residuals.squaredNorm() / (X.rows() - X.cols());
    Eigen::MatrixXd xtx_inv = (X.transpose() * X).inverse();
    res.se = (sigma2 * xtx_inv.diagonal()).array().sqrt();
    res.tstat = res.beta.array() / res.se.array();
    res.cov_tag = CovTag::Iid;
    res.names = std::move(names);
    return res;
}

FfResult ff_residuals(const ReturnPanel& returns, const FactorSeries& factors,
                      FactorModel model) {
    const int k = model == FactorModel::FF3 ? 3 : 5;
    FfResult out;
    for (const auto& [ticker, series] : returns.by_ticker) {
        std::vector<Date> dates;
        for (const auto& [d, r] : series)
            if (factors.rows.count(d)) dates.push_back(d);
        if (static_cast<int>(dates.size()) < k + 2) {
            out.skipped.push_back(ticker);
            continue;
        }
        Eigen::MatrixXd X(dates.size(), k + 1);
        Eigen::VectorXd y(dates.size());
        for (std::size_t i = 0; i < dates.size(); ++i) {
            const FactorRow& f = factors.rows.at(dates[i]);
            y(i) = series.at(dates[i]) - f.rf;
            X(i, 0) = 1.0;
            X(i, 1) = f.mkt_rf;
            X(i, 2) = f.smb;
            X(i, 3) = f.hml;
            if (k == 5) {
                X(i, 4) = f.rmw;
                X(i, 5) = f.cma;
            }
        }
        Eigen::VectorXd beta = solve_ls(X, y, {"intercept", "mkt_rf", "smb", "hml", "rmw", "cma"});
        Eigen::VectorXd resid = y - X * beta;
        FactorLoadings ld;
        ld.intercept = beta(0);
        ld.mkt = beta(1);
        ld.smb = beta(2);
        ld.hml = beta(3);
        if (k == 5) {
            ld.rmw = beta(4);
            ld.cma = beta(5);
        }
        out.loadings[ticker] = ld;
        auto& rmap = out.residuals[ticker];
        for (std::size_t i = 0; i < dates.size(); ++i) rmap[dates[i]] = resid(i);
    }
    return out;
}

PanelData align_panel(const Panel& y, const std::vector<std::pair<std::string, const Panel*>>& x,
                      const std::vector<std::pair<std::string, const Panel*>>& controls, int h,
                      const TradingCalendar& calendar) {
    if (h < 0) throw std::runtime_error("align_panel: horizon must be >= 0");
    struct Row {
        int entity, time;
        double y;
        std::vector<double> x;
    };
    std::vector<Row> rows;
    std::vector<std::string> names;
    for (const auto& [name, panel] : x) names.push_back(name);
    for (const auto& [name, panel] : controls) names.push_back(name);

    std::map<std::string, int> entity_of;
    std::map<Date, int> time_of;
    for (Date d : calendar.dates()) time_of[d] = static_cast<int>(time_of.size());

    for (const auto& [ticker, y_series] : y) {
        std::vector<Row> entity_rows;
        const std::map<Date, double>* formation_dates = &y_series;
        if (!x.empty()) {
            auto pit = x.front().second->find(ticker);
            if (pit == x.front().second->end()) continue;
            formation_dates = &pit->second;
        }
        for (const auto& [t, _] : *formation_dates) {
            // response is at t + h trading days
            Date response_date = t;
            bool ok = true;
            for (int step = 0; step < h && ok; ++step) {
                auto nd = calendar.next(response_date);
                if (!nd) ok = false;
                else response_date = *nd;
            }
            if (!ok) continue;
            auto yt = y_series.find(response_date);
            if (yt == y_series.end()) continue;
            Row row;
            row.y = yt->second;
            for (const auto& [name, panel] : x) {
                auto pit = panel->find(ticker);
                if (pit == panel->end()) { ok = false; break; }
                auto vit = pit->second.find(t);
                if (vit == pit->second.end()) { ok = false; break; }
                row.x.push_back(vit->second);
            }
            if (!ok) continue;
            for (const auto& [name, panel] : controls) {
                auto pit = panel->find(ticker);
                if (pit == panel->end()) { ok = false; break; }
                auto vit = pit->second.find(t);
                if (vit == pit->second.end()) { ok = false; break; }
                row.x.push_back(vit->second);
            }
            if (!ok) continue;
            if (!time_of.count(t)) continue;
            row.time = time_of[t];
            entity_rows.push_back(std::move(row));
        }
        if (entity_rows.size() < 2) {
            // a single observation is absorbed entirely by its fixed effect
            continue;
        }
        int eid = static_cast<int>(entity_of.size());
        entity_of[ticker] = eid;
        for (Row& r : entity_rows) {
            r.entity = eid;
            rows.push_back(std::move(r));
        }
    }

    PanelData data;
    data.names = std::move(names);
    data.dropped_entities = static_cast<int>(y.size() - entity_of.size());
    if (rows.empty()) throw std::runtime_error("align_panel: empty aligned panel");
    data.y.resize(rows.size());
    data.X.resize(rows.size(), data.names.size());
    data.entity_ids.resize(rows.size());
    data.time_ids.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        data.y(i) = rows[i].y;
        for (std::size_t c = 0; c < rows[i].x.size(); ++c) data.X(i, c) = rows[i].x[c];
        data.entity_ids[i] = rows[i].entity;
        data.time_ids[i] = rows[i].time;
    }
    return data;
}

RegressionResult panel_regress(const PanelData& data) {
    const auto n = data.y.size();
    if (n == 0) throw std::runtime_error("panel_regress: empty panel");
    int n_entities = *std::max_element(data.entity_ids.begin(), data.entity_ids.end()) + 1;

    // within transformation
    Eigen::VectorXd y = data.y;
    Eigen::MatrixXd X = data.X;
    Eigen::VectorXd count = Eigen::VectorXd::Zero(n_entities);
    Eigen::VectorXd y_mean = Eigen::VectorXd::Zero(n_entities);
    Eigen::MatrixXd x_mean = Eigen::MatrixXd::Zero(n_entities, X.cols());
    for (Eigen::Index i = 0; i < n; ++i) {
        int e = data.entity_ids[i];
        count(e) += 1;
        y_mean(e) += y(i);
        x_mean.row(e) += X.row(i);
    }
    for (int e = 0; e < n_entities; ++e) {
        y_mean(e) /= count(e);
        x_mean.row(e) /= count(e);
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        int e = data.entity_ids[i];
        y(i) -= y_mean(e);
        X.row(i) -= x_mean.row(e);
    }

    check_rank(X, data.names);
    RegressionResult res;
    res.beta = X.householderQr().solve(y);
    res.residuals = y - X * res.beta;
    res.nobs = static_cast<int>(n);
    res.r2 = centered_r2(y, res.residuals);
    Eigen::MatrixXd V = clustered_cov(X, res.residuals, data.entity_ids, data.time_ids);
    res.se = V.diagonal().array().sqrt();
    res.tstat = res.beta.array() / res.se.array();
    res.cov_tag = CovTag::TwoWayCluster;
    res.names = data.names;
    return res;
}

namespace {

Eigen::MatrixXd cluster_meat(const Eigen::MatrixXd& X, const Eigen::VectorXd& u,
                             const std::vector<long long>& keys) {
    std::map<long long, Eigen::VectorXd> sums;
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        auto [it, inserted] = sums.try_emplace(keys[i], Eigen::VectorXd::Zero(X.cols()));
        it->second += X.row(i).transpose() * u(i);
    }
    Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(X.cols(), X.cols());
    for (const auto& [key, s] : sums) meat += s * s.transpose();
    double g = static_cast<double>(sums.size());
    if (g < 2) throw std::runtime_error("degenerate clustering: fewer than 2 clusters");
    return meat * (g / (g - 1.0));
}

}  // namespace

Eigen::MatrixXd clustered_cov(const Eigen::MatrixXd& X, const Eigen::VectorXd& residuals,
                              const std::vector<int>& entity_ids,
                              const std::vector<int>& time_ids) {
    if (X.rows() != residuals.size() ||
        X.rows() != static_cast<Eigen::Index>(entity_ids.size()) ||
        X.rows() != static_cast<Eigen::Index>(time_ids.size()))
        throw std::runtime_error("clustered_cov: misaligned inputs");
    std::vector<long long> by_entity(entity_ids.begin(), entity_ids.end());
    std::vector<long long> by_time(time_ids.begin(), time_ids.end());
    std::vector<long long> by_cell(entity_ids.size());
    for (std::size_t i = 0; i < by_cell.size(); ++i)
        by_cell[i] = (static_cast<long long>(entity_ids[i]) << 32) |
                     static_cast<unsigned int>(time_ids[i]);
    Eigen::MatrixXd bread = (X.transpose() * X).inverse();
    Eigen::MatrixXd meat = cluster_meat(X, residuals, by_entity) +
                           cluster_meat(X, residuals, by_time) -
                           cluster_meat(X, residuals, by_cell);
    return bread * meat * bread;
}

Eigen::MatrixXd newey_west_cov(const Eigen::MatrixXd& X, const Eigen::VectorXd& residuals,
                               int lags) {
    const auto T = X.rows();
    if (T != residuals.size()) throw std::runtime_error("newey_west_cov: misaligned inputs");
    if (lags < 0) throw std::runtime_error("newey_west_cov: negative lag");
    if (lags >= T) throw std::runtime_error("newey_west_cov: lags must be < nobs");
    const auto k = X.cols();
    Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index t = 0; t < T; ++t) {
        Eigen::VectorXd xt = X.row(t).transpose() * residuals(t);
        meat += xt * xt.transpose();
    }
    for (int l = 1; l <= lags; ++l) {
        double w = 1.0 - static_cast<double>(l) / (lags + 1);
        Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(k, k);
        for (Eigen::Index t = l; t < T; ++t) {
            gamma += (X.row(t).transpose() * residuals(t)) *
                     (X.row(t - l) * residuals(t - l));
        }
        meat += w * (gamma + gamma.transpose());
    }
    Eigen::MatrixXd bread = (X.transpose() * X).inverse();
    return bread * meat * bread;
}

int newey_west_default_lags(int nobs) {
    if (nobs <= 0) return 0;
    return static_cast<int>(std::floor(4.0 * std::pow(nobs / 100.0, 2.0 / 9.0)));
}

double effect_bps(double beta, double sigma_x) { return beta * sigma_x * 1e4; }

}  // namespace newsnet
