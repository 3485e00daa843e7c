#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "newsnet/corpus.hpp"

namespace newsnet {

enum class CovTag { Iid, TwoWayCluster, NeweyWest };
std::string_view cov_tag_name(CovTag tag);

struct RegressionResult {
    Eigen::VectorXd beta;
    Eigen::VectorXd se;
    Eigen::VectorXd tstat;
    Eigen::VectorXd residuals;
    double r2 = 0;
    int nobs = 0;
    CovTag cov_tag = CovTag::Iid;
    int nw_lags = 0;
    std::vector<std::string> names;
};

// Least squares with iid standard errors and centered R^2; throws on rank
// deficiency naming the dependent column.
RegressionResult ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                     std::vector<std::string> names = {});

enum class FactorModel { FF3, FF5 };

struct FactorLoadings {
    double intercept = 0;
    double mkt = 0, smb = 0, hml = 0, rmw = 0, cma = 0;
};

struct FfResult {
    std::map<std::string, std::map<Date, double>> residuals;
    std::map<std::string, FactorLoadings> loadings;
    std::vector<std::string> skipped;  // too few observations
};

// Per-firm full-sample OLS of excess return on the factor set.
FfResult ff_residuals(const ReturnPanel& returns, const FactorSeries& factors, FactorModel model);

using Panel = std::map<std::string, std::map<Date, double>>;

struct PanelData {
    Eigen::VectorXd y;
    Eigen::MatrixXd X;
    std::vector<int> entity_ids;
    std::vector<int> time_ids;
    std::vector<std::string> names;
    int dropped_entities = 0;  // fewer than 2 aligned observations
};

// Aligns y_{i,t+h} with regressors and controls at (i,t) over the panel
// intersection; entities with fewer than two rows are dropped.
PanelData align_panel(const Panel& y, const std::vector<std::pair<std::string, const Panel*>>& x,
                      const std::vector<std::pair<std::string, const Panel*>>& controls, int h,
                      const TradingCalendar& calendar);

// Entity fixed effects by within-demeaning, pooled OLS, two-way clustered
// covariance with a G/(G-1) adjustment per clustering dimension.
RegressionResult panel_regress(const PanelData& data);

Eigen::MatrixXd clustered_cov(const Eigen::MatrixXd& X, const Eigen::VectorXd& residuals,
                              const std::vector<int>& entity_ids,
                              const std::vector<int>& time_ids);

// Bartlett-weight HAC sandwich; lags = 0 reduces to the White estimator.
Eigen::MatrixXd newey_west_cov(const Eigen::MatrixXd& X, const Eigen::VectorXd& residuals,
                               int lags);

int newey_west_default_lags(int nobs);

// beta * sigma_x expressed in basis points.
double effect_bps(double beta, double sigma_x);

}  // namespace newsnet
