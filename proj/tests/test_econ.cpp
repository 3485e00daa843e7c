#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "newsnet/econ.hpp"
#include "newsnet/synth.hpp"

using namespace newsnet;

TEST_CASE("ols: exact fit, orthogonality, hand-solved fixture") {
    Eigen::MatrixXd X(4, 1);
    X << 1, 2, 3, 4;
    Eigen::VectorXd y = 2.0 * X.col(0);
    RegressionResult exact = ols(X, y, {"x"});
    CHECK(exact.beta(0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(exact.r2 == doctest::Approx(1.0).epsilon(1e-12));

    // centered orthogonal regressor
    Eigen::MatrixXd Xc(4, 2);
    Xc << 1, -1, 1, 1, 1, -1, 1, 1;
    Eigen::VectorXd yc(4);
    yc << 1, 1, -1, -1;  // orthogonal to both columns
    RegressionResult orth = ols(Xc, yc, {"const", "x"});
    CHECK(std::abs(orth.beta(1)) < 1e-12);

    // 5-point fixture against the normal equations solved independently
    Eigen::MatrixXd Xf(5, 2);
    Xf << 1, 0.2, 1, 1.1, 1, 2.4, 1, 3.1, 1, 4.7;
    Eigen::VectorXd yf(5);
    yf << 0.5, 1.9, 4.3, 6.2, 9.0;
    RegressionResult res = ols(Xf, yf, {"const", "x"});
    Eigen::VectorXd beta_ne = (Xf.transpose() * Xf).ldlt().solve(Xf.transpose() * yf);
    CHECK(std::abs(res.beta(0) - beta_ne(0)) < 1e-10);
    CHECK(std::abs(res.beta(1) - beta_ne(1)) < 1e-10);
    // residuals orthogonal to the design
    Eigen::VectorXd xtu = Xf.transpose() * res.residuals;
    CHECK(xtu.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("ols: rank deficiency names the dependent column") {
    Eigen::MatrixXd X(5, 2);
    for (int i = 0; i < 5; ++i) {
        X(i, 0) = i + 1;
        X(i, 1) = 2.0 * (i + 1);  // exact duplicate direction
    }
    Eigen::VectorXd y = Eigen::VectorXd::Ones(5);
    CHECK_THROWS_WITH_AS(ols(X, y, {"x", "x_dup"}), doctest::Contains("x"),
                         std::runtime_error);
}

namespace {

FactorSeries synth_factors(int T, Rng& rng) {
    FactorSeries fs;
    Date d = parse_date("2018-01-01");
    for (int t = 0; t < T; ++t) {
        FactorRow f;
        f.mkt_rf = 0.01 * rng.normal();
        f.smb = 0.005 * rng.normal();
        f.hml = 0.005 * rng.normal();
        f.rmw = 0.004 * rng.normal();
        f.cma = 0.004 * rng.normal();
        f.rf = 1e-5;
        fs.rows[d] = f;
        d += std::chrono::days{1};
    }
    return fs;
}

}  // namespace

TEST_CASE("ff_residuals: exact factor model and orthogonality") {
    Rng rng(5);
    FactorSeries fs = synth_factors(60, rng);
    ReturnPanel returns;
    for (const auto& [d, f] : fs.rows) returns.by_ticker["PURE"][d] = f.rf + 1.0 * f.mkt_rf;
    FfResult ff = ff_residuals(returns, fs, FactorModel::FF3);
    CHECK(ff.loadings.at("PURE").mkt == doctest::Approx(1.0).epsilon(1e-10));
    for (const auto& [d, e] : ff.residuals.at("PURE")) CHECK(std::abs(e) < 1e-12);

    // residuals regressed back on the factors -> all coefficients ~ 0
    ReturnPanel noisy;
    int i = 0;
    for (const auto& [d, f] : fs.rows)
        noisy.by_ticker["N"][d] = f.rf + 0.8 * f.mkt_rf + 0.3 * f.smb + 0.001 * ((i++ % 7) - 3);
    FfResult ff2 = ff_residuals(noisy, fs, FactorModel::FF3);
    const auto& resid = ff2.residuals.at("N");
    Eigen::MatrixXd X(resid.size(), 4);
    Eigen::VectorXd y(resid.size());
    int row = 0;
    for (const auto& [d, e] : resid) {
        const FactorRow& f = fs.rows.at(d);
        X(row, 0) = 1;
        X(row, 1) = f.mkt_rf;
        X(row, 2) = f.smb;
        X(row, 3) = f.hml;
        y(row) = e;
        ++row;
    }
    Eigen::VectorXd b = (X.transpose() * X).ldlt().solve(X.transpose() * y);
    CHECK(b.cwiseAbs().maxCoeff() < 1e-10);
    // per-firm residual mean ~ 0 (intercept included)
    CHECK(std::abs(y.mean()) < 1e-12);
}

TEST_CASE("ff_residuals: planted loadings recovered within tolerance") {
    Rng rng(17);
    FactorSeries fs = synth_factors(500, rng);
    ReturnPanel returns;
    for (const auto& [d, f] : fs.rows)
        returns.by_ticker["PL"][d] =
            f.rf + 1.1 * f.mkt_rf + 0.4 * f.smb - 0.2 * f.hml + 1e-4 * rng.normal();
    FfResult ff = ff_residuals(returns, fs, FactorModel::FF3);
    const FactorLoadings& ld = ff.loadings.at("PL");
    CHECK(std::abs(ld.mkt - 1.1) < 0.01);
    CHECK(std::abs(ld.smb - 0.4) < 0.01);
    CHECK(std::abs(ld.hml - -0.2) < 0.01);

    // too few observations -> firm skipped with diagnostic
    ReturnPanel tiny;
    auto it = fs.rows.begin();
    for (int k = 0; k < 3; ++k, ++it) tiny.by_ticker["S"][it->first] = 0.001;
    FfResult skipped = ff_residuals(tiny, fs, FactorModel::FF3);
    CHECK(skipped.residuals.count("S") == 0);
    REQUIRE(skipped.skipped.size() == 1);
    CHECK(skipped.skipped[0] == "S");
}

namespace {

// planted fixed-effect DGP: y_it = alpha_i + beta x_it + eps
struct PlantedPanel {
    Panel y, x;
    TradingCalendar calendar;
};

PlantedPanel plant_panel(int N, int T, double beta, double noise, std::uint64_t seed) {
    Rng rng(seed);
    PlantedPanel out;
    std::vector<Date> dates;
    Date d = parse_date("2018-01-01");
    for (int t = 0; t < T; ++t) {
        dates.push_back(d);
        d += std::chrono::days{1};
    }
    out.calendar = TradingCalendar(dates);
    for (int i = 0; i < N; ++i) {
        std::string ticker = "E" + std::to_string(i);
        double alpha = rng.normal();
        for (int t = 0; t < T; ++t) {
            double x = rng.normal();
            out.x[ticker][dates[t]] = x;
            out.y[ticker][dates[t]] = alpha + beta * x + noise * rng.normal();
        }
    }
    return out;
}

}  // namespace

TEST_CASE("panel_regress recovers a planted coefficient under entity fixed effects") {
    PlantedPanel p = plant_panel(100, 500, 0.75, 1.0, 42);
    PanelData data = align_panel(p.y, {{"x", &p.x}}, {}, 0, p.calendar);
    RegressionResult res = panel_regress(data);
    CHECK(res.beta(0) > 0.70);
    CHECK(res.beta(0) < 0.80);
    CHECK(res.cov_tag == CovTag::TwoWayCluster);
    CHECK(res.nobs == 100 * 500);

    // fixed-effect absorption: shifting any firm's y by a constant changes nothing
    Panel shifted = p.y;
    double c = 5.0;
    for (auto& [ticker, series] : shifted) {
        for (auto& [d, v] : series) v += c;
        c += 3.0;
    }
    PanelData data2 = align_panel(shifted, {{"x", &p.x}}, {}, 0, p.calendar);
    RegressionResult res2 = panel_regress(data2);
    CHECK(std::abs(res2.beta(0) - res.beta(0)) < 1e-10);
}

TEST_CASE("panel_regress: duplicated regressor raises a rank error") {
    PlantedPanel p = plant_panel(10, 30, 0.5, 0.5, 7);
    PanelData data = align_panel(p.y, {{"x", &p.x}, {"x_dup", &p.x}}, {}, 0, p.calendar);
    CHECK_THROWS_WITH_AS(panel_regress(data), doctest::Contains("x_dup"), std::runtime_error);
}

TEST_CASE("align_panel: horizon shifts the response and drops thin entities") {
    PlantedPanel p = plant_panel(3, 10, 1.0, 0.0, 3);
    // keep a single observation for one entity: it must be dropped
    Panel y = p.y;
    Date first = p.calendar.dates().front();
    std::map<Date, double> single;
    single[first] = y["E0"][first];
    y["E0"] = single;
    PanelData data = align_panel(y, {{"x", &p.x}}, {}, 0, p.calendar);
    CHECK(data.dropped_entities == 1);

    // h = 1: response comes from the next trading day
    PanelData h1 = align_panel(p.y, {{"x", &p.x}}, {}, 1, p.calendar);
    CHECK(h1.y.size() == 3 * 9);  // last day has no successor
}

TEST_CASE("clustered covariance matches the explicit inclusion-exclusion sandwich") {
    // 4 entities x 3 periods balanced fixture, deterministic values
    const int N = 4, T = 3, n = N * T;
    Eigen::MatrixXd X(n, 2);
    Eigen::VectorXd u(n);
    std::vector<int> e(n), t(n);
    Rng rng(123);
    for (int i = 0; i < N; ++i) {
        for (int s = 0; s < T; ++s) {
            int row = i * T + s;
            X(row, 0) = 1.0;
            X(row, 1) = std::cos(row * 0.7) + 0.1 * i;
            u(row) = 0.3 * std::sin(row * 1.3) + 0.05 * s;
            e[row] = i;
            t[row] = s;
        }
    }
    Eigen::MatrixXd V = clustered_cov(X, u, e, t);

    // brute-force: three cluster sandwiches assembled by explicit summation
    auto sandwich = [&](auto key_of, int G) {
        std::map<long long, Eigen::VectorXd> sums;
        for (int row = 0; row < n; ++row) {
            long long key = key_of(row);
            if (!sums.count(key)) sums[key] = Eigen::VectorXd::Zero(2);
            sums[key] += X.row(row).transpose() * u(row);
        }
        Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(2, 2);
        for (auto& [k, s] : sums) meat += s * s.transpose();
        meat *= static_cast<double>(G) / (G - 1);
        Eigen::MatrixXd bread = (X.transpose() * X).inverse();
        return Eigen::MatrixXd(bread * meat * bread);
    };
    Eigen::MatrixXd expected =
        sandwich([&](int r) { return static_cast<long long>(e[r]); }, N) +
        sandwich([&](int r) { return static_cast<long long>(t[r]); }, T) -
        sandwich([&](int r) { return static_cast<long long>(e[r]) * 1000 + t[r]; }, n);
    CHECK((V - expected).cwiseAbs().maxCoeff() < 1e-8);
    // symmetric PSD up to tolerance
    CHECK((V - V.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(V);
    CHECK(es.eigenvalues().minCoeff() > -1e-10);
    (void)rng;
}

TEST_CASE("clustered covariance: degenerate clustering raises") {
    Eigen::MatrixXd X = Eigen::MatrixXd::Random(6, 1);
    Eigen::VectorXd u = Eigen::VectorXd::Random(6);
    std::vector<int> one(6, 0), many = {0, 1, 2, 3, 4, 5};
    CHECK_THROWS_WITH_AS(clustered_cov(X, u, one, many), doctest::Contains("degenerate"),
                         std::runtime_error);
}

TEST_CASE("clustered SEs stay within a sanity band of iid SEs under independence") {
    // balanced 10x10 panel with homoskedastic independent errors
    Rng rng(31);
    const int N = 10, T = 10, n = N * T;
    Eigen::MatrixXd X(n, 1);
    Eigen::VectorXd y(n);
    std::vector<int> e(n), t(n);
    for (int i = 0; i < N; ++i)
        for (int s = 0; s < T; ++s) {
            int row = i * T + s;
            X(row, 0) = rng.normal();
            y(row) = 0.5 * X(row, 0) + rng.normal();
            e[row] = i;
            t[row] = s;
        }
    Eigen::VectorXd beta = X.householderQr().solve(y);
    Eigen::VectorXd u = y - X * beta;
    double iid_se = std::sqrt(u.squaredNorm() / (n - 1) * (X.transpose() * X).inverse()(0, 0));
    double cl_se = std::sqrt(clustered_cov(X, u, e, t)(0, 0));
    CHECK(cl_se < 3.0 * iid_se);
    CHECK(cl_se > iid_se / 3.0);
}

TEST_CASE("Newey-West: lag zero equals White exactly") {
    Rng rng(8);
    const int T = 40;
    Eigen::MatrixXd X(T, 2);
    Eigen::VectorXd u(T);
    for (int i = 0; i < T; ++i) {
        X(i, 0) = 1;
        X(i, 1) = rng.normal();
        u(i) = rng.normal() * (1 + 0.5 * std::abs(X(i, 1)));
    }
    Eigen::MatrixXd nw0 = newey_west_cov(X, u, 0);
    // White: bread * sum (x u)(x u)' * bread
    Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(2, 2);
    for (int i = 0; i < T; ++i) {
        Eigen::VectorXd xu = X.row(i).transpose() * u(i);
        meat += xu * xu.transpose();
    }
    Eigen::MatrixXd bread = (X.transpose() * X).inverse();
    Eigen::MatrixXd white = bread * meat * bread;
    CHECK((nw0 - white).cwiseAbs().maxCoeff() == 0.0);  // exact reduction at L = 0
}

TEST_CASE("Newey-West matches the explicit Bartlett double sum on an AR(1) fixture") {
    Rng rng(21);
    const int T = 50, L = 4;
    Eigen::MatrixXd X(T, 2);
    Eigen::VectorXd u(T);
    double prev = 0;
    for (int i = 0; i < T; ++i) {
        X(i, 0) = 1;
        X(i, 1) = std::sin(0.3 * i);
        prev = 0.6 * prev + rng.normal();
        u(i) = prev;
    }
    Eigen::MatrixXd V = newey_west_cov(X, u, L);

    Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(2, 2);
    for (int s = 0; s < T; ++s)
        for (int q = 0; q < T; ++q) {
            int lag = std::abs(s - q);
            if (lag > L) continue;
            double w = 1.0 - static_cast<double>(lag) / (L + 1);
            meat += w * (X.row(s).transpose() * X.row(q)) * u(s) * u(q);
        }
    Eigen::MatrixXd bread = (X.transpose() * X).inverse();
    Eigen::MatrixXd expected = bread * meat * bread;
    CHECK((V - expected).cwiseAbs().maxCoeff() < 1e-10);

    CHECK_THROWS(newey_west_cov(X, u, T));
}

TEST_CASE("Newey-West on white noise stays near the iid estimator") {
    Rng rng(77);
    const int T = 2000;
    Eigen::MatrixXd X = Eigen::MatrixXd::Ones(T, 1);
    Eigen::VectorXd u(T);
    for (int i = 0; i < T; ++i) u(i) = rng.normal();
    u.array() -= u.mean();
    double nw_se = std::sqrt(newey_west_cov(X, u, newey_west_default_lags(T))(0, 0));
    double iid_se = std::sqrt(u.squaredNorm() / (T - 1) / T);
    CHECK(nw_se / iid_se > 0.8);
    CHECK(nw_se / iid_se < 1.2);
}

TEST_CASE("standardized effect arithmetic") {
    CHECK(effect_bps(0.752, 0.01497) == doctest::Approx(112.5744).epsilon(1e-12));
    CHECK(newey_west_default_lags(100) == 4);
    CHECK(newey_west_default_lags(50) == 3);  // floor(4 * 0.5^(2/9)) = floor(3.43)
}
