#pragma once

#include <optional>
#include <string>

namespace newsnet {

// Flat key=value configuration with [section] headers. Every default is
// explicit when the file is written back; unknown keys are rejected on load.
struct RunConfig {
    // [data]
    std::string articles = "articles.jsonl";
    std::string firms = "firms.csv";
    std::string membership = "membership.csv";
    std::string prices = "prices.csv";
    std::string factors = "factors.csv";
    std::string exceptions;  // empty -> built-in starter lists

    // [network]
    int net_window_days = 365;
    int degree_window_days = 30;
    int degree_window_extra_1 = 7;   // robustness offsets
    int degree_window_extra_2 = 14;
    double quantile_low = 0.3;
    double quantile_high = 0.7;

    // [portfolio]
    int k = 5;
    std::string weighting = "equal";
    bool drop_zero = false;
    double annualization_daily = 252;
    double annualization_monthly = 12;

    // [regression]
    std::string nw_lags = "auto";  // "auto" or an integer
    bool winsorize = false;

    // [report]
    int bootstrap_samples = 1000;
    unsigned long long bootstrap_seed = 42;

    std::optional<int> nw_lags_value() const;  // nullopt when "auto"
};

RunConfig load_run_config(const std::string& path);
void save_run_config(const std::string& path, const RunConfig& config);

}  // namespace newsnet
