#include "newsnet/config.hpp"

#include <fstream>
#include <stdexcept>

namespace newsnet {

std::optional<int> RunConfig::nw_lags_value() const {
    if (nw_lags == "auto") return std::nullopt;
    return std::stoi(nw_lags);
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v, const std::string& ctx) {
    if (v == "true" || v == "on" || v == "yes") return true;
    if (v == "false" || v == "off" || v == "no") return false;
    throw std::runtime_error(ctx + ": expected a boolean, got '" + v + "'");
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file '" + path + "'");
    RunConfig c;
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string v = trim(line);
        if (v.empty()) continue;
        std::string ctx = path + ": line " + std::to_string(lineno);
        if (v.front() == '[') {
            if (v.back() != ']') throw std::runtime_error(ctx + ": malformed section header");
            section = v.substr(1, v.size() - 2);
            if (section != "data" && section != "network" && section != "portfolio" &&
                section != "regression" && section != "report")
                throw std::runtime_error(ctx + ": unknown section [" + section + "]");
            continue;
        }
        auto eq = v.find('=');
        if (eq == std::string::npos) throw std::runtime_error(ctx + ": expected key=value");
        std::string key = trim(v.substr(0, eq));
        std::string value = trim(v.substr(eq + 1));
        std::string qualified = section + "." + key;
        if (qualified == "data.articles") c.articles = value;
        else if (qualified == "data.firms") c.firms = value;
        else if (qualified == "data.membership") c.membership = value;
        else if (qualified == "data.prices") c.prices = value;
        else if (qualified == "data.factors") c.factors = value;
        else if (qualified == "data.exceptions") c.exceptions = value;
        else if (qualified == "network.net_window_days") c.net_window_days = std::stoi(value);
        else if (qualified == "network.degree_window_days") c.degree_window_days = std::stoi(value);
        else if (qualified == "network.degree_window_extra_1")
            c.degree_window_extra_1 = std::stoi(value);
        else if (qualified == "network.degree_window_extra_2")
            c.degree_window_extra_2 = std::stoi(value);
        else if (qualified == "network.quantile_low") c.quantile_low = std::stod(value);
        else if (qualified == "network.quantile_high") c.quantile_high = std::stod(value);
        else if (qualified == "portfolio.k") c.k = std::stoi(value);
        else if (qualified == "portfolio.weighting") c.weighting = value;
        else if (qualified == "portfolio.drop_zero") c.drop_zero = parse_bool(value, ctx);
        else if (qualified == "portfolio.annualization_daily")
            c.annualization_daily = std::stod(value);
        else if (qualified == "portfolio.annualization_monthly")
            c.annualization_monthly = std::stod(value);
        else if (qualified == "regression.nw_lags") c.nw_lags = value;
        else if (qualified == "regression.winsorize") c.winsorize = parse_bool(value, ctx);
        else if (qualified == "report.bootstrap_samples") c.bootstrap_samples = std::stoi(value);
        else if (qualified == "report.bootstrap_seed") c.bootstrap_seed = std::stoull(value);
        else throw std::runtime_error(ctx + ": unknown key '" + key + "'");
    }
    if (c.k < 2) throw std::runtime_error(path + ": portfolio.k must be >= 2");
    if (c.weighting != "equal" && c.weighting != "value")
        throw std::runtime_error(path + ": portfolio.weighting must be equal or value");
    if (c.nw_lags != "auto") c.nw_lags_value();  // validates the integer
    return c;
}

void save_run_config(const std::string& path, const RunConfig& c) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open file '" + path + "' for writing");
    out << "[data]\n";
    out << "articles = " << c.articles << "\n";
    out << "firms = " << c.firms << "\n";
    out << "membership = " << c.membership << "\n";
    out << "prices = " << c.prices << "\n";
    out << "factors = " << c.factors << "\n";
    out << "exceptions = " << c.exceptions << "\n";
    out << "\n[network]\n";
    out << "net_window_days = " << c.net_window_days << "\n";
    out << "degree_window_days = " << c.degree_window_days << "\n";
    out << "degree_window_extra_1 = " << c.degree_window_extra_1 << "\n";
    out << "degree_window_extra_2 = " << c.degree_window_extra_2 << "\n";
    out << "quantile_low = " << c.quantile_low << "\n";
    out << "quantile_high = " << c.quantile_high << "\n";
    out << "\n[portfolio]\n";
    out << "k = " << c.k << "\n";
    out << "weighting = " << c.weighting << "\n";
    out << "drop_zero = " << (c.drop_zero ? "true" : "false") << "\n";
    out << "annualization_daily = " << c.annualization_daily << "\n";
    out << "annualization_monthly = " << c.annualization_monthly << "\n";
    out << "\n[regression]\n";
    out << "nw_lags = " << c.nw_lags << "\n";
    out << "winsorize = " << (c.winsorize ? "true" : "false") << "\n";
    out << "\n[report]\n";
    out << "bootstrap_samples = " << c.bootstrap_samples << "\n";
    out << "bootstrap_seed = " << c.bootstrap_seed << "\n";
}

}  // namespace newsnet
