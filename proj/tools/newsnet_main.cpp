#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "newsnet/config.hpp"
#include "newsnet/corpus.hpp"
#include "newsnet/econ.hpp"
#include "newsnet/identify.hpp"
#include "newsnet/network.hpp"
#include "newsnet/portfolio.hpp"
#include "newsnet/report.hpp"
#include "newsnet/synth.hpp"
#include "newsnet/variables.hpp"

namespace fs = std::filesystem;
using namespace newsnet;

namespace {

struct DataBundle {
    FirmMaster firms;
    TradingCalendar calendar;
    PricePanel prices;
    FactorSeries factors;
    ReturnPanel returns;
};

DataBundle load_bundle(const std::string& firms_path, const std::string& membership_path,
                       const std::string& prices_path, const std::string& factors_path) {
    DataBundle b;
    b.firms = load_firm_master(firms_path, membership_path);
    b.prices = load_prices(prices_path, b.firms);
    std::vector<Date> dates;
    for (const auto& [ticker, series] : b.prices.by_ticker)
        for (const auto& [d, p] : series) dates.push_back(d);
    b.calendar = TradingCalendar(std::move(dates));
    if (b.calendar.empty()) throw std::runtime_error(prices_path + ": no price rows");
    b.factors = load_factors(factors_path, b.calendar);
    b.returns = compute_returns(b.prices, b.calendar);
    return b;
}

std::vector<Linkage> run_identify(const ArticleSet& articles, const FirmMaster& firms,
                                  const IdentConfig& config,
                                  std::map<std::string, int>* verdict_counts = nullptr) {
    std::vector<Linkage> linkages;
    std::map<YearMonth, NameSegmentMap> maps;
    for (const Article& a : articles.articles) {
        YearMonth ym = year_month(a.info_day);
        auto universe = firms.universe_at(ym);
        auto it = maps.find(ym);
        if (it == maps.end())
            it = maps.emplace(ym, build_name_segments(firms.member_firms(ym), config)).first;
        IdentResult result = extract_linkages(a, it->second, universe, config);
        if (verdict_counts) ++(*verdict_counts)[std::string(verdict_name(result.verdict))];
        for (Linkage& l : to_linkages(result)) linkages.push_back(std::move(l));
    }
    return linkages;
}

Panel log_mv_panel(const PricePanel& prices) {
    Panel out;
    for (const auto& [ticker, series] : prices.by_ticker)
        for (const auto& [d, p] : series)
            if (p.market_value() > 0) out[ticker][d] = std::log(p.market_value());
    return out;
}

Panel bm_panel(const PricePanel& prices) {
    Panel out;
    for (const auto& [ticker, series] : prices.by_ticker)
        for (const auto& [d, p] : series) out[ticker][d] = p.book_to_market();
    return out;
}

Panel turnover_panel(const PricePanel& prices) {
    Panel out;
    for (const auto& [ticker, series] : prices.by_ticker)
        for (const auto& [d, p] : series) out[ticker][d] = p.turnover();
    return out;
}

LrVariant parse_lr_variant(const std::string& name) {
    for (LrVariant v : kAllLrVariants)
        if (lr_variant_name(v) == name) return v;
    throw std::runtime_error("unknown lead-return variant '" + name + "'");
}

bool is_degree_signal(const std::string& name) { return name.rfind("degree_", 0) == 0; }

DegreeVariant parse_degree_variant(const std::string& name) {
    for (DegreeVariant v : kAllDegreeVariants)
        if (degree_variant_name(v) == name) return v;
    throw std::runtime_error("unknown degree variant '" + name + "'");
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : csv) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open file '" + path + "' for writing");
    out << text;
}

// --- portfolio machinery shared by backtest and report ---------------------

std::map<Date, double> simple_returns_of(const ReturnPanel& returns, const std::string& ticker) {
    std::map<Date, double> out;
    auto it = returns.by_ticker.find(ticker);
    if (it == returns.by_ticker.end()) return out;
    for (const auto& [d, r] : it->second) out[d] = std::exp(r) - 1.0;
    return out;
}

Panel control_panel_for(const std::string& name, const DataBundle& bundle) {
    if (name == "logmv") return log_mv_panel(bundle.prices);
    if (name == "bm") return bm_panel(bundle.prices);
    if (name == "turnover") return turnover_panel(bundle.prices);
    if (name == "lag_return") return bundle.returns.by_ticker;
    throw std::runtime_error("unknown control '" + name + "'");
}

// monthly control values at formation month-ends; momentum = that month's
// compounded simple return
std::map<std::string, std::map<YearMonth, double>> monthly_control(const std::string& name,
                                                                   const DataBundle& bundle) {
    std::map<std::string, std::map<YearMonth, double>> out;
    if (name == "momentum") {
        for (const auto& [ticker, series] : bundle.returns.by_ticker) {
            std::map<Date, double> simple;
            for (const auto& [d, r] : series) simple[d] = std::exp(r) - 1.0;
            for (const auto& [ym, r] : compound_monthly(simple)) out[ticker][ym] = r;
        }
        return out;
    }
    Panel daily = control_panel_for(name, bundle);
    for (const auto& [ticker, series] : daily)
        for (const auto& [d, v] : series) out[ticker][year_month(d)] = v;  // last wins
    return out;
}

struct BuiltPeriods {
    std::vector<FormationPeriod> periods;
    Frequency freq = Frequency::Daily;
    std::vector<FactorRow> factor_rows;  // aligned with periods
};

FactorRow compound_factor_rows(const std::vector<FactorRow>& rows) {
    FactorRow out;
    double mkt = 1, smb = 1, hml = 1, rmw = 1, cma = 1, rf = 1;
    for (const FactorRow& f : rows) {
        mkt *= 1 + f.mkt_rf;
        smb *= 1 + f.smb;
        hml *= 1 + f.hml;
        rmw *= 1 + f.rmw;
        cma *= 1 + f.cma;
        rf *= 1 + f.rf;
    }
    out.mkt_rf = mkt - 1;
    out.smb = smb - 1;
    out.hml = hml - 1;
    out.rmw = rmw - 1;
    out.cma = cma - 1;
    out.rf = rf - 1;
    return out;
}

// per-ticker holding returns: simple returns, or factor-model residuals
std::map<std::string, std::map<Date, double>> holding_return_series(const DataBundle& bundle,
                                                                    const std::string& mode) {
    if (mode == "simple") {
        std::map<std::string, std::map<Date, double>> out;
        for (const auto& [ticker, series] : bundle.returns.by_ticker)
            out[ticker] = simple_returns_of(bundle.returns, ticker);
        return out;
    }
    if (mode == "resid_ff3" || mode == "resid_ff5") {
        FfResult ff = ff_residuals(bundle.returns, bundle.factors,
                                   mode == "resid_ff3" ? FactorModel::FF3 : FactorModel::FF5);
        return ff.residuals;
    }
    throw std::runtime_error("unknown return mode '" + mode + "'");
}

// daily periods: signal at t sorts returns at t + horizon trading days
BuiltPeriods build_daily_periods(const DataBundle& bundle, const Panel& signal_panel, int horizon,
                                 const std::map<std::string, std::map<Date, double>>& holding,
                                 bool residual_mode) {
    BuiltPeriods built;
    built.freq = Frequency::Daily;
    for (Date t : bundle.calendar.dates()) {
        Date ret_date = t;
        bool ok = true;
        for (int step = 0; step < horizon && ok; ++step) {
            auto nd = bundle.calendar.next(ret_date);
            if (!nd) ok = false;
            else ret_date = *nd;
        }
        if (!ok || !bundle.factors.rows.count(ret_date)) continue;
        FormationPeriod p;
        p.label = ret_date;
        for (const auto& [ticker, series] : signal_panel) {
            auto sv = series.find(t);
            if (sv == series.end()) continue;
            auto rit = holding.find(ticker);
            if (rit == holding.end()) continue;
            auto rv = rit->second.find(ret_date);
            if (rv == rit->second.end()) continue;
            p.signal[ticker] = sv->second;
            p.ret[ticker] = rv->second;
            if (const PricePoint* pp = bundle.prices.find(ticker, t)) {
                p.mv[ticker] = pp->market_value();
                p.bm[ticker] = pp->book_to_market();
                p.turnover[ticker] = pp->turnover();
            }
        }
        if (p.ret.empty()) continue;
        FactorRow f = bundle.factors.rows.at(ret_date);
        if (residual_mode) f.rf = 0;  // residuals already exclude rf
        built.factor_rows.push_back(f);
        built.periods.push_back(std::move(p));
    }
    return built;
}

// monthly periods: signal from the formation month sorts the next month's
// compounded returns
BuiltPeriods build_monthly_periods(
    const DataBundle& bundle, const std::map<std::string, std::map<YearMonth, double>>& signal,
    const std::map<std::string, std::map<YearMonth, double>>& control, bool use_control,
    const std::map<std::string, std::map<Date, double>>& holding, bool residual_mode) {
    BuiltPeriods built;
    built.freq = Frequency::Monthly;

    std::map<std::string, std::map<YearMonth, double>> month_rets;
    for (const auto& [ticker, series] : holding) {
        if (residual_mode) {
            for (const auto& [d, v] : series) month_rets[ticker][year_month(d)] += v;
        } else {
            for (const auto& [ym, v] : compound_monthly(series)) month_rets[ticker][ym] = v;
        }
    }
    std::map<YearMonth, std::vector<FactorRow>> month_factors;
    for (const auto& [d, f] : bundle.factors.rows) month_factors[year_month(d)].push_back(f);

    std::vector<Date> month_ends = bundle.calendar.month_end_dates();
    for (std::size_t m = 0; m + 1 < month_ends.size(); ++m) {
        YearMonth form_month = year_month(month_ends[m]);
        YearMonth hold_month = year_month(month_ends[m + 1]);
        FormationPeriod p;
        p.label = month_ends[m + 1];
        for (const auto& [ticker, series] : signal) {
            auto sv = series.find(form_month);
            if (sv == series.end()) continue;
            auto rt = month_rets.find(ticker);
            if (rt == month_rets.end()) continue;
            auto rv = rt->second.find(hold_month);
            if (rv == rt->second.end()) continue;
            p.signal[ticker] = sv->second;
            p.ret[ticker] = rv->second;
            if (use_control) {
                auto ct = control.find(ticker);
                if (ct == control.end()) continue;
                auto cv = ct->second.find(form_month);
                if (cv == ct->second.end()) continue;
                p.control[ticker] = cv->second;
            }
            if (const PricePoint* pp = bundle.prices.find(ticker, month_ends[m])) {
                p.mv[ticker] = pp->market_value();
                p.bm[ticker] = pp->book_to_market();
                p.turnover[ticker] = pp->turnover();
            }
        }
        if (p.ret.empty()) continue;
        FactorRow f = compound_factor_rows(month_factors[hold_month]);
        if (residual_mode) f.rf = 0;
        built.factor_rows.push_back(f);
        built.periods.push_back(std::move(p));
    }
    return built;
}

struct SortEvaluation {
    SortOutput sorted;
    std::vector<FactorRow> factor_rows;  // aligned with surviving periods
    std::vector<PortfolioTableRow> rows;
};

SortEvaluation evaluate_portfolios(const BuiltPeriods& built, const SortSpec& spec,
                                   bool use_control, const RunConfig& run_config) {
    SortEvaluation ev;
    ev.sorted = use_control ? double_sort(built.periods, spec)
                            : sort_portfolios(built.periods, spec);
    if (ev.sorted.periods.empty()) throw std::runtime_error("no sortable periods");

    std::size_t pi = 0;
    for (std::size_t i = 0; i < built.periods.size() && pi < ev.sorted.periods.size(); ++i) {
        if (built.periods[i].label == ev.sorted.periods[pi]) {
            ev.factor_rows.push_back(built.factor_rows[i]);
            ++pi;
        }
    }

    double ppy = built.freq == Frequency::Daily ? run_config.annualization_daily
                                                : run_config.annualization_monthly;
    for (int rank = 0; rank < spec.k; ++rank) {
        std::vector<double> series;
        for (const auto& r : ev.sorted.bucket_returns) series.push_back(r[rank]);
        PortfolioTableRow row;
        row.label = std::to_string(rank + 1);
        row.perf =
            performance(series, ev.factor_rows, built.freq, run_config.nw_lags_value(), ppy);
        auto chars = bucket_characteristics(built.periods, ev.sorted, rank);
        row.perf.pct_mv = chars.pct_mv;
        row.perf.bm = chars.bm;
        row.perf.liquidity = chars.liquidity;
        ev.rows.push_back(std::move(row));
    }
    PortfolioTableRow ls;
    ls.label = std::to_string(spec.k) + "-1";
    std::vector<FactorRow> ls_factors = ev.factor_rows;
    for (FactorRow& f : ls_factors) f.rf = 0;  // zero-investment spread
    ls.perf = performance(ev.sorted.long_short, ls_factors, built.freq,
                          run_config.nw_lags_value(), ppy);
    ls.has_characteristics = false;
    ev.rows.push_back(std::move(ls));
    PortfolioTableRow mkt;
    mkt.label = "Mkt";
    mkt.perf = performance(ev.sorted.market, ev.factor_rows, built.freq,
                           run_config.nw_lags_value(), ppy);
    mkt.has_characteristics = false;
    ev.rows.push_back(std::move(mkt));
    return ev;
}

void write_cumulative_chart(const std::string& path, const SortEvaluation& ev, int k) {
    std::vector<SvgSeries> series;
    auto path_of = [&](int rank) {
        std::vector<double> s;
        for (const auto& r : ev.sorted.bucket_returns) s.push_back(r[rank]);
        return cumulative(s);
    };
    series.push_back({"rank 1", "#d62728", path_of(0)});
    series.push_back({"rank " + std::to_string((k + 1) / 2), "#1f77b4", path_of((k - 1) / 2)});
    series.push_back({"rank " + std::to_string(k), "#2ca02c", path_of(k - 1)});
    series.push_back({"market", "#000000", cumulative(ev.sorted.market)});
    svg_line_chart(path, series, "period", "cumulative return");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"news-network construction and cross-sectional return tests"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "run configuration file");

    // ---- identify ----
    auto* cmd_identify = app.add_subcommand("identify", "extract lead-follower pairs");
    std::string a_articles, a_firms, a_membership, a_exceptions, a_out;
    cmd_identify->add_option("--articles", a_articles)->required();
    cmd_identify->add_option("--firms", a_firms)->required();
    cmd_identify->add_option("--membership", a_membership)->required();
    cmd_identify->add_option("--config", a_exceptions, "exceptions file");
    cmd_identify->add_option("--out", a_out)->required();

    // ---- network ----
    auto* cmd_network = app.add_subcommand("network", "build a windowed news network");
    std::string n_linkages, n_firms, n_membership, n_prices, n_factors, n_out, n_as_of;
    std::string n_filter = "full";
    int n_window_days = 365;
    cmd_network->add_option("--linkages", n_linkages)->required();
    cmd_network->add_option("--firms", n_firms)->required();
    cmd_network->add_option("--membership", n_membership)->required();
    cmd_network->add_option("--window-days", n_window_days);
    cmd_network->add_option("--as-of", n_as_of)->required();
    cmd_network->add_option("--filter", n_filter,
                            "full|within|cross|big_lead|small_lead|high_lead|low_lead");
    cmd_network->add_option("--prices", n_prices, "needed for size/liquidity filters");
    cmd_network->add_option("--factors", n_factors, "needed for size/liquidity filters");
    cmd_network->add_option("--out", n_out)->required();

    // ---- variables ----
    auto* cmd_variables = app.add_subcommand("variables", "lead returns and degree panels");
    std::string v_linkages, v_firms, v_membership, v_prices, v_factors, v_out;
    int v_net_window = 365, v_degree_window = 30;
    cmd_variables->add_option("--linkages", v_linkages)->required();
    cmd_variables->add_option("--firms", v_firms)->required();
    cmd_variables->add_option("--membership", v_membership)->required();
    cmd_variables->add_option("--prices", v_prices)->required();
    cmd_variables->add_option("--factors", v_factors)->required();
    cmd_variables->add_option("--net-window", v_net_window);
    cmd_variables->add_option("--degree-window", v_degree_window);
    cmd_variables->add_option("--out", v_out)->required();

    // ---- regress ----
    auto* cmd_regress = app.add_subcommand("regress", "panel regression with clustered errors");
    cmd_regress->set_help_flag("--help", "print help");  // frees --h for the horizon
    std::string r_linkages, r_firms, r_membership, r_prices, r_factors, r_out;
    std::string r_y = "resid_ff3", r_x = "LR_full", r_controls = "logmv,bm,turnover";
    int r_h = 0, r_net_window = 365;
    cmd_regress->add_option("--linkages", r_linkages)->required();
    cmd_regress->add_option("--firms", r_firms)->required();
    cmd_regress->add_option("--membership", r_membership)->required();
    cmd_regress->add_option("--prices", r_prices)->required();
    cmd_regress->add_option("--factors", r_factors)->required();
    cmd_regress->add_option("--y", r_y, "r|resid_ff3|resid_ff5");
    cmd_regress->add_option("--x", r_x, "comma-separated lead-return variants");
    cmd_regress->add_option("--controls", r_controls, "logmv,bm,turnover,lag_return");
    cmd_regress->add_option("--h", r_h, "horizon in trading days");
    cmd_regress->add_option("--net-window", r_net_window);
    cmd_regress->add_option("--out", r_out)->required();

    // ---- backtest ----
    auto* cmd_backtest = app.add_subcommand("backtest", "sorted-portfolio test");
    std::string b_linkages, b_firms, b_membership, b_prices, b_factors, b_out, b_plot;
    std::string b_signal = "degree_total", b_weighting = "equal", b_rebalance = "monthly";
    std::string b_returns = "simple", b_control;
    int b_k = 5, b_horizon = 0, b_net_window = 365, b_degree_window = 30;
    bool b_drop_zero = false;
    cmd_backtest->add_option("--linkages", b_linkages)->required();
    cmd_backtest->add_option("--firms", b_firms)->required();
    cmd_backtest->add_option("--membership", b_membership)->required();
    cmd_backtest->add_option("--prices", b_prices)->required();
    cmd_backtest->add_option("--factors", b_factors)->required();
    cmd_backtest->add_option("--signal", b_signal, "LR_* or degree_* variant");
    cmd_backtest->add_option("--k", b_k);
    cmd_backtest->add_option("--weighting", b_weighting, "equal|value");
    cmd_backtest->add_option("--rebalance", b_rebalance, "daily|monthly");
    cmd_backtest->add_option("--horizon", b_horizon,
                             "daily only: 0 = contemporaneous (infeasible), 1 = next day");
    cmd_backtest->add_flag("--drop-zero", b_drop_zero, "drop zero-signal firms");
    cmd_backtest->add_option("--returns", b_returns, "simple|resid_ff3|resid_ff5");
    cmd_backtest->add_option("--control", b_control,
                             "double-sort control: logmv|bm|turnover|momentum");
    cmd_backtest->add_option("--net-window", b_net_window);
    cmd_backtest->add_option("--degree-window", b_degree_window);
    cmd_backtest->add_option("--out", b_out)->required();
    cmd_backtest->add_option("--plot", b_plot, "cumulative-return SVG");

    // ---- synth ----
    auto* cmd_synth = app.add_subcommand("synth", "generate a synthetic corpus and market");
    std::string s_config, s_out_dir;
    cmd_synth->add_option("--config", s_config, "synth configuration file");
    cmd_synth->add_option("--out-dir", s_out_dir)->required();

    // ---- report ----
    auto* cmd_report = app.add_subcommand("report", "tables and figures for a data set");
    std::string p_data_dir, p_out_dir, p_ticker;
    double p_effect_beta = 0, p_effect_sigma = 0;
    cmd_report->add_option("--data-dir", p_data_dir)->required();
    cmd_report->add_option("--out-dir", p_out_dir)->required();
    cmd_report->add_option("--ticker", p_ticker, "scatter ticker (default: highest degree)");
    cmd_report->add_option("--effect-beta", p_effect_beta,
                           "print the effect size for this coefficient");
    cmd_report->add_option("--effect-sigma", p_effect_sigma,
                           "signal standard deviation for --effect-beta");

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig run_config;
        if (!config_path.empty()) run_config = load_run_config(config_path);

        if (*cmd_identify) {
            IdentConfig config =
                a_exceptions.empty() ? default_ident_config() : load_ident_config(a_exceptions);
            FirmMaster firms = load_firm_master(a_firms, a_membership);
            ArticleSet articles = load_articles(a_articles);
            std::map<std::string, int> verdicts;
            std::vector<Linkage> linkages = run_identify(articles, firms, config, &verdicts);
            save_linkages(a_out, linkages);
            std::cout << "articles " << articles.articles.size() << ", pairs " << linkages.size()
                      << "\n";
            for (const auto& [verdict, count] : verdicts)
                std::cout << verdict << " " << count << "\n";
        } else if (*cmd_network) {
            FirmMaster firms = load_firm_master(n_firms, n_membership);
            std::vector<Linkage> linkages = load_linkages(n_linkages);
            Date as_of = parse_date(n_as_of);
            auto members = firms.universe_at(year_month(as_of));
            if (members.empty())
                throw std::runtime_error("no membership for month " +
                                         format_year_month(year_month(as_of)));
            std::vector<std::string> universe(members.begin(), members.end());
            Date start = as_of - std::chrono::days{n_window_days};
            NewsNetwork net = build_network(linkages, start, as_of, universe);
            NetTag tag = parse_net_tag(n_filter);
            if (tag != NetTag::Full) {
                WindowCharacteristics chars;
                if (tag != NetTag::Within && tag != NetTag::Cross) {
                    if (n_prices.empty() || n_factors.empty())
                        throw std::runtime_error(
                            "size/liquidity filters need --prices and --factors");
                    DataBundle bundle = load_bundle(n_firms, n_membership, n_prices, n_factors);
                    chars = window_characteristics(bundle.prices, bundle.calendar, start, as_of,
                                                   universe);
                }
                net = decompose(net, tag, firms, chars, run_config.quantile_low,
                                run_config.quantile_high);
            }
            save_network(n_out, net);
            std::cout << "network " << net_tag_name(net.tag) << " over [" << format_date(start)
                      << ", " << format_date(as_of) << "], firms " << net.size()
                      << ", skipped-out-of-universe " << net.skipped_out_of_universe << "\n";
        } else if (*cmd_variables) {
            DataBundle bundle = load_bundle(v_firms, v_membership, v_prices, v_factors);
            std::vector<Linkage> linkages = load_linkages(v_linkages);
            LeadReturnPanel lr = daily_lead_return_panel(
                linkages, bundle.calendar, bundle.firms, bundle.prices, bundle.returns,
                v_net_window, run_config.quantile_low, run_config.quantile_high);
            std::set<YearMonth> month_set;
            for (Date d : bundle.calendar.dates()) month_set.insert(year_month(d));
            std::vector<YearMonth> months(month_set.begin(), month_set.end());
            DegreePanel deg = monthly_degree_panel(linkages, months, bundle.firms, bundle.prices,
                                                   bundle.calendar, v_degree_window,
                                                   run_config.quantile_low,
                                                   run_config.quantile_high);
            std::ofstream out(v_out);
            if (!out) throw std::runtime_error("cannot open file '" + v_out + "' for writing");
            out << "date,ticker,variant,value\n";
            char buf[64];
            for (LrVariant variant : kAllLrVariants) {
                auto it = lr.values.find(variant);
                if (it == lr.values.end()) continue;
                for (const auto& [ticker, series] : it->second)
                    for (const auto& [d, value] : series) {
                        std::snprintf(buf, sizeof buf, "%.12g", value);
                        out << format_date(d) << ',' << ticker << ',' << lr_variant_name(variant)
                            << ',' << buf << "\n";
                    }
            }
            for (DegreeVariant variant : kAllDegreeVariants) {
                auto it = deg.values.find(variant);
                if (it == deg.values.end()) continue;
                for (const auto& [ticker, series] : it->second)
                    for (const auto& [ym, value] : series)
                        out << format_year_month(ym) << ',' << ticker << ','
                            << degree_variant_name(variant) << ',' << value << "\n";
            }
            std::cout << "panel written to " << v_out << ", missing-lead-return terms "
                      << lr.missing_lead_returns << "\n";
        } else if (*cmd_regress) {
            DataBundle bundle = load_bundle(r_firms, r_membership, r_prices, r_factors);
            std::vector<Linkage> linkages = load_linkages(r_linkages);
            LeadReturnPanel lr = daily_lead_return_panel(
                linkages, bundle.calendar, bundle.firms, bundle.prices, bundle.returns,
                r_net_window, run_config.quantile_low, run_config.quantile_high);
            Panel y;
            if (r_y == "r") {
                y = bundle.returns.by_ticker;
            } else if (r_y == "resid_ff3" || r_y == "resid_ff5") {
                FfResult ff = ff_residuals(bundle.returns, bundle.factors,
                                           r_y == "resid_ff3" ? FactorModel::FF3
                                                              : FactorModel::FF5);
                y = ff.residuals;
            } else {
                throw std::runtime_error("unknown response '" + r_y + "'");
            }
            std::vector<Panel> x_storage;
            for (const std::string& name : split_list(r_x)) {
                LrVariant variant = parse_lr_variant(name);
                auto it = lr.values.find(variant);
                if (it == lr.values.end())
                    throw std::runtime_error("lead-return variant not computed: " + name);
                x_storage.push_back(it->second);
            }
            std::vector<std::pair<std::string, const Panel*>> x_refs;
            {
                std::size_t i = 0;
                for (const std::string& name : split_list(r_x))
                    x_refs.emplace_back(name, &x_storage[i++]);
            }
            std::vector<Panel> ctrl_storage;
            for (const std::string& name : split_list(r_controls))
                ctrl_storage.push_back(control_panel_for(name, bundle));
            std::vector<std::pair<std::string, const Panel*>> ctrl_refs;
            {
                std::size_t i = 0;
                for (const std::string& name : split_list(r_controls))
                    ctrl_refs.emplace_back(name, &ctrl_storage[i++]);
            }
            PanelData panel = align_panel(y, x_refs, ctrl_refs, r_h, bundle.calendar);
            if (run_config.winsorize) {
                // two-sided 1%/99% clip of each regressor over the pooled panel
                for (Eigen::Index c = 0; c < panel.X.cols(); ++c) {
                    std::vector<double> col(panel.X.col(c).data(),
                                            panel.X.col(c).data() + panel.X.rows());
                    double lo = quantile_nearest_rank(col, 0.01);
                    double hi = quantile_nearest_rank(col, 0.99);
                    for (Eigen::Index i = 0; i < panel.X.rows(); ++i)
                        panel.X(i, c) = std::clamp(panel.X(i, c), lo, hi);
                }
            }
            RegressionResult result = panel_regress(panel);

            nlohmann::json j;
            for (std::size_t i = 0; i < result.names.size(); ++i) {
                j["coefficients"][result.names[i]] = result.beta(i);
                j["se"][result.names[i]] = result.se(i);
                j["t"][result.names[i]] = result.tstat(i);
            }
            j["nobs"] = result.nobs;
            j["r2"] = result.r2;
            j["cov_tag"] = std::string(cov_tag_name(result.cov_tag));
            j["dropped_entities"] = panel.dropped_entities;
            write_text(r_out, j.dump(2) + "\n");

            // effect size per one standard deviation of the first regressor
            double mean = panel.X.col(0).mean();
            double sd = std::sqrt((panel.X.col(0).array() - mean).square().sum() /
                                  (panel.X.rows() - 1));
            std::cout << result.names[0] << " beta " << result.beta(0) << " (t "
                      << result.tstat(0) << "), effect per 1-sd "
                      << format_effect_size(result.beta(0), sd) << "\n";
        } else if (*cmd_backtest) {
            DataBundle bundle = load_bundle(b_firms, b_membership, b_prices, b_factors);
            std::vector<Linkage> linkages = load_linkages(b_linkages);
            SortSpec spec;
            spec.k = b_k;
            spec.weighting = b_weighting == "value" ? Weighting::Value : Weighting::Equal;
            spec.drop_zero_signal = b_drop_zero;

            bool residual_mode = b_returns != "simple";
            auto holding = holding_return_series(bundle, b_returns);

            BuiltPeriods built;
            if (b_rebalance == "daily") {
                LeadReturnPanel lr = daily_lead_return_panel(
                    linkages, bundle.calendar, bundle.firms, bundle.prices, bundle.returns,
                    b_net_window, run_config.quantile_low, run_config.quantile_high);
                const Panel& signal_panel = lr.values.at(parse_lr_variant(b_signal));
                if (!b_control.empty())
                    throw std::runtime_error("double sorting is a monthly test");
                built = build_daily_periods(bundle, signal_panel, b_horizon, holding,
                                            residual_mode);
            } else if (b_rebalance == "monthly") {
                if (!is_degree_signal(b_signal))
                    throw std::runtime_error("monthly rebalancing expects a degree_* signal");
                std::set<YearMonth> month_set;
                for (Date d : bundle.calendar.dates()) month_set.insert(year_month(d));
                std::vector<YearMonth> months(month_set.begin(), month_set.end());
                DegreePanel deg = monthly_degree_panel(linkages, months, bundle.firms,
                                                       bundle.prices, bundle.calendar,
                                                       b_degree_window, run_config.quantile_low,
                                                       run_config.quantile_high);
                std::map<std::string, std::map<YearMonth, double>> signal;
                for (const auto& [ticker, series] : deg.values.at(parse_degree_variant(b_signal)))
                    for (const auto& [ym, v] : series) signal[ticker][ym] = static_cast<double>(v);
                std::map<std::string, std::map<YearMonth, double>> control;
                if (!b_control.empty()) control = monthly_control(b_control, bundle);
                built = build_monthly_periods(bundle, signal, control, !b_control.empty(),
                                              holding, residual_mode);
            } else {
                throw std::runtime_error("unknown rebalance '" + b_rebalance + "'");
            }

            SortEvaluation ev = evaluate_portfolios(built, spec, !b_control.empty(), run_config);
            write_text(b_out, portfolio_table_csv(ev.rows));
            if (!b_plot.empty()) write_cumulative_chart(b_plot, ev, spec.k);
            std::cout << "backtest " << b_signal << " k=" << spec.k << " periods "
                      << ev.sorted.periods.size() << " skipped " << ev.sorted.skipped_periods
                      << "\n";
        } else if (*cmd_synth) {
            SynthConfig config;
            if (!s_config.empty()) config = load_synth_config(s_config);
            SynthMarket market = generate_market(config);
            SynthCorpus corpus =
                generate_corpus(market.plan, market.firms, config, market.calendar);
            write_dataset(s_out_dir, market, corpus);
            save_synth_config((fs::path(s_out_dir) / "synth_resolved.cfg").string(), config);
            std::cout << "synth wrote " << corpus.articles.articles.size() << " articles, "
                      << corpus.oracle.size() << " planned pairs to " << s_out_dir << "\n";
        } else if (*cmd_report) {
            fs::create_directories(p_out_dir);
            auto in = [&](const std::string& name) {
                return (fs::path(p_data_dir) / name).string();
            };
            auto outp = [&](const std::string& name) {
                return (fs::path(p_out_dir) / name).string();
            };
            if (p_effect_beta != 0 && p_effect_sigma != 0)
                std::cout << "effect size: " << format_effect_size(p_effect_beta, p_effect_sigma)
                          << "\n";

            DataBundle bundle = load_bundle(in(run_config.firms), in(run_config.membership),
                                            in(run_config.prices), in(run_config.factors));
            IdentConfig ident = run_config.exceptions.empty()
                                    ? default_ident_config()
                                    : load_ident_config(in(run_config.exceptions));
            ArticleSet articles = load_articles(in(run_config.articles));
            std::vector<Linkage> linkages = run_identify(articles, bundle.firms, ident);
            save_linkages(outp("linkages.csv"), linkages);

            LeadReturnPanel lr = daily_lead_return_panel(
                linkages, bundle.calendar, bundle.firms, bundle.prices, bundle.returns,
                run_config.net_window_days, run_config.quantile_low, run_config.quantile_high);

            // regression table: LR_full on FF3 and FF5 residuals, h = 0
            std::vector<RegressionTableColumn> columns;
            double lr_sd = 0;
            for (FactorModel model : {FactorModel::FF3, FactorModel::FF5}) {
                FfResult ff = ff_residuals(bundle.returns, bundle.factors, model);
                Panel y = ff.residuals;
                Panel x = lr.values.at(LrVariant::Full);
                Panel logmv = log_mv_panel(bundle.prices);
                Panel bm = bm_panel(bundle.prices);
                Panel to = turnover_panel(bundle.prices);
                PanelData panel = align_panel(
                    y, {{"LR_full", &x}},
                    {{"logmv", &logmv}, {"bm", &bm}, {"turnover", &to}}, 0, bundle.calendar);
                RegressionResult res = panel_regress(panel);
                double mean = panel.X.col(0).mean();
                lr_sd = std::sqrt((panel.X.col(0).array() - mean).square().sum() /
                                  (panel.X.rows() - 1));
                columns.push_back({model == FactorModel::FF3 ? "resid_ff3" : "resid_ff5", res});
            }
            write_text(outp("regression_table.csv"), regression_table_csv(columns));
            write_text(outp("regression_table.md"), regression_table_markdown(columns));
            std::cout << "comovement beta " << columns.front().result.beta(0)
                      << ", effect per 1-sd "
                      << format_effect_size(columns.front().result.beta(0), lr_sd) << "\n";

            // infeasible contemporaneous quintile sort on the full lead return
            auto holding = holding_return_series(bundle, "simple");
            SortSpec lr_spec;
            lr_spec.k = run_config.k;
            lr_spec.weighting =
                run_config.weighting == "value" ? Weighting::Value : Weighting::Equal;
            BuiltPeriods lr_built = build_daily_periods(bundle, lr.values.at(LrVariant::Full), 0,
                                                        holding, false);
            SortEvaluation lr_ev = evaluate_portfolios(lr_built, lr_spec, false, run_config);
            write_text(outp("portfolio_lr_infeasible.csv"), portfolio_table_csv(lr_ev.rows));
            write_text(outp("portfolio_lr_infeasible.md"), portfolio_table_markdown(lr_ev.rows));
            write_cumulative_chart(outp("cumret_lr.svg"), lr_ev, lr_spec.k);

            // scatter for the chosen ticker
            std::string ticker = p_ticker;
            const auto& lr_full = lr.values.at(LrVariant::Full);
            if (ticker.empty()) {
                // default: most connected firm over the whole span
                std::map<std::string, int> activity;
                for (const Linkage& l : linkages) {
                    ++activity[l.lead];
                    ++activity[l.follower];
                }
                int best = -1;
                for (const auto& [t, n] : activity)
                    if (n > best && lr_full.count(t)) {
                        best = n;
                        ticker = t;
                    }
            }
            if (!ticker.empty() && lr_full.count(ticker)) {
                std::vector<double> xs, ys;
                for (const auto& [d, v] : lr_full.at(ticker)) {
                    auto r = bundle.returns.find(ticker, d);
                    if (!r) continue;
                    xs.push_back(v);
                    ys.push_back(*r);
                }
                if (xs.size() >= 3)
                    svg_scatter_fit(outp("scatter_lr.svg"), xs, ys, "lead return " + ticker,
                                    "daily return " + ticker, run_config.bootstrap_samples,
                                    run_config.bootstrap_seed);
            }

            // monthly degree sort (drop-zero, as in the headline test) and figures
            std::set<YearMonth> month_set;
            for (Date d : bundle.calendar.dates()) month_set.insert(year_month(d));
            std::vector<YearMonth> months(month_set.begin(), month_set.end());
            DegreePanel deg = monthly_degree_panel(linkages, months, bundle.firms, bundle.prices,
                                                   bundle.calendar, run_config.degree_window_days,
                                                   run_config.quantile_low,
                                                   run_config.quantile_high);
            std::map<std::string, std::map<YearMonth, double>> degree_signal;
            for (const auto& [t, series] : deg.values.at(DegreeVariant::Total))
                for (const auto& [ym, v] : series) degree_signal[t][ym] = v;
            SortSpec deg_spec;
            deg_spec.k = run_config.k;
            deg_spec.drop_zero_signal = true;
            try {
                BuiltPeriods deg_built = build_monthly_periods(bundle, degree_signal, {}, false,
                                                               holding, false);
                SortEvaluation deg_ev = evaluate_portfolios(deg_built, deg_spec, false,
                                                            run_config);
                write_text(outp("portfolio_degree_monthly.csv"),
                           portfolio_table_csv(deg_ev.rows));
                write_text(outp("portfolio_degree_monthly.md"),
                           portfolio_table_markdown(deg_ev.rows));
                write_cumulative_chart(outp("cumret_degree.svg"), deg_ev, deg_spec.k);
            } catch (const std::exception& e) {
                std::cout << "degree portfolio table skipped: " << e.what() << "\n";
            }

            std::vector<int> all_degrees;
            for (const auto& [ticker2, series] : deg.values.at(DegreeVariant::Total))
                for (const auto& [ym, v] : series) all_degrees.push_back(v);
            try {
                PowerLawFit fit = fit_power_law(all_degrees);
                svg_loglog_degree(outp("degree_loglog.svg"), all_degrees, fit);
                std::cout << "degree power-law gamma " << fit.gamma << ", r2 " << fit.r2 << "\n";
            } catch (const std::exception& e) {
                std::cout << "degree power-law fit skipped: " << e.what() << "\n";
            }
            save_run_config(outp("run_config_resolved.cfg"), run_config);
            std::cout << "report written to " << p_out_dir << "\n";
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
}
