#include "newsnet/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "newsnet/csv.hpp"

namespace newsnet {

using nlohmann::json;

TradingCalendar::TradingCalendar(std::vector<Date> dates) : dates_(std::move(dates)) {
    std::sort(dates_.begin(), dates_.end());
    dates_.erase(std::unique(dates_.begin(), dates_.end()), dates_.end());
}

bool TradingCalendar::contains(Date d) const {
    return std::binary_search(dates_.begin(), dates_.end(), d);
}

std::optional<Date> TradingCalendar::next(Date d) const {
    auto it = std::upper_bound(dates_.begin(), dates_.end(), d);
    if (it == dates_.end()) return std::nullopt;
    return *it;
}

std::optional<Date> TradingCalendar::prev(Date d) const {
    auto it = std::lower_bound(dates_.begin(), dates_.end(), d);
    if (it == dates_.begin()) return std::nullopt;
    return *(it - 1);
}

std::vector<Date> TradingCalendar::month_end_dates() const {
    std::vector<Date> out;
    for (std::size_t i = 0; i < dates_.size(); ++i) {
        if (i + 1 == dates_.size() || year_month(dates_[i]) != year_month(dates_[i + 1]))
            out.push_back(dates_[i]);
    }
    return out;
}

namespace {

Date info_day_rule(Timestamp ts) {
    LocalTime lt = to_new_york(ts);
    if (lt.seconds_of_day >= 9 * 3600) return lt.date;
    return lt.date - std::chrono::days{1};
}

}  // namespace

Date assign_info_day(Timestamp ts, const TradingCalendar& calendar) {
    if (calendar.empty()) throw std::runtime_error("assign_info_day: empty calendar");
    return info_day_rule(ts);
}

ArticleSet load_articles(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file '" + path + "'");
    ArticleSet set;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded())
            throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                     ": malformed JSON");
        Article a;
        for (const char* field : {"id", "timestamp", "headline", "content", "publisher"}) {
            if (!j.contains(field) || !j[field].is_string())
                throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                         ": missing field \"" + field + "\"");
        }
        a.id = j["id"].get<std::string>();
        a.raw_timestamp = j["timestamp"].get<std::string>();
        a.headline = j["headline"].get<std::string>();
        a.content = j["content"].get<std::string>();
        a.publisher = j["publisher"].get<std::string>();
        if (a.headline.empty())
            throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                     ": empty headline");
        try {
            a.timestamp = parse_timestamp(a.raw_timestamp);
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ": line " + std::to_string(lineno) + ": " + e.what());
        }
        a.info_day = info_day_rule(a.timestamp);
        set.articles.push_back(std::move(a));
    }
    return set;
}

void save_articles(const std::string& path, const ArticleSet& set) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open file '" + path + "' for writing");
    for (const Article& a : set.articles) {
        json j;
        j["id"] = a.id;
        j["timestamp"] = a.raw_timestamp;
        j["headline"] = a.headline;
        j["content"] = a.content;
        j["publisher"] = a.publisher;
        out << j.dump() << "\n";
    }
}

const FirmMaster::Firm& FirmMaster::firm(const std::string& ticker) const {
    auto it = ticker_index.find(ticker);
    if (it == ticker_index.end()) throw std::runtime_error("unknown ticker '" + ticker + "'");
    return firms[it->second];
}

std::set<std::string> FirmMaster::universe_at(YearMonth ym) const {
    auto it = membership.find(ym);
    if (it == membership.end()) return {};
    return it->second;
}

std::vector<FirmMaster::Firm> FirmMaster::member_firms(YearMonth ym) const {
    std::vector<Firm> out;
    for (const std::string& t : universe_at(ym)) out.push_back(firm(t));
    return out;
}

FirmMaster load_firm_master(const std::string& firms_path, const std::string& membership_path) {
    FirmMaster fm;
    CsvTable firms = read_csv(firms_path);
    int c_ticker = firms.column("ticker");
    int c_name = firms.column("full_name");
    int c_sector = firms.column("sector");
    for (const auto& row : firms.rows) {
        FirmMaster::Firm f{row[c_ticker], row[c_name], row[c_sector]};
        if (fm.ticker_index.count(f.ticker))
            throw std::runtime_error(firms_path + ": duplicate ticker '" + f.ticker + "'");
        if (f.full_name.empty())
            throw std::runtime_error(firms_path + ": empty full_name for '" + f.ticker + "'");
        fm.ticker_index[f.ticker] = static_cast<int>(fm.firms.size());
        fm.firms.push_back(std::move(f));
    }
    CsvTable members = read_csv(membership_path);
    int c_month = members.column("month");
    int c_mticker = members.column("ticker");
    for (const auto& row : members.rows) {
        YearMonth ym = parse_year_month(row[c_month]);
        const std::string& t = row[c_mticker];
        if (!fm.known(t))
            throw std::runtime_error(membership_path + ": unknown ticker '" + t + "' in month " +
                                     row[c_month]);
        fm.membership[ym].insert(t);
    }
    return fm;
}

const PricePoint* PricePanel::find(const std::string& ticker, Date d) const {
    auto it = by_ticker.find(ticker);
    if (it == by_ticker.end()) return nullptr;
    auto jt = it->second.find(d);
    if (jt == it->second.end()) return nullptr;
    return &jt->second;
}

PricePanel load_prices(const std::string& path, const FirmMaster& firms) {
    CsvTable table = read_csv(path);
    int c_date = table.column("date");
    int c_ticker = table.column("ticker");
    int c_open = table.column("open");
    int c_volume = table.column("volume");
    int c_shares = table.column("shares_out");
    int c_book = table.column("book_equity_lagged");
    PricePanel panel;
    for (const auto& row : table.rows) {
        Date d = parse_date(row[c_date]);
        const std::string& t = row[c_ticker];
        if (!firms.known(t)) throw std::runtime_error(path + ": unknown ticker '" + t + "'");
        PricePoint p;
        p.open = std::stod(row[c_open]);
        p.volume = std::stod(row[c_volume]);
        p.shares_out = std::stod(row[c_shares]);
        p.book_equity = std::stod(row[c_book]);
        if (!(p.open > 0))
            throw std::runtime_error(path + ": non-positive open for (" + t + ", " +
                                     row[c_date] + ")");
        if (p.volume < 0)
            throw std::runtime_error(path + ": negative volume for (" + t + ", " + row[c_date] +
                                     ")");
        auto [it, inserted] = panel.by_ticker[t].emplace(d, p);
        (void)it;
        if (!inserted)
            throw std::runtime_error(path + ": duplicate row for (" + t + ", " + row[c_date] +
                                     ")");
    }
    return panel;
}

FactorSeries load_factors(const std::string& path, const TradingCalendar& calendar) {
    CsvTable table = read_csv(path);
    int c_date = table.column("date");
    int c_mkt = table.column("mkt_rf");
    int c_smb = table.column("smb");
    int c_hml = table.column("hml");
    int c_rmw = table.column("rmw");
    int c_cma = table.column("cma");
    int c_rf = table.column("rf");
    FactorSeries fs;
    for (const auto& row : table.rows) {
        Date d = parse_date(row[c_date]);
        FactorRow r{std::stod(row[c_mkt]), std::stod(row[c_smb]), std::stod(row[c_hml]),
                    std::stod(row[c_rmw]), std::stod(row[c_cma]), std::stod(row[c_rf])};
        for (double v : {r.mkt_rf, r.smb, r.hml, r.rmw, r.cma, r.rf})
            if (!std::isfinite(v))
                throw std::runtime_error(path + ": non-finite factor value on " + row[c_date]);
        if (!fs.rows.emplace(d, r).second)
            throw std::runtime_error(path + ": duplicate date " + row[c_date]);
    }
    if (fs.rows.empty()) throw std::runtime_error(path + ": no factor rows");
    Date lo = fs.rows.begin()->first, hi = fs.rows.rbegin()->first;
    for (Date d : calendar.dates()) {
        if (d < lo || d > hi) continue;
        if (!fs.rows.count(d))
            throw std::runtime_error(path + ": missing factor date " + format_date(d));
    }
    return fs;
}

std::optional<double> ReturnPanel::find(const std::string& ticker, Date d) const {
    auto it = by_ticker.find(ticker);
    if (it == by_ticker.end()) return std::nullopt;
    auto jt = it->second.find(d);
    if (jt == it->second.end()) return std::nullopt;
    return jt->second;
}

ReturnPanel compute_returns(const PricePanel& prices, const TradingCalendar& calendar) {
    ReturnPanel panel;
    for (const auto& [ticker, series] : prices.by_ticker) {
        for (const auto& [d, p] : series) {
            auto nd = calendar.next(d);
            if (!nd) continue;
            auto jt = series.find(*nd);
            if (jt == series.end()) continue;
            if (!(p.open > 0) || !(jt->second.open > 0))
                throw std::runtime_error("non-positive open for (" + ticker + ", " +
                                         format_date(d) + ")");
            panel.by_ticker[ticker][d] = std::log(jt->second.open) - std::log(p.open);
        }
    }
    return panel;
}

std::map<Date, double> lag_statement_values(const std::vector<std::pair<Date, double>>& statements,
                                            const std::vector<Date>& dates) {
    std::vector<std::pair<Date, double>> usable;
    for (const auto& [stmt_date, value] : statements)
        usable.emplace_back(book_equity_first_usable(stmt_date), value);
    std::sort(usable.begin(), usable.end());
    std::map<Date, double> out;
    for (Date d : dates) {
        const double* best = nullptr;
        for (const auto& [from, value] : usable) {
            if (from <= d) best = &value;
            else break;
        }
        if (best) out[d] = *best;
    }
    return out;
}

}  // namespace newsnet
