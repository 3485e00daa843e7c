#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "newsnet/dates.hpp"

namespace newsnet {

struct Article {
    std::string id;
    Timestamp timestamp;
    std::string raw_timestamp;
    std::string headline;
    std::string content;
    std::string publisher;
    Date info_day;
};

struct ArticleSet {
    std::vector<Article> articles;
};

class TradingCalendar {
  public:
    TradingCalendar() = default;
    explicit TradingCalendar(std::vector<Date> dates);

    bool empty() const { return dates_.empty(); }
    std::size_t size() const { return dates_.size(); }
    const std::vector<Date>& dates() const { return dates_; }
    Date front() const { return dates_.front(); }
    Date back() const { return dates_.back(); }
    bool contains(Date d) const;
    std::optional<Date> next(Date d) const;   // strictly after d
    std::optional<Date> prev(Date d) const;   // strictly before d
    // Last trading date of each month in the span, in order.
    std::vector<Date> month_end_dates() const;

  private:
    std::vector<Date> dates_;
};

// Articles arrive on a 09:00-to-09:00 New York clock: at or after 09:00 local
// the article belongs to that local date, before 09:00 to the previous one.
// The rule is calendar-free; the calendar argument is validated non-empty
// because downstream window aggregation assumes one exists.
Date assign_info_day(Timestamp ts, const TradingCalendar& calendar);

ArticleSet load_articles(const std::string& path);
void save_articles(const std::string& path, const ArticleSet& set);

struct FirmMaster {
    struct Firm {
        std::string ticker;
        std::string full_name;
        std::string sector;
    };
    std::vector<Firm> firms;
    std::map<std::string, int> ticker_index;
    std::map<YearMonth, std::set<std::string>> membership;

    bool known(const std::string& ticker) const { return ticker_index.count(ticker) > 0; }
    const Firm& firm(const std::string& ticker) const;
    std::set<std::string> universe_at(YearMonth ym) const;
    std::vector<Firm> member_firms(YearMonth ym) const;
};

FirmMaster load_firm_master(const std::string& firms_path, const std::string& membership_path);

struct PricePoint {
    double open = 0;
    double volume = 0;
    double shares_out = 0;
    double book_equity = 0;  // already statement-lagged

    double market_value() const { return open * shares_out; }
    double turnover() const { return shares_out > 0 ? volume / shares_out : 0; }
    double book_to_market() const {
        double mv = market_value();
        return mv > 0 ? book_equity / mv : 0;
    }
};

struct PricePanel {
    std::map<std::string, std::map<Date, PricePoint>> by_ticker;

    const PricePoint* find(const std::string& ticker, Date d) const;
};

PricePanel load_prices(const std::string& path, const FirmMaster& firms);

struct FactorRow {
    double mkt_rf = 0, smb = 0, hml = 0, rmw = 0, cma = 0, rf = 0;
};

struct FactorSeries {
    std::map<Date, FactorRow> rows;
};

// Validates completeness over the calendar dates spanned by the file.
FactorSeries load_factors(const std::string& path, const TradingCalendar& calendar);

struct ReturnPanel {
    // r_t = ln(open_{t+1}) - ln(open_t), keyed by t
    std::map<std::string, std::map<Date, double>> by_ticker;

    std::optional<double> find(const std::string& ticker, Date d) const;
};

ReturnPanel compute_returns(const PricePanel& prices, const TradingCalendar& calendar);

// Maps dated statements to the per-day values in force under the two-quarter
// lag: on day d, the latest statement whose first-usable date is <= d.
std::map<Date, double> lag_statement_values(const std::vector<std::pair<Date, double>>& statements,
                                            const std::vector<Date>& dates);

}  // namespace newsnet
