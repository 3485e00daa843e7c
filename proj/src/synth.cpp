#include "newsnet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "newsnet/csv.hpp"

namespace newsnet {

std::uint64_t Rng::next_u64() {
    // splitmix64, small and stable across platforms
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = 0;
    do {
        u1 = uniform();
    } while (u1 <= 0);
    double u2 = uniform();
    double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(2.0 * 3.14159265358979323846 * u2);
    have_spare_ = true;
    return mag * std::cos(2.0 * 3.14159265358979323846 * u2);
}

int Rng::uniform_int(int lo, int hi) {
    int span = hi - lo + 1;
    int v = lo + static_cast<int>(uniform() * span);
    return std::min(v, hi);
}

namespace {

const char* kSectors[] = {"Information Technology", "Financials", "Health Care", "Industrials",
                          "Consumer Discretionary"};

// Name lexicon kept disjoint from the filler vocabulary below so synthetic
// firm names never appear accidentally in article body text.
const char* kNameFirst[] = {"Quarzon", "Veltrix", "Ornavia", "Bryxell", "Caldora", "Drevane",
                            "Fennomar", "Glimvar", "Harvex",  "Ixalon",  "Jorvath", "Krestel",
                            "Lumoria", "Morvant", "Nyxalor", "Olbanex", "Praxim",  "Quillon",
                            "Rostova", "Sylvant", "Tarnox",  "Umbrel",  "Vorlan",  "Wexford",
                            "Xandor",  "Yelvane", "Zorvex",  "Ambrix",  "Beltran", "Cindral"};
const char* kNameSecond[] = {"Dynamics", "Systems",  "Partners", "Sciences", "Industries",
                             "Ventures", "Networks", "Capital",  "Materials", "Energy"};
const char* kSuffix[] = {"Inc", "Corp", "Co", "Ltd"};

const char* kFillerSentences[] = {
    "Markets wobbled through the session as traders weighed the latest economic data.",
    "Analysts expect the trend to continue into the next quarter.",
    "The broader index closed little changed after a choppy session.",
    "Futures pointed to a muted open ahead of the policy meeting.",
    "Bond yields drifted lower while commodities were mixed.",
    "Volume was light compared with the trailing average.",
    "Strategists flagged valuations as a key risk into earnings season.",
    "The report cited supply conditions and shifting demand.",
};

const char* kHeadlineVerbs[] = {"beats estimates",       "unveils new product line",
                                "raises full-year outlook", "misses on revenue",
                                "announces buyback",     "expands into new markets",
                                "reports record quarter", "cuts guidance"};

std::string make_ticker(int idx) {
    // four letters, unique per index
    std::string t(4, 'A');
    t[0] = static_cast<char>('A' + (idx / (26 * 26)) % 26);
    t[1] = static_cast<char>('A' + (idx / 26) % 26);
    t[2] = static_cast<char>('A' + idx % 26);
    t[3] = 'X';
    return t;
}

std::string pick(const char* const* arr, std::size_t n, Rng& rng) {
    return arr[rng.uniform_int(0, static_cast<int>(n) - 1)];
}

std::string filler(Rng& rng, int sentences) {
    std::string out;
    for (int i = 0; i < sentences; ++i) {
        if (!out.empty()) out += ' ';
        out += pick(kFillerSentences, std::size(kFillerSentences), rng);
    }
    return out;
}

}  // namespace

SynthConfig load_synth_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file '" + path + "'");
    SynthConfig c;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string key, value;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
            if (blank) continue;
            throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                     ": expected key=value");
        }
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        key = trim(line.substr(0, eq));
        value = trim(line.substr(eq + 1));
        if (key == "n_firms") c.n_firms = std::stoi(value);
        else if (key == "n_lead_firms") c.n_lead_firms = std::stoi(value);
        else if (key == "n_days") c.n_days = std::stoi(value);
        else if (key == "seed") c.seed = std::stoull(value);
        else if (key == "start_date") c.start_date = value;
        else if (key == "mkt_vol") c.mkt_vol = std::stod(value);
        else if (key == "smb_vol") c.smb_vol = std::stod(value);
        else if (key == "hml_vol") c.hml_vol = std::stod(value);
        else if (key == "rmw_vol") c.rmw_vol = std::stod(value);
        else if (key == "cma_vol") c.cma_vol = std::stod(value);
        else if (key == "rf_daily") c.rf_daily = std::stod(value);
        else if (key == "noise_vol") c.noise_vol = std::stod(value);
        else if (key == "beta_comove") c.beta_comove = std::stod(value);
        else if (key == "beta_reversal") c.beta_reversal = std::stod(value);
        else if (key == "articles_per_day") c.articles_per_day = std::stod(value);
        else if (key == "links_per_follower") c.links_per_follower = std::stoi(value);
        else if (key == "p_bracket") c.p_bracket = std::stod(value);
        else if (key == "p_segment") c.p_segment = std::stod(value);
        else if (key == "p_plain") c.p_plain = std::stod(value);
        else if (key == "p_early_morning") c.p_early_morning = std::stod(value);
        else if (key == "distractor_rate") c.distractor_rate = std::stod(value);
        else if (key == "net_window_days") c.net_window_days = std::stoi(value);
        else
            throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                     ": unknown key '" + key + "'");
    }
    if (c.n_firms < 10) throw std::runtime_error(path + ": n_firms must be >= 10");
    if (c.n_lead_firms < 1 || c.n_lead_firms >= c.n_firms)
        throw std::runtime_error(path + ": n_lead_firms out of range");
    for (double p : {c.p_bracket, c.p_segment, c.p_plain, c.p_early_morning, c.distractor_rate})
        if (p < 0 || p > 1) throw std::runtime_error(path + ": rates must be within [0,1]");
    return c;
}

void save_synth_config(const std::string& path, const SynthConfig& c) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open file '" + path + "' for writing");
    out << "n_firms = " << c.n_firms << "\n";
    out << "n_lead_firms = " << c.n_lead_firms << "\n";
    out << "n_days = " << c.n_days << "\n";
    out << "seed = " << c.seed << "\n";
    out << "start_date = " << c.start_date << "\n";
    char buf[64];
    auto put = [&](const char* key, double v) {
        std::snprintf(buf, sizeof buf, "%.12g", v);
        out << key << " = " << buf << "\n";
    };
    put("mkt_vol", c.mkt_vol);
    put("smb_vol", c.smb_vol);
    put("hml_vol", c.hml_vol);
    put("rmw_vol", c.rmw_vol);
    put("cma_vol", c.cma_vol);
    put("rf_daily", c.rf_daily);
    put("noise_vol", c.noise_vol);
    put("beta_comove", c.beta_comove);
    put("beta_reversal", c.beta_reversal);
    put("articles_per_day", c.articles_per_day);
    out << "links_per_follower = " << c.links_per_follower << "\n";
    put("p_bracket", c.p_bracket);
    put("p_segment", c.p_segment);
    put("p_plain", c.p_plain);
    put("p_early_morning", c.p_early_morning);
    put("distractor_rate", c.distractor_rate);
    out << "net_window_days = " << c.net_window_days << "\n";
}

SynthMarket generate_market(const SynthConfig& config) {
    if (config.n_firms < 10) throw std::runtime_error("generate_market: n_firms must be >= 10");
    Rng rng(config.seed);
    SynthMarket market;

    // trading calendar: weekdays, n_days + 1 dates so n_days returns exist
    std::vector<Date> dates;
    Date d = parse_date(config.start_date);
    while (static_cast<int>(dates.size()) < config.n_days + 1) {
        if (!is_weekend(d)) dates.push_back(d);
        d += std::chrono::days{1};
    }
    market.calendar = TradingCalendar(dates);

    // firm master: hubs first, then followers
    for (int i = 0; i < config.n_firms; ++i) {
        FirmMaster::Firm firm;
        firm.ticker = make_ticker(i);
        std::string first = kNameFirst[i % std::size(kNameFirst)];
        if (i >= static_cast<int>(std::size(kNameFirst))) first += make_ticker(i).substr(0, 2);
        firm.full_name = first + " " + kNameSecond[(i / 3) % std::size(kNameSecond)] + " " +
                         kSuffix[i % std::size(kSuffix)];
        firm.sector = kSectors[i % std::size(kSectors)];
        market.firms.ticker_index[firm.ticker] = i;
        market.firms.firms.push_back(std::move(firm));
    }
    // membership also covers the warm-up month(s) holding pre-sample linkages
    for (YearMonth ym = year_month(dates.front() - std::chrono::days{31});
         ym <= year_month(dates.back()); ym = add_months(ym, 1)) {
        for (const auto& f : market.firms.firms) market.firms.membership[ym].insert(f.ticker);
    }

    // factor series
    for (Date t : dates) {
        FactorRow f;
        f.mkt_rf = rng.normal() * config.mkt_vol;
        f.smb = rng.normal() * config.smb_vol;
        f.hml = rng.normal() * config.hml_vol;
        f.rmw = rng.normal() * config.rmw_vol;
        f.cma = rng.normal() * config.cma_vol;
        f.rf = config.rf_daily;
        market.factors.rows[t] = f;
    }

    // loadings; hub firms stay factor-neutral so the lead-return composite is
    // orthogonal to the factor span and survives residualization intact
    std::vector<FactorLoadings> loadings(config.n_firms);
    for (int i = 0; i < config.n_firms; ++i) {
        FactorLoadings ld;
        ld.intercept = 0.0;
        if (i >= config.n_lead_firms) {
            ld.mkt = 1.0 + 0.4 * (rng.uniform() - 0.5);
            ld.smb = 0.6 * (rng.uniform() - 0.5);
            ld.hml = 0.6 * (rng.uniform() - 0.5);
            ld.rmw = 0.4 * (rng.uniform() - 0.5);
            ld.cma = 0.4 * (rng.uniform() - 0.5);
        }
        loadings[i] = ld;
        market.true_loadings[market.firms.firms[i].ticker] = ld;
    }

    // linkage plan: every follower is tied to a fixed set of hubs; articles
    // arrive through the sample and in a warm-up span before the first date,
    // so the rolling window is populated from day one.
    const int n_hubs = config.n_lead_firms;
    std::vector<std::vector<int>> hubs_of(config.n_firms);
    for (int i = n_hubs; i < config.n_firms; ++i) {
        std::vector<int> pool(n_hubs);
        for (int h = 0; h < n_hubs; ++h) pool[h] = h;
        for (int pick_n = 0; pick_n < std::min(config.links_per_follower, n_hubs); ++pick_n) {
            int j = rng.uniform_int(pick_n, n_hubs - 1);
            std::swap(pool[pick_n], pool[j]);
            hubs_of[i].push_back(pool[pick_n]);
        }
        std::sort(hubs_of[i].begin(), hubs_of[i].end());
    }

    auto ticker_of = [&](int idx) { return market.firms.firms[idx].ticker; };

    // warm-up linkages: one article per (follower, hub) pair, spread over the
    // 30 calendar days before the first trading date
    for (int i = n_hubs; i < config.n_firms; ++i) {
        for (int h : hubs_of[i]) {
            Date day = dates.front() - std::chrono::days{rng.uniform_int(1, 30)};
            market.plan.push_back({ticker_of(i), ticker_of(h), day});
        }
    }
    // in-sample linkages at the configured intensity
    for (Date t : dates) {
        int n_articles = static_cast<int>(config.articles_per_day);
        if (rng.uniform() < config.articles_per_day - n_articles) ++n_articles;
        for (int a = 0; a < n_articles; ++a) {
            int i = rng.uniform_int(n_hubs, config.n_firms - 1);
            const auto& hubs = hubs_of[i];
            int h = hubs[rng.uniform_int(0, static_cast<int>(hubs.size()) - 1)];
            market.plan.push_back({ticker_of(i), ticker_of(h), t});
        }
    }
    std::stable_sort(market.plan.begin(), market.plan.end(),
                     [](const LinkagePlanItem& a, const LinkagePlanItem& b) {
                         return a.info_day < b.info_day;
                     });

    // rolling pair counts over the network window
    std::map<std::pair<int, int>, int> window_counts;
    std::deque<std::pair<Date, std::pair<int, int>>> window_items;
    std::size_t plan_pos = 0;
    auto advance_window = [&](Date t) {
        while (plan_pos < market.plan.size() && market.plan[plan_pos].info_day <= t) {
            const auto& item = market.plan[plan_pos];
            std::pair<int, int> key{market.firms.ticker_index.at(item.follower),
                                    market.firms.ticker_index.at(item.lead)};
            ++window_counts[key];
            window_items.emplace_back(item.info_day, key);
            ++plan_pos;
        }
        Date cutoff = t - std::chrono::days{config.net_window_days};
        while (!window_items.empty() && window_items.front().first < cutoff) {
            auto key = window_items.front().second;
            if (--window_counts[key] == 0) window_counts.erase(key);
            window_items.pop_front();
        }
    };

    // simulate log returns day by day; hubs first, followers add the planted
    // lead-return composite
    std::vector<std::vector<double>> r(config.n_firms, std::vector<double>(config.n_days, 0.0));
    std::vector<double> prev_lr(config.n_firms, 0.0);
    for (int t = 0; t < config.n_days; ++t) {
        Date day = dates[t];
        advance_window(day);
        const FactorRow& f = market.factors.rows.at(day);
        auto base = [&](int i) {
            const FactorLoadings& ld = loadings[i];
            return f.rf + ld.mkt * f.mkt_rf + ld.smb * f.smb + ld.hml * f.hml + ld.rmw * f.rmw +
                   ld.cma * f.cma;
        };
        for (int i = 0; i < n_hubs; ++i) r[i][t] = base(i) + rng.normal() * config.noise_vol;
        for (int i = n_hubs; i < config.n_firms; ++i) {
            double n_i = 0, lr = 0;
            for (int h : hubs_of[i]) {
                auto it = window_counts.find({i, h});
                if (it != window_counts.end()) n_i += it->second;
            }
            if (n_i > 0) {
                for (int h : hubs_of[i]) {
                    auto it = window_counts.find({i, h});
                    if (it != window_counts.end()) lr += it->second / n_i * r[h][t];
                }
            }
            r[i][t] = base(i) + config.beta_comove * lr + config.beta_reversal * prev_lr[i] +
                      rng.normal() * config.noise_vol;
            market.true_lead_return[ticker_of(i)][day] = lr;
            prev_lr[i] = lr;
        }
        for (int i = 0; i < n_hubs; ++i) market.true_lead_return[ticker_of(i)][day] = 0.0;
        for (int i = 0; i < config.n_firms; ++i)
            market.returns.by_ticker[ticker_of(i)][day] = r[i][t];
    }

    // integrate opens; shares/volume/book equity give the characteristics some
    // cross-sectional spread
    for (int i = 0; i < config.n_firms; ++i) {
        double open = 20.0 + 5.0 * (i % 17) + 10.0 * rng.uniform();
        double shares = 1e6 * (1.0 + rng.uniform() * 9.0);
        double turnover_level = 0.002 + 0.018 * rng.uniform();
        double book_fraction = 0.2 + 0.6 * rng.uniform();
        double book = book_fraction * open * shares;
        for (int t = 0; t <= config.n_days; ++t) {
            PricePoint p;
            p.open = open;
            p.shares_out = shares;
            p.volume = shares * turnover_level * (0.5 + rng.uniform());
            p.book_equity = book;
            market.prices.by_ticker[ticker_of(i)][dates[t]] = p;
            if (t < config.n_days) open *= std::exp(r[i][t]);
        }
    }
    return market;
}

namespace {

std::string surface_bracket(const FirmMaster::Firm& firm, Rng& rng) {
    const char* exchange = rng.uniform() < 0.5 ? "NASDAQ" : "NYSE";
    const char* sep = rng.uniform() < 0.5 ? ": " : ":";
    return firm.full_name + " (" + exchange + sep + firm.ticker + ")";
}

std::string segment_of(const FirmMaster::Firm& firm) {
    auto sp = firm.full_name.find(' ');
    return sp == std::string::npos ? firm.full_name : firm.full_name.substr(0, sp);
}

}  // namespace

SynthCorpus generate_corpus(const std::vector<LinkagePlanItem>& plan, const FirmMaster& firms,
                            const SynthConfig& config, const TradingCalendar& calendar) {
    Rng rng(config.seed ^ 0xC0FFEEULL);
    SynthCorpus corpus;
    int next_id = 0;
    auto new_id = [&]() {
        char buf[16];
        std::snprintf(buf, sizeof buf, "syn-%06d", next_id++);
        return std::string(buf);
    };
    auto stamp = [&](Date info_day) {
        // inside [09:00 day, 09:00 day+1) New York time
        Date local_date = info_day;
        int hour, minute = rng.uniform_int(0, 59);
        if (rng.uniform() < config.p_early_morning) {
            local_date += std::chrono::days{1};
            hour = rng.uniform_int(5, 8);
        } else {
            hour = rng.uniform_int(9, 20);
        }
        int offset = new_york_offset_minutes_on(local_date);
        std::int64_t local_sec = std::int64_t(local_date.time_since_epoch().count()) * 86400 +
                                 hour * 3600 + minute * 60;
        return format_timestamp(Timestamp{local_sec - offset * 60}, offset);
    };
    auto push_article = [&](const std::string& id, Date info_day, std::string headline,
                            std::string content) {
        Article a;
        a.id = id;
        a.raw_timestamp = stamp(info_day);
        a.timestamp = parse_timestamp(a.raw_timestamp);
        a.headline = std::move(headline);
        a.content = std::move(content);
        a.publisher = rng.uniform() < 0.5 ? "SynthWire" : "ModelStreet";
        a.info_day = assign_info_day(a.timestamp, calendar);
        corpus.articles.articles.push_back(std::move(a));
    };

    for (const LinkagePlanItem& item : plan) {
        const auto& lead = firms.firm(item.lead);
        const auto& follower = firms.firm(item.follower);
        double u = rng.uniform();
        std::string headline;
        if (u < config.p_bracket) {
            headline = surface_bracket(lead, rng);
        } else if (u < config.p_bracket + config.p_segment) {
            headline = segment_of(lead);
        } else {
            headline = lead.ticker;  // plain long ticker, S3 territory
        }
        headline += " ";
        headline += kHeadlineVerbs[rng.uniform_int(0, std::size(kHeadlineVerbs) - 1)];
        std::string follower_mention = rng.uniform() < 0.5 ? surface_bracket(follower, rng)
                                                           : segment_of(follower);
        std::string content = filler(rng, rng.uniform_int(1, 2));
        content += " Shares of " + follower_mention + " moved in sympathy. ";
        content += filler(rng, rng.uniform_int(1, 2));
        std::string id = new_id();
        push_article(id, item.info_day, std::move(headline), std::move(content));
        corpus.oracle.push_back(item);

        if (rng.uniform() < config.distractor_rate) {
            // one planted screening violation with a known verdict; none of
            // these may yield a kept pair
            Date day = item.info_day;
            const int n = static_cast<int>(firms.firms.size());
            int kind = rng.uniform_int(0, 3);
            if (kind == 1 && n < 13) kind = 3;  // too few firms to overflow the follower cap
            std::string did = new_id();
            if (kind == 0) {
                int lead_idx = firms.ticker_index.at(lead.ticker);
                const auto& other = firms.firms[(lead_idx + 1 + rng.uniform_int(0, n - 2)) % n];
                push_article(did, day,
                             surface_bracket(lead, rng) + " and " + surface_bracket(other, rng) +
                                 " both rally",
                             filler(rng, 2) + " Shares of " + segment_of(follower) + " rose. " +
                                 filler(rng, 1));
                corpus.distractors.push_back({did, Verdict::DroppedMultiLead});
            } else if (kind == 1) {
                std::string content = filler(rng, 1);
                int added = 0;
                for (int i = 0; i < n && added < 11; ++i) {  // one above the follower cap
                    if (firms.firms[i].ticker == lead.ticker) continue;
                    content += " " + surface_bracket(firms.firms[i], rng) + " was mentioned.";
                    ++added;
                }
                push_article(did, day, surface_bracket(lead, rng) + " dominates the tape",
                             std::move(content));
                corpus.distractors.push_back({did, Verdict::DroppedTooManyFollowers});
            } else if (kind == 2) {
                push_article(did, day, "Markets rally as yields fall",
                             filler(rng, 2) + " Shares of " + segment_of(follower) + " rose. " +
                                 filler(rng, 1));
                corpus.distractors.push_back({did, Verdict::DroppedNoLead});
            } else {
                push_article(did, day, surface_bracket(lead, rng) + " holds annual meeting",
                             filler(rng, 3));
                corpus.distractors.push_back({did, Verdict::DroppedNoFollowers});
            }
        }
    }
    return corpus;
}

void write_dataset(const std::string& dir, const SynthMarket& market, const SynthCorpus& corpus) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    save_articles((fs::path(dir) / "articles.jsonl").string(), corpus.articles);

    std::ofstream firms(fs::path(dir) / "firms.csv");
    firms << "ticker,full_name,sector\n";
    for (const auto& f : market.firms.firms)
        firms << f.ticker << ',' << csv_escape(f.full_name) << ',' << csv_escape(f.sector) << "\n";

    std::ofstream members(fs::path(dir) / "membership.csv");
    members << "month,ticker\n";
    for (const auto& [ym, tickers] : market.firms.membership)
        for (const auto& t : tickers) members << format_year_month(ym) << ',' << t << "\n";

    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.10g", v);
        return std::string(buf);
    };

    std::ofstream prices(fs::path(dir) / "prices.csv");
    prices << "date,ticker,open,volume,shares_out,book_equity_lagged\n";
    for (Date d : market.calendar.dates()) {
        for (const auto& [ticker, series] : market.prices.by_ticker) {
            auto it = series.find(d);
            if (it == series.end()) continue;
            prices << format_date(d) << ',' << ticker << ',' << num(it->second.open) << ','
                   << num(it->second.volume) << ',' << num(it->second.shares_out) << ','
                   << num(it->second.book_equity) << "\n";
        }
    }

    std::ofstream factors(fs::path(dir) / "factors.csv");
    factors << "date,mkt_rf,smb,hml,rmw,cma,rf\n";
    for (const auto& [d, f] : market.factors.rows)
        factors << format_date(d) << ',' << num(f.mkt_rf) << ',' << num(f.smb) << ','
                << num(f.hml) << ',' << num(f.rmw) << ',' << num(f.cma) << ',' << num(f.rf)
                << "\n";

    std::ofstream oracle(fs::path(dir) / "oracle_linkages.csv");
    oracle << "follower,lead,info_day\n";
    for (const auto& item : corpus.oracle)
        oracle << item.follower << ',' << item.lead << ',' << format_date(item.info_day) << "\n";
}

}  // namespace newsnet
