#include "newsnet/identify.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "newsnet/csv.hpp"

namespace newsnet {

namespace {

bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

bool boundary_before(std::string_view text, std::size_t pos) {
    return pos == 0 || !word_char(text[pos - 1]);
}

bool boundary_after(std::string_view text, std::size_t end) {
    return end >= text.size() || !word_char(text[end]);
}

bool ticker_like(std::string_view s) {
    if (s.empty() || s.size() > 6) return false;
    for (char c : s)
        if (!(std::isupper(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) ||
              c == '.'))
            return false;
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string> tokenize_name(std::string_view name) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : name) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) tokens.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    // strip trailing punctuation such as '.' or ',' on each token
    for (std::string& t : tokens) {
        while (!t.empty() && (t.back() == '.' || t.back() == ',')) t.pop_back();
    }
    tokens.erase(std::remove_if(tokens.begin(), tokens.end(),
                                [](const std::string& t) { return t.empty(); }),
                 tokens.end());
    return tokens;
}

}  // namespace

std::string_view strategy_name(Strategy s) {
    switch (s) {
        case Strategy::S1: return "S1";
        case Strategy::S2: return "S2";
        case Strategy::S3: return "S3";
    }
    return "?";
}

Strategy parse_strategy(std::string_view s) {
    if (s == "S1") return Strategy::S1;
    if (s == "S2") return Strategy::S2;
    if (s == "S3") return Strategy::S3;
    throw std::runtime_error("unknown strategy tag '" + std::string(s) + "'");
}

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Kept: return "kept";
        case Verdict::DroppedMultiLead: return "dropped(multi-lead)";
        case Verdict::DroppedTooManyFollowers: return "dropped(too-many-followers)";
        case Verdict::DroppedNoLead: return "dropped(no-lead)";
        case Verdict::DroppedNoFollowers: return "dropped(no-followers)";
    }
    return "?";
}

IdentConfig default_ident_config() {
    IdentConfig c;
    // Starter exception list; real deployments extend it via the config file.
    c.ticker_exceptions = {"A",  "C",   "COO", "GPS", "PEG", "ALL", "KEY", "SO",
                           "IT", "NOW", "ON",  "ARE", "HAS", "FOR", "CAT", "HD"};
    c.suffix_stopwords = {"Inc",  "Inc.", "Corp", "Corp.", "Co",      "Co.",  "Ltd",
                          "Ltd.", "Plc",  "PLC",  "LLC",   "Company", "Group", "Holdings",
                          "&",    "and",  "The",  "Corporation", "Incorporated"};
    c.segment_redundant = {};
    return c;
}

IdentConfig load_ident_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file '" + path + "'");
    IdentConfig config;  // file contents replace the starter lists entirely
    std::set<std::string>* section = nullptr;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view v = trim(line);
        if (v.empty() || v.front() == '#') continue;
        if (v.front() == '[') {
            if (v == "[ticker_exceptions]") section = &config.ticker_exceptions;
            else if (v == "[segment_redundant]") section = &config.segment_redundant;
            else if (v == "[suffix_stopwords]") section = &config.suffix_stopwords;
            else
                throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                         ": unknown section " + std::string(v));
            continue;
        }
        auto eq = v.find('=');
        if (eq != std::string_view::npos) {
            std::string_view key = trim(v.substr(0, eq));
            std::string_view val = trim(v.substr(eq + 1));
            if (key == "long_ticker_min_len") config.long_ticker_min_len = std::stoi(std::string(val));
            else if (key == "max_followers") config.max_followers = std::stoi(std::string(val));
            else
                throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                         ": unknown key '" + std::string(key) + "'");
            continue;
        }
        if (!section)
            throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                     ": entry outside any section");
        section->insert(std::string(v));
    }
    if (config.max_followers < 1) throw std::runtime_error(path + ": max_followers must be >= 1");
    if (config.long_ticker_min_len < 4)
        throw std::runtime_error(path + ": long_ticker_min_len must be >= 4");
    return config;
}

NameSegmentMap build_name_segments(const std::vector<FirmMaster::Firm>& firms,
                                   const IdentConfig& config) {
    NameSegmentMap map;
    std::set<std::string> collided;
    for (const auto& firm : firms) {
        std::vector<std::string> tokens = tokenize_name(firm.full_name);
        while (!tokens.empty() && config.suffix_stopwords.count(tokens.back())) tokens.pop_back();
        std::vector<std::string> segments;
        std::string prefix;
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            if (i > 0) prefix += ' ';
            prefix += tokens[i];
            if (i == 0 && tokens[i].size() < 3) continue;  // short single tokens are unsafe
            if (config.suffix_stopwords.count(tokens[i])) continue;  // no trailing stopword
            if (config.segment_redundant.count(prefix)) continue;
            segments.push_back(prefix);
        }
        bool any = false;
        for (const std::string& seg : segments) {
            auto it = map.segment_to_ticker.find(seg);
            if (it != map.segment_to_ticker.end() && it->second != firm.ticker) {
                collided.insert(seg);
                continue;
            }
            map.segment_to_ticker[seg] = firm.ticker;
            map.ticker_segments[firm.ticker].push_back(seg);
            any = true;
        }
        if (!any) map.unmatchable_firms.push_back(firm.ticker);
    }
    for (const std::string& seg : collided) {
        auto it = map.segment_to_ticker.find(seg);
        if (it == map.segment_to_ticker.end()) continue;
        auto& segs = map.ticker_segments[it->second];
        segs.erase(std::remove(segs.begin(), segs.end(), seg), segs.end());
        if (segs.empty()) {
            map.ticker_segments.erase(it->second);
            map.unmatchable_firms.push_back(it->second);
        }
        map.segment_to_ticker.erase(it);
    }
    return map;
}

std::set<std::string> s1_bracket_tickers(std::string_view text,
                                         const std::set<std::string>& universe,
                                         const IdentConfig& config) {
    std::set<std::string> out;
    std::size_t pos = 0;
    while ((pos = text.find('(', pos)) != std::string_view::npos) {
        std::size_t close = text.find(')', pos + 1);
        if (close == std::string_view::npos) break;
        std::string_view body = trim(text.substr(pos + 1, close - pos - 1));
        pos = close + 1;
        std::string_view symbol = body;
        auto colon = body.find(':');
        if (colon != std::string_view::npos) {
            std::string_view exchange = trim(body.substr(0, colon));
            if (exchange != "NASDAQ" && exchange != "NYSE") continue;
            symbol = trim(body.substr(colon + 1));
        }
        if (!ticker_like(symbol)) continue;
        std::string ticker(symbol);
        if (config.ticker_exceptions.count(ticker)) continue;
        if (universe.count(ticker)) out.insert(ticker);
    }
    return out;
}

std::set<std::string> s2_name_segments(std::string_view text, const NameSegmentMap& map) {
    // Collect every word-boundary occurrence, then sweep left to right taking
    // the longest candidate at each position so that a shorter segment cannot
    // fire inside a longer match.
    struct Hit {
        std::size_t begin, end;
        const std::string* ticker;
    };
    std::vector<Hit> hits;
    for (const auto& [segment, ticker] : map.segment_to_ticker) {
        std::size_t pos = 0;
        while ((pos = text.find(segment, pos)) != std::string_view::npos) {
            std::size_t end = pos + segment.size();
            if (boundary_before(text, pos) && boundary_after(text, end))
                hits.push_back({pos, end, &ticker});
            ++pos;
        }
    }
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
        if (a.begin != b.begin) return a.begin < b.begin;
        return a.end > b.end;
    });
    std::set<std::string> out;
    std::size_t cursor = 0;
    for (const Hit& h : hits) {
        if (h.begin < cursor) continue;
        out.insert(*h.ticker);
        cursor = h.end;
    }
    return out;
}

std::set<std::string> s3_plain_tickers(std::string_view headline_text,
                                       const std::set<std::string>& universe,
                                       const IdentConfig& config) {
    std::set<std::string> out;
    for (const std::string& ticker : universe) {
        if (static_cast<int>(ticker.size()) < config.long_ticker_min_len) continue;
        if (config.ticker_exceptions.count(ticker)) continue;
        std::size_t pos = 0;
        while ((pos = headline_text.find(ticker, pos)) != std::string_view::npos) {
            std::size_t end = pos + ticker.size();
            if (boundary_before(headline_text, pos) && boundary_after(headline_text, end)) {
                out.insert(ticker);
                break;
            }
            ++pos;
        }
    }
    return out;
}

namespace {

std::set<std::string> restrict_to_universe(std::set<std::string> tickers,
                                           const std::set<std::string>& universe) {
    for (auto it = tickers.begin(); it != tickers.end();) {
        if (!universe.count(*it)) it = tickers.erase(it);
        else ++it;
    }
    return tickers;
}

}  // namespace

HeadlineIdent identify_headline(std::string_view headline, const NameSegmentMap& map,
                                const std::set<std::string>& universe, const IdentConfig& config) {
    HeadlineIdent out;
    out.tickers = s1_bracket_tickers(headline, universe, config);
    out.strategy = Strategy::S1;
    if (!out.tickers.empty()) return out;
    out.tickers = restrict_to_universe(s2_name_segments(headline, map), universe);
    out.strategy = Strategy::S2;
    if (!out.tickers.empty()) return out;
    out.tickers = s3_plain_tickers(headline, universe, config);
    out.strategy = Strategy::S3;
    return out;
}

std::map<std::string, Strategy> identify_content(std::string_view content,
                                                 const NameSegmentMap& map,
                                                 const std::set<std::string>& universe,
                                                 const IdentConfig& config) {
    std::map<std::string, Strategy> out;
    for (const std::string& t : restrict_to_universe(s2_name_segments(content, map), universe))
        out.emplace(t, Strategy::S2);
    for (const std::string& t : s1_bracket_tickers(content, universe, config))
        out[t] = Strategy::S1;  // S1 provenance wins when both fire
    return out;
}

IdentResult extract_linkages(const Article& article, const NameSegmentMap& map,
                             const std::set<std::string>& universe, const IdentConfig& config) {
    IdentResult result;
    result.article_id = article.id;
    result.info_day = article.info_day;
    HeadlineIdent head = identify_headline(article.headline, map, universe, config);
    result.leads = head.tickers;
    result.lead_strategy = head.strategy;
    if (result.leads.empty()) {
        result.verdict = Verdict::DroppedNoLead;
        return result;
    }
    if (result.leads.size() > 1) {
        result.verdict = Verdict::DroppedMultiLead;
        return result;
    }
    result.followers = identify_content(article.content, map, universe, config);
    for (const std::string& lead : result.leads) result.followers.erase(lead);
    if (result.followers.empty()) {
        result.verdict = Verdict::DroppedNoFollowers;
        return result;
    }
    if (static_cast<int>(result.followers.size()) > config.max_followers) {
        result.verdict = Verdict::DroppedTooManyFollowers;
        return result;
    }
    result.verdict = Verdict::Kept;
    return result;
}

std::vector<Linkage> to_linkages(const IdentResult& result) {
    std::vector<Linkage> out;
    if (result.verdict != Verdict::Kept) return out;
    const std::string& lead = *result.leads.begin();
    for (const auto& [follower, strategy] : result.followers)
        out.push_back({result.article_id, result.info_day, lead, follower, result.lead_strategy,
                       strategy});
    return out;
}

void save_linkages(const std::string& path, const std::vector<Linkage>& linkages) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open file '" + path + "' for writing");
    out << "article_id,info_day,lead,follower,strategy_lead,strategy_follower\n";
    for (const Linkage& l : linkages) {
        out << csv_escape(l.article_id) << ',' << format_date(l.info_day) << ',' << l.lead << ','
            << l.follower << ',' << strategy_name(l.lead_strategy) << ','
            << strategy_name(l.follower_strategy) << "\n";
    }
}

std::vector<Linkage> load_linkages(const std::string& path) {
    CsvTable table = read_csv(path);
    int c_id = table.column("article_id");
    int c_day = table.column("info_day");
    int c_lead = table.column("lead");
    int c_follower = table.column("follower");
    int c_sl = table.column("strategy_lead");
    int c_sf = table.column("strategy_follower");
    std::vector<Linkage> out;
    for (const auto& row : table.rows) {
        out.push_back({row[c_id], parse_date(row[c_day]), row[c_lead], row[c_follower],
                       parse_strategy(row[c_sl]), parse_strategy(row[c_sf])});
    }
    return out;
}

}  // namespace newsnet
