#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "newsnet/corpus.hpp"

namespace newsnet {

struct IdentConfig {
    std::set<std::string> ticker_exceptions;   // never matched by S1/S3
    std::set<std::string> segment_redundant;   // excluded from the segment map
    std::set<std::string> suffix_stopwords;    // dropped from trailing full-name tokens
    int long_ticker_min_len = 4;               // S3 eligibility
    int max_followers = 10;
};

// Plain-text file with [ticker_exceptions], [segment_redundant],
// [suffix_stopwords] sections, one entry per line; '#' starts a comment.
IdentConfig load_ident_config(const std::string& path);
IdentConfig default_ident_config();

struct NameSegmentMap {
    std::map<std::string, std::string> segment_to_ticker;
    std::map<std::string, std::vector<std::string>> ticker_segments;  // shortest first
    std::vector<std::string> unmatchable_firms;  // every segment excluded
};

NameSegmentMap build_name_segments(const std::vector<FirmMaster::Firm>& firms,
                                   const IdentConfig& config);

enum class Strategy { S1, S2, S3 };
std::string_view strategy_name(Strategy s);

std::set<std::string> s1_bracket_tickers(std::string_view text,
                                         const std::set<std::string>& universe,
                                         const IdentConfig& config);
std::set<std::string> s2_name_segments(std::string_view text, const NameSegmentMap& map);
std::set<std::string> s3_plain_tickers(std::string_view headline_text,
                                       const std::set<std::string>& universe,
                                       const IdentConfig& config);

struct HeadlineIdent {
    std::set<std::string> tickers;
    Strategy strategy = Strategy::S1;  // meaningful only when tickers non-empty
};

// Headline: S1 > S2 > S3, lower priority applies only when higher found nothing.
HeadlineIdent identify_headline(std::string_view headline, const NameSegmentMap& map,
                                const std::set<std::string>& universe, const IdentConfig& config);

// Content: union of S1 and S2; S3 is never applied to content.
std::map<std::string, Strategy> identify_content(std::string_view content,
                                                 const NameSegmentMap& map,
                                                 const std::set<std::string>& universe,
                                                 const IdentConfig& config);

enum class Verdict {
    Kept,
    DroppedMultiLead,
    DroppedTooManyFollowers,
    DroppedNoLead,
    DroppedNoFollowers,
};
std::string_view verdict_name(Verdict v);

struct IdentResult {
    std::string article_id;
    Date info_day;
    std::set<std::string> leads;
    Strategy lead_strategy = Strategy::S1;
    std::map<std::string, Strategy> followers;
    Verdict verdict = Verdict::DroppedNoLead;
};

IdentResult extract_linkages(const Article& article, const NameSegmentMap& map,
                             const std::set<std::string>& universe, const IdentConfig& config);

struct Linkage {
    std::string article_id;
    Date info_day;
    std::string lead;
    std::string follower;
    Strategy lead_strategy = Strategy::S1;
    Strategy follower_strategy = Strategy::S1;
};

// Kept results expand to one (follower -> lead) pair per follower.
std::vector<Linkage> to_linkages(const IdentResult& result);

void save_linkages(const std::string& path, const std::vector<Linkage>& linkages);
std::vector<Linkage> load_linkages(const std::string& path);

}  // namespace newsnet
