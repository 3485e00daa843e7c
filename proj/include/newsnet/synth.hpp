#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "newsnet/corpus.hpp"
#include "newsnet/econ.hpp"
#include "newsnet/identify.hpp"

namespace newsnet {

// Deterministic generator state: 64-bit Mersenne Twister plus hand-rolled
// uniform/normal transforms so that streams do not depend on the standard
// library's distribution internals.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64();
    double uniform();                 // [0, 1)
    double normal();                  // standard normal, Box-Muller
    int uniform_int(int lo, int hi);  // inclusive bounds

  private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0;
};

struct SynthConfig {
    int n_firms = 30;
    int n_lead_firms = 8;
    int n_days = 260;  // return days; the calendar has one extra date for the last open
    std::uint64_t seed = 1;
    std::string start_date = "2016-01-04";

    double mkt_vol = 0.010, smb_vol = 0.005, hml_vol = 0.005, rmw_vol = 0.004, cma_vol = 0.004;
    double rf_daily = 1e-5;
    double noise_vol = 0.010;
    double beta_comove = 0.75;
    double beta_reversal = 0.0;

    double articles_per_day = 4.0;
    int links_per_follower = 3;
    double p_bracket = 0.50, p_segment = 0.35, p_plain = 0.15;  // headline surface forms
    double p_early_morning = 0.10;  // timestamp before 09:00 next day, same info day
    double distractor_rate = 0.10;
    int net_window_days = 365;
};

SynthConfig load_synth_config(const std::string& path);
void save_synth_config(const std::string& path, const SynthConfig& config);

struct LinkagePlanItem {
    std::string follower;
    std::string lead;
    Date info_day;
};

struct SynthMarket {
    TradingCalendar calendar;
    FirmMaster firms;
    PricePanel prices;
    FactorSeries factors;
    std::vector<LinkagePlanItem> plan;
    // ground truth
    std::map<std::string, FactorLoadings> true_loadings;
    Panel true_lead_return;  // the composite entering follower returns
    ReturnPanel returns;     // log returns actually planted
};

SynthMarket generate_market(const SynthConfig& config);

struct PlannedDistractor {
    std::string article_id;
    Verdict expected_verdict;
};

struct SynthCorpus {
    ArticleSet articles;
    std::vector<LinkagePlanItem> oracle;  // pairs the pipeline must recover
    std::vector<PlannedDistractor> distractors;
};

SynthCorpus generate_corpus(const std::vector<LinkagePlanItem>& plan, const FirmMaster& firms,
                            const SynthConfig& config, const TradingCalendar& calendar);

// Writes articles.jsonl, firms.csv, membership.csv, prices.csv, factors.csv
// and oracle_linkages.csv under dir.
void write_dataset(const std::string& dir, const SynthMarket& market, const SynthCorpus& corpus);

}  // namespace newsnet
