#pragma once

#include <map>
#include <string>
#include <vector>

#include "newsnet/network.hpp"

namespace newsnet {

enum class SignFilter { All, Pos, Neg };

struct LeadReturnResult {
    std::map<std::string, double> values;
    int missing_lead_returns = 0;  // terms skipped because r_jt was absent
};

// LR_i = sum_j omega_ij r_jt (Pos keeps max(r,0), Neg keeps |min(r,0)|).
// Rows with no out-links yield 0.
LeadReturnResult lead_return(const NewsNetwork& network,
                             const std::map<std::string, double>& returns_at_t,
                             SignFilter filter);

// LR+ (within) + LR- (within) + LR- (cross) - LR+ (cross)
double lead_return_agg(double pos_within, double neg_within, double pos_cross, double neg_cross);

enum class LrVariant { Full, Within, Cross, Big, Small, High, Low, Pos, Neg, Agg };
std::string_view lr_variant_name(LrVariant v);
constexpr LrVariant kAllLrVariants[] = {LrVariant::Full, LrVariant::Within, LrVariant::Cross,
                                        LrVariant::Big,  LrVariant::Small,  LrVariant::High,
                                        LrVariant::Low,  LrVariant::Pos,    LrVariant::Neg,
                                        LrVariant::Agg};

struct LeadReturnPanel {
    // variant -> ticker -> date -> value
    std::map<LrVariant, std::map<std::string, std::map<Date, double>>> values;
    int missing_lead_returns = 0;
};

// One network per trading day t over [t - window_days, t] calendar days,
// universe = membership at t's month; all variants evaluated at t.
LeadReturnPanel daily_lead_return_panel(const std::vector<Linkage>& linkages,
                                        const TradingCalendar& calendar, const FirmMaster& firms,
                                        const PricePanel& prices, const ReturnPanel& returns,
                                        int window_days, double quantile_low = 0.3,
                                        double quantile_high = 0.7);

enum class DegreeVariant { Total, Lead, Follower, Within, Cross, Big, Small, High, Low };
std::string_view degree_variant_name(DegreeVariant v);
constexpr DegreeVariant kAllDegreeVariants[] = {
    DegreeVariant::Total, DegreeVariant::Lead, DegreeVariant::Follower,
    DegreeVariant::Within, DegreeVariant::Cross, DegreeVariant::Big,
    DegreeVariant::Small, DegreeVariant::High, DegreeVariant::Low};

struct DegreePanel {
    // variant -> ticker -> month -> degree
    std::map<DegreeVariant, std::map<std::string, std::map<YearMonth, int>>> values;
};

// One network per month over [month_end - window_days, month_end] calendar
// days; month_end is the last calendar day of the month.
DegreePanel monthly_degree_panel(const std::vector<Linkage>& linkages,
                                 const std::vector<YearMonth>& months, const FirmMaster& firms,
                                 const PricePanel& prices, const TradingCalendar& calendar,
                                 int window_days, double quantile_low = 0.3,
                                 double quantile_high = 0.7);

}  // namespace newsnet
