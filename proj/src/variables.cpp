#include "newsnet/variables.hpp"

#include <algorithm>
#include <stdexcept>

namespace newsnet {

LeadReturnResult lead_return(const NewsNetwork& network,
                             const std::map<std::string, double>& returns_at_t,
                             SignFilter filter) {
    LeadReturnResult out;
    for (int i = 0; i < network.size(); ++i) {
        double lr = 0;
        for (const auto& [j, w] : network.weights[i]) {
            auto it = returns_at_t.find(network.universe[j]);
            if (it == returns_at_t.end()) {
                ++out.missing_lead_returns;  // term excluded, weights untouched
                continue;
            }
            double r = it->second;
            switch (filter) {
                case SignFilter::All: lr += w * r; break;
                case SignFilter::Pos: lr += w * std::max(r, 0.0); break;
                case SignFilter::Neg: lr += w * std::max(-r, 0.0); break;
            }
        }
        out.values[network.universe[i]] = lr;
    }
    return out;
}

double lead_return_agg(double pos_within, double neg_within, double pos_cross, double neg_cross) {
    return pos_within + neg_within + neg_cross - pos_cross;
}

std::string_view lr_variant_name(LrVariant v) {
    switch (v) {
        case LrVariant::Full: return "LR_full";
        case LrVariant::Within: return "LR_within";
        case LrVariant::Cross: return "LR_cross";
        case LrVariant::Big: return "LR_big";
        case LrVariant::Small: return "LR_small";
        case LrVariant::High: return "LR_high";
        case LrVariant::Low: return "LR_low";
        case LrVariant::Pos: return "LR_pos";
        case LrVariant::Neg: return "LR_neg";
        case LrVariant::Agg: return "LR_agg";
    }
    return "?";
}

std::string_view degree_variant_name(DegreeVariant v) {
    switch (v) {
        case DegreeVariant::Total: return "degree_total";
        case DegreeVariant::Lead: return "degree_lead";
        case DegreeVariant::Follower: return "degree_follower";
        case DegreeVariant::Within: return "degree_within";
        case DegreeVariant::Cross: return "degree_cross";
        case DegreeVariant::Big: return "degree_big";
        case DegreeVariant::Small: return "degree_small";
        case DegreeVariant::High: return "degree_high";
        case DegreeVariant::Low: return "degree_low";
    }
    return "?";
}

LeadReturnPanel daily_lead_return_panel(const std::vector<Linkage>& linkages,
                                        const TradingCalendar& calendar, const FirmMaster& firms,
                                        const PricePanel& prices, const ReturnPanel& returns,
                                        int window_days, double quantile_low,
                                        double quantile_high) {
    LeadReturnPanel panel;
    for (Date t : calendar.dates()) {
        auto members = firms.universe_at(year_month(t));
        if (members.empty()) continue;
        std::vector<std::string> universe(members.begin(), members.end());
        Date start = t - std::chrono::days{window_days};
        NewsNetwork full = build_network(linkages, start, t, universe);

        std::map<std::string, double> r_t;
        for (const std::string& ticker : universe) {
            auto r = returns.find(ticker, t);
            if (r) r_t[ticker] = *r;
        }

        WindowCharacteristics chars =
            window_characteristics(prices, calendar, start, t, universe);

        auto put = [&](LrVariant variant, const LeadReturnResult& res) {
            panel.missing_lead_returns += res.missing_lead_returns;
            for (const auto& [ticker, v] : res.values) panel.values[variant][ticker][t] = v;
        };

        put(LrVariant::Full, lead_return(full, r_t, SignFilter::All));
        put(LrVariant::Pos, lead_return(full, r_t, SignFilter::Pos));
        put(LrVariant::Neg, lead_return(full, r_t, SignFilter::Neg));

        auto cut = [&](NetTag tag) {
            return decompose(full, tag, firms, chars, quantile_low, quantile_high);
        };
        NewsNetwork within = cut(NetTag::Within);
        NewsNetwork cross = cut(NetTag::Cross);
        put(LrVariant::Within, lead_return(within, r_t, SignFilter::All));
        put(LrVariant::Cross, lead_return(cross, r_t, SignFilter::All));
        put(LrVariant::Big, lead_return(cut(NetTag::BigLead), r_t, SignFilter::All));
        put(LrVariant::Small, lead_return(cut(NetTag::SmallLead), r_t, SignFilter::All));
        put(LrVariant::High, lead_return(cut(NetTag::HighLead), r_t, SignFilter::All));
        put(LrVariant::Low, lead_return(cut(NetTag::LowLead), r_t, SignFilter::All));

        LeadReturnResult pw = lead_return(within, r_t, SignFilter::Pos);
        LeadReturnResult nw = lead_return(within, r_t, SignFilter::Neg);
        LeadReturnResult pc = lead_return(cross, r_t, SignFilter::Pos);
        LeadReturnResult nc = lead_return(cross, r_t, SignFilter::Neg);
        for (const std::string& ticker : universe) {
            panel.values[LrVariant::Agg][ticker][t] =
                lead_return_agg(pw.values.at(ticker), nw.values.at(ticker), pc.values.at(ticker),
                                nc.values.at(ticker));
        }
    }
    return panel;
}

DegreePanel monthly_degree_panel(const std::vector<Linkage>& linkages,
                                 const std::vector<YearMonth>& months, const FirmMaster& firms,
                                 const PricePanel& prices, const TradingCalendar& calendar,
                                 int window_days, double quantile_low, double quantile_high) {
    DegreePanel panel;
    for (YearMonth ym : months) {
        auto members = firms.universe_at(ym);
        if (members.empty()) continue;
        std::vector<std::string> universe(members.begin(), members.end());
        Date end = last_day(ym);
        Date start = end - std::chrono::days{window_days};
        NewsNetwork full = build_network(linkages, start, end, universe);
        WindowCharacteristics chars =
            window_characteristics(prices, calendar, start, end, universe);

        auto put = [&](DegreeVariant variant, const NewsNetwork& net, DegreeMode mode) {
            std::vector<int> deg = degree(net, mode);
            for (int i = 0; i < net.size(); ++i) panel.values[variant][net.universe[i]][ym] = deg[i];
        };

        auto cut = [&](NetTag tag) {
            return decompose(full, tag, firms, chars, quantile_low, quantile_high);
        };
        put(DegreeVariant::Total, full, DegreeMode::Total);
        put(DegreeVariant::Lead, full, DegreeMode::Lead);
        put(DegreeVariant::Follower, full, DegreeMode::Follower);
        put(DegreeVariant::Within, cut(NetTag::Within), DegreeMode::Total);
        put(DegreeVariant::Cross, cut(NetTag::Cross), DegreeMode::Total);
        put(DegreeVariant::Big, cut(NetTag::BigLead), DegreeMode::Total);
        put(DegreeVariant::Small, cut(NetTag::SmallLead), DegreeMode::Total);
        put(DegreeVariant::High, cut(NetTag::HighLead), DegreeMode::Total);
        put(DegreeVariant::Low, cut(NetTag::LowLead), DegreeMode::Total);
    }
    return panel;
}

}  // namespace newsnet
