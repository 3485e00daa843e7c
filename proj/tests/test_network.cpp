#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "newsnet/network.hpp"
#include "newsnet/synth.hpp"

using namespace newsnet;

namespace {

Linkage mk(const std::string& follower, const std::string& lead, const std::string& day) {
    Linkage l;
    l.article_id = follower + lead + day;
    l.follower = follower;
    l.lead = lead;
    l.info_day = parse_date(day);
    return l;
}

const std::vector<std::string> kABC = {"A", "B", "C"};

std::vector<Linkage> example_linkages() {
    return {mk("B", "A", "2020-03-02"), mk("B", "A", "2020-03-05"), mk("C", "A", "2020-03-09")};
}

FirmMaster sector_firms(const std::vector<std::pair<std::string, std::string>>& spec) {
    FirmMaster fm;
    for (const auto& [ticker, sector] : spec) {
        fm.ticker_index[ticker] = static_cast<int>(fm.firms.size());
        fm.firms.push_back({ticker, ticker + " Holdings Test", sector});
    }
    return fm;
}

}  // namespace

TEST_CASE("build_network counts pairs and row-normalizes") {
    NewsNetwork net = build_network(example_linkages(), parse_date("2020-03-01"),
                                    parse_date("2020-03-31"), kABC);
    int a = net.index.at("A"), b = net.index.at("B"), c = net.index.at("C");
    CHECK(net.count(b, a) == 2);
    CHECK(net.count(c, a) == 1);
    CHECK(net.weight(b, a) == doctest::Approx(1.0));
    CHECK(net.weight(c, a) == doctest::Approx(1.0));
    CHECK(net.row_sum(a) == 0.0);  // no out-links
    CHECK(net.count(a, a) == 0);
}

TEST_CASE("window boundaries are inclusive; earlier pairs are excluded") {
    auto linkages = example_linkages();
    linkages.push_back(mk("C", "B", "2020-02-29"));  // one day before the window
    NewsNetwork net = build_network(linkages, parse_date("2020-03-01"),
                                    parse_date("2020-03-31"), kABC);
    CHECK(net.count(net.index.at("C"), net.index.at("B")) == 0);
    NewsNetwork wider = build_network(linkages, parse_date("2020-02-29"),
                                      parse_date("2020-03-31"), kABC);
    CHECK(wider.count(wider.index.at("C"), wider.index.at("B")) == 1);
}

TEST_CASE("out-of-universe linkages are skipped with a diagnostic count") {
    auto linkages = example_linkages();
    linkages.push_back(mk("Z", "A", "2020-03-03"));
    linkages.push_back(mk("B", "Z", "2020-03-03"));
    NewsNetwork net = build_network(linkages, parse_date("2020-03-01"),
                                    parse_date("2020-03-31"), kABC);
    CHECK(net.skipped_out_of_universe == 2);
}

TEST_CASE("degrees from the worked example") {
    NewsNetwork net = build_network(example_linkages(), parse_date("2020-03-01"),
                                    parse_date("2020-03-31"), kABC);
    auto lead = degree(net, DegreeMode::Lead);
    auto follower = degree(net, DegreeMode::Follower);
    auto total = degree(net, DegreeMode::Total);
    int a = net.index.at("A"), b = net.index.at("B");
    CHECK(lead[a] == 2);
    CHECK(follower[a] == 0);
    CHECK(total[a] == 2);
    CHECK(lead[b] == 0);
    CHECK(follower[b] == 1);

    NewsNetwork empty = build_network({}, parse_date("2020-03-01"), parse_date("2020-03-31"),
                                      kABC);
    for (int d : degree(empty, DegreeMode::Total)) CHECK(d == 0);
}

TEST_CASE("sector decomposition partitions the weights exactly") {
    FirmMaster fm = sector_firms({{"A", "Tech"}, {"B", "Tech"}, {"C", "Financials"}});
    auto linkages = example_linkages();
    linkages.push_back(mk("A", "C", "2020-03-04"));
    NewsNetwork full = build_network(linkages, parse_date("2020-03-01"),
                                     parse_date("2020-03-31"), kABC);
    WindowCharacteristics none;
    NewsNetwork within = decompose(full, NetTag::Within, fm, none);
    NewsNetwork cross = decompose(full, NetTag::Cross, fm, none);
    for (int i = 0; i < full.size(); ++i)
        for (int j = 0; j < full.size(); ++j)
            CHECK(within.weight(i, j) + cross.weight(i, j) == full.weight(i, j));
    // B->A is within (Tech/Tech), C->A is cross
    CHECK(within.weight(full.index.at("B"), full.index.at("A")) == doctest::Approx(1.0));
    CHECK(cross.weight(full.index.at("B"), full.index.at("A")) == 0.0);
    CHECK(cross.weight(full.index.at("C"), full.index.at("A")) == doctest::Approx(1.0));
}

TEST_CASE("nearest-rank quantile and the size decomposition breakpoints") {
    std::vector<double> v;
    for (int i = 1; i <= 10; ++i) v.push_back(i);
    CHECK(quantile_nearest_rank(v, 0.7) == 7.0);
    CHECK(quantile_nearest_rank(v, 0.3) == 3.0);
    CHECK(quantile_nearest_rank(v, 1.0) == 10.0);
    CHECK(quantile_nearest_rank({5.0}, 0.5) == 5.0);
    CHECK_THROWS(quantile_nearest_rank({}, 0.5));

    // 10 leads with window-mean MVs 1..10: big = {8,9,10}, small = {1,2,3}
    std::vector<std::string> universe = {"F"};
    std::vector<std::pair<std::string, std::string>> spec = {{"F", "Tech"}};
    WindowCharacteristics chars;
    std::vector<Linkage> linkages;
    for (int i = 1; i <= 10; ++i) {
        std::string lead = "L" + std::to_string(i);
        universe.push_back(lead);
        spec.emplace_back(lead, "Tech");
        chars.mean_mv[lead] = i;
        chars.mean_turnover[lead] = i / 100.0;
        linkages.push_back(mk("F", lead, "2020-03-02"));
    }
    // F carries no window data, so the quantile cross-section is the 10 leads
    FirmMaster fm = sector_firms(spec);
    NewsNetwork full = build_network(linkages, parse_date("2020-03-01"),
                                     parse_date("2020-03-31"), universe);
    NewsNetwork big = decompose(full, NetTag::BigLead, fm, chars);
    NewsNetwork small = decompose(full, NetTag::SmallLead, fm, chars);
    int f = full.index.at("F");
    std::set<std::string> big_leads, small_leads;
    for (const auto& [j, w] : big.weights[f]) big_leads.insert(full.universe[j]);
    for (const auto& [j, w] : small.weights[f]) small_leads.insert(full.universe[j]);
    CHECK(big_leads == std::set<std::string>{"L8", "L9", "L10"});
    CHECK(small_leads == std::set<std::string>{"L1", "L2", "L3"});
    // the middle 40% appears in neither
    for (const char* mid : {"L4", "L5", "L6", "L7"}) {
        CHECK(big_leads.count(mid) == 0);
        CHECK(small_leads.count(mid) == 0);
    }
    // masked weights are inherited, not renormalized
    for (const auto& [j, w] : big.weights[f]) CHECK(w == full.weight(f, j));

    // a lead with no characteristics data is conservatively excluded
    WindowCharacteristics missing = chars;
    missing.mean_mv.erase("L9");
    NewsNetwork big2 = decompose(full, NetTag::BigLead, fm, missing);
    std::set<std::string> leads2;
    for (const auto& [j, w] : big2.weights[f]) leads2.insert(full.universe[j]);
    CHECK(leads2.count("L9") == 0);
}

TEST_CASE("degree on a decomposed network counts surviving entries only") {
    FirmMaster fm = sector_firms({{"A", "Tech"}, {"B", "Tech"}, {"C", "Financials"}});
    NewsNetwork full = build_network(example_linkages(), parse_date("2020-03-01"),
                                     parse_date("2020-03-31"), kABC);
    NewsNetwork within = decompose(full, NetTag::Within, fm, {});
    auto total = degree(within, DegreeMode::Total);
    CHECK(total[within.index.at("A")] == 1);  // only B->A survives
    CHECK(total[within.index.at("C")] == 0);
}

TEST_CASE("row sums, partition and nesting hold on random networks") {
    Rng rng(11);
    for (int rep = 0; rep < 50; ++rep) {
        int n = 5 + rng.uniform_int(0, 20);
        std::vector<std::string> universe;
        std::vector<std::pair<std::string, std::string>> spec;
        for (int i = 0; i < n; ++i) {
            std::string t = "T" + std::to_string(i);
            universe.push_back(t);
            spec.emplace_back(t, i % 2 == 0 ? "Tech" : "Financials");
        }
        FirmMaster fm = sector_firms(spec);
        std::vector<Linkage> linkages;
        int m = rng.uniform_int(1, 80);
        for (int k = 0; k < m; ++k) {
            int i = rng.uniform_int(0, n - 1), j = rng.uniform_int(0, n - 1);
            if (i == j) continue;
            Date day = parse_date("2020-01-01") + std::chrono::days{rng.uniform_int(0, 120)};
            linkages.push_back(mk(universe[i], universe[j], format_date(day)));
        }
        NewsNetwork net = build_network(linkages, parse_date("2020-01-01"),
                                        parse_date("2020-04-30"), universe);
        for (int i = 0; i < net.size(); ++i) {
            double s = net.row_sum(i);
            if (!net.weights[i].empty()) CHECK(std::abs(s - 1.0) < 1e-12);
            CHECK(net.count(i, i) == 0);
        }
        NewsNetwork within = decompose(net, NetTag::Within, fm, {});
        NewsNetwork cross = decompose(net, NetTag::Cross, fm, {});
        for (int i = 0; i < net.size(); ++i)
            for (const auto& [j, w] : net.weights[i])
                CHECK(within.weight(i, j) + cross.weight(i, j) == w);
        // enlarging the window never decreases a count
        NewsNetwork narrow = build_network(linkages, parse_date("2020-02-01"),
                                           parse_date("2020-03-31"), universe);
        for (int i = 0; i < net.size(); ++i)
            for (const auto& [j, a] : narrow.counts[i]) CHECK(net.count(i, j) >= a);
    }
}

TEST_CASE("power-law fit recovers an exact law") {
    // f(d) = 64 * d^-2 over d in {1,2,4,8} -> frequencies 64,16,4,1
    std::vector<int> degrees;
    auto add = [&](int d, int f) {
        for (int i = 0; i < f; ++i) degrees.push_back(d);
    };
    add(1, 64);
    add(2, 16);
    add(4, 4);
    add(8, 1);
    PowerLawFit fit = fit_power_law(degrees);
    CHECK(fit.gamma == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.support == 4);
}

TEST_CASE("power-law fit: flat frequencies give gamma 0; tiny support errors") {
    std::vector<int> flat;
    for (int d : {1, 2, 3})
        for (int i = 0; i < 5; ++i) flat.push_back(d);
    PowerLawFit fit = fit_power_law(flat);
    CHECK(fit.gamma == doctest::Approx(0.0));
    CHECK_THROWS_WITH_AS(fit_power_law({1, 1, 2, 2}), doctest::Contains("insufficient support"),
                         std::runtime_error);
    CHECK_THROWS(fit_power_law({0, 0, 0}));
}

TEST_CASE("power-law fit recovers the generator exponent from samples") {
    // discrete p(d) proportional to d^-2.12 on 1..20
    const double gamma_true = 2.12;
    const int dmax = 20, n_draws = 10000;
    std::vector<double> cdf;
    double z = 0;
    for (int d = 1; d <= dmax; ++d) {
        z += std::pow(d, -gamma_true);
        cdf.push_back(z);
    }
    Rng rng(2024);
    std::vector<int> degrees;
    for (int i = 0; i < n_draws; ++i) {
        double u = rng.uniform() * z;
        int d = 1 + static_cast<int>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        degrees.push_back(std::min(d, dmax));
    }
    PowerLawFit fit = fit_power_law(degrees);
    CHECK(std::abs(fit.gamma - gamma_true) < 0.15);
    CHECK(fit.r2 > 0.9);
}

TEST_CASE("Epanechnikov density: kernel shape and normalization") {
    DensityCurve curve = degree_density({5}, 1.0, 801);
    // parabola centered at 5, zero outside [4, 6]
    double peak = 0;
    for (std::size_t g = 0; g < curve.x.size(); ++g) {
        if (curve.x[g] < 4.0 - 1e-9 || curve.x[g] > 6.0 + 1e-9) CHECK(curve.y[g] == 0.0);
        peak = std::max(peak, curve.y[g]);
    }
    CHECK(peak == doctest::Approx(0.75).epsilon(1e-3));

    auto integral = [](const DensityCurve& c) {
        double s = 0;
        for (std::size_t g = 1; g < c.x.size(); ++g)
            s += 0.5 * (c.y[g] + c.y[g - 1]) * (c.x[g] - c.x[g - 1]);
        return s;
    };
    CHECK(std::abs(integral(curve) - 1.0) < 1e-3);

    DensityCurve bimodal = degree_density({0, 10}, 1.0, 1201);
    CHECK(std::abs(integral(bimodal) - 1.0) < 1e-3);
    // symmetric around 5
    double at = 0, mirrored = 0;
    for (std::size_t g = 0; g < bimodal.x.size(); ++g) {
        if (std::abs(bimodal.x[g] - 0.5) < 1e-6) at = bimodal.y[g];
        if (std::abs(bimodal.x[g] - 9.5) < 1e-6) mirrored = bimodal.y[g];
    }
    CHECK(at == doctest::Approx(mirrored).epsilon(1e-9));

    CHECK_THROWS(degree_density({1, 2}, 0.0));
    CHECK_THROWS(degree_density({}, 1.0));
}

TEST_CASE("degrees are invariant to universe ordering") {
    auto linkages = example_linkages();
    NewsNetwork net1 = build_network(linkages, parse_date("2020-03-01"),
                                     parse_date("2020-03-31"), {"A", "B", "C"});
    NewsNetwork net2 = build_network(linkages, parse_date("2020-03-01"),
                                     parse_date("2020-03-31"), {"C", "A", "B"});
    auto d1 = degree(net1, DegreeMode::Total);
    auto d2 = degree(net2, DegreeMode::Total);
    for (const std::string& t : kABC)
        CHECK(d1[net1.index.at(t)] == d2[net2.index.at(t)]);
}
