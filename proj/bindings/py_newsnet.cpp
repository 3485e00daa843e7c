#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "newsnet/config.hpp"
#include "newsnet/corpus.hpp"
#include "newsnet/econ.hpp"
#include "newsnet/identify.hpp"
#include "newsnet/network.hpp"
#include "newsnet/portfolio.hpp"
#include "newsnet/report.hpp"
#include "newsnet/synth.hpp"
#include "newsnet/variables.hpp"

namespace py = pybind11;
using namespace newsnet;

namespace {

// python-facing helpers work in ISO strings rather than Date objects

std::string py_assign_info_day(const std::string& timestamp) {
    LocalTime lt = to_new_york(parse_timestamp(timestamp));
    Date d = lt.seconds_of_day >= 9 * 3600 ? lt.date : lt.date - std::chrono::days{1};
    return format_date(d);
}

NewsNetwork py_build_network(
    const std::vector<std::tuple<std::string, std::string, std::string>>& pairs,
    const std::string& window_start, const std::string& window_end,
    const std::vector<std::string>& universe) {
    std::vector<Linkage> linkages;
    int n = 0;
    for (const auto& [follower, lead, info_day] : pairs) {
        Linkage l;
        l.article_id = "py-" + std::to_string(n++);
        l.follower = follower;
        l.lead = lead;
        l.info_day = parse_date(info_day);
        linkages.push_back(std::move(l));
    }
    return build_network(linkages, parse_date(window_start), parse_date(window_end), universe);
}

std::map<std::string, double> py_lead_return(const NewsNetwork& net,
                                             const std::map<std::string, double>& returns_at_t,
                                             const std::string& filter) {
    SignFilter f = SignFilter::All;
    if (filter == "pos") f = SignFilter::Pos;
    else if (filter == "neg") f = SignFilter::Neg;
    else if (filter != "all") throw std::runtime_error("filter must be all|pos|neg");
    return lead_return(net, returns_at_t, f).values;
}

std::map<std::string, double> py_ols(const std::vector<std::vector<double>>& x,
                                     const std::vector<double>& y) {
    if (x.empty()) throw std::runtime_error("empty design");
    Eigen::MatrixXd X(x.size(), x.front().size());
    Eigen::VectorXd Y(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < x[i].size(); ++j) X(i, j) = x[i][j];
        Y(i) = y[i];
    }
    RegressionResult res = ols(X, Y);
    std::map<std::string, double> out;
    for (int j = 0; j < res.beta.size(); ++j) {
        out["beta" + std::to_string(j)] = res.beta(j);
        out["t" + std::to_string(j)] = res.tstat(j);
    }
    out["r2"] = res.r2;
    out["nobs"] = res.nobs;
    return out;
}

std::map<std::string, double> py_fit_power_law(const std::vector<int>& degrees) {
    PowerLawFit fit = fit_power_law(degrees);
    return {{"gamma", fit.gamma}, {"c_log", fit.c_log}, {"r2", fit.r2},
            {"support", static_cast<double>(fit.support)}};
}

py::dict py_extract_linkages(const std::string& headline, const std::string& content,
                             const std::vector<std::pair<std::string, std::string>>& firm_names,
                             const std::vector<std::string>& universe) {
    IdentConfig config = default_ident_config();
    std::vector<FirmMaster::Firm> firms;
    for (const auto& [ticker, name] : firm_names) firms.push_back({ticker, name, ""});
    NameSegmentMap map = build_name_segments(firms, config);
    Article a;
    a.id = "py";
    a.headline = headline;
    a.content = content;
    a.info_day = make_date(2020, 1, 2);
    std::set<std::string> uni(universe.begin(), universe.end());
    IdentResult result = extract_linkages(a, map, uni, config);
    py::dict out;
    out["verdict"] = std::string(verdict_name(result.verdict));
    py::list leads, followers;
    for (const auto& t : result.leads) leads.append(t);
    for (const auto& [t, s] : result.followers) followers.append(t);
    out["leads"] = leads;
    out["followers"] = followers;
    return out;
}

std::vector<int> py_bucket_sizes(int n, int k) { return bucket_sizes(n, k); }

}  // namespace

PYBIND11_MODULE(_newsnet, m) {
    m.doc() = "news-network construction and cross-sectional return tests";

    m.def("assign_info_day", &py_assign_info_day,
          "Map an ISO-8601 timestamp with offset to its New York 09:00 information day",
          py::arg("timestamp"));
    m.def("extract_linkages", &py_extract_linkages, py::arg("headline"), py::arg("content"),
          py::arg("firm_names"), py::arg("universe"),
          "Identify lead/follower tickers for one article");
    m.def("build_network", &py_build_network, py::arg("pairs"), py::arg("window_start"),
          py::arg("window_end"), py::arg("universe"),
          "Row-normalized network from (follower, lead, info_day) pairs");
    m.def("lead_return", &py_lead_return, py::arg("network"), py::arg("returns_at_t"),
          py::arg("filter") = "all");
    m.def("lead_return_agg", &lead_return_agg, py::arg("pos_within"), py::arg("neg_within"),
          py::arg("pos_cross"), py::arg("neg_cross"));
    m.def("ols", &py_ols, py::arg("x"), py::arg("y"));
    m.def("newey_west_default_lags", &newey_west_default_lags, py::arg("nobs"));
    m.def("effect_bps", &effect_bps, py::arg("beta"), py::arg("sigma_x"));
    m.def("format_effect_size", &format_effect_size, py::arg("beta"), py::arg("sigma_x"));
    m.def("fit_power_law", &py_fit_power_law, py::arg("degrees"));
    m.def("bucket_sizes", &py_bucket_sizes, py::arg("n"), py::arg("k"));

    py::class_<NewsNetwork>(m, "NewsNetwork")
        .def_property_readonly("universe", [](const NewsNetwork& n) { return n.universe; })
        .def("weight",
             [](const NewsNetwork& n, const std::string& follower, const std::string& lead) {
                 return n.weight(n.index.at(follower), n.index.at(lead));
             })
        .def("count",
             [](const NewsNetwork& n, const std::string& follower, const std::string& lead) {
                 return n.count(n.index.at(follower), n.index.at(lead));
             })
        .def("row_sum",
             [](const NewsNetwork& n, const std::string& follower) {
                 return n.row_sum(n.index.at(follower));
             })
        .def("degree", [](const NewsNetwork& n, const std::string& mode) {
            DegreeMode dm = DegreeMode::Total;
            if (mode == "lead") dm = DegreeMode::Lead;
            else if (mode == "follower") dm = DegreeMode::Follower;
            else if (mode != "total") throw std::runtime_error("mode must be total|lead|follower");
            std::vector<int> deg = degree(n, dm);
            std::map<std::string, int> out;
            for (int i = 0; i < n.size(); ++i) out[n.universe[i]] = deg[i];
            return out;
        });
}
