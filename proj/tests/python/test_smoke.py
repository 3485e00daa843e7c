"""Smoke tests for the python bindings."""

import math

import pytest

import newsnet


def test_info_day_boundary():
    assert newsnet.assign_info_day("2020-03-02T10:00:00-05:00") == "2020-03-02"
    assert newsnet.assign_info_day("2020-03-03T08:59:00-05:00") == "2020-03-02"
    assert newsnet.assign_info_day("2020-03-03T09:00:00-05:00") == "2020-03-03"
    with pytest.raises(RuntimeError):
        newsnet.assign_info_day("2020-03-03T09:00:00")


def test_extract_linkages_worked_example():
    firm_names = [
        ("AAPL", "Apple Inc"),
        ("INTC", "Intel Corp"),
        ("NKE", "Nike Inc"),
        ("PTON", "Peloton Interactive Inc"),
    ]
    universe = ["AAPL", "INTC", "NKE"]  # Peloton not a member
    result = newsnet.extract_linkages(
        "Apple Working Hard on New Chip",
        "Both Intel (NASDAQ:INTC) and Nike gained while Peloton Interactive lagged.",
        firm_names,
        universe,
    )
    assert result["verdict"] == "kept"
    assert result["leads"] == ["AAPL"]
    assert sorted(result["followers"]) == ["INTC", "NKE"]


def test_network_and_lead_return():
    pairs = [
        ("B", "A", "2020-03-02"),
        ("B", "A", "2020-03-05"),
        ("C", "A", "2020-03-09"),
    ]
    net = newsnet.build_network(pairs, "2020-03-01", "2020-03-31", ["A", "B", "C"])
    assert net.count("B", "A") == 2
    assert net.weight("B", "A") == pytest.approx(1.0)
    assert net.row_sum("A") == 0.0
    degrees = net.degree("total")
    assert degrees["A"] == 2 and degrees["B"] == 1

    lr = newsnet.lead_return(net, {"A": 0.01, "B": -0.02, "C": 0.0}, "all")
    assert lr["B"] == pytest.approx(0.01)
    pos = newsnet.lead_return(net, {"A": 0.01}, "pos")
    neg = newsnet.lead_return(net, {"A": 0.01}, "neg")
    assert pos["B"] - neg["B"] == pytest.approx(lr["B"])

    assert newsnet.lead_return_agg(1e-3, 2e-3, 4e-3, 3e-3) == pytest.approx(2e-3)


def test_ols_and_effect_size():
    x = [[1.0, float(i)] for i in range(10)]
    y = [2.0 * i + 1.0 for i in range(10)]
    fit = newsnet.ols(x, y)
    assert fit["beta1"] == pytest.approx(2.0)
    assert fit["r2"] == pytest.approx(1.0)

    assert newsnet.effect_bps(0.752, 0.01497) == pytest.approx(112.5744)
    assert newsnet.format_effect_size(0.752, 0.01497) == "112.6 bps"
    assert newsnet.newey_west_default_lags(100) == 4


def test_power_law_and_buckets():
    degrees = [1] * 64 + [2] * 16 + [4] * 4 + [8]
    fit = newsnet.fit_power_law(degrees)
    assert fit["gamma"] == pytest.approx(2.0)
    assert fit["r2"] == pytest.approx(1.0)

    assert newsnet.bucket_sizes(12, 5) == [3, 3, 2, 2, 2]
