"""News-network construction and cross-sectional return tests.

Thin wrapper over the compiled extension module.
"""

try:
    from ._newsnet import (
        NewsNetwork,
        assign_info_day,
        bucket_sizes,
        build_network,
        effect_bps,
        extract_linkages,
        fit_power_law,
        format_effect_size,
        lead_return,
        lead_return_agg,
        newey_west_default_lags,
        ols,
    )
except ImportError:  # extension built out-of-tree, e.g. on PYTHONPATH
    from _newsnet import (
        NewsNetwork,
        assign_info_day,
        bucket_sizes,
        build_network,
        effect_bps,
        extract_linkages,
        fit_power_law,
        format_effect_size,
        lead_return,
        lead_return_agg,
        newey_west_default_lags,
        ols,
    )

__all__ = [
    "NewsNetwork",
    "assign_info_day",
    "bucket_sizes",
    "build_network",
    "effect_bps",
    "extract_linkages",
    "fit_power_law",
    "format_effect_size",
    "lead_return",
    "lead_return_agg",
    "newey_west_default_lags",
    "ols",
]
