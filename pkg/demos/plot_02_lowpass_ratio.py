"""
Weak and strong lowpass filters
===============================

A filter is first-order lowpass when every stopband response is smaller in
magnitude than the response at the lowest frequency. The ratio of the two,
eta, measures how strongly it filters: near 1 is weak, near 0 is strong.
This script builds the four standard filter pairs on one graph and prints
their ratios.
"""

# %%
from lpdetect.filters import FilterSetting, classify_lowpass, standard_filter_pair, response_to_dict
from lpdetect.graph import default_edge_probability, erdos_renyi_connected, max_degree, shift_operator
from lpdetect.spectral import order_spectrum

n = 50
g = erdos_renyi_connected(n, default_edge_probability(n), seed=7)
print(f"max degree {max_degree(g):.0f}")

# %%
# Each setting yields a lowpass member and a highpass member built from the
# same operator. The parameter is 0.5/d_max for the weak pairs and
# 10/d_max for the strong ones.
for setting in FilterSetting:
    low, high, param = standard_filter_pair(setting, g)
    sp = order_spectrum(shift_operator(g, setting.gso), setting.gso)
    lo, hi = classify_lowpass(low, sp), classify_lowpass(high, sp)
    print(f"{setting.value:<17} param={param:.3f}  lowpass eta={lo.eta:.3g} ({lo.is_first_order})"
          f"  highpass eta={hi.eta:.3g} ({hi.is_first_order})")

# %%
# Responses serialize to small JSON objects, the format accepted by
# ``lpdetect classify --response``.
print(response_to_dict(standard_filter_pair("laplacian_weak", g)[0]))
