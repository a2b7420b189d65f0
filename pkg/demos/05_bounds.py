"""Bound formulas with unit constants, the depth-counting numbers, and one measured curve."""
import math

import numpy as np

from streambounds import bounds, run_stream
from streambounds.algorithms import tree_depth_processor
from streambounds.generators import random_tree

for p in (1, 2, 3, 4):
    print(f"p={p}  pc-cc(2^30)={bounds.pc_cc_bound(2**30, p):.4g}  "
          f"depth-pass(2^30)={bounds.depth_pass_bound(2**30, p):.4g}  "
          f"intersect-cc(2^30)={bounds.intersect_cc_bound(2**30, p):.4g}")

# %% counting depth functions
for n in range(3, 9):
    total, lg = bounds.depth_count_lower(n)
    print(n, total, bounds.realizable_depth_profiles(n), f"{lg:.2f}")

# %% space of the reference tree-depth processor against n log n
ns = 2 ** np.arange(6, 15, 2)
ratios = [run_stream(tree_depth_processor(), random_tree(int(n), seed=0))[1] / (n * math.log2(n))
          for n in ns]
for n, r in zip(ns, ratios):
    print(f"n={n:6d}  bits/(n log n) = {r:.3f}")
