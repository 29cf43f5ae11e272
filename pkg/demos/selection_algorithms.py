"""The four subset selectors on one channel draw, side by side.

Exhaustive enumeration and branch-and-bound find the same optimal subset;
branch and bound gets there after evaluating a tiny fraction of the
C(nr, l) candidates. Greedy trails the optimum by a fraction of a percent
at a fixed, small cost, and the norm heuristic is cheapest and loosest.

Run:  python demos/selection_algorithms.py
"""

import math

from antsel import (
    bab_select,
    derive_stream,
    exhaustive_select,
    greedy_select,
    norm_select,
    sample_channel,
)

NR, NT, L = 24, 4, 4
SNR_DB = 10.0
RHO = 10 ** (SNR_DB / 10)

h = sample_channel(derive_stream(7, 0), NR, NT)
print(f"one Rayleigh channel draw: nr={NR}, nt={NT}, select l={L}, {SNR_DB} dB")
print(f"subsets to enumerate exhaustively: C({NR},{L}) = {math.comb(NR, L)}")
print()

results = {
    "exhaustive": exhaustive_select(h, L, RHO),
    "branch-and-bound": bab_select(h, L, RHO),
    "greedy": greedy_select(h, L, RHO),
    "norm": norm_select(h, L, RHO),
}

best = results["exhaustive"].capacity_bits
print(f"{'algorithm':>17} {'subset':>16} {'bits/s/Hz':>10} {'of optimal':>10} {'visited':>8}")
for name, res in results.items():
    subset = " ".join(f"{i:2d}" for i in res.indices)
    print(f"{name:>17} {subset:>16} {res.capacity_bits:>10.4f} "
          f"{res.capacity_bits / best:>10.4%} {res.visited_nodes:>8}")

print()
print("branch and bound is exact: same subset, same capacity, far fewer")
print("evaluated subsets. One-off CLI equivalent:")
print("  antsel select --algo bab --nr 24 --nt 4 --l 4 --snr-db 10 --seed 7")
