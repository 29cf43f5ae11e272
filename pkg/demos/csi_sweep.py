"""How much CSI does selection actually need?

Selection is run inside a growing prefix of acquired channel rows. Two
effects fall out of the sweep:

* a Pareto-style law: most of the full-CSI capacity is already reachable
  from a small fraction of the rows, and at higher SNR the fraction
  shrinks further;
* once each acquired row costs a slice of the coherence time, the
  training-discounted ("efficient") capacity peaks at an interior number
  of rows instead of at full CSI.

Run:  python demos/csi_sweep.py
"""

from antsel import ExperimentConfig, sweep_csi

cfg = ExperimentConfig(
    master_seed=11,
    trials=120,
    nr=128,
    nt=8,
    l=4,
    snr_db_grid=(-10.0, 0.0, 10.0),
    eta=0.01,
    selector="greedy",
    csi_grid=tuple([4] + list(range(8, 129, 8))),
)
res = sweep_csi(cfg, jobs=2)

for snr in cfg.snr_db_grid:
    pts = [p for p in res.points if p.snr_db == snr]
    star = max(pts, key=lambda p: p.efficient.mean)
    pareto = next(p for p in pts if p.r1 >= 0.8)
    print(f"snr {snr:+6.1f} dB: full-CSI capacity {pts[-1].full_mean:7.3f} bits")
    print(f"    80% of it with {pareto.csi_rows:3d}/{cfg.nr} rows acquired "
          f"(r2 = {pareto.r2:.2f})")
    print(f"    efficient capacity peaks at {star.csi_rows:3d} rows "
          f"({star.efficient.mean:7.3f} bits vs {pts[-1].efficient.mean:7.3f} at full CSI)")
    print()

print("rows, capacity and efficiency for the 0 dB sweep:")
print(f"{'rows':>5} {'capacity':>9} {'efficient':>10} {'r1':>6} {'r2':>6}")
for p in res.points:
    if p.snr_db == 0.0:
        print(f"{p.csi_rows:>5} {p.capacity.mean:>9.3f} {p.efficient.mean:>10.3f} "
              f"{p.r1:>6.3f} {p.r2:>6.3f}")

print()
print("CSV export across l and SNR:  antsel sweep --recipe fig5")
