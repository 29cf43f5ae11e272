"""Named experiment presets for the standard result plots.

Each preset pins a subcommand, a parameter set, and a seed, so the CSV a
recipe produces is reproducible byte for byte. Dimensions follow the
reference plots; trial counts are scaled to run on a laptop. Values given
as lists expand into one CSV block per combination.
"""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = ["Recipe", "figure_recipe", "FIGURE_RECIPES"]


@dataclass(frozen=True)
class Recipe:
    name: str
    subcommand: str
    description: str
    params: dict = field(default_factory=dict)


_CSI_COARSE = "8,16,24,32,40,48,56,64,72,80,88,96,104,112,120,128"
_CSI_FINE = "4,8,12,16,20,24,28,32,36,40,44,48,56,64,80,96,112,128"

FIGURE_RECIPES: dict[str, Recipe] = {
    r.name: r
    for r in [
        Recipe(
            "fig1",
            "simulate",
            "CDF of the sampled BF bound against its Gaussian approximation",
            dict(mode="cdf", nr=[32, 128], nt=8, l=[1, 2, 3], snr_db=[8.0], trials=10_000, seed=1),
        ),
        Recipe(
            "fig2",
            "simulate",
            "Ergodic capacity vs SNR with the BF bound (selection count within Nt)",
            dict(mode="ergodic", nr=64, nt=8, l=[2, 3, 4], snr_db=[-10, -5, 0, 5, 10, 15, 20],
                 trials=500, seed=1, algo="bab"),
        ),
        Recipe(
            "fig3",
            "bound",
            "Bound mean and variance vs receive-array size, with empirical columns",
            dict(kind="both", nr=[16, 32, 48, 64, 96, 128, 192, 256], nt=8, l=4, l_mrc=16,
                 snr_db=[8.0], trials=2000, seed=1),
        ),
        Recipe(
            "fig4",
            "sweep",
            "Capacity vs acquired CSI rows for several selection counts",
            dict(nr=128, nt=8, l=[2, 3, 4, 5], snr_db=[5.0], csi_grid=_CSI_COARSE,
                 trials=200, seed=1, algo="greedy", eta=0.0),
        ),
        Recipe(
            "fig5",
            "sweep",
            "Efficient capacity vs acquired CSI rows (interior optimum)",
            dict(nr=128, nt=8, l=[4, 8], snr_db=[-10.0, 0.0, 10.0], csi_grid=_CSI_COARSE,
                 trials=300, seed=1, algo="greedy", eta=0.01),
        ),
        Recipe(
            "fig6",
            "sweep",
            "Capacity vs acquired CSI at several SNRs, with the 0.9 level in view",
            dict(nr=128, nt=[4, 8], l=4, snr_db=[0.0, 10.0, 20.0, 30.0], csi_grid=_CSI_FINE,
                 trials=300, seed=1, algo="greedy", eta=0.0),
        ),
        Recipe(
            "fig7",
            "sweep",
            "Capacity ratio vs CSI ratio (Pareto-style curve), selection within Nt",
            dict(nr=128, nt=4, l=4, snr_db=[-20.0, -10.0, 0.0, 10.0, 20.0], csi_grid=_CSI_FINE,
                 trials=300, seed=1, algo="greedy", eta=0.0),
        ),
        Recipe(
            "fig8",
            "adaptive",
            "Adaptive selection vs SNR, optimal inner search: capacity and CSI use",
            dict(nr=64, nt=8, l=5, snr_db=[0.0, 5.0, 10.0, 15.0, 20.0], trials=300, seed=1,
                 algo="bab", batch_size=5, target="level09"),
        ),
        Recipe(
            "fig9",
            "adaptive",
            "Adaptive vs full-CSI search complexity (visited nodes), optimal inner search",
            dict(nr=64, nt=8, l=5, snr_db=[0.0, 5.0, 10.0, 15.0, 20.0], trials=300, seed=1,
                 algo="bab", batch_size=5, target="level09"),
        ),
        Recipe(
            "fig10",
            "sweep",
            "Capacity ratio vs CSI ratio when the selection count exceeds Nt",
            dict(nr=128, nt=8, l=20, snr_db=[-20.0, -10.0, 0.0, 10.0, 20.0],
                 csi_grid="20,24,28,32,36,40,48,56,64,80,96,112,128",
                 trials=200, seed=1, algo="greedy", eta=0.0),
        ),
        Recipe(
            "fig11",
            "adaptive",
            "Adaptive selection vs SNR, greedy inner search: capacity and CSI use",
            dict(nr=128, nt=8, l=20, snr_db=[0.0, 5.0, 10.0, 15.0, 20.0], trials=200, seed=1,
                 algo="greedy", batch_size=4, target="level:0.85"),
        ),
        Recipe(
            "fig12",
            "adaptive",
            "Adaptive vs full-CSI greedy complexity (visited nodes)",
            dict(nr=128, nt=8, l=20, snr_db=[0.0, 5.0, 10.0, 15.0, 20.0], trials=200, seed=1,
                 algo="greedy", batch_size=4, target="level:0.85"),
        ),
    ]
}


def figure_recipe(name: str) -> Recipe:
    """Look up a named preset; unknown names raise KeyError."""
    try:
        return FIGURE_RECIPES[name]
    except KeyError:
        known = ", ".join(sorted(FIGURE_RECIPES))
        raise KeyError(f"unknown figure recipe {name!r}; known recipes: {known}") from None
