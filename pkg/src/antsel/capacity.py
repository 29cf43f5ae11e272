"""Instantaneous channel capacity and its training-cost discount."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["EfficiencyParams", "capacity", "efficient_capacity"]

_LN2 = float(np.log(2.0))


@dataclass(frozen=True)
class EfficiencyParams:
    """CSI-acquisition cost: fraction of the coherence interval spent per
    training round (training duration over coherence time)."""

    eta: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.eta < 1.0:
            raise ValueError(f"eta must lie in [0, 1), got {self.eta}")


def capacity(h_sub: np.ndarray, rho_bar: float) -> float:
    """Capacity in bits/s/Hz of the channel ``h_sub`` at normalized SNR ``rho_bar``.

    Uniform power allocation, CSI at the receiver only:
    log2 det(I + rho_bar * G) with G the Gram matrix of the smaller
    dimension. Evaluated through a Cholesky factorization, which is O(min^3)
    and keeps the determinant of the positive-definite matrix exact in the
    log domain.
    """
    if rho_bar <= 0:
        raise ValueError(f"rho_bar must be positive, got {rho_bar}")
    h = np.asarray(h_sub)
    if h.ndim != 2 or h.shape[0] == 0 or h.shape[1] == 0:
        raise ValueError(f"channel matrix must be 2-D and nonempty, got shape {h.shape}")
    rows, cols = h.shape
    g = h @ h.conj().T if rows <= cols else h.conj().T @ h
    m = np.eye(g.shape[0], dtype=complex) + rho_bar * g
    chol = np.linalg.cholesky(m)
    return float(2.0 * np.log(np.diagonal(chol).real).sum() / _LN2)


def efficient_capacity(c: float, csi_rows: int, l: int, eff: EfficiencyParams) -> float:
    """Discount a capacity by the time spent acquiring ``csi_rows`` rows of CSI.

    With L RF chains, acquiring one row costs eta/L of the coherence
    interval, so the usable rate is c * (1 - csi_rows * eta / L). The raw
    value is returned even when negative (acquisition cost exceeding the
    coherence time); clamping is left to presentation layers.
    """
    if l < 1:
        raise ValueError(f"l must be a positive integer, got {l}")
    if csi_rows < 0:
        raise ValueError(f"csi_rows must be nonnegative, got {csi_rows}")
    return c * (1.0 - csi_rows * eff.eta / l)
