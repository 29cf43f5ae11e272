"""Deterministic random streams and i.i.d. Rayleigh channel matrices.

A channel matrix is a plain complex ndarray of shape (nr, nt): rows are
receive antennas, columns are transmit antennas. Entries are CN(0, 1),
i.e. real and imaginary parts are independent N(0, 1/2), so each squared
entry magnitude is Exp(1) and each squared row norm is Gamma(nt, 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "RngStream",
    "derive_stream",
    "sample_channel",
    "row_subset",
    "row_norms_sq",
]

_U64_MAX = 2**64 - 1


@dataclass
class RngStream:
    """Counter-based random stream identified by (master_seed, stream_id).

    The same pair always reproduces the same sample sequence, and distinct
    stream ids are statistically independent, so Monte-Carlo trials can run
    in any order or in parallel with bit-identical aggregate results. A
    stream holds mutable generator state: do not share one instance across
    concurrent consumers.
    """

    master_seed: int
    stream_id: int
    gen: np.random.Generator = field(repr=False)


def derive_stream(master_seed: int, stream_id: int) -> RngStream:
    """Create the reproducible stream for (master_seed, stream_id)."""
    for name, v in (("master_seed", master_seed), ("stream_id", stream_id)):
        if not 0 <= int(v) <= _U64_MAX:
            raise ValueError(f"{name} must fit in an unsigned 64-bit integer, got {v}")
    key = np.array([master_seed, stream_id], dtype=np.uint64)
    return RngStream(int(master_seed), int(stream_id), np.random.Generator(np.random.Philox(key=key)))


def sample_channel(rng: RngStream, nr: int, nt: int) -> np.ndarray:
    """Draw an nr-by-nt matrix of i.i.d. CN(0, 1) gains."""
    if nr < 1 or nt < 1:
        raise ValueError(f"channel dimensions must be positive, got nr={nr}, nt={nt}")
    g = rng.gen.standard_normal((2, nr, nt))
    return (g[0] + 1j * g[1]) / np.sqrt(2.0)


def row_subset(h: np.ndarray, indices) -> np.ndarray:
    """Stack the requested rows of ``h`` in the given order.

    Indices must be distinct and in range; the result row k is row
    indices[k] of the input.
    """
    h = np.asarray(h)
    idx = np.asarray(list(indices), dtype=np.intp)
    if idx.size and (idx.min() < 0 or idx.max() >= h.shape[0]):
        raise ValueError(f"row index out of range for {h.shape[0]} rows: {sorted(indices)}")
    if np.unique(idx).size != idx.size:
        raise ValueError(f"duplicate row indices: {sorted(indices)}")
    return h[idx]


def row_norms_sq(h: np.ndarray) -> np.ndarray:
    """Squared Euclidean norm of every row (the per-antenna channel gains)."""
    h = np.asarray(h)
    return np.einsum("ij,ij->i", h, h.conj()).real
