"""Exact evolution of the walk on a growing window of the integer lattice.

The state is a finite window of 2-component complex amplitudes.  One step
sends the amplitude at site x to P*amps[x-1] + Q*amps[x+1], so the window
grows by exactly one site per side per step and no truncation ever happens:
evolution is exact up to floating-point roundoff.  The norm is never
re-imposed; its drift from 1 is a diagnostic, not something to hide.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .coin import CoinMatrix, split, _check_unit
from .errors import ResourceLimit

DEFAULT_MAX_STEPS = 100_000


@dataclass(frozen=True, eq=False)
class WalkState:
    """Amplitudes over a contiguous window of lattice sites.

    ``amps[i]`` is the 2-component amplitude at site ``offset + i``.
    """

    offset: int
    amps: np.ndarray  # shape (L, 2), complex

    @property
    def sites(self) -> np.ndarray:
        return np.arange(self.offset, self.offset + self.amps.shape[0])

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amps) ** 2)))

    def amplitude(self, x: int) -> np.ndarray:
        """Amplitude at lattice site x (zero outside the window)."""
        i = x - self.offset
        if 0 <= i < self.amps.shape[0]:
            return self.amps[i].copy()
        return np.zeros(2, dtype=complex)


@dataclass(frozen=True, eq=False)
class Distribution:
    """Probabilities over a contiguous window of lattice sites."""

    offset: int
    probs: np.ndarray  # shape (L,), float

    @property
    def sites(self) -> np.ndarray:
        return np.arange(self.offset, self.offset + self.probs.shape[0])

    def prob(self, x: int) -> float:
        i = x - self.offset
        if 0 <= i < self.probs.shape[0]:
            return float(self.probs[i])
        return 0.0

    def total(self) -> float:
        return float(np.sum(self.probs))


def initial_state(phi: np.ndarray) -> WalkState:
    """State concentrated at site 0 with spin phi (must be a unit vector)."""
    phi = np.asarray(phi, dtype=complex)
    _check_unit(phi)
    return WalkState(offset=0, amps=phi.reshape(1, 2).copy())


def step(st: WalkState, c: CoinMatrix) -> WalkState:
    """Apply the walk operator once; the window grows one site per side."""
    p, q = split(c)
    return _step_matrices(st, p, q)


def _step_matrices(st: WalkState, p: np.ndarray, q: np.ndarray) -> WalkState:
    amps = st.amps
    out = np.zeros((amps.shape[0] + 2, 2), dtype=complex)
    out[2:] += amps @ p.T     # right-moving part
    out[:-2] += amps @ q.T    # left-moving part
    return WalkState(offset=st.offset - 1, amps=out)


def evolve(phi: np.ndarray, c: CoinMatrix, n: int, max_steps: int = DEFAULT_MAX_STEPS) -> WalkState:
    """n-fold application of :func:`step` to the state concentrated at 0.

    Raises
    ------
    ResourceLimit
        If n exceeds ``max_steps`` (default 100000).
    """
    if n < 0:
        raise ValueError(f"step count must be non-negative, got {n}")
    if n > max_steps:
        raise ResourceLimit(f"n = {n} exceeds the configured maximum {max_steps}")
    st = initial_state(phi)
    p, q = split(c)
    for _ in range(n):
        st = _step_matrices(st, p, q)
    return st


def evolve_snapshots(
    phi: np.ndarray, c: CoinMatrix, ns: Iterable[int], max_steps: int = DEFAULT_MAX_STEPS
) -> Iterator[tuple[int, WalkState]]:
    """Yield (n, state) at each requested step count in one evolution pass.

    ``ns`` must be sorted ascending; the largest entry is bounded by
    ``max_steps`` exactly as in :func:`evolve`.
    """
    targets = list(ns)
    if any(n < 0 for n in targets):
        raise ValueError("step counts must be non-negative")
    if targets != sorted(targets):
        raise ValueError("step counts must be sorted ascending")
    if targets and targets[-1] > max_steps:
        raise ResourceLimit(f"n = {targets[-1]} exceeds the configured maximum {max_steps}")
    st = initial_state(phi)
    p, q = split(c)
    k = 0
    for n in targets:
        while k < n:
            st = _step_matrices(st, p, q)
            k += 1
        yield n, st


def distribution(st: WalkState) -> Distribution:
    """Per-site probabilities: the squared amplitude norm at each site."""
    probs = np.sum(np.abs(st.amps) ** 2, axis=1)
    return Distribution(offset=st.offset, probs=probs)


def char_fn(d: Distribution, xi: float) -> complex:
    """Characteristic function sum_x probs[x] * exp(i*xi*x)."""
    return complex(np.sum(d.probs * np.exp(1j * xi * d.sites)))


def distribution_to_csv(d: Distribution) -> str:
    """CSV with header ``x,prob`` covering the whole window."""
    buf = io.StringIO()
    buf.write("x,prob\n")
    for x, pr in zip(d.sites, d.probs):
        buf.write(f"{x},{pr:.17g}\n")
    return buf.getvalue()


def state_to_csv(st: WalkState) -> str:
    """CSV with header ``x,re1,im1,re2,im2`` covering the whole window."""
    buf = io.StringIO()
    buf.write("x,re1,im1,re2,im2\n")
    for x, (u1, u2) in zip(st.sites, st.amps):
        buf.write(f"{x},{u1.real:.17g},{u1.imag:.17g},{u2.real:.17g},{u2.imag:.17g}\n")
    return buf.getvalue()
