"""Unitary time stepping of the walker's two-component wavefunction.

The state stores the right-mover and left-mover amplitudes psi_r(x),
psi_l(x) on the chain x in [-L, L].  One step applies, at every site, the
mixing matrix

    [[cos theta(x),  sin theta(x)],
     [sin theta(x), -cos theta(x)]]

to (psi_r, psi_l) and then moves the right-mover component to x + 1 and
the left-mover component to x - 1.  The shift closes the chain
periodically so the one-step operator is exactly unitary on the finite
chain; because stepping is only permitted while t < L and a walker
launched at the origin has support |x| <= t, no amplitude ever reaches
the endpoints while stepping is allowed, and the closure carries zeros.

The update runs on preallocated scratch buffers: two reads and two
writes per site, no per-step allocation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ValidationError
from .layouts import CoinLayout

__all__ = [
    "WalkerState",
    "initial_state",
    "coin_matrix",
    "step",
    "step_adjoint",
    "evolve",
]


@dataclass
class WalkerState:
    """Two complex amplitude arrays over the chain plus the step counter.

    ``psi_r[i]`` and ``psi_l[i]`` belong to position ``x = i - L``.  The
    arrays are mutated in place by :func:`step`; treat a state as owned
    by one simulation at a time.
    """

    psi_r: np.ndarray
    psi_l: np.ndarray
    t: int = 0
    _buf_r: np.ndarray = field(init=False, repr=False)
    _buf_l: np.ndarray = field(init=False, repr=False)
    _tmp: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.psi_r = np.ascontiguousarray(self.psi_r, dtype=np.complex128)
        self.psi_l = np.ascontiguousarray(self.psi_l, dtype=np.complex128)
        if (
            self.psi_r.ndim != 1
            or self.psi_r.shape != self.psi_l.shape
            or self.psi_r.size % 2 == 0
        ):
            raise ValidationError("psi_r and psi_l must be equal-length 1-d arrays of odd size")
        if self.t < 0:
            raise ValidationError("t must be nonnegative")
        n = self.psi_r.size
        self._buf_r = np.empty(n, dtype=np.complex128)
        self._buf_l = np.empty(n, dtype=np.complex128)
        self._tmp = np.empty(n, dtype=np.complex128)

    @property
    def L(self) -> int:
        return (self.psi_r.size - 1) // 2

    @property
    def n_sites(self) -> int:
        return self.psi_r.size

    def total_probability(self) -> float:
        """Sum over sites of |psi_r|^2 + |psi_l|^2 (1 for a valid state)."""
        return float(np.vdot(self.psi_r, self.psi_r).real + np.vdot(self.psi_l, self.psi_l).real)

    def copy(self) -> "WalkerState":
        return WalkerState(self.psi_r.copy(), self.psi_l.copy(), self.t)


def initial_state(L: int) -> WalkerState:
    """Walker at the origin with coin state (|r> + i|l>)/sqrt(2), t = 0.

    This balanced initial coin keeps the evolution left-right symmetric.
    """
    if not isinstance(L, (int, np.integer)) or isinstance(L, bool) or L < 0:
        raise ValidationError(f"L must be a nonnegative integer, got {L!r}")
    n = 2 * int(L) + 1
    psi_r = np.zeros(n, dtype=np.complex128)
    psi_l = np.zeros(n, dtype=np.complex128)
    psi_r[L] = 1.0 / math.sqrt(2.0)
    psi_l[L] = 1.0j / math.sqrt(2.0)
    return WalkerState(psi_r, psi_l)


def coin_matrix(theta: float) -> np.ndarray:
    """The 2x2 mixing matrix [[cos, sin], [sin, -cos]] for angle ``theta``.

    Real symmetric, unitary, determinant -1, and its own inverse.  Any
    finite angle is accepted.
    """
    theta = float(theta)
    if not math.isfinite(theta):
        raise ValidationError(f"theta must be finite, got {theta!r}")
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, s], [s, -c]], dtype=np.float64)


def _check_pair(state: WalkerState, layout: CoinLayout) -> None:
    if state.n_sites != layout.n_sites:
        raise ValidationError(
            f"state has {state.n_sites} sites but layout has {layout.n_sites}"
        )


def step(state: WalkerState, layout: CoinLayout) -> WalkerState:
    """Advance the state by one coin-then-shift application, in place.

    Stepping is refused once t + 1 would exceed L: beyond that point the
    wavefront could touch the chain ends and the run would no longer
    represent an unbounded line.
    """
    _check_pair(state, layout)
    if state.t + 1 > state.L:
        raise ValidationError(
            f"cannot step past t = L = {state.L}: the front could reach the chain edge"
        )
    cos, sin = layout.trig
    pr, pl = state.psi_r, state.psi_l
    out_r, out_l, tmp = state._buf_r, state._buf_l, state._tmp

    # amplitude leaving each site rightward / leftward
    np.multiply(cos, pr, out=out_r)
    np.multiply(sin, pl, out=tmp)
    out_r += tmp
    np.multiply(sin, pr, out=out_l)
    np.multiply(cos, pl, out=tmp)
    out_l -= tmp

    # conditional shift, periodic closure (carries zeros while t <= L)
    pr[1:] = out_r[:-1]
    pr[0] = out_r[-1]
    pl[:-1] = out_l[1:]
    pl[-1] = out_l[0]
    state.t += 1
    return state


def step_adjoint(state: WalkerState, layout: CoinLayout) -> WalkerState:
    """Inverse of :func:`step`: unshift, then reapply the self-inverse coin."""
    _check_pair(state, layout)
    if state.t < 1:
        raise ValidationError("cannot invert a step at t = 0")
    cos, sin = layout.trig
    pr, pl = state.psi_r, state.psi_l
    out_r, out_l, tmp = state._buf_r, state._buf_l, state._tmp

    out_r[:-1] = pr[1:]
    out_r[-1] = pr[0]
    out_l[1:] = pl[:-1]
    out_l[0] = pl[-1]

    np.multiply(cos, out_r, out=pr)
    np.multiply(sin, out_l, out=tmp)
    pr += tmp
    np.multiply(sin, out_r, out=pl)
    np.multiply(cos, out_l, out=tmp)
    pl -= tmp
    state.t -= 1
    return state


def evolve(
    state: WalkerState,
    layout: CoinLayout,
    steps: int,
    recorder: Callable[[WalkerState], None] | None = None,
) -> WalkerState:
    """Apply :func:`step` ``steps`` times, invoking ``recorder`` after each.

    The recorder receives the live state; it must read, not mutate, and
    must copy anything it keeps beyond the call.
    """
    if not isinstance(steps, (int, np.integer)) or isinstance(steps, bool) or steps < 0:
        raise ValidationError(f"steps must be a nonnegative integer, got {steps!r}")
    if state.t + steps > state.L:
        raise ValidationError(
            f"evolving {steps} steps from t = {state.t} would pass t = L = {state.L}"
        )
    for _ in range(int(steps)):
        step(state, layout)
        if recorder is not None:
            recorder(state)
    return state
