"""Position-dependent coin layouts for walks on the chain x in [-L, L].

A layout assigns one of two coin labels to every one of the N = 2L + 1
sites and binds the labels to mixing angles: type-1 sites use ``theta1``,
type-2 sites use ``theta2``.  Three chain families are provided:

- :func:`build_cantor` -- the two-letter substitution word
  1 -> (1, 2, 1), 2 -> (2, 2, 2) iterated ``generation`` times, so the
  type-1 sites occupy the middle-thirds Cantor positions
  (2**g of them out of 3**g sites).
- :func:`build_homogeneous` -- a single-angle reference chain.
- :func:`build_two_scatter` -- all type-2 except the two type-1 sites
  closest to the origin in the Cantor chain of the same generation; used
  to isolate what the first scatterers alone contribute.

Layouts are immutable after construction and safe to share between
concurrently running simulations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from functools import cached_property

import numpy as np

from .errors import ValidationError

__all__ = [
    "CoinLabel",
    "CoinLayout",
    "build_cantor",
    "build_homogeneous",
    "build_two_scatter",
    "cantor_labels",
    "nearest_type1_offset",
    "verify_self_similarity",
    "DEFAULT_THETA1",
    "DEFAULT_THETA2",
]

# Canonical demonstration pair (minority angle, bulk angle).
DEFAULT_THETA1 = math.pi / 8
DEFAULT_THETA2 = math.pi / 4


class CoinLabel(IntEnum):
    TYPE1 = 1
    TYPE2 = 2


def _check_angle(name: str, value: float) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{name} must be a real number, got {value!r}") from exc
    if not math.isfinite(value):
        raise ValidationError(f"{name} must be finite, got {value!r}")
    return value


@dataclass
class CoinLayout:
    """Per-site coin labels plus the label-to-angle binding.

    Parameters
    ----------
    labels : ndarray of uint8
        One label (1 or 2) per site, odd length 2L + 1; ``labels[i]``
        belongs to position ``x = i - L``.  The array is frozen on
        construction.
    theta1, theta2 : float
        Mixing angles (radians) for type-1 and type-2 sites.
    generation : int or None
        Substitution depth for Cantor-built layouts, None otherwise.
    """

    labels: np.ndarray
    theta1: float
    theta2: float
    generation: int | None = None

    def __post_init__(self):
        labels = np.ascontiguousarray(self.labels, dtype=np.uint8)
        if labels.ndim != 1 or labels.size % 2 == 0 or labels.size == 0:
            raise ValidationError("labels must be a 1-d array of odd length")
        valid = (labels == CoinLabel.TYPE1) | (labels == CoinLabel.TYPE2)
        if not valid.all():
            raise ValidationError("labels may contain only the values 1 and 2")
        labels.flags.writeable = False
        self.labels = labels
        self.theta1 = _check_angle("theta1", self.theta1)
        self.theta2 = _check_angle("theta2", self.theta2)

    @property
    def L(self) -> int:
        """Half-width of the chain."""
        return (self.labels.size - 1) // 2

    @property
    def n_sites(self) -> int:
        return self.labels.size

    def label_at(self, x: int) -> CoinLabel:
        """Label of site ``x`` (origin at the middle of the chain)."""
        return CoinLabel(int(self.labels[x + self.L]))

    def angle_at(self, x: int) -> float:
        return self.theta1 if self.label_at(x) is CoinLabel.TYPE1 else self.theta2

    @cached_property
    def trig(self) -> tuple[np.ndarray, np.ndarray]:
        """Per-site (cos theta(x), sin theta(x)) tables used by the stepper."""
        one = self.labels == CoinLabel.TYPE1
        cos = np.where(one, math.cos(self.theta1), math.cos(self.theta2))
        sin = np.where(one, math.sin(self.theta1), math.sin(self.theta2))
        cos.flags.writeable = False
        sin.flags.writeable = False
        return cos, sin

    def with_angles(self, theta1: float, theta2: float) -> "CoinLayout":
        """Same label array (shared, not copied) bound to new angles.

        Lets angle sweeps reuse one generated sequence.
        """
        return CoinLayout(self.labels, theta1, theta2, generation=self.generation)

    def to_text(self) -> str:
        """One character per site, '1'/'2', newline-terminated."""
        return (self.labels + ord("0")).tobytes().decode("ascii") + "\n"


def _expand(seq: np.ndarray) -> np.ndarray:
    """One substitution round: 1 -> (1,2,1), 2 -> (2,2,2)."""
    out = np.full(3 * seq.size, CoinLabel.TYPE2, dtype=np.uint8)
    ones = np.flatnonzero(seq == CoinLabel.TYPE1)
    out[3 * ones] = CoinLabel.TYPE1
    out[3 * ones + 2] = CoinLabel.TYPE1
    return out


def _check_generation(generation: int, minimum: int = 0) -> int:
    if not isinstance(generation, (int, np.integer)) or isinstance(generation, bool):
        raise ValidationError(f"generation must be an integer, got {generation!r}")
    if generation < minimum:
        raise ValidationError(f"generation must be >= {minimum}, got {generation}")
    if 3 ** int(generation) > np.iinfo(np.intp).max:
        raise ValidationError(
            f"3**{generation} exceeds the platform index range; choose a smaller generation"
        )
    return int(generation)


def cantor_labels(generation: int) -> np.ndarray:
    """Label array of the generation-``g`` substitution word (length 3**g)."""
    generation = _check_generation(generation)
    seq = np.array([CoinLabel.TYPE1], dtype=np.uint8)
    for _ in range(generation):
        seq = _expand(seq)
    return seq


def build_cantor(
    generation: int,
    theta1: float = DEFAULT_THETA1,
    theta2: float = DEFAULT_THETA2,
) -> CoinLayout:
    """Cantor-substitution layout of ``3**generation`` sites, centered on x = 0.

    Generation 0 is the single word (1); each further generation replaces
    every symbol by its three-letter image.  The result is a palindrome
    with 2**g type-1 sites, and for g >= 1 its central block of
    3**(g-1) sites is entirely type-2.
    """
    return CoinLayout(cantor_labels(generation), theta1, theta2, generation=generation)


def build_homogeneous(L: int, theta: float = DEFAULT_THETA2) -> CoinLayout:
    """All-type-2 chain of half-width ``L`` with a single angle everywhere.

    Both label angles are bound to ``theta`` so the layout behaves
    identically no matter which label a site carries.
    """
    if not isinstance(L, (int, np.integer)) or isinstance(L, bool) or L < 0:
        raise ValidationError(f"L must be a nonnegative integer, got {L!r}")
    labels = np.full(2 * int(L) + 1, CoinLabel.TYPE2, dtype=np.uint8)
    return CoinLayout(labels, theta, theta, generation=None)


def build_two_scatter(
    generation: int,
    theta1: float = DEFAULT_THETA1,
    theta2: float = DEFAULT_THETA2,
    swap: bool = False,
) -> CoinLayout:
    """Two isolated type-1 scatterers in a type-2 bulk.

    The chain has the same length ``3**generation`` as the Cantor layout
    of that generation, and the scatterers sit at x = +/-(3**(g-1)+1)/2,
    exactly where the Cantor layout places its innermost type-1 coins.
    Hence both chains agree everywhere the walker can reach before its
    front first crosses a type-1 site.

    With ``swap=True`` the roles are exchanged (type-1 bulk, two type-2
    sites), for comparison against the inverted convention.
    """
    generation = _check_generation(generation, minimum=1)
    n = 3**generation
    L = (n - 1) // 2
    offset = (3 ** (generation - 1) + 1) // 2
    bulk, scatter = (CoinLabel.TYPE2, CoinLabel.TYPE1)
    if swap:
        bulk, scatter = scatter, bulk
    labels = np.full(n, bulk, dtype=np.uint8)
    labels[L - offset] = scatter
    labels[L + offset] = scatter
    return CoinLayout(labels, theta1, theta2, generation=generation)


def nearest_type1_offset(layout: CoinLayout) -> int:
    """Smallest |x| carrying a type-1 label.

    This distance (about L/3 for Cantor layouts) sets how long a walker
    launched at the origin moves through type-2 coins only.
    """
    idx = np.flatnonzero(layout.labels == CoinLabel.TYPE1)
    if idx.size == 0:
        raise ValidationError("layout has no type-1 site")
    return int(np.abs(idx - layout.L).min())


def verify_self_similarity(layout: CoinLayout) -> bool:
    """True iff one substitution round applied to the previous generation
    reproduces ``layout`` exactly.

    Only meaningful for Cantor layouts of generation >= 1.
    """
    if layout.generation is None:
        raise ValidationError("self-similarity check applies only to Cantor layouts")
    if layout.generation < 1:
        raise ValidationError("self-similarity check needs generation >= 1")
    parent = cantor_labels(layout.generation - 1)
    return bool(np.array_equal(_expand(parent), layout.labels))
