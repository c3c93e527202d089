"""Bounded Vilenkin group arithmetic, mixed-radix indexing, Haar measure,
intervals and L_p / weak-L_p quasi-norms on finite-resolution functions.

Storage convention: a function at resolution N is an array of M_N complex
values indexed by rank(x) = sum_k x_k * M_k (digit x_0 varies fastest).
With this layout the coset I_n(a) is the arithmetic progression
{rank(a) mod M_n + j*M_n}, so coset averaging is a strided scan.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

import numpy as np

DEFAULT_CEILING = 1 << 16
# Exhaustive O(M_N^2) oracle paths (character matrices, convolution tables)
# stay below this size.
NAIVE_CAP = 4096


def resolution_ceiling() -> int:
    return int(os.environ.get("VLAB_CEILING", DEFAULT_CEILING))


@dataclass(frozen=True)
class BaseSequence:
    """Generating sequence m_0..m_{N-1} with derived place values M_0..M_N."""

    bases: tuple
    powers: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        bases = tuple(int(m) for m in self.bases)
        if len(bases) < 1:
            raise ValueError("need at least one base")
        if any(m < 2 for m in bases):
            raise ValueError("every base must be >= 2")
        powers = [1]
        for m in bases:
            powers.append(powers[-1] * m)
        if powers[-1] > resolution_ceiling():
            raise ValueError(
                f"M_N = {powers[-1]} exceeds resolution ceiling "
                f"{resolution_ceiling()}"
            )
        object.__setattr__(self, "bases", bases)
        object.__setattr__(self, "powers", tuple(powers))

    @property
    def resolution(self) -> int:
        return len(self.bases)

    @property
    def size(self) -> int:
        """Number of points M_N at full resolution."""
        return self.powers[-1]

    @classmethod
    def walsh(cls, n: int) -> "BaseSequence":
        return cls((2,) * n)

    @classmethod
    def from_spec(cls, text: str) -> "BaseSequence":
        """Parse 'walsh:N' shorthand or an explicit comma list like '2,3,2'."""
        text = text.strip()
        if text.startswith("walsh:"):
            return cls.walsh(int(text.split(":", 1)[1]))
        return cls(tuple(int(t) for t in text.replace(" ", "").split(",")))

    def digit_table(self) -> np.ndarray:
        """(N, M_N) int array: row k holds digit x_k of every rank."""
        return _digit_table(self.bases)


_DIGIT_CACHE: dict = {}


def _digit_table(bases: tuple) -> np.ndarray:
    table = _DIGIT_CACHE.get(bases)
    if table is None:
        base = BaseSequence(bases)
        ranks = np.arange(base.size)
        table = np.empty((base.resolution, base.size), dtype=np.int64)
        for k, m in enumerate(bases):
            table[k] = (ranks // base.powers[k]) % m
        table.flags.writeable = False
        _DIGIT_CACHE[bases] = table
    return table


def index_digits(base: BaseSequence, n: int) -> tuple:
    """Mixed-radix digits n_0..n_{N-1} of 0 <= n < M_N."""
    if not 0 <= n < base.size:
        raise ValueError(f"index {n} out of range [0, {base.size})")
    digits = []
    for m in base.bases:
        digits.append(n % m)
        n //= m
    return tuple(digits)


@dataclass(frozen=True)
class GroupPoint:
    """A point of G_m as its mixed-radix digit tuple."""

    base: BaseSequence
    digits: tuple

    def __post_init__(self):
        digits = tuple(int(d) for d in self.digits)
        if len(digits) != self.base.resolution:
            raise ValueError("digit count does not match resolution")
        for d, m in zip(digits, self.base.bases):
            if not 0 <= d < m:
                raise ValueError(f"digit {d} out of range for base {m}")
        object.__setattr__(self, "digits", digits)

    @property
    def rank(self) -> int:
        return sum(d * M for d, M in zip(self.digits, self.base.powers))

    @classmethod
    def unrank(cls, base: BaseSequence, r: int) -> "GroupPoint":
        if not 0 <= r < base.size:
            raise ValueError(f"rank {r} out of range [0, {base.size})")
        return cls(base, index_digits(base, r))

    @classmethod
    def zero(cls, base: BaseSequence) -> "GroupPoint":
        return cls(base, (0,) * base.resolution)

    def __add__(self, other: "GroupPoint") -> "GroupPoint":
        if self.base != other.base:
            raise ValueError("base mismatch")
        return GroupPoint(
            self.base,
            tuple((a + b) % m for a, b, m in
                  zip(self.digits, other.digits, self.base.bases)),
        )

    def __sub__(self, other: "GroupPoint") -> "GroupPoint":
        if self.base != other.base:
            raise ValueError("base mismatch")
        return GroupPoint(
            self.base,
            tuple((a - b) % m for a, b, m in
                  zip(self.digits, other.digits, self.base.bases)),
        )


def group_add(x: GroupPoint, y: GroupPoint) -> GroupPoint:
    return x + y


def group_sub(x: GroupPoint, y: GroupPoint) -> GroupPoint:
    return x - y


@dataclass(frozen=True)
class IntervalSpec:
    """The coset I_depth(anchor): points agreeing with anchor in the first
    `depth` digits. Haar measure 1/M_depth."""

    base: BaseSequence
    depth: int
    anchor: tuple = None

    def __post_init__(self):
        if not 0 <= self.depth <= self.base.resolution:
            raise ValueError("depth out of range")
        anchor = self.anchor
        if anchor is None:
            anchor = (0,) * self.base.resolution
        anchor = tuple(int(d) for d in anchor)
        GroupPoint(self.base, anchor)  # digit validation
        object.__setattr__(self, "anchor", anchor)

    @property
    def measure(self) -> float:
        return 1.0 / self.base.powers[self.depth]

    @property
    def anchor_rank(self) -> int:
        Mn = self.base.powers[self.depth]
        return GroupPoint(self.base, self.anchor).rank % Mn

    def ranks(self) -> np.ndarray:
        """All point ranks in the coset (a stride-M_depth progression)."""
        Mn = self.base.powers[self.depth]
        return self.anchor_rank + Mn * np.arange(self.base.size // Mn)

    def indicator(self) -> np.ndarray:
        out = np.zeros(self.base.size)
        out[self.ranks()] = 1.0
        return out

    def contains(self, x: GroupPoint) -> bool:
        return x.digits[: self.depth] == self.anchor[: self.depth]


@dataclass(frozen=True)
class FiniteFunction:
    """Complex function constant on rank-N cosets, stored by rank."""

    base: BaseSequence
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.complex128)
        if values.shape != (self.base.size,):
            raise ValueError(
                f"expected {self.base.size} values, got {values.shape}"
            )
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @classmethod
    def constant(cls, base: BaseSequence, c=1.0) -> "FiniteFunction":
        return cls(base, np.full(base.size, c, dtype=np.complex128))

    def __add__(self, other):
        if self.base != other.base:
            raise ValueError("base mismatch")
        return FiniteFunction(self.base, self.values + other.values)

    def __sub__(self, other):
        if self.base != other.base:
            raise ValueError("base mismatch")
        return FiniteFunction(self.base, self.values - other.values)

    def __mul__(self, scalar):
        return FiniteFunction(self.base, self.values * scalar)

    __rmul__ = __mul__


def haar_integral(f: FiniteFunction) -> complex:
    """Integral against normalized Haar measure: each rank carries 1/M_N."""
    return complex(np.mean(f.values))


def lp_norm(f: FiniteFunction, p: float) -> float:
    if p <= 0:
        raise ValueError("p must be positive")
    mags = np.abs(f.values)
    return float(np.mean(mags ** p) ** (1.0 / p))


def linf_norm(f: FiniteFunction) -> float:
    return float(np.max(np.abs(f.values)))


def weak_lp_norm(f: FiniteFunction, p: float) -> float:
    """Exact L_{p,infinity} quasi-norm via order statistics:
    max_k v_k (k/M_N)^{1/p} over the descending rearrangement v."""
    if p <= 0:
        raise ValueError("p must be positive")
    mags = np.sort(np.abs(f.values))[::-1]
    if mags[0] == 0.0:
        return 0.0
    k = np.arange(1, mags.size + 1)
    return float(np.max(mags * (k / mags.size) ** (1.0 / p)))


def shell_decomposition(base: BaseSequence, depth: int) -> list:
    """Rank sets of the shells I_s \\ I_{s+1}, s = 0..depth-1, partitioning
    the complement of I_depth(0)."""
    if not 0 <= depth <= base.resolution:
        raise ValueError("depth out of range")
    shells = []
    ranks = np.arange(base.size)
    for s in range(depth):
        in_s = ranks % base.powers[s] == 0
        in_s1 = ranks % base.powers[s + 1] == 0
        shells.append(ranks[in_s & ~in_s1])
    return shells


def translate(f: FiniteFunction, h: GroupPoint) -> FiniteFunction:
    """The translated function x -> f(x + h)."""
    if f.base != h.base:
        raise ValueError("base mismatch")
    digits = f.base.digit_table()
    shifted = np.zeros(f.base.size, dtype=np.int64)
    for k, (m, d) in enumerate(zip(f.base.bases, h.digits)):
        shifted += ((digits[k] + d) % m) * f.base.powers[k]
    return FiniteFunction(f.base, f.values[shifted])


def save_function(f: FiniteFunction, path) -> None:
    payload = {
        "bases": list(f.base.bases),
        "values": [[float(v.real), float(v.imag)] for v in f.values],
    }
    with open(path, "w") as fh:
        json.dump(payload, fh)


def load_function(path) -> FiniteFunction:
    with open(path) as fh:
        payload = json.load(fh)
    base = BaseSequence(tuple(payload["bases"]))
    values = np.array([complex(re, im) for re, im in payload["values"]])
    return FiniteFunction(base, values)
