"""The q = 1 points of the Peterson varieties for OG(n) and LG(n).

A point is ``t * zeta^I`` where ``zeta = exp(pi i / m)`` and ``I`` is an
exclusive tuple of exponents: m distinct 2m-th roots of (-1)^(m+1), no two
antipodal.  Exponents may be half-integers, so tuples store ``2 * j``.
Everything about a tuple (exclusivity, parity, closedness) is decided with
integer arithmetic mod 4m.
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .symfun import SignedPermutation, elementary_table, schur_staircase

KINDS = ("og", "lg")


def check_kind(kind):
    kind = str(kind).lower()
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    return kind


def _canonical(d, m):
    # window -(m-1) <= d <= 3m-1
    return (d + m - 1) % (4 * m) - (m - 1)


@dataclass(frozen=True)
class ExclusiveTuple:
    """An exclusive exponent tuple, stored as doubled exponents."""

    doubled: tuple
    order: int

    def __post_init__(self):
        m = self.order
        doubled = tuple(sorted(_canonical(int(d), m) for d in self.doubled))
        object.__setattr__(self, "doubled", doubled)
        if len(doubled) != m:
            raise ValueError(f"need {m} exponents, got {len(doubled)}")
        if any((d - m - 1) % 2 for d in doubled):
            raise ValueError(f"{doubled} are not 2m-th roots of (-1)^(m+1) for m={m}")
        classes = {d % (2 * m) for d in doubled}
        if len(classes) != m:
            raise ValueError(f"{doubled} is not exclusive (repeated or antipodal entries)")

    @classmethod
    def unchecked(cls, doubled, order):
        """Build without validation; only for probing failure modes."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "doubled", tuple(doubled))
        object.__setattr__(obj, "order", order)
        return obj

    @property
    def exponents(self):
        return tuple(d / 2 for d in self.doubled)

    @property
    def parity(self):
        s = sum(self.doubled) % (4 * self.order)
        if s == 0:
            return "e"
        if s == 2 * self.order:
            return "o"
        return None

    @property
    def closed(self):
        """True when the roots are n consecutive 2n-th roots on the circle."""
        m = self.order
        residues = {d % (4 * m) for d in self.doubled}
        for start in residues:
            if all((start + 2 * k) % (4 * m) in residues for k in range(m)):
                return True
        return False

    def roots(self):
        m = self.order
        return np.exp(1j * np.pi * np.array(self.doubled, dtype=float) / (2 * m))

    def __str__(self):
        return "(" + ",".join(_fmt_half(d) for d in self.doubled) + ")"


def _fmt_half(d):
    return str(d // 2) if d % 2 == 0 else f"{d}/2"


def base_tuple(m):
    """I_0 = (-(m-1)/2, ..., (m-1)/2)."""
    return ExclusiveTuple(tuple(range(-(m - 1), m, 2)), m)


@lru_cache(maxsize=None)
def enumerate_exclusive(m):
    """All 2^m exclusive tuples of order ``m``, sorted by doubled exponents."""
    if m < 1:
        raise ValueError("order must be positive")
    reps = range(-(m - 1), m, 2)
    out = []
    for mask in range(2 ** m):
        doubled = [b + 2 * m if mask >> k & 1 else b for k, b in enumerate(reps)]
        out.append(ExclusiveTuple(tuple(doubled), m))
    out.sort(key=lambda t: t.doubled)
    return tuple(out)


class PowerCheck(NamedTuple):
    power_sums: float   # max_{i<m} |E_i(zeta^{2I})|
    top: float          # |E_m(zeta^I)^2 - 1|


def exclusive_power_check(I):
    m = I.order
    E2 = elementary_table(I.roots() ** 2)
    En = elementary_table(I.roots())[m]
    low = float(np.max(np.abs(E2[1:m]))) if m > 1 else 0.0
    return PowerCheck(low, float(abs(En * En - 1)))


def signed_permutation_between(I, J):
    """A signed permutation w with (zeta^I)^w = zeta^J, barred when I != J."""
    m = I.order
    if J.order != m:
        raise ValueError("tuples of different order")
    where = {d % (4 * m): k for k, d in enumerate(I.doubled)}
    images, bars = [], []
    for d in J.doubled:
        d = d % (4 * m)
        if d in where:
            images.append(where[d] + 1)
            bars.append(False)
        else:
            images.append(where[(d + 2 * m) % (4 * m)] + 1)
            bars.append(True)
    return SignedPermutation(tuple(images), tuple(bars))


def arity(kind, n):
    return n if check_kind(kind) == "og" else n + 1


def scale(kind, n):
    """epsilon = 4^(1/2n) for OG(n), delta = (1/2)^(1/(n+1)) for LG(n)."""
    if check_kind(kind) == "og":
        return 4.0 ** (1.0 / (2 * n))
    return 0.5 ** (1.0 / (n + 1))


@dataclass(frozen=True)
class PetersonPoint:
    kind: str
    n: int
    exclusive: ExclusiveTuple
    t: float
    coordinates: tuple = field(repr=False)
    generator_values: tuple = field(repr=False)

    @classmethod
    def build(cls, kind, n, I, t=None):
        kind = check_kind(kind)
        t = scale(kind, n) if t is None else t
        coords = t * I.roots()
        E = elementary_table(coords)
        return cls(kind, n, I, t, tuple(complex(c) for c in coords),
                   tuple(complex(e) for e in E[1:]))

    def to_dict(self):
        return {
            "kind": self.kind,
            "n": self.n,
            "doubled_indices": list(self.exclusive.doubled),
            "parity": self.exclusive.parity,
            "closed": self.exclusive.closed,
            "t": self.t,
            "coordinates": [[c.real, c.imag] for c in self.coordinates],
        }

    @classmethod
    def from_dict(cls, data):
        I = ExclusiveTuple(tuple(data["doubled_indices"]), arity(data["kind"], data["n"]))
        coords = tuple(complex(re, im) for re, im in data["coordinates"])
        E = elementary_table(coords)
        return cls(check_kind(data["kind"]), int(data["n"]), I, float(data["t"]), coords,
                   tuple(complex(e) for e in E[1:]))


@lru_cache(maxsize=None)
def points(kind, n):
    """The 2^n points at q = 1.

    OG(n): one per exclusive tuple of order n, scaled by epsilon.
    LG(n): one per even-parity exclusive tuple of order n+1, scaled by delta.
    """
    kind = check_kind(kind)
    if n < 2:
        raise ValueError("n must be at least 2")
    if kind == "og":
        tuples = enumerate_exclusive(n)
    else:
        tuples = [I for I in enumerate_exclusive(n + 1) if I.parity == "e"]
    return tuple(PetersonPoint.build(kind, n, I) for I in tuples)


def point_array(kind, n, extended=False):
    """Coordinates of :func:`points` as a complex array of shape (2^n, arity).

    With ``extended=True`` the coordinates are recomputed from the doubled
    exponents in ``clongdouble``.
    """
    pts = points(kind, n)
    if not extended:
        return np.array([p.coordinates for p in pts])
    m = arity(kind, n)
    ld = np.longdouble
    pi = 4 * np.arctan(ld(1))
    t = ld(4) ** (1 / ld(2 * n)) if kind == "og" else ld(0.5) ** (1 / ld(n + 1))
    doubled = np.array([p.exclusive.doubled for p in pts], dtype=ld)
    return t * np.exp(1j * pi * doubled / (2 * m)).astype(np.clongdouble)


def evaluate_q(p):
    """The quantum parameter at ``p``: V_n^2 / 4 for OG, 2 W_{n+1} for LG."""
    if p.kind == "og":
        return p.generator_values[p.n - 1] ** 2 / 4
    return 2 * p.generator_values[p.n]


def relation_residuals(p):
    """max |V_{i,i}| over i < n (OG) or |W_{i,i}| over i <= n (LG)."""
    vals = (1.0,) + p.generator_values
    top = len(vals) - 1

    def g(r):
        return vals[r] if 0 <= r <= top else 0.0

    last = p.n - 1 if p.kind == "og" else p.n
    worst = 0.0
    for i in range(1, last + 1):
        r = g(i) ** 2 + 2 * sum((-1) ** k * g(i + k) * g(i - k) for k in range(1, i + 1))
        worst = max(worst, abs(r))
    return worst


def toeplitz_matrix(p):
    """Unit upper-triangular banded matrix with bands E_1, E_2, ... of the point."""
    bands = p.generator_values
    size = 2 * p.n if p.kind == "og" else 2 * p.n + 1
    A = np.eye(size, dtype=complex)
    for k, v in enumerate(bands, start=1):
        if k < size:
            A += v * np.eye(size, k=k)
    return A


def closed_form_top(n):
    """E_1(zeta^{I_0}) = 1 / sin(pi / 2n)."""
    return 1.0 / math.sin(math.pi / (2 * n))


def staircase_values(kind, n):
    """S_{(m, ..., 1)} at each point, m the arity."""
    return schur_staircase(point_array(kind, n))
