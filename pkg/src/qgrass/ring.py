"""Quantum cohomology of OG(n) and LG(n) on the Schubert basis.

At q = 1 each ring is the algebra of functions on its 2^n Peterson points,
so a Schubert class is the vector of its values there (P~_lam at the OG
points, Q~_lam at the LG points).  Products are computed pointwise and
pulled back to the Schubert basis with the dual table coming from the
orthogonality relations; the q-degree of each term is then fixed by the
grading and the coefficient rounded to an integer.
"""

import threading
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .partitions import (basis_index, check_strict, complement, enumerate_strict,
                         format_partition, parse_partition, weight)
from .peterson import check_kind, point_array, points, scale
from .symfun import expand_pfaffian, ptilde_basis, qtilde_basis, schur_staircase

ROUND_TOL = 1e-6
IDENTITY_TOL = 1e-8
MAX_SAFE_N = 8


class PrecisionError(ArithmeticError):
    """A recovered structure constant is not cleanly an integer."""


class ConsistencyError(RuntimeError):
    """The evaluation tables fail an identity they must satisfy."""


def q_degree(kind, n):
    """Degree of q: 2n for OG(n), n+1 for LG(n)."""
    return 2 * n if check_kind(kind) == "og" else n + 1


def dimension(n):
    return n * (n + 1) // 2


@dataclass(frozen=True, eq=False)
class EvaluationTables:
    """Values of the Schubert classes at the Peterson points and the inverse transform.

    ``M[I, lam]`` is the value of class ``lam`` at point ``I``; ``N`` is the
    matrix with ``N @ M == identity``.
    """

    kind: str
    n: int
    M: np.ndarray
    N: np.ndarray
    schur_values: np.ndarray

    @property
    def basis(self):
        return enumerate_strict(self.n)

    @property
    def points(self):
        return points(self.kind, self.n)

    def identity_residual(self):
        E = self.N @ self.M - np.eye(len(self.basis))
        return float(np.max(np.sum(np.abs(E), axis=1)))


_lock = threading.RLock()
_tables = {}
_operators = {}


def _build_tables(kind, n):
    basis = enumerate_strict(n)
    comp = np.array([basis_index(n)[complement(lam, n)] for lam in basis])
    # Pfaffians of large pair entries cancel heavily near n = 8; evaluate in
    # extended precision and round once.
    X = point_array(kind, n, extended=True)
    S = schur_staircase(X)
    if kind == "og":
        M = ptilde_basis(n, X).astype(complex)
        N = (M[:, comp] / S[:, None]).T
    else:
        M = qtilde_basis(n, X).astype(complex)
        t = scale(kind, n)
        N = (t ** (n + 1) * M[:, comp] / (2 ** n * S[:, None])).T
    if np.min(np.abs(S)) <= 1e-12 * max(1.0, float(np.max(np.abs(S)))):
        raise ConsistencyError(f"{kind}({n}): staircase Schur value vanishes at a point")
    tables = EvaluationTables(kind, n, M, N, S)
    resid = tables.identity_residual()
    if resid > IDENTITY_TOL:
        raise ConsistencyError(f"{kind}({n}): |N M - 1| = {resid:.3e}")
    return tables


def evaluation_tables(kind, n):
    kind = check_kind(kind)
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    key = (kind, n)
    tables = _tables.get(key)
    if tables is None:
        with _lock:
            tables = _tables.get(key)
            if tables is None:
                tables = _tables[key] = _build_tables(kind, n)
    return tables


def orthogonality_residual(kind, n):
    """Max relative deviation of the pairing sums from diag(S) (OG) or diag(2^n S) (LG).

    The pairing is sum_lam v_lam(I) v_complement(J), times t^(n+1) for LG.
    """
    tab = evaluation_tables(kind, n)
    basis = tab.basis
    comp = [basis_index(n)[complement(lam, n)] for lam in basis]
    G = tab.M @ tab.M[:, comp].T
    if kind == "og":
        target = np.diag(tab.schur_values)
    else:
        G = G * scale(kind, n) ** (n + 1)
        target = np.diag(2 ** n * tab.schur_values)
    return float(np.max(np.abs(G - target)) / np.max(np.abs(target)))


def _operator(kind, n, lam):
    """Integer matrix A with A[nu, mu] = coefficient of class nu in lam * mu at q = 1."""
    key = (kind, n, lam)
    A = _operators.get(key)
    if A is not None:
        return A
    tab = evaluation_tables(kind, n)
    basis = tab.basis
    j = basis_index(n)[lam]
    raw = tab.N @ (tab.M[:, j, None] * tab.M)
    weights = np.array([weight(mu) for mu in basis])
    shift = weight(lam) + weights[None, :] - weights[:, None]
    qd = q_degree(kind, n)
    graded = (shift >= 0) & (shift % qd == 0)

    stray = np.abs(raw[~graded])
    if stray.size and stray.max() >= ROUND_TOL:
        raise PrecisionError(f"{kind}({n}), class {lam}: off-grade coefficient {stray.max():.3e}")
    A = np.where(graded, np.rint(raw.real), 0).astype(np.int64)
    err = np.abs(raw - A)[graded]
    if err.size and err.max() >= ROUND_TOL:
        raise PrecisionError(f"{kind}({n}), class {lam}: rounding distance {err.max():.3e}")
    if (A < 0).any():
        raise PrecisionError(f"{kind}({n}), class {lam}: negative structure constant")
    A.setflags(write=False)
    with _lock:
        _operators.setdefault(key, A)
    return _operators[key]


def structure_constants(kind, n, lam, mu):
    """Terms (nu, d, c) of sigma_lam * sigma_mu = sum c sigma_nu q^d, in basis order."""
    kind = check_kind(kind)
    lam, mu = check_strict(lam, n), check_strict(mu, n)
    A = _operator(kind, n, lam)
    basis = enumerate_strict(n)
    col = A[:, basis_index(n)[mu]]
    qd = q_degree(kind, n)
    out = []
    for i in np.flatnonzero(col):
        nu = basis[i]
        d = (weight(lam) + weight(mu) - weight(nu)) // qd
        out.append((nu, int(d), int(col[i])))
    return out


def product_matrix(kind, n, lam):
    """Copy of the integer q = 1 multiplication matrix for class ``lam``."""
    kind = check_kind(kind)
    return _operator(kind, n, check_strict(lam, n)).copy()


class RingElement:
    """A Z-linear combination of terms sigma_lam q^d in qH*(OG(n)) or qH*(LG(n))."""

    __slots__ = ("kind", "n", "terms")

    def __init__(self, kind, n, terms=None):
        self.kind = check_kind(kind)
        self.n = n
        clean = {}
        for (lam, d), c in (terms or {}).items():
            lam = check_strict(lam, n)
            if d < 0:
                raise ValueError("q-degree must be nonnegative")
            c = int(c)
            if c:
                clean[(lam, int(d))] = clean.get((lam, int(d)), 0) + c
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def basis(cls, kind, n, lam, d=0):
        return cls(kind, n, {(tuple(lam), d): 1})

    @classmethod
    def one(cls, kind, n):
        return cls.basis(kind, n, ())

    @classmethod
    def zero(cls, kind, n):
        return cls(kind, n)

    @classmethod
    def q(cls, kind, n, d=1):
        return cls.basis(kind, n, (), d)

    def _same_ring(self, other):
        if (self.kind, self.n) != (other.kind, other.n):
            raise ValueError(f"cannot combine {self.kind}({self.n}) with {other.kind}({other.n})")

    def __add__(self, other):
        if isinstance(other, int):
            other = other * RingElement.one(self.kind, self.n)
        self._same_ring(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return RingElement(self.kind, self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.kind, self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return RingElement(self.kind, self.n, {k: int(other) * c for k, c in self.terms.items()})
        if not isinstance(other, RingElement):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, np.integer)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int):
            other = other * RingElement.one(self.kind, self.n)
        if not isinstance(other, RingElement):
            return NotImplemented
        return (self.kind, self.n, self.terms) == (other.kind, other.n, other.terms)

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def degrees(self):
        qd = q_degree(self.kind, self.n)
        return {weight(lam) + qd * d for lam, d in self.terms}

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def sorted_terms(self):
        idx = basis_index(self.n)
        return sorted(self.terms.items(), key=lambda kv: (kv[0][1], -idx[kv[0][0]]))

    def evaluate(self):
        """Values at the Peterson points with q = 1."""
        tab = evaluation_tables(self.kind, self.n)
        idx = basis_index(self.n)
        vec = np.zeros(len(tab.basis), dtype=complex)
        for (lam, _), c in self.terms.items():
            vec[idx[lam]] += c
        return tab.M @ vec

    def at_q1(self):
        """Coefficient vector over the Schubert basis after setting q = 1."""
        idx = basis_index(self.n)
        vec = np.zeros(len(idx), dtype=np.int64)
        for (lam, _), c in self.terms.items():
            vec[idx[lam]] += c
        return vec

    def to_json(self):
        return [{"partition": format_partition(lam), "q": d, "coeff": c}
                for (lam, d), c in self.sorted_terms()]

    @classmethod
    def from_json(cls, kind, n, data):
        terms = {}
        for item in data:
            key = (parse_partition(item["partition"]), int(item["q"]))
            terms[key] = terms.get(key, 0) + int(item["coeff"])
        return cls(kind, n, terms)

    def format(self, symbol=None):
        symbol = symbol or ("τ" if self.kind == "og" else "σ")
        if not self.terms:
            return "0"
        out = []
        for (lam, d), c in self.sorted_terms():
            factors = []
            if lam:
                factors.append(f"{symbol}({format_partition(lam)})")
            if d == 1:
                factors.append("q")
            elif d > 1:
                factors.append(f"q^{d}")
            body = "·".join(factors)
            mag = abs(c)
            if not body:
                body = str(mag)
            elif mag != 1:
                body = f"{mag}{body}"
            sign = "-" if c < 0 else "+"
            out.append((sign, body))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"RingElement({self.kind!r}, {self.n}, {self.format()!r})"


def multiply(a, b):
    """Quantum product of two ring elements (bilinear in the structure constants)."""
    a._same_ring(b)
    terms = {}
    for (lam, d1), c1 in a.terms.items():
        for (mu, d2), c2 in b.terms.items():
            for nu, d, c in structure_constants(a.kind, a.n, lam, mu):
                key = (nu, d1 + d2 + d)
                terms[key] = terms.get(key, 0) + c1 * c2 * c
    return RingElement(a.kind, a.n, terms)


def quantum_euler(kind, n):
    """Sum over lam of sigma_lam * sigma_complement(lam)."""
    total = RingElement.zero(kind, n)
    for lam in enumerate_strict(n):
        total = total + RingElement.basis(kind, n, lam) * RingElement.basis(kind, n, complement(lam, n))
    return total


def euler_expected(kind, n):
    """What the quantum Euler class must evaluate to at each point.

    OG: S_{(n..1)}(eps zeta^I).  LG: 2^n S_{(n+1..1)}(delta zeta^I) / delta^(n+1).
    """
    tab = evaluation_tables(kind, n)
    if tab.kind == "og":
        return tab.schur_values
    return 2 ** n * tab.schur_values / scale(kind, n) ** (n + 1)


class Violation(NamedTuple):
    label: str
    discrepancy: RingElement


@dataclass
class PresentationReport:
    kind: str
    n: int
    checked: int
    violations: list
    labels: tuple = ()

    @property
    def ok(self):
        return not self.violations


def verify_presentation(kind, n):
    """Check the ring presentation and the quantum Giambelli formulas exactly."""
    kind = check_kind(kind)
    checks = _lg_relations(n) if kind == "lg" else _og_relations(n)
    checks += _pfaffian_giambelli(kind, n)
    violations = [Violation(label, diff) for label, diff in checks if diff]
    return PresentationReport(kind, n, len(checks), violations, tuple(label for label, _ in checks))


def _classes(kind, n):
    def s(r):
        if r == 0:
            return RingElement.one(kind, n)
        if r < 0 or r > n:
            return RingElement.zero(kind, n)
        return RingElement.basis(kind, n, (r,))
    return s


def _lg_relations(n):
    s = _classes("lg", n)
    q = RingElement.q("lg", n)
    checks = []
    for i in range(1, n + 1):
        lhs = s(i) * s(i)
        for k in range(1, n - i + 1):
            lhs = lhs + 2 * (-1) ** k * (s(i + k) * s(i - k))
        rhs = (-1) ** (n - i) * (s(2 * i - n - 1) * q)
        checks.append((f"sigma_{i}^2 relation", lhs - rhs))
    for i in range(2, n + 1):
        for j in range(1, i):
            rhs = s(i) * s(j)
            for k in range(1, n - i + 1):
                rhs = rhs + 2 * (-1) ** k * (s(i + k) * s(j - k))
            rhs = rhs + (-1) ** (n + 1 - i) * (s(i + j - n - 1) * q)
            checks.append((f"Giambelli sigma_({i},{j})", RingElement.basis("lg", n, (i, j)) - rhs))
    return checks


def _og_relations(n):
    t = _classes("og", n)
    q = RingElement.q("og", n)
    checks = []
    for i in range(1, n):
        rel = t(i) * t(i)
        for k in range(1, i):
            rel = rel + 2 * (-1) ** k * (t(i + k) * t(i - k))
        rel = rel + (-1) ** i * t(2 * i)
        checks.append((f"tau_({i},{i}) relation", rel))
    checks.append((f"tau_{n}^2 = q", t(n) * t(n) - q))
    for i in range(2, n + 1):
        for j in range(1, i):
            rhs = t(i) * t(j)
            for k in range(1, j):
                rhs = rhs + 2 * (-1) ** k * (t(i + k) * t(j - k))
            rhs = rhs + (-1) ** j * t(i + j)
            checks.append((f"Giambelli tau_({i},{j})", RingElement.basis("og", n, (i, j)) - rhs))
    return checks


def pfaffian_giambelli(kind, n, lam):
    """Pf(sigma_{lam_i, lam_j}) under the quantum product, lam padded to even length."""
    lam = check_strict(lam, n)
    parts = lam + (0,) if len(lam) % 2 else lam

    def entry(i, j):
        return RingElement.basis(kind, n, tuple(p for p in (parts[i], parts[j]) if p))

    return expand_pfaffian(entry, len(parts), RingElement.one(kind, n), RingElement.zero(kind, n))


def _pfaffian_giambelli(kind, n):
    checks = []
    for lam in enumerate_strict(n):
        if len(lam) >= 3:
            diff = RingElement.basis(kind, n, lam) - pfaffian_giambelli(kind, n, lam)
            checks.append((f"Pfaffian Giambelli {format_partition(lam)}", diff))
    return checks
