"""Eigenbases of quantum multiplication operators and the Conjecture O check."""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .partitions import basis_index, check_strict, complement
from .peterson import check_kind, points, scale
from .ring import evaluation_tables, product_matrix
from .symfun import elementary


def fano_index(kind, n):
    return 2 * n if check_kind(kind) == "og" else n + 1


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Matrix of multiplication by a Schubert class at q = 1; ``entries[nu, mu]``."""

    kind: str
    n: int
    cls: tuple
    entries: np.ndarray = field(repr=False)


def operator_matrix(kind, n, lam):
    kind = check_kind(kind)
    lam = check_strict(lam, n)
    return OperatorMatrix(kind, n, lam, product_matrix(kind, n, lam))


@dataclass(frozen=True, eq=False)
class EigenPair:
    exclusive: object
    value: complex
    vector: np.ndarray = field(repr=False)


def eigenvectors(kind, n):
    """Columns are the simultaneous eigenvectors, one per Peterson point.

    Column I has entry v(I)[mu] = value of class complement(mu) at point I.
    """
    tab = evaluation_tables(kind, n)
    comp = [basis_index(n)[complement(mu, n)] for mu in tab.basis]
    return tab.M[:, comp].T


def eigenpairs(kind, n, lam):
    kind = check_kind(kind)
    lam = check_strict(lam, n)
    tab = evaluation_tables(kind, n)
    values = tab.M[:, basis_index(n)[lam]]
    V = eigenvectors(kind, n)
    return [EigenPair(p.exclusive, complex(values[i]), V[:, i])
            for i, p in enumerate(tab.points)]


def eigen_residual(A, pair):
    """||A v - value v||_inf / (||A||_inf ||v||_inf)."""
    A = np.asarray(A, dtype=complex)
    v = pair.vector
    r = A @ v - pair.value * v
    norm_a = np.max(np.sum(np.abs(A), axis=1))
    return float(np.max(np.abs(r)) / (norm_a * np.max(np.abs(v))))


def eigen_residuals(kind, n, lam):
    """Scaled residual of every closed-form eigenpair of [lam], one per point."""
    tab = evaluation_tables(kind, n)
    A = product_matrix(kind, n, lam).astype(float)
    V = eigenvectors(kind, n)
    values = tab.M[:, basis_index(n)[check_strict(lam, n)]]
    R = A @ V - V * values[None, :]
    norm_a = np.max(np.sum(np.abs(A), axis=1))
    return np.max(np.abs(R), axis=0) / (norm_a * np.max(np.abs(V), axis=0))


def c1_spectrum(kind, n):
    """Eigenvalues of multiplication by c_1, one per point.

    OG: n eps E_1(zeta^I) (c_1 = 2n tau_1).  LG: (n+1) delta E_1(zeta^I)
    (c_1 = (n+1) sigma_1).
    """
    kind = check_kind(kind)
    t = scale(kind, n)
    factor = n * t if kind == "og" else (n + 1) * t
    return np.array([factor * elementary(1, p.exclusive.roots()) for p in points(kind, n)])


def c1_operator(kind, n):
    return fano_index(kind, n) * product_matrix(kind, n, (1,))


def c1_spectrum_dense(kind, n):
    """Cross-check: eigenvalues of the c_1 matrix from a general dense solver."""
    return np.linalg.eigvals(c1_operator(kind, n).astype(float))


def match_multisets(a, b):
    """Largest pairwise distance under the optimal one-to-one matching."""
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        raise ValueError("multisets of different sizes")
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max()) if len(a) else 0.0


def top_closed_form(kind, n):
    """f(I_0) = n eps / sin(pi/2n) for OG, g(I_0) = (n+1) delta / sin(pi/(2n+2)) for LG."""
    m = n if check_kind(kind) == "og" else n + 1
    factor = n if kind == "og" else n + 1
    return factor * scale(kind, n) / math.sin(math.pi / (2 * m))


@dataclass
class Cluster:
    value: complex
    multiplicity: int


def cluster_spectrum(values, tol, scale_=1.0):
    """Group values closer than tol * max(1, scale_).

    Returns (clusters, indeterminate); indeterminate is set when two
    clusters sit between tol and 10 tol apart.
    """
    values = np.asarray(values, dtype=complex)
    eps = tol * max(1.0, scale_)
    parent = list(range(len(values)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    dist = np.abs(values[:, None] - values[None, :])
    for i, j in zip(*np.nonzero(np.triu(dist <= eps, k=1))):
        parent[find(i)] = find(j)
    groups = {}
    for i in range(len(values)):
        groups.setdefault(find(i), []).append(i)
    members = list(groups.values())
    clusters = [Cluster(complex(values[g].mean()), len(g)) for g in members]
    labels = np.empty(len(values), dtype=int)
    for k, g in enumerate(members):
        labels[g] = k
    near = (dist > eps) & (dist <= 10 * eps) & (labels[:, None] != labels[None, :])
    clusters.sort(key=lambda c: (-abs(c.value), -c.value.real, -c.value.imag))
    return clusters, bool(near.any())


@dataclass
class ConjectureOReport:
    kind: str
    n: int
    fano_index: int
    spectrum: list
    T0: float
    cond1: bool
    cond2: bool
    cond3: bool
    max_modulus_count: int
    indeterminate: bool = False
    diagnostics: dict = field(default_factory=dict)

    @property
    def passed(self):
        return not self.indeterminate and self.cond1 and self.cond2 and self.cond3

    def to_dict(self):
        return {
            "kind": self.kind,
            "n": self.n,
            "fano_index": self.fano_index,
            "T0": self.T0,
            "spectrum": [{"re": c.value.real, "im": c.value.imag, "multiplicity": c.multiplicity}
                         for c in self.spectrum],
            "conditions": {"c1": self.cond1, "c2": self.cond2, "c3": self.cond3},
            "max_modulus_count": self.max_modulus_count,
            "indeterminate": self.indeterminate,
        }

    @classmethod
    def from_dict(cls, data):
        spectrum = [Cluster(complex(s["re"], s["im"]), int(s["multiplicity"]))
                    for s in data["spectrum"]]
        cond = data["conditions"]
        return cls(data["kind"], int(data["n"]), int(data["fano_index"]), spectrum,
                   float(data["T0"]), bool(cond["c1"]), bool(cond["c2"]), bool(cond["c3"]),
                   int(data["max_modulus_count"]), bool(data.get("indeterminate", False)))


def conjecture_o(kind, n, tol=1e-8):
    """Test the three Conjecture O conditions on the closed-form c_1 spectrum."""
    kind = check_kind(kind)
    r = fano_index(kind, n)
    values = c1_spectrum(kind, n)
    T0 = float(np.max(np.abs(values)))
    clusters, indeterminate = cluster_spectrum(values, tol, T0)
    eps = tol * max(1.0, T0)

    top = [c for c in clusters if abs(abs(c.value) - T0) <= eps]
    real_top = [c for c in top if abs(c.value.imag) <= tol * T0 and c.value.real > 0]
    cond1 = bool(real_top)

    off_roots = []
    for c in top:
        k = round(math.atan2(c.value.imag, c.value.real) * r / (2 * math.pi))
        if abs(c.value - T0 * complex(math.cos(2 * math.pi * k / r), math.sin(2 * math.pi * k / r))) > eps:
            off_roots.append(c.value)
    cond2 = not off_roots

    cond3 = cond1 and real_top[0].multiplicity == 1
    diagnostics = {
        "top_values": [c.value for c in top],
        "not_root_of_unity_multiple": off_roots,
        "T0_multiplicity": real_top[0].multiplicity if real_top else 0,
        "expected_max_modulus_count": 2 * n if kind == "og" else n + 1,
    }
    return ConjectureOReport(kind, n, r, clusters, T0, cond1, cond2, cond3, len(top),
                             indeterminate, diagnostics)
