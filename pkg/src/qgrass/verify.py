"""Batch identity checks for one (kind, n), as run by ``qgrass <kind> <n> verify``."""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .partitions import enumerate_strict
from .peterson import (check_kind, evaluate_q, exclusive_power_check, points,
                       relation_residuals)
from .ring import (PrecisionError, euler_expected, evaluation_tables, orthogonality_residual,
                   product_matrix, quantum_euler, verify_presentation)
from .spectral import conjecture_o, eigen_residuals

THREADS_ENV = "QGRASS_THREADS"


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str

    def to_dict(self):
        return {"check": self.name, "passed": self.passed, "detail": self.detail}


def _orthogonality(kind, n):
    r = orthogonality_residual(kind, n)
    t = evaluation_tables(kind, n).identity_residual()
    return r <= 1e-8 and t <= 1e-8, f"pairing residual {r:.2e}, |NM - 1| {t:.2e}"


def _points(kind, n):
    pts = points(kind, n)
    q = max(abs(evaluate_q(p) - 1) for p in pts)
    rel = max(relation_residuals(p) for p in pts)
    pw = max(max(exclusive_power_check(p.exclusive)) for p in pts)
    m = pts[0].exclusive.order
    ok = len(pts) == 2 ** n and q <= 1e-10 and rel <= 1e-9 and pw <= 1e-10 * m
    return ok, f"{len(pts)} points, q-1 {q:.2e}, relations {rel:.2e}, powers {pw:.2e}"


def _structure_constants(kind, n):
    basis = enumerate_strict(n)
    try:
        ops = [product_matrix(kind, n, lam) for lam in basis]
    except PrecisionError as exc:
        return False, str(exc)
    asym = sum(int(np.any(ops[i][:, j] != ops[j][:, i]))
               for i in range(len(basis)) for j in range(i))
    return asym == 0, f"{len(basis) ** 2} products integral and nonnegative, {asym} asymmetric pairs"


def _presentation(kind, n):
    rep = verify_presentation(kind, n)
    detail = f"{rep.checked} relations"
    if rep.violations:
        detail += "; failing: " + ", ".join(v.label for v in rep.violations[:5])
    return rep.ok, detail


def _euler(kind, n):
    vals = quantum_euler(kind, n).evaluate()
    expect = euler_expected(kind, n)
    rel = float(np.max(np.abs(vals - expect) / np.abs(expect)))
    low = float(np.min(np.abs(vals)))
    return rel <= 1e-7 and low > 1e-6, f"min |e_q| {low:.3e}, mismatch {rel:.2e}"


def _eigen(kind, n):
    worst = max(float(eigen_residuals(kind, n, lam).max()) for lam in enumerate_strict(n))
    return worst <= 1e-8, f"max scaled residual {worst:.2e}"


def _conjecture(kind, n, tol):
    rep = conjecture_o(kind, n, tol)
    expected = rep.diagnostics["expected_max_modulus_count"]
    ok = rep.passed and rep.max_modulus_count == expected
    return ok, (f"T0 {rep.T0:.12g}, conditions {rep.cond1}/{rep.cond2}/{rep.cond3}, "
                f"max-modulus {rep.max_modulus_count}/{expected}"
                + (", indeterminate" if rep.indeterminate else ""))


CHECKS = (
    ("orthogonality", _orthogonality),
    ("peterson-points", _points),
    ("structure-constants", _structure_constants),
    ("presentation", _presentation),
    ("euler-class", _euler),
    ("eigenpairs", _eigen),
    ("conjecture-o", None),
)


def thread_count():
    raw = os.environ.get(THREADS_ENV)
    if raw:
        return max(1, int(raw))
    return min(4, os.cpu_count() or 1)


def run_suite(kind, n, tol=1e-8, workers=None):
    """Run every check; results come back in CHECKS order regardless of threading."""
    kind = check_kind(kind)
    evaluation_tables(kind, n)  # build the shared cache once, up front

    def run(item):
        name, fn = item
        try:
            ok, detail = _conjecture(kind, n, tol) if fn is None else fn(kind, n)
        except Exception as exc:  # a crashing check is a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        return CheckResult(name, bool(ok), detail)

    workers = workers or thread_count()
    if workers == 1:
        return [run(item) for item in CHECKS]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run, CHECKS))
