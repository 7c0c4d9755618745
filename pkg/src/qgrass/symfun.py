"""Numeric evaluation of E, H, Schur, Q-tilde and P-tilde polynomials.

All kernels accept a point ``X`` as an array-like whose last axis holds the
variables, so ``X`` of shape ``(P, m)`` evaluates at ``P`` points at once.
Scalar inputs (a flat tuple) give scalar outputs.  A ``clongdouble`` input
keeps extended precision through the E, H and Pfaffian kernels.
"""

from dataclasses import dataclass

import numpy as np

from .partitions import enumerate_strict, complement, pad_even, staircase

SKEW_TOL = 1e-12


def _as_points(X):
    X = np.asarray(X)
    X = X.astype(np.clongdouble if X.dtype in (np.longdouble, np.clongdouble) else complex)
    if X.ndim == 0:
        raise ValueError("a point needs at least one coordinate")
    return X


def _unwrap(value):
    if isinstance(value, np.ndarray) and value.ndim == 0:
        return complex(value)
    return value


def elementary_table(X):
    """Return ``E_0(X), ..., E_m(X)`` stacked along the last axis.

    Built by multiplying out prod_k (1 + x_k t) one factor at a time.
    """
    X = _as_points(X)
    m = X.shape[-1]
    E = np.zeros(X.shape[:-1] + (m + 1,), dtype=X.dtype)
    E[..., 0] = 1.0
    for k in range(m):
        x = X[..., k, None]
        E[..., 1:k + 2] = E[..., 1:k + 2] + x * E[..., 0:k + 1]
    return E


def _pick(table, i):
    m = table.shape[-1] - 1
    if i < 0 or i > m:
        return np.zeros(table.shape[:-1], dtype=table.dtype)
    return table[..., i]


def elementary(i, X):
    """The i-th elementary symmetric polynomial; zero outside 0..len(X)."""
    return _unwrap(_pick(elementary_table(X), i))


def complete_table(X, upto):
    """Return ``H_0(X), ..., H_upto(X)`` along the last axis.

    Uses sum_k (-1)^k E_k H_{i-k} = 0 for i >= 1.
    """
    E = elementary_table(X)
    m = E.shape[-1] - 1
    H = np.zeros(E.shape[:-1] + (max(upto, 0) + 1,), dtype=E.dtype)
    H[..., 0] = 1.0
    for i in range(1, upto + 1):
        acc = np.zeros(E.shape[:-1], dtype=E.dtype)
        for k in range(1, min(i, m) + 1):
            acc += (-1) ** (k + 1) * E[..., k] * H[..., i - k]
        H[..., i] = acc
    return H


def complete(i, X):
    """The i-th complete homogeneous symmetric polynomial."""
    if i < 0:
        X = _as_points(X)
        return _unwrap(np.zeros(X.shape[:-1], dtype=complex))
    return _unwrap(complete_table(X, i)[..., i])


def schur(lam, X):
    """Schur polynomial via the Jacobi-Trudi determinant det[H_{lam_i + j - i}].

    The determinant is taken over the nonzero rows only.
    """
    lam = tuple(p for p in lam if p)
    X = _as_points(X)
    l = len(lam)
    if l == 0:
        return _unwrap(np.ones(X.shape[:-1], dtype=complex))
    top = lam[0] + l - 1
    H = complete_table(X, top)
    # LAPACK has no extended-precision determinant
    mat = np.zeros(X.shape[:-1] + (l, l), dtype=complex)
    for i in range(l):
        for j in range(l):
            k = lam[i] + j - i
            if 0 <= k <= top:
                mat[..., i, j] = H[..., k]
    return _unwrap(np.linalg.det(mat))


def _pair_from_table(E, i, j):
    if i < j:
        raise ValueError(f"qtilde_pair needs i >= j, got ({i}, {j})")
    if j < 0:
        raise ValueError("qtilde_pair needs j >= 0")
    acc = _pick(E, i) * _pick(E, j)
    for k in range(1, j + 1):
        acc = acc + 2 * (-1) ** k * _pick(E, i + k) * _pick(E, j - k)
    return acc


def qtilde_pair(i, j, X):
    """Q~_{i,j}(X) = E_i E_j + 2 sum_{k=1}^{j} (-1)^k E_{i+k} E_{j-k}."""
    return _unwrap(_pair_from_table(elementary_table(X), i, j))


def pfaffian(A):
    """Pfaffian of a skew-symmetric matrix (or a stack of them).

    Expands along the first row, memoised on the surviving index set.
    Convention: Pf([[0, a], [-a, 0]]) = a and Pf of the empty matrix is 1.
    """
    A = np.asarray(A, dtype=complex)
    if A.ndim < 2 or A.shape[-1] != A.shape[-2]:
        raise ValueError("pfaffian needs a square matrix")
    r = A.shape[-1]
    if r % 2:
        raise ValueError(f"pfaffian needs even order, got {r}")
    scale = np.max(np.abs(A)) if A.size else 0.0
    if A.size and np.max(np.abs(A + np.swapaxes(A, -1, -2))) > SKEW_TOL * scale:
        raise ValueError("matrix is not skew-symmetric")
    return _unwrap(_pfaffian_entries(lambda i, j: A[..., i, j], r, A.shape[:-2]))


def _pfaffian_entries(entry, r, batch_shape, dtype=complex):
    return expand_pfaffian(entry, r, np.ones(batch_shape, dtype=dtype),
                           np.zeros(batch_shape, dtype=dtype))


def expand_pfaffian(entry, r, one, zero):
    """First-row Pfaffian expansion over any ring.

    ``entry(i, j)`` gives the (i, j) entry for i < j; ``one`` and ``zero``
    are the ring's identities.  Memoised on the surviving index set.
    """
    memo = {}

    def pf(idx):
        if not idx:
            return one
        if idx in memo:
            return memo[idx]
        first, rest = idx[0], idx[1:]
        total = zero
        for pos, j in enumerate(rest):
            sign = 1 if pos % 2 == 0 else -1
            total = total + sign * entry(first, j) * pf(rest[:pos] + rest[pos + 1:])
        memo[idx] = total
        return total

    return pf(tuple(range(r)))


def qtilde(lam, X):
    """Q~_lam(X): Pfaffian of the matrix of pair polynomials Q~_{lam_i, lam_j}."""
    return _unwrap(_qtilde_from_table(elementary_table(X), lam))


def _qtilde_from_table(E, lam):
    lam = tuple(lam)
    if any(a < b for a, b in zip(lam, lam[1:])) or any(p < 0 for p in lam):
        raise ValueError(f"{lam!r} is not a partition")
    lam = pad_even(tuple(p for p in lam if p))
    pairs = {}

    def entry(i, j):
        key = (lam[i], lam[j])
        if key not in pairs:
            pairs[key] = _pair_from_table(E, *key)
        return pairs[key]

    return _pfaffian_entries(entry, len(lam), E.shape[:-1], E.dtype)


def ptilde(lam, X):
    """P~_lam = 2^{-l(lam)} Q~_lam."""
    l = sum(1 for p in lam if p)
    return _unwrap(qtilde(lam, X) / 2 ** l)


def qtilde_basis(n, X):
    """Q~_lam(X) for every lam in D(n), stacked along a new last axis."""
    E = elementary_table(X)
    return np.stack([_qtilde_from_table(E, lam) for lam in enumerate_strict(n)], axis=-1)


def ptilde_basis(n, X):
    lengths = np.array([len(lam) for lam in enumerate_strict(n)])
    return qtilde_basis(n, X) / 2.0 ** lengths


@dataclass(frozen=True)
class SignedPermutation:
    """An element of the hyperoctahedral group in one-line notation with bars.

    ``images[k]`` is the 1-based value w_{k+1}; ``bars[k]`` marks it barred.
    """

    images: tuple
    bars: tuple = None

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        bars = tuple(bool(b) for b in self.bars) if self.bars is not None else (False,) * len(images)
        if len(bars) != len(images):
            raise ValueError("images and bars differ in length")
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images!r} is not a permutation of 1..{len(images)}")
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "bars", bars)

    @classmethod
    def identity(cls, m):
        return cls(tuple(range(1, m + 1)))

    @classmethod
    def s0(cls, m):
        return cls(tuple(range(1, m + 1)), (True,) + (False,) * (m - 1))

    def __len__(self):
        return len(self.images)

    @property
    def has_bar(self):
        return any(self.bars)

    def __str__(self):
        return "(" + ",".join(f"-{v}" if b else str(v) for v, b in zip(self.images, self.bars)) + ")"


def signed_action(w, X):
    """X^w: y_k = x_{w_k}, negated when w_k is barred."""
    X = _as_points(X)
    if X.shape[-1] != len(w):
        raise ValueError(f"point of arity {X.shape[-1]} vs signed permutation of size {len(w)}")
    idx = np.array(w.images) - 1
    signs = np.where(np.array(w.bars), -1.0, 1.0)
    return X[..., idx] * signs


def key_identity_sum(w, X):
    """sum over lam in D(n) of P~_lam(X^w) P~_{complement}(X).

    Equals S_{(n,...,1)}(X) when ``w`` has no bars and 0 otherwise.
    """
    X = _as_points(X)
    n = X.shape[-1]
    basis = enumerate_strict(n)
    comp = [basis.index(complement(lam, n)) for lam in basis]
    left = ptilde_basis(n, signed_action(w, X))
    right = ptilde_basis(n, X)
    return _unwrap(np.sum(left * right[..., comp], axis=-1))


def schur_staircase(X, size=None):
    """S_{(size, ..., 1)}(X); ``size`` defaults to the arity of X."""
    X = _as_points(X)
    return schur(staircase(size or X.shape[-1]), X)
