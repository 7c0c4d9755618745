"""Strict partitions with parts in {1, ..., n}.

These index the Schubert basis of both OG(n) and LG(n).  A partition is a
plain tuple of strictly decreasing positive ints; the empty tuple is the
unit class.
"""

from functools import lru_cache
from itertools import combinations

MAX_N = 12


def is_strict(lam, n=None):
    if any(not isinstance(p, int) or p < 1 for p in lam):
        return False
    if any(a <= b for a, b in zip(lam, lam[1:])):
        return False
    return n is None or not lam or lam[0] <= n


def check_strict(lam, n):
    lam = tuple(lam)
    if not is_strict(lam, n):
        raise ValueError(f"{lam!r} is not a strict partition with parts <= {n}")
    return lam


def weight(lam):
    return sum(lam)


@lru_cache(maxsize=None)
def enumerate_strict(n):
    """All strict partitions with parts at most ``n``, in canonical basis order.

    Ordered by weight, ties broken by descending lexicographic order of the
    parts, so the result starts with ``()`` and ends with ``(n, ..., 1)``.
    Every matrix indexed by the Schubert basis uses this order.
    """
    if not isinstance(n, int) or n < 1 or n > MAX_N:
        raise ValueError(f"n must be an integer in [1, {MAX_N}], got {n!r}")
    out = []
    for k in range(n + 1):
        for parts in combinations(range(n, 0, -1), k):
            out.append(parts)
    out.sort(key=lambda lam: (sum(lam), tuple(-p for p in lam)))
    return tuple(out)


@lru_cache(maxsize=None)
def basis_index(n):
    """Map partition -> position in :func:`enumerate_strict`."""
    return {lam: i for i, lam in enumerate(enumerate_strict(n))}


def complement(lam, n):
    """Parts of {1, ..., n} not used by ``lam``, in decreasing order."""
    lam = check_strict(lam, n)
    used = set(lam)
    return tuple(p for p in range(n, 0, -1) if p not in used)


def staircase(n):
    """The partition (n, n-1, ..., 1)."""
    return tuple(range(n, 0, -1))


def pad_even(lam):
    """Append a zero to odd-length ``lam`` so the length is even."""
    lam = tuple(lam)
    if len(lam) % 2:
        return lam + (0,)
    return lam


def parse_partition(text):
    """Parse ``"3,1"``; ``""`` and ``"0"`` both mean the empty partition."""
    text = text.strip()
    if text in ("", "0", "()"):
        return ()
    try:
        parts = tuple(int(s) for s in text.strip("()").split(","))
    except ValueError:
        raise ValueError(f"malformed partition string {text!r}") from None
    if not is_strict(parts):
        raise ValueError(f"{text!r} is not a strict partition")
    return parts


def format_partition(lam):
    return ",".join(str(p) for p in lam)
