import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qgrass.partitions import complement, enumerate_strict, staircase
from qgrass.ring import (PrecisionError, RingElement, dimension, euler_expected,
                         evaluation_tables, multiply, orthogonality_residual, pfaffian_giambelli,
                         product_matrix, q_degree, quantum_euler, structure_constants,
                         verify_presentation)

KINDS = ("og", "lg")


def el(kind, n, lam, d=0):
    return RingElement.basis(kind, n, lam, d)


def pieri_oracle(kind, n, lam):
    """Quantum Pieri rule for the degree-one class.

    Classical part: add one box keeping the partition strict; for LG the
    coefficient is 2 when no new row is created.  Quantum part: LG removes
    a part equal to n, OG removes the parts n and n-1 together.
    """
    out = {}
    for i in range(len(lam) + 1):
        parts = list(lam) + [0]
        parts[i] += 1
        mu = tuple(p for p in parts if p)
        if mu[0] <= n and all(a > b for a, b in zip(mu, mu[1:])):
            out[(mu, 0)] = 2 if kind == "lg" and len(mu) == len(lam) else 1
    if kind == "lg" and n in lam:
        out[(tuple(p for p in lam if p != n), 1)] = 1
    if kind == "og" and n in lam and n - 1 in lam:
        out[(tuple(p for p in lam if p not in (n, n - 1)), 1)] = 1
    return out


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("n", range(2, 7))
def test_quantum_pieri(kind, n):
    for lam in enumerate_strict(n):
        got = {(nu, d): c for nu, d, c in structure_constants(kind, n, (1,), lam)}
        assert got == pieri_oracle(kind, n, lam), lam


def test_known_products():
    assert structure_constants("og", 2, (1,), (1,)) == [((2,), 0, 1)]
    assert structure_constants("lg", 2, (1,), (1,)) == [((2,), 0, 2)]
    assert sorted(structure_constants("lg", 2, (2,), (1,))) == [((), 1, 1), ((2, 1), 0, 1)]
    assert structure_constants("og", 2, (2,), (2, 1)) == [((1,), 1, 1)]
    for n in range(2, 7):
        assert structure_constants("og", n, (n,), (n,)) == [((), 1, 1)]


def test_unit_acts_trivially():
    for kind in KINDS:
        for lam in enumerate_strict(3):
            assert structure_constants(kind, 3, (), lam) == [(lam, 0, 1)]
        assert (product_matrix(kind, 4, ()) == np.eye(16, dtype=int)).all()


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("n", range(2, 6))
def test_dual_table_matches_dense_solve(kind, n):
    tab = evaluation_tables(kind, n)
    assert tab.identity_residual() <= 1e-8
    assert orthogonality_residual(kind, n) <= 1e-8
    # coefficients from an LU solve instead of the closed-form inverse
    for lam in enumerate_strict(n):
        j = enumerate_strict(n).index(lam)
        raw = np.linalg.solve(tab.M, tab.M[:, j, None] * tab.M)
        assert np.max(np.abs(raw - product_matrix(kind, n, lam))) < 1e-8


def test_small_tables():
    tab = evaluation_tables("lg", 2)
    assert np.max(np.abs(tab.N @ tab.M - np.eye(4))) < 1e-10
    assert orthogonality_residual("og", 2) < 1e-10
    assert np.min(np.abs(evaluation_tables("og", 3).schur_values)) > 1e-6


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("n", range(2, 6))
def test_commutative_nonnegative_graded(kind, n):
    basis = enumerate_strict(n)
    qd = q_degree(kind, n)
    for lam in basis:
        A = product_matrix(kind, n, lam)
        assert (A >= 0).all()
        for mu in basis:
            terms = structure_constants(kind, n, lam, mu)
            assert terms == structure_constants(kind, n, mu, lam)
            for nu, d, c in terms:
                assert sum(nu) + qd * d == sum(lam) + sum(mu)
                assert c > 0


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("n", range(2, 5))
def test_top_degree_pairing(kind, n):
    basis = enumerate_strict(n)
    top = staircase(n)
    for lam in basis:
        for mu in basis:
            if sum(lam) + sum(mu) != dimension(n):
                continue
            coeff = {(nu, d): c for nu, d, c in structure_constants(kind, n, lam, mu)}
            assert coeff.get((top, 0), 0) == (1 if mu == complement(lam, n) else 0)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(KINDS), st.integers(2, 5), st.data())
def test_associativity(kind, n, data):
    basis = enumerate_strict(n)
    a, b, c = (el(kind, n, data.draw(st.sampled_from(basis))) for _ in range(3))
    assert (a * b) * c == a * (b * c)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(KINDS), st.integers(2, 5), st.data())
def test_products_are_homogeneous(kind, n, data):
    basis = enumerate_strict(n)
    qd = q_degree(kind, n)
    lam, mu = data.draw(st.sampled_from(basis)), data.draw(st.sampled_from(basis))
    d1, d2 = data.draw(st.integers(0, 2)), data.draw(st.integers(0, 2))
    prod = el(kind, n, lam, d1) * el(kind, n, mu, d2)
    assert prod.is_homogeneous()
    if prod:
        assert prod.degrees() == {sum(lam) + sum(mu) + qd * (d1 + d2)}


@pytest.mark.parametrize("kind", KINDS)
def test_round_trip_evaluation(kind):
    n = 4
    tab = evaluation_tables(kind, n)
    for lam in enumerate_strict(n):
        for mu in enumerate_strict(n):
            prod = el(kind, n, lam) * el(kind, n, mu)
            expect = tab.M[:, enumerate_strict(n).index(lam)] * tab.M[:, enumerate_strict(n).index(mu)]
            got = prod.evaluate()
            assert np.max(np.abs(got - expect)) <= 1e-7 * max(1.0, np.max(np.abs(expect)))


def test_ring_element_arithmetic():
    one = RingElement.one("lg", 2)
    s1 = el("lg", 2, (1,))
    assert one * s1 == s1
    assert s1 * 3 == 3 * s1
    assert s1 - s1 == RingElement.zero("lg", 2)
    assert not RingElement.zero("lg", 2)
    assert (s1 + 1) - 1 == s1
    assert multiply(s1, s1) == 2 * el("lg", 2, (2,))
    assert (s1 * s1) * el("lg", 2, (2,)) == s1 * (s1 * el("lg", 2, (2,)))
    with pytest.raises(ValueError):
        s1 + el("og", 2, (1,))
    with pytest.raises(ValueError):
        el("lg", 2, (3,))
    with pytest.raises(ValueError):
        RingElement.basis("lg", 2, (1,), -1)


def test_format_and_json():
    prod = el("lg", 2, (2,)) * el("lg", 2, (1,))
    assert prod.format() == "σ(2,1) + q"
    assert str(el("og", 2, (1,)) * el("og", 2, (1,))) == "τ(2)"
    mixed = 3 * el("og", 3, (2, 1), 1) - el("og", 3, ()) + RingElement.q("og", 3, 2)
    assert mixed.format() == "-1 + 3τ(2,1)·q + q^2"
    assert RingElement.zero("og", 3).format() == "0"
    back = RingElement.from_json("og", 3, mixed.to_json())
    assert back == mixed
    assert prod.to_json() == [{"partition": "2,1", "q": 0, "coeff": 1},
                              {"partition": "", "q": 1, "coeff": 1}]


def test_at_q1():
    x = el("og", 2, (1,), 1) + 2 * el("og", 2, (1,))
    assert list(x.at_q1()) == [0, 3, 0, 0]


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("n", range(2, 7))
def test_quantum_euler_class(kind, n):
    vals = quantum_euler(kind, n).evaluate()
    expect = euler_expected(kind, n)
    assert np.min(np.abs(vals)) > 1e-6
    assert np.max(np.abs(vals - expect) / np.abs(expect)) < 1e-8


def test_euler_class_og2():
    e = quantum_euler("og", 2)
    assert np.allclose(e.evaluate(), evaluation_tables("og", 2).schur_values)
    assert (e.terms.get((staircase(2), 0), 0)) > 0


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("n", range(2, 6))
def test_presentation(kind, n):
    rep = verify_presentation(kind, n)
    assert rep.ok, [v.label for v in rep.violations]
    assert rep.checked > 0


def test_pfaffian_giambelli_lg4():
    lam = (3, 2, 1)
    assert pfaffian_giambelli("lg", 4, lam) == el("lg", 4, lam)


def test_presentation_detects_corruption(monkeypatch):
    import qgrass.ring as ring
    good = ring._operator("lg", 3, (1,))
    bad = good.copy()
    bad[0, 0] += 1
    monkeypatch.setitem(ring._operators, ("lg", 3, (1,)), bad)
    assert not verify_presentation("lg", 3).ok


def test_operator_precision_guard(monkeypatch):
    import qgrass.ring as ring
    tab = evaluation_tables("og", 2)
    noisy = ring.EvaluationTables(tab.kind, tab.n, tab.M, tab.N * (1 + 1e-3), tab.schur_values)
    monkeypatch.setitem(ring._tables, ("og", 2), noisy)
    monkeypatch.setattr(ring, "_operators", {})
    with pytest.raises(PrecisionError):
        product_matrix("og", 2, (1,))


def test_bad_inputs():
    with pytest.raises(ValueError):
        evaluation_tables("og", 1)
    with pytest.raises(ValueError):
        structure_constants("og", 2, (3,), (1,))
