import pytest

from qgrass.verify import CHECKS, THREADS_ENV, run_suite, thread_count


@pytest.mark.parametrize("kind", ["og", "lg"])
def test_largest_supported_rank(kind):
    # n = 8 is where double-precision Pfaffians start to lose digits
    results = run_suite(kind, 8)
    assert [r.name for r in results] == [name for name, _ in CHECKS]
    assert all(r.passed for r in results), [(r.name, r.detail) for r in results if not r.passed]


def test_threaded_and_serial_agree():
    a = run_suite("lg", 4, workers=1)
    b = run_suite("lg", 4, workers=4)
    assert [r.to_dict() for r in a] == [r.to_dict() for r in b]


def test_thread_count_env(monkeypatch):
    monkeypatch.setenv(THREADS_ENV, "3")
    assert thread_count() == 3
    monkeypatch.setenv(THREADS_ENV, "0")
    assert thread_count() == 1
    monkeypatch.delenv(THREADS_ENV)
    assert 1 <= thread_count() <= 4


def test_crashing_check_is_reported(monkeypatch):
    import qgrass.verify as verify

    def boom(kind, n):
        raise RuntimeError("kaboom")

    monkeypatch.setattr(verify, "CHECKS", (("boom", boom),))
    (res,) = run_suite("og", 2)
    assert not res.passed and "kaboom" in res.detail
