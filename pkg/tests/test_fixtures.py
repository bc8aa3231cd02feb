import pytest

from petrikit.fixtures_runner import FIXTURE_DIR, run_case, run_fixtures

CASES = sorted((FIXTURE_DIR / "cases").glob("*.json"))


def test_fixture_corpus_present():
    assert len(CASES) >= 70
    for sub in ("curves", "divisors", "schiffer"):
        assert list((FIXTURE_DIR / sub).glob("*.json"))


@pytest.mark.parametrize("path", CASES, ids=[p.stem for p in CASES])
def test_fixture_case(path):
    result = run_case(path)
    assert result["passed"], result


def test_fixture_results_sorted_by_name():
    names = [r["name"] for r in run_fixtures()]
    assert names == sorted(names)
