import pytest

from petrikit.verify import PROPERTIES, SUITES, run_property, run_suite


@pytest.mark.parametrize("prop", PROPERTIES, ids=[f"{p.suite}:{p.name}" for p in PROPERTIES])
def test_property_holds(prop):
    result = run_property(prop, seed=2024, trials=None)
    assert result["passed"], result


def test_every_suite_populated():
    assert {p.suite for p in PROPERTIES} == set(SUITES)


def test_same_seed_same_results():
    assert run_suite("algebra", seed=7, trials=5) == run_suite("algebra", seed=7, trials=5)


def test_unknown_suite_rejected():
    with pytest.raises(ValueError):
        run_suite("geometry")


def test_failures_are_reported_not_raised():
    from petrikit.verify import Property

    def broken(rng, n):
        raise RuntimeError("boom")

    res = run_property(Property("broken", "algebra", 1, 1, broken), 0, None)
    assert not res["passed"] and "boom" in res["error"]
