import pytest

from packgraph.fixtures import FIXTURE_IDS, get_fixture, run_fixture_checks
from packgraph.graph import is_metric, validate_packing


@pytest.mark.parametrize("fid", FIXTURE_IDS)
def test_fixture_checks_pass(fid):
    for name, expected, actual in run_fixture_checks(fid):
        assert expected == actual, f"{fid} {name}"


def test_aliases():
    assert get_fixture("fig5").id == "fig5_metric4cp"
    with pytest.raises(ValueError):
        get_fixture("fig9")


def test_fixture_overrides_are_consistent():
    for fid in FIXTURE_IDS:
        fx = get_fixture(fid)
        assert fx.graph.n % fx.k == 0
        if fx.matching_override is not None:
            assert fx.matching_override.covered() <= set(range(fx.graph.n))
        if fx.plan_override is not None:
            m = fx.plan_override.matching()
            assert m.size == sum(len(grp) for grp in fx.plan_override.groups)


def test_metric_fixtures_are_metric():
    for fid in ("fig2_5cp", "fig5_metric4cp", "fig3_lifted_12"):
        assert is_metric(get_fixture(fid).graph)[0]
