import pytest

import ksvectors.filters  # noqa: F401  registers the built-in filters
from ksvectors.canon import certificate
from ksvectors.diagram import serialize
from ksvectors.generator import (PASS, PRUNE, FilterVerdict, GenSpec, GenSpecError, GenStats, census,
                                 generate, make_filter, parse_filter_arg, register_filter)
from ksvectors.filters import probe_budget

from oracles import brute_census


@pytest.mark.parametrize("n, a, b", [(3, 8, 4), (4, 9, 3)])
def test_census_matches_brute_force(n, a, b):
    assert census(generate(GenSpec(n, a, b))) == brute_census(n, a, b)


def test_census_matches_brute_force_disconnected():
    assert census(generate(GenSpec(3, 7, 3, connected_only=False))) == brute_census(3, 7, 3, connected_only=False)


def test_census_matches_brute_force_girth():
    assert census(generate(GenSpec(3, 8, 4, min_girth=4))) == brute_census(3, 8, 4, min_girth=4)


def test_isomorph_free():
    certs = [certificate(d) for d in generate(GenSpec(3, 10, 6))]
    assert len(certs) == len(set(certs))


def test_output_window():
    ds = list(generate(GenSpec(3, 9, 5, min_vertices=9, min_edges=5)))
    assert ds and all(d.a >= 9 and d.b >= 5 for d in ds)
    full = [d for d in generate(GenSpec(3, 9, 5)) if d.a >= 9 and d.b >= 5]
    assert {certificate(d) for d in ds} == {certificate(d) for d in full}


def test_girth_bound_respected():
    from ksvectors.diagram import girth
    for d in generate(GenSpec(3, 12, 7, min_girth=5)):
        g = girth(d)
        assert g is None or g >= 5


def test_bad_specs():
    with pytest.raises(GenSpecError):
        GenSpec(1, 5, 3).check()
    with pytest.raises(GenSpecError):
        GenSpec(3, -1, 3).check()
    with pytest.raises(GenSpecError):
        GenSpec(3, 9, 5, min_girth=2).check()


def test_unknown_filter():
    with pytest.raises((KeyError, ValueError)):
        make_filter("no-such-filter")


def test_parse_filter_arg():
    assert parse_filter_arg("probe:budget=0,base=2") == ("probe", {"budget": 0, "base": 2})
    assert parse_filter_arg("prelim") == ("prelim", {})


def test_custom_filter_prunes_subtrees():
    register_filter("max-degree-2", lambda: lambda d, spec: FilterVerdict(
        PRUNE if any(len(d.edges_of(v)) > 2 for v in d.vertices) else PASS))
    spec = GenSpec(3, 9, 5, filters=[("max-degree-2", {})])
    st = GenStats()
    ds = list(generate(spec, stats=st))
    assert all(max(len(d.edges_of(v)) for v in d.vertices) <= 2 for d in ds)
    assert st.pruned.get("max-degree-2", 0) > 0


def test_monotone_filter_soundness():
    """Diagrams whose ancestors all pass are kept by the filtered run."""
    spec = GenSpec(3, 9, 6)
    hook = make_filter("prelim")
    kept = {certificate(d) for d in generate(GenSpec(3, 9, 6, filters=[("prelim", {})]))}
    for d in generate(spec):
        if hook(d, spec).verdict == PASS and all(
                hook(d.without_edge(j), spec).verdict == PASS for j in range(d.b) if d.b > 1):
            assert certificate(d) in kept or d.b == 1


def test_probe_budget_zero_is_identity():
    base = [serialize(d) for d in generate(GenSpec(3, 9, 6))]
    probed = [serialize(d) for d in generate(GenSpec(3, 9, 6, filters=[("probe", {"budget": 0})]))]
    assert base == probed


def test_probe_budget_schedule():
    assert probe_budget(4, 10, 10) == 4
    assert probe_budget(4, 10, 7) == 32


def test_prelim_filter_removes_loops():
    kept = [serialize(d) for d in generate(GenSpec(3, 8, 4, filters=[("prelim", {})]))]
    assert all(d != "123,345,561" for d in kept)
    plain = {certificate(d) for d in generate(GenSpec(3, 8, 4))}
    assert len(kept) < len(plain)
