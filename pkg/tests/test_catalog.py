import pytest

from ksvectors.catalog import CATALOG, SMALLEST, catalog_get, catalog_names
from ksvectors.diagram import parse_any, serialize, serialize_numeric, stats
from ksvectors.pipeline import check_claims
from ksvectors.solver.verify import verify_solution

# claims that need long solver runs; covered by the acceptance suite
SLOW = {"tkadlec-dual-ck"}


def test_unknown_name():
    with pytest.raises(KeyError):
        catalog_get("no-such-system")


@pytest.mark.parametrize("name", catalog_names())
def test_round_trip(name):
    e = catalog_get(name)
    d = e.diagram()
    if e.numeric:
        assert serialize_numeric(parse_any(serialize_numeric(d))) == serialize_numeric(d)
    else:
        assert serialize(d) == e.mmp.rstrip(".").replace(" ", "")


@pytest.mark.parametrize("name", [n for n in catalog_names() if n not in SLOW])
def test_claims(name):
    results = check_claims(catalog_get(name), budget=50_000)
    failed = [r.line() for r in results if not r.passed]
    assert not failed, failed


@pytest.mark.extended
@pytest.mark.parametrize("name", sorted(SLOW))
def test_claims_slow(name):
    results = check_claims(catalog_get(name), budget=None)
    failed = [r.line() for r in results if not r.passed]
    assert not failed, failed


def test_sizes():
    sizes = {n: (catalog_get(n).diagram().a, catalog_get(n).diagram().b) for n in SMALLEST}
    assert sorted(sizes.values()) == sorted([(7, 5), (15, 11), (15, 11), (19, 13), (19, 13), (6, 3), (10, 5),
                                             (22, 11), (22, 11), (38, 19)])


def test_ks192_counts():
    d = catalog_get("ks-192").diagram()
    assert (d.a, d.b) == (192, 118)
    assert stats(d).nb_minus_2a < 0


def test_solutions_exact():
    for e in CATALOG.values():
        vs = e.solution()
        if vs is not None:
            assert vs.exact and verify_solution(e.diagram(), vs).ok, e.name
