import pytest

from beltedfal.census import (
    C2_NOTE,
    census_csv,
    census_row,
    enumerate_painted_crushtaceans,
    enumerate_triangulations,
    matching_orbits_bruteforce,
    perfect_matchings,
    rotation_oracle,
    tabulate_census,
    twist_classes,
    write_sidecars,
)
from beltedfal.core import canonical_code, crushtacean_of, nerve_of, skeleton_code, validate
from beltedfal.volume import V8, lower_bound


@pytest.mark.parametrize("nv,count", [(4, 1), (5, 1), (6, 2)])
def test_oracle_agreement(nv, count):
    assert len(rotation_oracle(nv)) == count
    assert len(enumerate_triangulations(nv)) == count


def test_triangulation_counts_regression():
    # simple sphere triangulations up to reflection: 1, 1, 2, 5, 14
    assert [len(enumerate_triangulations(k)) for k in range(4, 9)] == [1, 1, 2, 5, 14]


def test_oracle_bounds():
    with pytest.raises(ValueError):
        rotation_oracle(7)
    with pytest.raises(ValueError):
        enumerate_triangulations(3)


def test_matching_orbits(census_by_c):
    for nv in (4, 5, 6):
        skeletons = [crushtacean_of(n, painted=False) for n in enumerate_triangulations(nv)]
        total = sum(matching_orbits_bruteforce(s) for s in skeletons)
        assert total == len(enumerate_painted_crushtaceans(nv - 2))
    assert len(census_by_c[2]) == 1 and len(census_by_c[3]) == 2
    prism = crushtacean_of(enumerate_triangulations(5)[0], painted=False)
    assert len(perfect_matchings(prism)) == 4


def test_dual_validity(census_upto6):
    for g in census_upto6:
        assert validate(g).ok
        assert len(g.painted) == g.c
    sources = {skeleton_code(crushtacean_of(n, painted=False)) for n in enumerate_triangulations(7)}
    for g in enumerate_painted_crushtaceans(5):
        assert skeleton_code(crushtacean_of(nerve_of(g), painted=False)) in sources


def test_codes_distinct(census_upto6):
    codes = [canonical_code(g) for g in census_upto6]
    assert len(codes) == len(set(codes))


def test_rows():
    r2 = census_row(2)
    assert (r2.n_fals, r2.n_bprime, r2.note) == (1, 1, C2_NOTE)
    r3 = census_row(3)
    assert (r3.n_fals, r3.n_bprime) == (2, 1)
    assert abs(r3.vol_min - 4 * V8) < 1e-6


def test_table_properties():
    rows = tabulate_census(6)
    for r in rows:
        assert r.vol_min >= lower_bound(r.c) - 1e-6
    counts = [r.n_fals for r in rows]
    assert counts == sorted(counts)


def test_csv_is_deterministic():
    a = census_csv(tabulate_census(4))
    b = census_csv(tabulate_census(4))
    assert a == b
    assert a.splitlines()[0] == "c,n_triangulations,n_fals,n_bprime,vol_min,vol_max"
    assert a.splitlines()[2] == "3,1,2,1,14.655449507,14.655449507"


def test_twist_sensitive_counts():
    (k4,) = enumerate_painted_crushtaceans(2)
    # flat/flat, twisted/flat, twisted/twisted
    assert len(twist_classes(k4)) == 3
    r = census_row(2, twist_sensitive=True)
    assert r.n_fals == 3 and r.n_bprime == 1
    assert census_row(3, twist_sensitive=True).n_fals > 2


def test_sidecars(tmp_path):
    paths = write_sidecars(3, tmp_path)
    assert len(paths) == 3
    import json

    doc = json.loads(paths[0].read_text())
    assert set(doc) == {"crushtacean", "canonical_code", "b_prime", "volume_report"}
