import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from beltedfal.core import (
    InvalidCrushtacean,
    PaintedCrushtacean,
    ParseError,
    canonical_code,
    crushtacean_of,
    isomorphism,
    nerve_of,
    parse,
    require_valid,
    serialize,
    to_dict,
    validate,
)
from beltedfal.fixtures import NAMES, load


@pytest.mark.parametrize("name", NAMES)
def test_fixtures_validate(name):
    assert validate(load(name)).ok


def test_adjacent_painted_pair_is_not_a_matching():
    g = load("BORR")
    # e2=(0,2) and e3=(0,3) share vertex 0
    bad = PaintedCrushtacean(g.vertex_count, g.edges, g.rotation, frozenset({2, 3}))
    report = validate(bad)
    assert not report.ok
    assert any(v.startswith("perfect matching") for v in report.violations)
    with pytest.raises(InvalidCrushtacean) as exc:
        require_valid(bad)
    assert exc.value.report == report


def test_nonplanar_rotation_rejected():
    g = load("BORR")
    rot = list(g.rotation)
    rot[0] = tuple(reversed(rot[0]))
    report = validate(PaintedCrushtacean(4, g.edges, tuple(rot), g.painted))
    assert any(v.startswith("genus 0") for v in report.violations)


def test_nerve_of_borr_is_tetrahedron():
    n = nerve_of(load("BORR"))
    assert (n.vertex_count, len(n.edges), len(n.faces)) == (4, 6, 4)
    assert len(n.painted) == 2
    (a, b), (c, d) = (n.edges[k] for k in sorted(n.painted))
    assert not {a, b} & {c, d}


def test_nerve_of_prism3_is_bipyramid():
    n = nerve_of(load("PRISM3"))
    assert (n.vertex_count, len(n.edges), len(n.faces)) == (5, 9, 6)
    assert sorted(len(n.adjacency[v]) for v in range(5)) == [3, 3, 4, 4, 4]


def test_nerve_of_theta():
    n = nerve_of(load("THETA"))
    assert (n.vertex_count, len(n.edges), len(n.faces)) == (3, 3, 2)


@pytest.mark.parametrize("name", ["BORR", "PRISM3", "PRISM1"])
def test_dual_round_trip(name):
    g = load(name)
    h = crushtacean_of(nerve_of(g))
    assert canonical_code(h) == canonical_code(g)
    assert isomorphism(g, h) is not None


def test_three_k4_matchings_share_a_code():
    g = load("BORR")
    matchings = [{0, 1}, {2, 5}, {3, 4}]
    codes = {canonical_code(PaintedCrushtacean(4, g.edges, g.rotation, frozenset(m))) for m in matchings}
    assert len(codes) == 1


def test_prism_paintings_differ():
    assert canonical_code(load("PRISM3")) != canonical_code(load("PRISM1"))


@pytest.mark.parametrize("name", NAMES)
def test_mirror_has_same_code(name):
    g = load(name)
    assert canonical_code(g.mirror()) == canonical_code(g)


def test_chirality_flag_is_consistent():
    g = load("PRISM1")
    assert canonical_code(g, allow_reflection=False) == canonical_code(g.mirror().mirror(), allow_reflection=False)


def test_twists_only_matter_when_asked():
    tf, ff = load("BORR-tf"), load("BORR-ff")
    assert canonical_code(tf) == canonical_code(ff)
    assert canonical_code(tf, include_twists=True) != canonical_code(ff, include_twists=True)


@pytest.mark.parametrize("name", NAMES)
def test_serialize_round_trip(name):
    g = load(name)
    assert parse(serialize(g)) == g
    assert serialize(parse(serialize(g))) == serialize(g)


def test_twisted_outside_painted_is_parse_error():
    doc = to_dict(load("BORR"))
    doc["twisted"] = [2]
    with pytest.raises(ParseError, match="twisted not subset of painted"):
        parse(json.dumps(doc))


def test_missing_rotation_names_field():
    doc = to_dict(load("BORR"))
    del doc["rotation"]
    with pytest.raises(ParseError, match="rotation") as exc:
        parse(json.dumps(doc))
    assert exc.value.field == "rotation"


def test_malformed_json_reports_line():
    with pytest.raises(ParseError) as exc:
        parse('{\n  "format": "crushtacean/1",\n  oops\n}')
    assert exc.value.line == 3


def test_census_size_and_face_counts(census_upto6):
    for g in census_upto6:
        assert 2 * len(g.painted) == g.vertex_count
        n = nerve_of(g)
        assert len(g.face_darts) == n.vertex_count
        assert len(n.faces) == g.vertex_count
        assert all((k in n.painted) == (k in g.painted) for k in range(g.edge_count))
        assert canonical_code(crushtacean_of(n)) == canonical_code(g)


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_isomorphism_under_relabelling(census_upto5, data):
    g = data.draw(st.sampled_from(census_upto5))
    vperm = data.draw(st.permutations(range(g.vertex_count)))
    eperm = data.draw(st.permutations(range(g.edge_count)))
    edges = [None] * g.edge_count
    for e, (a, b) in enumerate(g.edges):
        edges[eperm[e]] = (vperm[b], vperm[a]) if data.draw(st.booleans()) else (vperm[a], vperm[b])
    rotation = [None] * g.vertex_count
    for v, rot in enumerate(g.rotation):
        shift = data.draw(st.integers(0, 2))
        r = [eperm[e] for e in rot]
        rotation[vperm[v]] = tuple(r[shift:] + r[:shift])
    h = PaintedCrushtacean(g.vertex_count, tuple(edges), tuple(rotation), frozenset(eperm[e] for e in g.painted))
    assert validate(h).ok
    assert canonical_code(h) == canonical_code(g)
    vmap, emap = isomorphism(g, h)
    assert {emap[e] for e in g.painted} == set(h.painted)
    for e, (a, b) in enumerate(g.edges):
        assert {vmap[a], vmap[b]} == set(h.edges[emap[e]])
