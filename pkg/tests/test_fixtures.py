import json
import shutil

import pytest

from orbikit.abelian import AbelianQuotient, h1
from orbikit.alexander import depth_table
from orbikit.errors import ConsistencyError, UnknownFixtureError
from orbikit.fixtures import ceva_complement, ceva_orbifold, fixture, fixture_names
from orbikit.fpgroup import gprime_fixture, seven_line_fixture
from orbikit.io import group_from_json, presentation_from_json


def test_all_fixtures_load_and_carry_provenance():
    names = fixture_names()
    for required in ["seven-line", "gprime", "icosahedral5", "degree6-map", "elliptic-sigma4", "ceva", "namba-family"]:
        assert required in names
    for name in names:
        doc = fixture(name)
        assert doc["tag"] in ("PUBLISHED", "DERIVED", "TRIVIAL")
        assert doc["provenance"]


def test_unknown_fixture():
    with pytest.raises(UnknownFixtureError):
        fixture("nope")
    with pytest.raises(KeyError):
        fixture("nope")


def test_named_fixtures_match_constructors():
    assert presentation_from_json(fixture("seven-line")) == seven_line_fixture()
    assert presentation_from_json(fixture("gprime")) == gprime_fixture()
    assert len(seven_line_fixture().generators) == 7


def test_fixture_directory_override(tmp_path, monkeypatch):
    src = fixture("p1-236")
    (tmp_path / "mine.json").write_text(json.dumps(src))
    monkeypatch.setenv("ORBIKIT_FIXTURES", str(tmp_path))
    assert fixture_names() == ["mine"]
    assert fixture("mine") == src


def test_broken_fixture_is_rejected(tmp_path, monkeypatch):
    doc = fixture("icosahedral5")
    doc["images"]["x1"] = [2, 1, 3, 4, 5]
    (tmp_path / "bad.json").write_text(json.dumps(doc))
    monkeypatch.setenv("ORBIKIT_FIXTURES", str(tmp_path))
    with pytest.raises(ConsistencyError):
        fixture("bad")


def test_ceva_gate_values():
    doc = fixture("ceva")
    assert doc["tag"] == "DERIVED"
    assert h1(ceva_complement()).free_rank == 5
    for n, expected in [(2, 0), (3, 10)]:
        q = AbelianQuotient.abelianization(ceva_orbifold(n))
        assert sum(d for _, d in depth_table(q)) == expected == 5 * (n - 1) * (n - 2)


# Independent check of the Ceva presentation: the Artin representation of the
# braid group B4 on the free group F4 is faithful, so a word in the pure braid
# generators is trivial in P4 iff it acts as the identity automorphism.

def _reduce(w):
    out = []
    for g, e in w:
        if out and out[-1][0] == g:
            e2 = out[-1][1] + e
            out.pop()
            if e2:
                out.append((g, e2))
        elif e:
            out.append((g, e))
    return out


def _inv(w):
    return [(g, -e) for g, e in reversed(w)]


def _apply(aut, w):
    res = []
    for g, e in w:
        img = aut[g] if e > 0 else _inv(aut[g])
        for _ in range(abs(e)):
            res += img
    return _reduce(res)


def _then(a, b):
    """The automorphism ``a`` followed by ``b``."""
    return {g: _apply(b, a[g]) for g in a}


IDENT = {g: [(g, 1)] for g in range(4)}


def _sigma(i, sign=1):
    a = dict(IDENT)
    if sign > 0:
        a[i] = [(i, 1), (i + 1, 1), (i, -1)]
        a[i + 1] = [(i, 1)]
    else:
        a[i] = [(i + 1, 1)]
        a[i + 1] = [(i + 1, -1), (i, 1), (i + 1, 1)]
    return a


def _compose(auts):
    r = IDENT
    for a in auts:
        r = _then(r, a)
    return r


def _pure(i, j, sign):
    # A_ij = s_{j-1} ... s_{i+1} s_i^2 s_{i+1}^-1 ... s_{j-1}^-1 (0-based strands)
    left = [_sigma(k) for k in range(j - 1, i, -1)]
    right = [_sigma(k, -1) for k in range(i + 1, j)]
    return _compose(left + [_sigma(i, sign)] * 2 + right)


def _word_aut(word):
    auts = []
    for name, e in word:
        i, j = int(name[1]) - 1, int(name[2]) - 1
        auts += [_pure(i, j, 1 if e > 0 else -1)] * abs(e)
    return _compose(auts)


def test_ceva_relators_hold_in_artin_action():
    doc = fixture("ceva")
    rels = doc["relators"]
    for r in rels[:-1]:
        assert _word_aut(r) == IDENT
    # the last relator is the full twist, which acts as an inner automorphism
    full = _word_aut(rels[-1])
    assert full != IDENT
    for name in doc["generators"]:
        a = _word_aut([[name, 1]])
        assert _then(full, a) == _then(a, full)
    c = [(0, 1), (1, 1), (2, 1), (3, 1)]
    inner = {g: _reduce(c + [(g, 1)] + _inv(c)) for g in range(4)}
    inner_inv = {g: _reduce(_inv(c) + [(g, 1)] + c) for g in range(4)}
    assert full in (inner, inner_inv)


def test_namba_family_fixture():
    doc = fixture("namba-family")
    assert all(len(t) >= 3 for t in doc["tuples"])
