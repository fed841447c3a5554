"""Smoke tests for the qgtk python module."""

import pytest

import qgtk

T3 = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
M3 = [[0, 2, 1], [1, 0, 2], [2, 1, 0]]


def test_table_basics():
    t = qgtk.Table(T3)
    assert t.order == 3
    assert t.mul(1, 2) == 0
    assert t.rdiv(t.mul(1, 2), 2) == 1
    assert t.ldiv(1, t.mul(1, 2)) == 2
    assert t.rows() == T3


def test_validation_errors():
    with pytest.raises(ValueError):
        qgtk.Table([[0, 1], [0, 1]])
    with pytest.raises(ValueError):
        qgtk.read_qg("2\n0 1\n")


def test_qg_round_trip():
    t = qgtk.random_latin_square(5, 12)
    text = qgtk.write_qg(t)
    assert qgtk.read_qg(text) == t
    assert qgtk.write_qg(qgtk.read_qg(text)) == text


def test_translations_and_isotopes():
    m = qgtk.Table(M3)
    assert m.left_translation(0).images == [0, 2, 1]
    iso = qgtk.Table(T3).principal_isotope(1, 2)
    assert iso == qgtk.Table(T3)


def test_analyze_group():
    info = qgtk.analyze_group(qgtk.Table(T3))
    assert info["is_group"] and info["is_abelian"]
    assert info["nilpotency_class"] == 1
    s3 = qgtk.resolve_group("S3")
    info = qgtk.analyze_group(s3)
    assert info["is_group"] and not info["is_abelian"]
    assert info["nilpotency_class"] is None


def test_enumeration():
    assert len(qgtk.enumerate_latin_squares(3)) == 12
    with pytest.raises(RuntimeError):
        qgtk.enumerate_latin_squares(6)


def test_check_identity():
    m = qgtk.Table(M3)
    assert qgtk.check_identity(m, "(x*y)*(z*w) = (x*z)*(y*w)")["verdict"] == "holds"
    res = qgtk.check_identity(qgtk.resolve_group("S3"), "x*y = y*x")
    assert res["verdict"] == "fails"
    assert res["counterexample"][0]["var"] == "x"


def test_catalog_and_classify():
    keys = {entry["key"] for entry in qgtk.catalog()}
    assert "AB_BELOUSOV" in keys and "MEDIAL" in keys
    assert len(keys) >= 16

    report = qgtk.classify(qgtk.Table(M3), max_class=1, decompose=True)
    assert report["oracle"]["abelian_isotope"] is True
    assert report["entries"]["MEDIAL"]["verdict"] == "holds"
    assert report["consistency"] is True
    assert report["t_decomposition"]["found"] is True


def test_constructions():
    z3 = qgtk.resolve_group("Z3")
    autos = qgtk.enumerate_automorphisms(z3)
    assert len(autos) == 2
    m = qgtk.linear_quasigroup(z3, autos[0], autos[1], 0)
    assert m == qgtk.Table(M3)
    assert qgtk.decompose_t(m) is not None
    with pytest.raises(ValueError):
        qgtk.ch_quasigroup(qgtk.resolve_group("S3"), 0)


def test_quasicommutator_and_nilpotency():
    t = qgtk.Table(T3)
    assert qgtk.quasicommutator(t, 1, 2, [0, 2]) == t.mul(2, 1)
    assert qgtk.check_nilpotent_isotopy(qgtk.Table(M3), 1)["verdict"] == "holds"
    assert qgtk.check_engel_isotopy(qgtk.resolve_group("S3"), 2)["verdict"] == "fails"


def test_derive():
    assert qgtk.derive_identity("x+y = y+x") == "(x/u1)*(v\\y) = (y/u1)*(v\\x)"
    with pytest.raises(ValueError):
        qgtk.derive_identity("x+0 = x")


def test_word_problem():
    assert qgtk.words_equal("x*(x\\y)", "y")["equal"] is True
    res = qgtk.words_equal("x*y", "y*x")
    assert res["equal"] is False
    assert res["certificate"]["group"] == "Z3"

    medial = qgtk.words_equal("(x*y)*(z*w)", "(x*z)*(y*w)", medial=True)
    assert medial["equal"] is True

    assert qgtk.normalize_term("(x*y)*z") == "1·x[aa] + 1·y[ba] + 1·z[b]"
    assert qgtk.normalize_term("u") == "0"
