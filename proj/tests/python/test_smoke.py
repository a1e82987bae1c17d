from fractions import Fraction

import pytest

import whmf


def test_levels():
    assert whmf.admitted_levels() == [2, 3, 5, 6, 7, 11, 14, 15, 23]
    assert [whmf.k1(n) for n in (2, 23)] == [8, 1]


def test_delta_and_hauptmodul():
    d = whmf.delta(2, 10)
    assert d.valuation == 1 and d[1] == 1 and d[2] == -8
    j = whmf.hauptmodul(2, 5)
    assert [j[n] for n in range(-1, 5)] == [1, 0, 4372, 96256, 1240002, 10698752]
    with pytest.raises(IndexError):
        j[5]


def test_eisenstein():
    e = whmf.eisenstein_plus(2, 4)
    assert e[0] == 1
    assert all(isinstance(c, Fraction) for c in e.coefficients)
    q = whmf.eisenstein_plus(5, 2, "chi[res=(./5);W5=1]", 10)
    assert isinstance(q, whmf.QuadraticSeries)
    assert q.d == 5 and q.sqrt_part[0] == 0


def test_basis():
    f = whmf.f_basis(2, 0, "1", 2, 10)
    assert f.extra["faber"] == [1, 0, -8744]
    assert whmf.k_min(2, "1", 2) == 10


def test_errors():
    with pytest.raises(whmf.MathError) as info:
        whmf.delta(4)
    assert info.value.kind == "UnsupportedLevel"
    with pytest.raises(whmf.MathError) as info:
        whmf.eisenstein_plus(3, 2)
    assert info.value.kind == "EmptyPlusSpace"


def test_verify():
    reports = whmf.verify("dimensions", 7)
    assert len(reports) == 1 and reports[0]["passed"]
