"""Smoke test for the Python bindings: run with `python python/smoke_test.py` or pytest."""

import json

import cpmackey


def test_rog_and_point():
    alpha = cpmackey.RogElement(5, [1, -2, 1])
    assert alpha.dims() == (1, 1 - 2 * 2 + 2 * 1)
    assert alpha - alpha == cpmackey.RogElement.trivial(5, 0)
    assert cpmackey.point_label(2, 0, 0) == "A"
    label, functor = cpmackey.point_cohomology(cpmackey.RogElement.trivial(3, 0))
    assert label == "A<1>" and functor.is_valid()


def test_linear_algebra():
    s = cpmackey.snf([[2, 4], [6, 8]])
    assert s["diagonal"] == [2, 4] and s["rank"] == 2
    assert cpmackey.solve([[2, 0], [0, 3]], [4, 9]) == [2, 3]
    assert cpmackey.solve([[2]], [1]) is None
    assert cpmackey.solve([[2]], [1], "F3") == [2]


def test_box_product():
    a = cpmackey.MackeyFunctor.standard("A", "Z", 3)
    r = cpmackey.MackeyFunctor.standard("R", "Z", 3)
    assert a.box_product(r).is_isomorphic(r) is True
    assert a.is_isomorphic(r) is False


def test_projective_space():
    cp = cpmackey.CPRing(3, 7)
    assert cp.product((0, 0), (1, 0)) == "D1"
    assert cp.product((1, 0), (0, 1)) == "D1C"
    assert cpmackey.CPRing.monomial_name(1, 1) == "D1C"


def test_freeness_and_ext():
    ok, violation = cpmackey.freeness(json.dumps({"ring": "Integers", "p": 3, "cells": []}))
    assert ok and violation is None
    chart = dict(cpmackey.ext_chart("Z", 4, 4))
    assert chart[(0, 0)] == "Z"


def test_suites():
    for suite in ["mackey-table", "point-ring", "freeness", "cpv", "bo2", "ext"]:
        report = cpmackey.verify(suite)
        assert report["pass"] is True, suite
        assert report["claims"]


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"{name}: ok")
