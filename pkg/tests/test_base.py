"""Tests for the base module."""

import numpy as np
import pytest

from radscat.base import Base


class Grid(Base):
    def __init__(self, nodes, label=None, *args, **kwargs):
        self.nodes = nodes
        self.label = label


class Panel(Base):
    def __init__(self, start, stop=1.0, *, order=16):
        self.start = start
        self.stop = stop
        self.order = order


class Unstored(Base):
    def __init__(self, width):
        pass


def test_init_names_skip_var_args():
    assert Grid._init_names() == ["nodes", "label"]
    assert Panel._init_names() == ["start", "stop", "order"]


@pytest.mark.parametrize(
    "obj,components,names,sep,expected",
    [
        (Grid(1), ["a", "b"], None, ", ", "Grid(a, b)"),
        (Grid(1), None, ["nodes"], "; ", "Grid(nodes=1)"),
        (Panel(0.0), ["x"], ["order"], "; ", "Panel(x; order=16)"),
        (Panel(0.0), None, None, ", ", "Panel()"),
    ],
)
def test_str_helper(obj: Base, components, names, sep, expected):
    assert obj._str_helper(components, names, sep) == expected


@pytest.mark.parametrize(
    "obj,expected",
    [
        (Grid(3), "Grid(nodes=3, label=None)"),
        (Grid("coarse", label="x"), "Grid(nodes=coarse, label=x)"),
        (Panel(0.5), "Panel(start=0.5, stop=1.0, order=16)"),
    ],
)
def test_str_and_repr(obj: Base, expected):
    assert str(obj) == expected
    assert repr(obj) == expected


@pytest.mark.parametrize(
    "nodes,expected",
    [
        (np.zeros(100), "array(shape=(100,), dtype=float64)"),
        (np.ones((3, 3)), "array(shape=(3, 3), dtype=float64)"),
        (np.array([1, 2]), "[1 2]"),
    ],
)
def test_str_arrays(nodes, expected):
    assert str(Grid(nodes)) == f"Grid(nodes={expected}, label=None)"


def test_str_error():
    with pytest.raises(RuntimeError, match=r"Failed to build .* \['width'\]"):
        str(Unstored(1))
