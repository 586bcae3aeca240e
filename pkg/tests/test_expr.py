import math

import numpy as np
import pytest

from gennum.errors import DivisionByNonInvertible, ParseError, TypeMismatch, UnknownName
from gennum.expr import Chi, Coord, Num, parse, parse_gen, to_field, uses_coords
from gennum.gen_num import IndexSet, chi, const, eps_net, equals, estimate_order, is_negligible


def test_precedence(grid):
    x = parse_gen("1 + 2 * eps", grid)
    assert np.array_equal(x.samples, 1 + 2 * grid.eps)
    y = parse_gen("-eps * 3", grid)
    assert np.array_equal(y.samples, -3 * grid.eps)


def test_power_and_functions(grid):
    x = parse_gen("pow(eps, 2) * (2 + sin(1 / eps))", grid)
    assert estimate_order(x) == 2
    assert is_negligible(parse_gen("exp(-1 / eps)", grid)).holds
    z = parse_gen("sqrt(pow(eps, 2)) - abs(-eps)", grid)
    assert is_negligible(z).holds


def test_negative_power(grid):
    x = parse_gen("pow(eps, -1) * eps", grid)
    assert equals(x, const(1.0, grid)).holds


@pytest.mark.parametrize(
    "text, want",
    [
        ("chi(even)", IndexSet.even()),
        ("chi(odd)", IndexSet.odd()),
        ("chi(all)", IndexSet.all()),
        ("chi(pow2)", IndexSet.pow2()),
        ("chi(ap(1, 3))", IndexSet.ap(1, 3)),
        ("chi({2, 5, 9})", IndexSet.explicit([2, 5, 9])),
    ],
)
def test_index_sets(grid, text, want):
    assert np.array_equal(parse_gen(text, grid).samples, chi(want, grid).samples)


def test_names(grid):
    env = {"a": eps_net(grid)}
    assert np.array_equal(parse_gen("a * a", grid, env).samples, grid.eps ** 2)
    with pytest.raises(UnknownName):
        parse_gen("b + 1", grid, env)


def test_division_checks_divisor(grid):
    with pytest.raises(DivisionByNonInvertible):
        parse_gen("1 / chi(even)", grid)
    assert equals(parse_gen("eps / eps", grid), const(1.0, grid)).holds


@pytest.mark.parametrize(
    "text, col",
    [("1 +* eps", 4), ("pow(eps, 1.5)", 10), ("chi(weird)", 5), ("(1 + eps", 9), ("2 $ 3", 3)],
)
def test_parse_errors_carry_position(text, col):
    with pytest.raises(ParseError) as exc:
        parse(text, line=7)
    assert exc.value.line == 7
    assert exc.value.col == col


def test_lists():
    node = parse("[[1, eps], [eps, 2]]")
    assert isinstance(node, list) and len(node) == 2 and isinstance(node[0][0], Num)


def test_coordinates_only_in_fields(grid):
    node = parse("x1 * eps + x2")
    assert uses_coords(node)
    f = to_field(node, grid)
    assert f(0.5, np.array([2.0, 3.0])) == 4.0
    with pytest.raises(TypeMismatch):
        parse_gen("x1 + 1", grid)


def test_field_chi_uses_grid_index(grid):
    f = to_field(parse("chi(even) * x1"), grid)
    assert f(2.0 ** -4, [3.0]) == 3.0
    assert f(2.0 ** -5, [3.0]) == 0.0


def test_ast_nodes():
    assert parse("x3") == Coord(3)
    assert parse("chi(odd)") == Chi(IndexSet.odd())
