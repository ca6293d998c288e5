import itertools
from math import comb

import pytest

from modcoherence import residue as R
from modcoherence.free import (RankMismatch, WArrow, X, Node, canonical_term, comb_route,
                               enumerate_trees, left_comb, parse_tree, rank,
                               recursive_route, recursive_term, redexes, right_comb,
                               rotate, step_term, sub_arrow)
from modcoherence.terms import ID, TAU, evaluate, parse, to_text


def catalan(n):
    return comb(2 * n, n) // (n + 1)


def brute_force_trees(k):
    """All bracketings of k leaves, by closure under splitting a leaf."""
    if k == 1:
        return {X}
    out = set()
    for t in brute_force_trees(k - 1):
        out |= _grow(t)
    return out


def _grow(t):
    if t == X:
        return {Node(X, X)}
    return ({Node(a, t.right) for a in _grow(t.left)}
            | {Node(t.left, b) for b in _grow(t.right)})


def test_rank():
    assert rank(X) == 1
    assert rank(Node(X, Node(X, X))) == 3


@pytest.mark.parametrize("k", range(1, 8))
def test_enumerate_matches_brute_force(k):
    trees = enumerate_trees(k)
    assert len(trees) == catalan(k - 1) == len(set(trees))
    assert set(trees) == brute_force_trees(k)
    assert all(rank(t) == k for t in trees)


def test_enumerate_small_cases():
    assert enumerate_trees(1) == [X]
    assert enumerate_trees(3) == [Node(X, Node(X, X)), Node(Node(X, X), X)]
    assert len(enumerate_trees(6)) == 42
    with pytest.raises(ValueError):
        enumerate_trees(0)


def test_tree_syntax():
    t = parse_tree("(x (x x))")
    assert t == Node(X, Node(X, X))
    assert str(t) == "(x (x x))"
    for k in range(1, 6):
        for t in enumerate_trees(k):
            assert parse_tree(str(t)) == t
    for bad in ["(x)", "(x x x)", "y", "(x x", "x x"]:
        with pytest.raises(ValueError):
            parse_tree(bad)


def test_canonical_term_examples():
    a, b = parse_tree("(x (x x))"), parse_tree("((x x) x)")
    assert canonical_term(a, b) == TAU
    assert canonical_term(b, b) == ID
    assert canonical_term(b, a) == parse("tau^-1")
    assert sub_arrow(WArrow(parse_tree("(x x)"), parse_tree("(x x)"))) == ID
    assert sub_arrow(WArrow(a, b)) == TAU
    with pytest.raises(RankMismatch):
        canonical_term(a, X)
    with pytest.raises(RankMismatch):
        WArrow(a, X)


def test_pentagon_from_two_routes():
    a = right_comb(4)
    via_sides = parse("(tau * id) . tau . (id * tau)")
    direct = parse("tau . tau")
    assert R.equal(evaluate(via_sides), evaluate(canonical_term(a, left_comb(4))))
    assert R.equal(evaluate(direct), evaluate(canonical_term(a, left_comb(4))))
    # the recursive route takes the three-step side of the pentagon
    assert to_text(recursive_term(a, left_comb(4))) == "(tau * id) . tau . (id * tau)"


def test_redexes_shallowest_leftmost():
    t = parse_tree("((x (x x)) (x (x x)))")
    assert redexes(t) == [(), ("L",), ("R",)]
    assert rotate(t, ()) == parse_tree("(((x (x x)) x) (x x))")
    with pytest.raises(ValueError):
        rotate(t, ("L", "L"))


def test_step_term_wrapping():
    assert to_text(step_term(("L", "R"))) == "((id * tau) * id)"
    assert to_text(step_term((), inverse=True)) == "tau^-1"


def test_routes_reach_left_comb():
    for k in range(1, 8):
        for t in enumerate_trees(k):
            for route in (comb_route, recursive_route):
                s = t
                for p in route(t):
                    s = rotate(s, p)
                assert s == left_comb(k)


def _all_route_values(k):
    """Every bijection reachable along *some* associator route to the comb, per tree."""
    values = {}

    def go(t):
        if t not in values:
            out = set()
            for p in redexes(t):
                step = evaluate(step_term(p))
                out |= {R.dumps(R.compose(R.loads(v), step)) for v in go(rotate(t, p))}
            values[t] = out or {R.dumps(R.identity())}
        return values[t]

    for t in enumerate_trees(k):
        go(t)
    return values


@pytest.mark.parametrize("k", range(2, 7))
def test_every_route_gives_the_same_bijection(k):
    # Exhaustive over all routes: the set of values is built by memoized
    # recursion over the (acyclic) rotation graph.
    values = _all_route_values(k)
    for t, vs in values.items():
        assert len(vs) == 1, t
        assert vs == {R.dumps(evaluate(canonical_term(t, left_comb(k))))}


@pytest.mark.parametrize("k", [3, 4, 5])
def test_functoriality(k):
    trees = enumerate_trees(k)
    image = {(a, b): evaluate(canonical_term(a, b)) for a in trees for b in trees}
    for a, b, c in itertools.product(trees, repeat=3):
        assert R.compose(image[b, c], image[a, b]) == image[a, c]


@pytest.mark.parametrize("k", range(2, 7))
def test_moduli_divide_two_to_rank(k):
    for a in enumerate_trees(k):
        for b in enumerate_trees(k):
            assert all((2 ** k) % m == 0 for m in evaluate(canonical_term(a, b)).moduli)
