"""The free monogenic semi-monoidal category on one generator ``x``.

Objects are non-empty binary trees; between two trees of equal rank there is
exactly one arrow.  :func:`canonical_term` realizes that arrow as a term over
``tau``, ``id``, ``*``, composition and inverse.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .terms import ID, TAU, Inverse, Star, Term, compose_all


@dataclass(frozen=True)
class Leaf:
    def __str__(self):
        return "x"


@dataclass(frozen=True)
class Node:
    left: "Tree"
    right: "Tree"

    def __str__(self):
        return f"({self.left} {self.right})"


Tree = Union[Leaf, Node]
X = Leaf()


class RankMismatch(ValueError):
    pass


@dataclass(frozen=True)
class WArrow:
    source: Tree
    target: Tree

    def __post_init__(self):
        if rank(self.source) != rank(self.target):
            raise RankMismatch(
                f"no arrow {self.target} <- {self.source}: ranks differ")


def node(a: Tree, b: Tree) -> Node:
    return Node(a, b)


def rank(t: Tree) -> int:
    if isinstance(t, Leaf):
        return 1
    return rank(t.left) + rank(t.right)


def depth(t: Tree) -> int:
    if isinstance(t, Leaf):
        return 0
    return 1 + max(depth(t.left), depth(t.right))


@lru_cache(maxsize=None)
def _enumerate(k: int) -> tuple[Tree, ...]:
    if k == 1:
        return (X,)
    return tuple(Node(a, b) for i in range(1, k)
                 for a in _enumerate(i) for b in _enumerate(k - i))


def enumerate_trees(k: int) -> list[Tree]:
    if k < 1:
        raise ValueError("rank must be at least 1")
    return list(_enumerate(k))


def left_comb(k: int) -> Tree:
    t: Tree = X
    for _ in range(k - 1):
        t = Node(t, X)
    return t


def right_comb(k: int) -> Tree:
    t: Tree = X
    for _ in range(k - 1):
        t = Node(X, t)
    return t


def parse_tree(text: str) -> Tree:
    """Read the ``x`` / ``(a b)`` syntax."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def go() -> Tree:
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of tree")
        tok = tokens[pos]
        pos += 1
        if tok == "x":
            return X
        if tok != "(":
            raise ValueError(f"unexpected token {tok!r} in tree")
        a, b = go(), go()
        if pos >= len(tokens) or tokens[pos] != ")":
            raise ValueError("tree node must have exactly two children")
        pos += 1
        return Node(a, b)

    t = go()
    if pos != len(tokens):
        raise ValueError(f"trailing input in tree: {' '.join(tokens[pos:])}")
    return t


# -- rewriting toward the left comb ------------------------------------------

Path = tuple[str, ...]  # "L"/"R" steps from the root


def _subtree(t: Tree, path: Path) -> Tree:
    for step in path:
        t = t.left if step == "L" else t.right
    return t


def _replace(t: Tree, path: Path, new: Tree) -> Tree:
    if not path:
        return new
    if path[0] == "L":
        return Node(_replace(t.left, path[1:], new), t.right)
    return Node(t.left, _replace(t.right, path[1:], new))


def is_redex(t: Tree) -> bool:
    return isinstance(t, Node) and isinstance(t.right, Node)


def redexes(t: Tree) -> list[Path]:
    """Positions of ``a(bc)`` subtrees, shallowest first, then left to right."""
    out, frontier = [], [((), t)]
    while frontier:
        nxt = []
        for path, s in frontier:
            if isinstance(s, Node):
                if is_redex(s):
                    out.append(path)
                nxt += [(path + ("L",), s.left), (path + ("R",), s.right)]
        frontier = nxt
    return out


def rotate(t: Tree, path: Path) -> Tree:
    """Apply the associator at ``path``: ``a(bc)`` becomes ``(ab)c``."""
    s = _subtree(t, path)
    if not is_redex(s):
        raise ValueError(f"no associator applies at {''.join(path) or 'root'}")
    return _replace(t, path, Node(Node(s.left, s.right.left), s.right.right))


def step_term(path: Path, inverse: bool = False) -> Term:
    """Image of a single associator step at ``path`` under substitution."""
    t: Term = Inverse(TAU) if inverse else TAU
    for step in reversed(path):
        t = Star(t, ID) if step == "L" else Star(ID, t)
    return t


def route_term(steps: list[Path], inverse: bool = False) -> Term:
    """Composite term of a sequence of associator steps (first step acts first)."""
    terms = [step_term(p, inverse) for p in steps]
    if not inverse:
        terms.reverse()
    return compose_all(*terms) if terms else ID


def comb_route(t: Tree) -> list[Path]:
    """Shallowest-leftmost reduction of ``t`` to the left comb."""
    steps = []
    while True:
        rs = redexes(t)
        if not rs:
            return steps
        steps.append(rs[0])
        t = rotate(t, rs[0])


def recursive_route(t: Tree) -> list[Path]:
    """Normalize both subtrees first, then fold the right comb into the left."""
    if isinstance(t, Leaf):
        return []
    steps = [("L",) + p for p in recursive_route(t.left)]
    steps += [("R",) + p for p in recursive_route(t.right)]
    return steps + _fold(rank(t.right))


def _fold(right_rank: int) -> list[Path]:
    # (L)(R) with both combs: rotate at the root, then fold the smaller comb
    # into the new left subtree.
    if right_rank == 1:
        return []
    return [()] + [("L",) + p for p in _fold(right_rank - 1)]


def _join(a: Tree, b: Tree, route) -> Term:
    if rank(a) != rank(b):
        raise RankMismatch(f"no arrow {b} <- {a}: ranks differ")
    if a == b:
        return ID
    down = [step_term(p, inverse=True) for p in route(b)]
    up = [step_term(p) for p in reversed(route(a))]
    return compose_all(*(down + up))


def canonical_term(a: Tree, b: Tree) -> Term:
    """The substitution image of the unique arrow ``b <- a``."""
    return _join(a, b, comb_route)


def recursive_term(a: Tree, b: Tree) -> Term:
    """Same arrow as :func:`canonical_term`, built along the recursive route."""
    return _join(a, b, recursive_route)


def sub_arrow(w: WArrow) -> Term:
    return canonical_term(w.source, w.target)
