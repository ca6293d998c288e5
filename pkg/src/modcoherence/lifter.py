"""Deciding equality of canonical terms by lifting them to tree rebracketings.

A sigma-free term gets a principal typing: a pair of tree patterns (source,
target) with metavariables.  Two terms whose typings unify simultaneously are
both images of the same unique arrow in the free category, so they denote the
same bijection.  The converse is not claimed: an ``UNKNOWN`` verdict says
nothing, and callers fall back to the exact engine.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Optional, Union

from . import residue as R
from .free import Leaf, Node, Tree
from .terms import Gen, ID, Inverse, Star, Term, compose_all, evaluate, to_text


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class PNode:
    left: "Pattern"
    right: "Pattern"

    def __str__(self):
        return f"({self.left} {self.right})"


Pattern = Union[Var, PNode]
Subst = dict[str, Pattern]


class LiftError(Exception):
    pass


class SigmaPresent(LiftError):
    def __init__(self):
        super().__init__("term contains sigma, which has no associativity lift")


class UnificationFailure(LiftError):
    def __init__(self, left: Pattern, right: Pattern, reason: str = "clash"):
        super().__init__(f"cannot unify {left} with {right} ({reason})")
        self.left, self.right = left, right


def occurs(name: str, p: Pattern) -> bool:
    if isinstance(p, Var):
        return p.name == name
    return occurs(name, p.left) or occurs(name, p.right)


def substitute(p: Pattern, s: Subst) -> Pattern:
    if isinstance(p, Var):
        return s.get(p.name, p)
    return PNode(substitute(p.left, s), substitute(p.right, s))


def variables(p: Pattern) -> set[str]:
    if isinstance(p, Var):
        return {p.name}
    return variables(p.left) | variables(p.right)


def _walk(p: Pattern, s: Subst) -> Pattern:
    while isinstance(p, Var) and p.name in s:
        p = s[p.name]
    return p


def _resolve(p: Pattern, s: Subst) -> Pattern:
    p = _walk(p, s)
    if isinstance(p, Var):
        return p
    return PNode(_resolve(p.left, s), _resolve(p.right, s))


def unify_all(pairs: list[tuple[Pattern, Pattern]]) -> Optional[Subst]:
    """Most general simultaneous unifier of ``pairs``, or ``None``.

    The returned substitution is idempotent: no bound variable occurs in any
    binding.
    """
    s: Subst = {}
    stack = list(pairs)
    while stack:
        a, b = stack.pop()
        a, b = _walk(a, s), _walk(b, s)
        if a == b:
            continue
        if isinstance(a, Var) or isinstance(b, Var):
            v, t = (a, b) if isinstance(a, Var) else (b, a)
            if occurs(v.name, _resolve(t, s)):
                return None
            s[v.name] = t
            continue
        stack.append((a.right, b.right))
        stack.append((a.left, b.left))
    return {k: _resolve(v, s) for k, v in s.items()}


def unify(p: Pattern, q: Pattern) -> Optional[Subst]:
    return unify_all([(p, q)])


@dataclass(frozen=True)
class Typing:
    source: Pattern
    target: Pattern

    def __str__(self):
        return f"{self.source} => {self.target}"

    def apply(self, s: Subst) -> Typing:
        return Typing(substitute(self.source, s), substitute(self.target, s))

    def variables(self) -> set[str]:
        return variables(self.source) | variables(self.target)

    def ground(self) -> tuple[Tree, Tree]:
        """Instantiate every metavariable with ``x``."""
        return pattern_to_tree(self.source), pattern_to_tree(self.target)


def pattern_to_tree(p: Pattern) -> Tree:
    if isinstance(p, Var):
        return Leaf()
    return Node(pattern_to_tree(p.left), pattern_to_tree(p.right))


def match(p: Pattern, t: Tree) -> bool:
    """Whether ground tree ``t`` is an instance of ``p`` (one-way matching)."""
    binding: dict[str, Tree] = {}

    def go(p, t) -> bool:
        if isinstance(p, Var):
            if p.name in binding:
                return binding[p.name] == t
            binding[p.name] = t
            return True
        return isinstance(t, Node) and go(p.left, t.left) and go(p.right, t.right)

    return go(p, t)


def match_typing(ty: Typing, source: Tree, target: Tree) -> bool:
    return match(PNode(ty.source, ty.target), Node(source, target))


class _Fresh:
    def __init__(self):
        self.counter = itertools.count(1)

    def __call__(self) -> Var:
        return Var(f"v{next(self.counter)}")


def _renumber(ty: Typing) -> Typing:
    """Rename metavariables to v1, v2, ... in order of first appearance."""
    order: dict[str, Var] = {}

    def visit(p):
        if isinstance(p, Var):
            order.setdefault(p.name, Var(f"v{len(order) + 1}"))
        else:
            visit(p.left)
            visit(p.right)

    visit(ty.source)
    visit(ty.target)
    return ty.apply(order)


def infer_typing(t: Term) -> Typing:
    """Principal typing of a sigma-free term.

    Raises :class:`SigmaPresent` or :class:`UnificationFailure`.
    """
    fresh = _Fresh()

    def go(t: Term) -> Typing:
        if isinstance(t, Gen):
            if t.name == "sigma":
                raise SigmaPresent()
            if t.name == "id":
                a = fresh()
                return Typing(a, a)
            a, b, c = fresh(), fresh(), fresh()
            return Typing(PNode(a, PNode(b, c)), PNode(PNode(a, b), c))
        if isinstance(t, Inverse):
            ty = go(t.of)
            return Typing(ty.target, ty.source)
        if isinstance(t, Star):
            l, r = go(t.left), go(t.right)
            return Typing(PNode(l.source, r.source), PNode(l.target, r.target))
        after, before = go(t.after), go(t.before)
        s = unify(after.source, before.target)
        if s is None:
            raise UnificationFailure(after.source, before.target)
        return Typing(substitute(before.source, s), substitute(after.target, s))

    return _renumber(go(t))


class Verdict(enum.Enum):
    YES = "YES"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class CoherenceResult:
    verdict: Verdict
    reason: str = ""
    typing: Optional[Typing] = None

    def __bool__(self):
        return self.verdict is Verdict.YES


def _standardize_apart(ty: Typing, prefix: str) -> Typing:
    return ty.apply({v: Var(prefix + v) for v in ty.variables()})


def coherence_equal(t1: Term, t2: Term) -> CoherenceResult:
    try:
        ty1 = infer_typing(t1)
        ty2 = infer_typing(t2)
    except LiftError as exc:
        return CoherenceResult(Verdict.UNKNOWN, str(exc))
    ty1, ty2 = _standardize_apart(ty1, "a"), _standardize_apart(ty2, "b")
    s = unify_all([(ty1.source, ty2.source), (ty1.target, ty2.target)])
    if s is None:
        return CoherenceResult(Verdict.UNKNOWN, f"typings do not unify: {ty1} vs {ty2}")
    return CoherenceResult(Verdict.YES, "common lift", _renumber(ty1.apply(s)))


# -- diagrams -----------------------------------------------------------------

class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    term: Term


@dataclass
class Diagram:
    nodes: list[str]
    edges: list[Edge]

    def __post_init__(self):
        if len(set(self.nodes)) != len(self.nodes):
            raise DiagramError("duplicate node names")
        known = set(self.nodes)
        for e in self.edges:
            if e.source not in known or e.target not in known:
                raise DiagramError(f"edge {e.source}->{e.target} uses an unknown node")

    @classmethod
    def from_json(cls, data: dict) -> Diagram:
        from .terms import parse
        try:
            nodes = [str(n) for n in data["nodes"]]
            edges = [Edge(e["from"], e["to"], parse(e["term"])) for e in data["edges"]]
        except (KeyError, TypeError) as exc:
            raise DiagramError(f"malformed diagram JSON: {exc}") from exc
        return cls(nodes, edges)

    def to_json(self) -> dict:
        return {"nodes": list(self.nodes),
                "edges": [{"from": e.source, "to": e.target, "term": to_text(e.term)}
                          for e in self.edges]}


class PairStatus(enum.Enum):
    COHERENT = "COHERENT"
    EQUAL = "EQUAL"
    NOT_EQUAL = "NOT_EQUAL"


@dataclass
class PairReport:
    source: str
    target: str
    path1: tuple[int, ...]
    path2: tuple[int, ...]
    status: PairStatus
    witness: Optional[int] = None
    reason: str = ""

    def to_json(self) -> dict:
        out = {"from": self.source, "to": self.target,
               "path1": list(self.path1), "path2": list(self.path2),
               "status": self.status.value}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.reason:
            out["reason"] = self.reason
        return out


@dataclass
class DiagramReport:
    pairs: list[PairReport] = field(default_factory=list)
    truncated: list[tuple[str, str]] = field(default_factory=list)
    path_bound: int = 0

    @property
    def commutes(self) -> bool:
        return all(p.status is not PairStatus.NOT_EQUAL for p in self.pairs)

    def to_json(self) -> dict:
        return {"commutes": self.commutes, "path_bound": self.path_bound,
                "pairs": [p.to_json() for p in self.pairs],
                "truncated": [{"from": a, "to": b} for a, b in self.truncated]}


def path_term(d: Diagram, path: tuple[int, ...]) -> Term:
    """Composite of the edges along ``path`` (first edge acts first)."""
    return compose_all(*(d.edges[i].term for i in reversed(path))) if path else ID


def enumerate_paths(d: Diagram, bound: int):
    """``{(u, v): [paths]}`` for all walks of length <= bound, and truncated pairs."""
    out: dict[tuple[str, str], list[tuple[int, ...]]] = {}
    truncated: set[tuple[str, str]] = set()
    outgoing: dict[str, list[int]] = {n: [] for n in d.nodes}
    for i, e in enumerate(d.edges):
        outgoing[e.source].append(i)
    for start in d.nodes:
        frontier = [(start, ())]
        out.setdefault((start, start), []).append(())
        for length in range(1, bound + 2):
            nxt = []
            for node, path in frontier:
                for i in outgoing[node]:
                    e = d.edges[i]
                    p = path + (i,)
                    if length > bound:
                        truncated.add((start, e.target))
                        continue
                    out.setdefault((start, e.target), []).append(p)
                    nxt.append((e.target, p))
            frontier = nxt
    return out, sorted(truncated)


def verify_diagram(d: Diagram, path_bound: Optional[int] = None) -> DiagramReport:
    bound = len(d.edges) if path_bound is None else path_bound
    paths, truncated = enumerate_paths(d, bound)
    report = DiagramReport(truncated=truncated, path_bound=bound)
    for u in d.nodes:
        for v in d.nodes:
            ps = paths.get((u, v), [])
            for p1, p2 in itertools.combinations(ps, 2):
                t1, t2 = path_term(d, p1), path_term(d, p2)
                res = coherence_equal(t1, t2)
                if res:
                    report.pairs.append(PairReport(u, v, p1, p2, PairStatus.COHERENT))
                    continue
                eq = R.equal(evaluate(t1), evaluate(t2))
                status = PairStatus.EQUAL if eq else PairStatus.NOT_EQUAL
                report.pairs.append(PairReport(u, v, p1, p2, status, eq.witness, res.reason))
    return report


def lift_diagram(d: Diagram) -> Optional[dict[str, Pattern]]:
    """One pattern per node such that every sigma-free edge is typed between them.

    Returns ``None`` if some edge does not lift or the constraints clash.  A
    diagram that lifts this way is the image of a diagram of rebracketings,
    so all its parallel paths agree.
    """
    pairs = []
    node_var = {n: Var(f"node:{n}") for n in d.nodes}
    for i, e in enumerate(d.edges):
        try:
            ty = _standardize_apart(infer_typing(e.term), f"e{i}:")
        except LiftError:
            return None
        pairs += [(node_var[e.source], ty.source), (node_var[e.target], ty.target)]
    s = unify_all(pairs)
    if s is None:
        return None
    shapes = {n: _resolve(v, s) for n, v in node_var.items()}
    names: dict[str, Var] = {}
    for n in d.nodes:
        for v in sorted(variables(shapes[n])):
            names.setdefault(v, Var(f"v{len(names) + 1}"))
    return {n: substitute(p, names) for n, p in shapes.items()}
