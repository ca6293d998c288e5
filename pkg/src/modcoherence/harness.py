"""Generating arithmetic identities from rebracketings, plus timing runs."""
from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass
from typing import Iterator, Optional

from . import residue as R
from .free import (Tree, canonical_term, enumerate_trees, recursive_term, redexes,
                   rotate, step_term)
from .lifter import Diagram, Edge, coherence_equal
from .terms import Term, compose_all, evaluate, to_text

MIN_RANK, MAX_RANK = 2, 10


class RankOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class VerifiedIdentity:
    lhs: Term
    rhs: Term
    rank: int
    source: Tree
    target: Tree
    table: R.ModularBijection

    def to_json(self) -> dict:
        return {"rank": self.rank, "source": str(self.source), "target": str(self.target),
                "lhs": to_text(self.lhs), "rhs": to_text(self.rhs),
                "table": R.to_json(self.table),
                "status": "coherent-and-oracle-checked"}


class VerificationFailure(AssertionError):
    pass


def verify_identity(lhs: Term, rhs: Term) -> R.ModularBijection:
    if not coherence_equal(lhs, rhs):
        raise VerificationFailure(f"no common lift for {to_text(lhs)} = {to_text(rhs)}")
    f, g = evaluate(lhs), evaluate(rhs)
    eq = R.equal(f, g)
    if not eq:
        raise VerificationFailure(
            f"oracle disagrees at n={eq.witness}: {to_text(lhs)} vs {to_text(rhs)}")
    return f


def iter_identities(rank: int, limit: Optional[int] = None) -> Iterator[VerifiedIdentity]:
    if not MIN_RANK <= rank <= MAX_RANK:
        raise RankOutOfRange(f"rank must lie in [{MIN_RANK}, {MAX_RANK}], got {rank}")
    trees = enumerate_trees(rank)
    count = 0
    for a in trees:
        for b in trees:
            if a == b:
                continue
            if limit is not None and count >= limit:
                return
            lhs, rhs = canonical_term(a, b), recursive_term(a, b)
            table = verify_identity(lhs, rhs)
            count += 1
            yield VerifiedIdentity(lhs, rhs, rank, a, b, table)


def generate_identities(rank: int, limit: Optional[int] = None) -> list[VerifiedIdentity]:
    return list(iter_identities(rank, limit))


def write_jsonl(identities, fh) -> int:
    n = 0
    for ident in identities:
        fh.write(json.dumps(ident.to_json(), separators=(",", ":"), sort_keys=True))
        fh.write("\n")
        n += 1
    return n


# -- random routes ------------------------------------------------------------

def random_tree(rank: int, rng: random.Random) -> Tree:
    return rng.choice(enumerate_trees(rank))


def random_route(a: Tree, b: Tree, rng: random.Random) -> list[Term]:
    """Step terms of a random associator walk from ``a`` to ``b`` via the left comb.

    Each step rotates at a uniformly chosen redex, so different seeds give
    different routes between the same endpoints.
    """
    def walk(t: Tree) -> list:
        steps = []
        while True:
            rs = redexes(t)
            if not rs:
                return steps
            p = rng.choice(rs)
            steps.append(p)
            t = rotate(t, p)

    up = [step_term(p) for p in walk(a)]
    down = [step_term(p, inverse=True) for p in reversed(walk(b))]
    return up + down


def route_composite(steps: list[Term]) -> Term:
    return compose_all(*reversed(steps))


def two_route_diagram(a: Tree, b: Tree, rng: random.Random) -> Diagram:
    """Two independent random walks from ``a`` to ``b`` as a diagram."""
    nodes, edges = ["src", "dst"], []
    for tag in ("p", "q"):
        steps = random_route(a, b, rng)
        prev = "src"
        for i, t in enumerate(steps):
            nxt = "dst" if i == len(steps) - 1 else f"{tag}{i}"
            if nxt != "dst":
                nodes.append(nxt)
            edges.append(Edge(prev, nxt, t))
            prev = nxt
    return Diagram(nodes, edges)


@dataclass
class TimingRow:
    rank: int
    edges: int
    lift_seconds: float
    oracle_seconds: float
    max_modulus: int


def timing_run(ranks, trials: int, seed: int = 0) -> list[TimingRow]:
    """Time the lifting decision against the exact oracle on two-route diagrams."""
    rng = random.Random(seed)
    rows = []
    for k in ranks:
        for _ in range(trials):
            a, b = random_tree(k, rng), random_tree(k, rng)
            if a == b:
                continue
            p, q = random_route(a, b, rng), random_route(a, b, rng)
            if not p or not q:
                continue
            t1, t2 = route_composite(p), route_composite(q)
            start = time.perf_counter()
            verdict = coherence_equal(t1, t2)
            lift = time.perf_counter() - start
            evaluate.cache_clear()
            start = time.perf_counter()
            f = evaluate(t1)
            eq = R.equal(f, evaluate(t2))
            oracle = time.perf_counter() - start
            if not verdict or not eq:
                raise VerificationFailure(f"routes disagree at rank {k}")
            rows.append(TimingRow(k, len(p) + len(q), lift, oracle, max(f.moduli)))
    return rows
