"""Bijections of the naturals that are affine on congruence classes.

A :class:`ModularBijection` is a finite list of :class:`Branch` objects.  Each
branch sends the class ``m*q + r`` onto the class ``m2*q + s`` by the order
preserving map ``m*q + r -> m2*q + s``.  Keeping both ends as classes (rather
than slope and offset) keeps every coefficient integral and turns inversion
into a swap.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Optional


class PartitionError(ValueError):
    """A branch list whose input or output classes do not partition N."""


@dataclass(frozen=True, order=True)
class CongruenceClass:
    modulus: int
    residue: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        if not 0 <= self.residue < self.modulus:
            raise ValueError(
                f"residue {self.residue} out of range for modulus {self.modulus}")

    def __contains__(self, n: int) -> bool:
        return n % self.modulus == self.residue

    def element(self, q: int) -> int:
        return self.modulus * q + self.residue

    def index(self, n: int) -> int:
        """Position ``q`` of ``n`` inside the class."""
        return (n - self.residue) // self.modulus

    def intersect(self, other: CongruenceClass) -> Optional[CongruenceClass]:
        return _crt(self.modulus, self.residue, other.modulus, other.residue)

    def __str__(self):
        return f"{self.residue} (mod {self.modulus})"


def _crt(m1: int, r1: int, m2: int, r2: int) -> Optional[CongruenceClass]:
    g = gcd(m1, m2)
    if (r2 - r1) % g:
        return None
    L = m1 // g * m2
    # r1 + m1*t = r2 (mod m2)  =>  t = (r2-r1)/g * inv(m1/g) (mod m2/g)
    m2g = m2 // g
    t = ((r2 - r1) // g * pow(m1 // g, -1, m2g)) % m2g if m2g > 1 else 0
    return CongruenceClass(L, (r1 + m1 * t) % L)


@dataclass(frozen=True, order=True)
class Branch:
    input: CongruenceClass
    output: CongruenceClass

    @classmethod
    def of(cls, m: int, r: int, m2: int, s: int) -> Branch:
        return cls(CongruenceClass(m, r), CongruenceClass(m2, s))

    def __call__(self, n: int) -> int:
        return self.output.element(self.input.index(n))

    @property
    def slope(self) -> Fraction:
        return Fraction(self.output.modulus, self.input.modulus)

    @property
    def offset(self) -> Fraction:
        return self.output.residue - self.slope * self.input.residue

    def swapped(self) -> Branch:
        return Branch(self.output, self.input)

    def restrict(self, cls: CongruenceClass) -> Branch:
        """The same map restricted to ``cls``, which must lie inside the input class."""
        q0 = self.input.index(cls.residue)
        k = cls.modulus // self.input.modulus
        return Branch(cls, CongruenceClass(self.output.modulus * k,
                                           self.output.element(q0)))

    def refine(self, modulus: int) -> list[Branch]:
        """Split into branches whose input modulus is ``modulus`` (a multiple of ours)."""
        m = self.input.modulus
        if modulus % m:
            raise ValueError(f"{modulus} is not a multiple of {m}")
        return [self.restrict(CongruenceClass(modulus, self.input.residue + m * j))
                for j in range(modulus // m)]

    def formula(self) -> str:
        """The map as an expression in ``n``, e.g. ``2n+2`` or ``(n+1)/2``."""
        return affine_formula(self.slope, self.offset)

    def to_json(self) -> dict:
        return {"in": {"mod": self.input.modulus, "res": self.input.residue},
                "out": {"mod": self.output.modulus, "res": self.output.residue}}


def affine_formula(slope: Fraction, offset: Fraction) -> str:
    den = slope.denominator * offset.denominator // gcd(slope.denominator, offset.denominator)
    a = int(slope * den)
    b = int(offset * den)
    lead = "n" if a == 1 else f"{a}n"
    if b > 0:
        body = f"{lead}+{b}"
    elif b < 0:
        body = f"{lead}-{-b}"
    else:
        body = lead
    if den == 1:
        return body
    return f"({body})/{den}" if b else f"{body}/{den}"


class ModularBijection:
    """A bijection of N given by finitely many affine maps between classes.

    Instances are immutable.  Operations return canonicalized results; the raw
    constructor keeps the branch list exactly as given.
    """

    __slots__ = ("branches", "__dict__")

    def __init__(self, branches: Iterable[Branch]):
        object.__setattr__(self, "branches", tuple(branches))

    def __setattr__(self, name, value):
        raise AttributeError("ModularBijection is immutable")

    @classmethod
    def from_tuples(cls, rows: Iterable[tuple[int, int, int, int]]) -> ModularBijection:
        return cls(Branch.of(*row) for row in rows)

    def as_tuples(self) -> list[tuple[int, int, int, int]]:
        return [(b.input.modulus, b.input.residue, b.output.modulus, b.output.residue)
                for b in self.branches]

    def __eq__(self, other):
        """Structural equality of branch lists; see :func:`equal` for semantic equality."""
        if not isinstance(other, ModularBijection):
            return NotImplemented
        return self.branches == other.branches

    def __hash__(self):
        return hash(self.branches)

    def __repr__(self):
        rows = ", ".join(f"({m},{r})->({m2},{s})" for m, r, m2, s in self.as_tuples())
        return f"ModularBijection[{rows}]"

    def __call__(self, n: int) -> int:
        return apply(self, n)

    @cached_property
    def _lookup(self) -> dict[int, dict[int, Branch]]:
        table: dict[int, dict[int, Branch]] = {}
        for b in self.branches:
            table.setdefault(b.input.modulus, {})[b.input.residue] = b
        return table

    @property
    def moduli(self) -> set[int]:
        return {b.input.modulus for b in self.branches} | {
            b.output.modulus for b in self.branches}

    def check(self) -> None:
        """Raise :class:`PartitionError` unless both sides partition N."""
        _check_partition([b.input for b in self.branches], "input")
        _check_partition([b.output for b in self.branches], "output")

    def is_valid(self) -> bool:
        try:
            self.check()
        except PartitionError:
            return False
        return True


def _check_partition(classes: list[CongruenceClass], side: str) -> None:
    if not classes:
        raise PartitionError(f"empty {side} side")
    density = sum(Fraction(1, c.modulus) for c in classes)
    if density != 1:
        raise PartitionError(f"{side} densities sum to {density}, not 1")
    # Density 1 plus pairwise disjointness is equivalent to a partition.
    by_mod: dict[int, set[int]] = {}
    for c in classes:
        seen = by_mod.setdefault(c.modulus, set())
        if c.residue in seen:
            raise PartitionError(f"{side} class {c} repeated")
        seen.add(c.residue)
    mods = sorted(by_mod)
    for i, m1 in enumerate(mods):
        for m2 in mods[i + 1:]:
            g = gcd(m1, m2)
            left = {r % g for r in by_mod[m1]}
            if any(r % g in left for r in by_mod[m2]):
                raise PartitionError(f"{side} classes mod {m1} and mod {m2} overlap")


# -- generators ---------------------------------------------------------------

def tau() -> ModularBijection:
    return ModularBijection.from_tuples([(2, 0, 4, 0), (4, 1, 4, 2), (4, 3, 2, 1)])


def sigma() -> ModularBijection:
    return ModularBijection.from_tuples([(2, 0, 2, 1), (2, 1, 2, 0)])


def identity() -> ModularBijection:
    return ModularBijection.from_tuples([(1, 0, 1, 0)])


# -- operations ---------------------------------------------------------------

def apply(f: ModularBijection, n: int) -> int:
    if n < 0:
        raise ValueError(f"{n} is not a natural number")
    for m, row in f._lookup.items():
        b = row.get(n % m)
        if b is not None:
            return b(n)
    raise PartitionError(f"no branch covers {n}")


def _sibling_key(b: Branch) -> Optional[tuple]:
    m, m2 = b.input.modulus, b.output.modulus
    if m % 2 or m2 % 2:
        return None
    h, h2 = m // 2, m2 // 2
    return (m, b.input.residue % h, m2, b.output.residue % h2)


def _try_merge(a: Branch, b: Branch) -> Optional[Branch]:
    if a.input.residue > b.input.residue:
        a, b = b, a
    h, h2 = a.input.modulus // 2, a.output.modulus // 2
    if (a.input.residue < h and a.output.residue < h2
            and b.input.residue == a.input.residue + h
            and b.output.residue == a.output.residue + h2):
        return Branch.of(h, a.input.residue, h2, a.output.residue)
    return None


def canonicalize(f: ModularBijection, rng: Optional[random.Random] = None) -> ModularBijection:
    """Merge sibling branch pairs until none remain; sort by input class.

    ``rng`` shuffles the order in which candidate merges are attempted, which
    exists only so tests can check that the result does not depend on it.
    """
    branches = list(f.branches)
    while True:
        groups: dict[tuple, list[Branch]] = {}
        for b in branches:
            key = _sibling_key(b)
            if key is not None:
                groups.setdefault(key, []).append(b)
        keys = list(groups)
        if rng is not None:
            rng.shuffle(keys)
        merged: dict[Branch, Branch] = {}
        consumed: set[Branch] = set()
        for key in keys:
            pair = groups[key]
            if len(pair) != 2:
                continue
            m = _try_merge(*pair)
            if m is not None:
                merged[pair[0]] = m
                consumed.add(pair[1])
            if rng is not None and merged and rng.random() < 0.5:
                break
        if not merged:
            break
        branches = [merged.get(b, b) for b in branches if b not in consumed]
    return ModularBijection(sorted(branches))


def compose(f: ModularBijection, g: ModularBijection) -> ModularBijection:
    """``f`` after ``g``."""
    out: list[Branch] = []
    for gb in g.branches:
        for fb in f.branches:
            meet = gb.output.intersect(fb.input)
            if meet is None:
                continue
            # refine gb so that its image is exactly ``meet``
            pre = CongruenceClass(
                gb.input.modulus * (meet.modulus // gb.output.modulus),
                gb.input.element(gb.output.index(meet.residue)))
            out.append(Branch(pre, fb.restrict(meet).output))
    return canonicalize(ModularBijection(out))


def invert(f: ModularBijection) -> ModularBijection:
    return ModularBijection(sorted(b.swapped() for b in f.branches))


def interleave(f: ModularBijection, g: ModularBijection) -> ModularBijection:
    """Evens go through ``f``, odds through ``g``."""
    out = [Branch.of(2 * b.input.modulus, 2 * b.input.residue,
                     2 * b.output.modulus, 2 * b.output.residue) for b in f.branches]
    out += [Branch.of(2 * b.input.modulus, 2 * b.input.residue + 1,
                      2 * b.output.modulus, 2 * b.output.residue + 1) for b in g.branches]
    return canonicalize(ModularBijection(out))


@dataclass(frozen=True)
class Equality:
    equal: bool
    witness: Optional[int] = None

    def __bool__(self):
        return self.equal


def equal(f: ModularBijection, g: ModularBijection) -> Equality:
    """Semantic equality, with the least differing ``n`` when unequal.

    Works on the common refinement of the two input partitions: every pair of
    overlapping input classes is cut down to its intersection and the two
    affine maps are compared there.  Two distinct affine maps on a class
    ``L*q + c`` can agree on at most one ``q``, so the least witness inside
    that class is ``c`` or ``c + L``.
    """
    witness = None
    for fb in f.branches:
        for gb in g.branches:
            meet = fb.input.intersect(gb.input)
            if meet is None:
                continue
            a, b = fb.restrict(meet), gb.restrict(meet)
            if a == b:
                continue
            n = meet.residue if a(meet.residue) != b(meet.residue) else meet.residue + meet.modulus
            if witness is None or n < witness:
                witness = n
    return Equality(witness is None, witness)


def common_modulus(*fs: ModularBijection) -> int:
    return lcm(*(m for f in fs for m in f.moduli))


def pretty(f: ModularBijection) -> str:
    lines = []
    for b in canonicalize(f).branches:
        if b.input.modulus == 1:
            cond = "all n"
        else:
            cond = f"n ≡ {b.input.residue} (mod {b.input.modulus})"
        lines.append(f"{cond} ⇒ f(n) = {b.formula()}")
    return "\n".join(lines)


def table(f: ModularBijection) -> list[tuple[int, int, str]]:
    """``(modulus, residue, formula)`` rows of the canonical form."""
    return [(b.input.modulus, b.input.residue, b.formula())
            for b in canonicalize(f).branches]


# -- JSON ---------------------------------------------------------------------

def to_json(f: ModularBijection) -> dict:
    return {"branches": [b.to_json() for b in f.branches]}


def dumps(f: ModularBijection) -> str:
    return json.dumps(to_json(f), separators=(",", ":"))


def from_json(data: dict) -> ModularBijection:
    try:
        rows = [(int(b["in"]["mod"]), int(b["in"]["res"]),
                 int(b["out"]["mod"]), int(b["out"]["res"])) for b in data["branches"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed bijection JSON: {exc}") from exc
    f = ModularBijection.from_tuples(rows)
    f.check()
    return f


def loads(text: str) -> ModularBijection:
    return from_json(json.loads(text))
