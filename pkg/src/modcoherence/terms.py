"""Term syntax over ``tau``, ``sigma`` and ``id``.

Concrete syntax::

    term := comp
    comp := star { "." star }        left associative, f . g = f after g
    star := inv [ "*" inv ]           binary only; nest with parentheses
    inv  := atom { "^-1" }
    atom := "tau" | "sigma" | "id" | "(" term ")"
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from . import residue as R

GENERATORS = ("tau", "sigma", "id")


@dataclass(frozen=True)
class Gen:
    name: str

    def __post_init__(self):
        if self.name not in GENERATORS:
            raise ValueError(f"unknown generator {self.name!r}")


@dataclass(frozen=True)
class Star:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Compose:
    after: "Term"
    before: "Term"


@dataclass(frozen=True)
class Inverse:
    of: "Term"


Term = Union[Gen, Star, Compose, Inverse]

TAU, SIGMA, ID = Gen("tau"), Gen("sigma"), Gen("id")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class AmbiguousStarChain(ParseError):
    pass


_TOKEN = re.compile(r"\s*(?:(tau|sigma|id)\b|(\^-1)|([().*]))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        tokens.append((m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    tokens.append(("<end>", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def pos(self) -> int:
        return self.tokens[self.i][1]

    def take(self, expected: str) -> None:
        if self.peek() != expected:
            raise ParseError(f"expected {expected!r}, found {self.peek()!r}", self.pos())
        self.i += 1

    def term(self) -> Term:
        t = self.star()
        while self.peek() == ".":
            self.i += 1
            t = Compose(t, self.star())
        return t

    def star(self) -> Term:
        t = self.inv()
        if self.peek() == "*":
            self.i += 1
            t = Star(t, self.inv())
            if self.peek() == "*":
                raise AmbiguousStarChain("ambiguous star chain", self.pos())
        return t

    def inv(self) -> Term:
        t = self.atom()
        while self.peek() == "^-1":
            self.i += 1
            t = Inverse(t)
        return t

    def atom(self) -> Term:
        tok = self.peek()
        if tok in GENERATORS:
            self.i += 1
            return Gen(tok)
        if tok == "(":
            self.i += 1
            t = self.term()
            self.take(")")
            return t
        raise ParseError(f"unexpected {tok!r}", self.pos())


def parse(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    if p.peek() != "<end>":
        raise ParseError(f"trailing {p.peek()!r}", p.pos())
    return t


def to_text(t: Term) -> str:
    """Print ``t`` so that ``parse(to_text(t)) == t``."""
    if isinstance(t, Gen):
        return t.name
    if isinstance(t, Star):
        return f"({_operand(t.left)} * {_operand(t.right)})"
    if isinstance(t, Inverse):
        return _operand(t.of) + "^-1"
    return f"{to_text(t.after)} . {_operand(t.before)}"


print_term = to_text


def _operand(t: Term) -> str:
    text = to_text(t)
    return f"({text})" if isinstance(t, Compose) else text


def compose_all(*terms: Term) -> Term:
    """Left-to-right as written: ``compose_all(f, g, h)`` is ``f . g . h``."""
    if not terms:
        return ID
    out = terms[0]
    for t in terms[1:]:
        out = Compose(out, t)
    return out


@lru_cache(maxsize=65536)
def evaluate(t: Term) -> R.ModularBijection:
    if isinstance(t, Gen):
        return {"tau": R.tau, "sigma": R.sigma, "id": R.identity}[t.name]()
    if isinstance(t, Star):
        return R.interleave(evaluate(t.left), evaluate(t.right))
    if isinstance(t, Compose):
        return R.compose(evaluate(t.after), evaluate(t.before))
    return R.invert(evaluate(t.of))


def contains_sigma(t: Term) -> bool:
    if isinstance(t, Gen):
        return t.name == "sigma"
    if isinstance(t, Star):
        return contains_sigma(t.left) or contains_sigma(t.right)
    if isinstance(t, Compose):
        return contains_sigma(t.after) or contains_sigma(t.before)
    return contains_sigma(t.of)


def size(t: Term) -> int:
    if isinstance(t, Gen):
        return 1
    if isinstance(t, Star):
        return 1 + size(t.left) + size(t.right)
    if isinstance(t, Compose):
        return 1 + size(t.after) + size(t.before)
    return 1 + size(t.of)


def depth(t: Term) -> int:
    if isinstance(t, Gen):
        return 0
    if isinstance(t, Star):
        return 1 + max(depth(t.left), depth(t.right))
    if isinstance(t, Compose):
        return 1 + max(depth(t.after), depth(t.before))
    return 1 + depth(t.of)


def random_term(depth: int, seed=None, *, rng: random.Random | None = None,
                generators: tuple[str, ...] = GENERATORS) -> Term:
    """A pseudo-random term of constructor depth at most ``depth``.

    Node kinds are drawn with weights 40/25/25/10 (generator, star, compose,
    inverse).  Pass ``generators=("tau", "id")`` for sigma-free terms.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    rng = rng or random.Random(seed)

    def go(d: int) -> Term:
        kind = "gen" if d == 0 else rng.choices(
            ("gen", "star", "compose", "inverse"), weights=(40, 25, 25, 10))[0]
        if kind == "gen":
            return Gen(rng.choice(generators))
        if kind == "star":
            return Star(go(d - 1), go(d - 1))
        if kind == "compose":
            return Compose(go(d - 1), go(d - 1))
        return Inverse(go(d - 1))

    return go(depth)
