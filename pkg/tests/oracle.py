"""Pointwise reference semantics, written directly from the case formulas.

Nothing here touches the branch representation; it is the independent side of
every engine check.
"""
from modcoherence.terms import Compose, Gen, Star


def tau(n):
    if n % 2 == 0:
        return 2 * n
    if n % 4 == 1:
        return n + 1
    return (n - 1) // 2


def tau_inv(n):
    if n % 4 == 0:
        return n // 2
    if n % 4 == 2:
        return n - 1
    return 2 * n + 1


def sigma(n):
    return n + 1 if n % 2 == 0 else n - 1


def ident(n):
    return n


def star(f, g):
    def h(n):
        if n % 2 == 0:
            return 2 * f(n // 2)
        return 2 * g((n - 1) // 2) + 1
    return h


def after(f, g):
    return lambda n: f(g(n))


def ref_eval(t, inverse=False):
    """Pointwise function of a term; inverses are pushed to the generators."""
    if isinstance(t, Gen):
        if t.name == "tau":
            return tau_inv if inverse else tau
        return sigma if t.name == "sigma" else ident
    if isinstance(t, Star):
        return star(ref_eval(t.left, inverse), ref_eval(t.right, inverse))
    if isinstance(t, Compose):
        if inverse:
            return after(ref_eval(t.before, True), ref_eval(t.after, True))
        return after(ref_eval(t.after), ref_eval(t.before))
    return ref_eval(t.of, not inverse)


def reconstruct(fn, modulus, samples=8):
    """Affine piece on each residue class mod ``modulus``, as (slope*den, offset*den, den).

    Fits ``fn(modulus*q + r)`` from q = 0, 1 and checks the fit on further q.
    """
    from fractions import Fraction
    rows = {}
    for r in range(modulus):
        y0, y1 = fn(r), fn(modulus + r)
        slope = Fraction(y1 - y0, modulus)
        offset = y0 - slope * r
        for q in range(samples):
            n = modulus * q + r
            assert fn(n) == slope * n + offset, (r, q)
        rows[r] = (slope, offset)
    return rows
