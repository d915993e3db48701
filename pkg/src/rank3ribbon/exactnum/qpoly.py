"""Dense univariate polynomial arithmetic over the rationals.

Polynomials are tuples of Fractions, lowest degree first, with no trailing
zeros (the zero polynomial is the empty tuple).  These helpers back the Sturm
machinery and the modular reductions used for exact algebraic arithmetic.
"""

from __future__ import annotations

from fractions import Fraction

QPoly = tuple  # tuple[Fraction, ...]

ZERO: QPoly = ()
ONE: QPoly = (Fraction(1),)
X: QPoly = (Fraction(0), Fraction(1))


def qnormalize(coeffs) -> QPoly:
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def qdegree(p: QPoly) -> int:
    return len(p) - 1


def qconst(c) -> QPoly:
    return qnormalize((Fraction(c),))


def qadd(p: QPoly, q: QPoly) -> QPoly:
    n = max(len(p), len(q))
    return qnormalize(
        ((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))
    )


def qneg(p: QPoly) -> QPoly:
    return tuple(-c for c in p)


def qsub(p: QPoly, q: QPoly) -> QPoly:
    return qadd(p, qneg(q))


def qscale(p: QPoly, c) -> QPoly:
    c = Fraction(c)
    if c == 0:
        return ZERO
    return tuple(ci * c for ci in p)


def qmul(p: QPoly, q: QPoly) -> QPoly:
    if not p or not q:
        return ZERO
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return qnormalize(out)


def qdivmod(p: QPoly, q: QPoly) -> tuple[QPoly, QPoly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    dq = len(q) - 1
    lead = q[-1]
    quot = [Fraction(0)] * max(len(p) - dq, 0)
    while len(rem) - 1 >= dq and any(c != 0 for c in rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < dq:
            break
        shift = len(rem) - 1 - dq
        factor = rem[-1] / lead
        quot[shift] = factor
        for i, b in enumerate(q):
            rem[shift + i] -= factor * b
        rem.pop()
    return qnormalize(quot), qnormalize(rem)


def qmod(p: QPoly, q: QPoly) -> QPoly:
    return qdivmod(p, q)[1]


def qeval(p: QPoly, x) -> Fraction:
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def qderiv(p: QPoly) -> QPoly:
    return qnormalize(tuple(i * p[i] for i in range(1, len(p))))


def qmonic(p: QPoly) -> QPoly:
    if not p:
        return ZERO
    lead = p[-1]
    return tuple(c / lead for c in p)


def qgcd(p: QPoly, q: QPoly) -> QPoly:
    a, b = p, q
    while b:
        a, b = b, qmod(a, b)
    return qmonic(a)


def qxgcd(a: QPoly, b: QPoly) -> tuple[QPoly, QPoly, QPoly]:
    """Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = ONE, ZERO
    t0, t1 = ZERO, ONE
    while r1:
        q, r = qdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, qsub(s0, qmul(q, s1))
        t0, t1 = t1, qsub(t0, qmul(q, t1))
    if not r0:
        return ZERO, ZERO, ZERO
    lead = r0[-1]
    inv = Fraction(1) / lead
    return qscale(r0, inv), qscale(s0, inv), qscale(t0, inv)


def qmulmod(p: QPoly, q: QPoly, m: QPoly) -> QPoly:
    return qmod(qmul(p, q), m)


def qpowmod(p: QPoly, e: int, m: QPoly) -> QPoly:
    result = ONE
    base = qmod(p, m)
    while e > 0:
        if e & 1:
            result = qmulmod(result, base, m)
        base = qmulmod(base, base, m)
        e >>= 1
    return result
