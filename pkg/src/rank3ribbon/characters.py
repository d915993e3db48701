"""Ring homomorphisms of rank-3 based rings and their Galois orbit types.

For the self-dual family the multiplication matrices are symmetric, so all
three characters are real.  Each character is stored with an exact generator
of the field it lives in, plus polynomial expressions for its two values in
that generator; this makes every downstream identity check a matter of
polynomial reduction over Q.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .exactnum import (
    ComplexBall,
    IntPoly,
    RealAlgebraic,
    RootOfUnity,
    cubic_discriminant,
    factor_into_irreducibles,
    is_perfect_square,
    root_of_unity_value,
    roots_of_irreducible,
)
from .exactnum.qpoly import QPoly, qconst, qeval, qmod, qmul, qnormalize, qscale, qsub, X
from .exactnum.realalg import from_poly_expr
from .fusion import FusionRing, Rank3Params, StarViolation, make_z3_ring, rank3_tensor


class DegenerateSystem(ValueError):
    """Fewer than three distinct characters: the input is not a valid ring."""


class NoPositiveCharacter(ValueError):
    """No everywhere-positive character exists: the input is not a valid ring."""


def char_poly_x(params: Rank3Params) -> IntPoly:
    """Characteristic polynomial of multiplication by X:
    x^3 - (m+l) x^2 + (ml - k^2 - 1) x + l."""
    if not params.satisfies_star:
        raise StarViolation(f"{params.name()} violates the star constraint")
    k, l, m, n = params.as_tuple()
    return IntPoly((l, m * l - k * k - 1, -(m + l), 1))


def char_poly_y(params: Rank3Params) -> IntPoly:
    """Characteristic polynomial of multiplication by Y:
    y^3 - (n+k) y^2 + (nk - l^2 - 1) y + k."""
    return char_poly_x(params.swapped())


@dataclass(frozen=True)
class Character:
    """One ring homomorphism, given by its values on the two non-unit basis
    elements.  Real-family values are RealAlgebraic; Z/3 values are roots of
    unity.  `gen` generates the field of the values; `x_rep`/`y_rep` express
    the values as polynomials in `gen` (identically the values when rational).
    """

    x: object
    y: object
    gen: RealAlgebraic | None = None
    x_rep: QPoly = field(default=())
    y_rep: QPoly = field(default=())

    @property
    def is_cyclotomic(self) -> bool:
        return isinstance(self.x, RootOfUnity)

    def value(self, j: int):
        """Value on basis element j (0 is the unit)."""
        if j == 0:
            return RootOfUnity.one() if self.is_cyclotomic else RealAlgebraic.from_rational(1)
        return self.x if j == 1 else self.y

    def value_ball(self, j: int, precision_bits: int = 128) -> ComplexBall:
        v = self.value(j)
        if isinstance(v, RootOfUnity):
            return root_of_unity_value(v, precision_bits)
        v.refine_to(Fraction(1, 2 ** (precision_bits + 1)))
        return ComplexBall.from_real_interval(*v.interval())

    def value_complex(self, j: int) -> complex:
        v = self.value(j)
        if isinstance(v, RootOfUnity):
            return v.complex_approx()
        return complex(float(v))

    @property
    def all_rational(self) -> bool:
        return (
            not self.is_cyclotomic
            and self.x.is_rational
            and self.y.is_rational
        )

    @property
    def is_positive(self) -> bool:
        if self.is_cyclotomic:
            return self.x.is_one and self.y.is_one
        return self.x.sign() > 0 and self.y.sign() > 0

    def nonzero(self) -> bool:
        if self.is_cyclotomic:
            return True
        return not (self.x.is_zero or self.y.is_zero)

    def sort_key(self):
        if self.is_cyclotomic:
            return (float(self.x.turn), float(self.y.turn))
        return (float(self.x), float(self.y))

    def to_json(self) -> dict:
        if self.is_cyclotomic:
            return {
                "kind": "cyclotomic",
                "turn_x": str(self.x.turn),
                "turn_y": str(self.y.turn),
            }
        out = {"kind": "real-algebraic"}
        for name, v in (("x", self.x), ("y", self.y)):
            v.refine_to(Fraction(1, 10**18))
            lo, hi = v.interval()
            out[f"minpoly_{name}"] = list(v.minpoly.coeffs)
            out[f"interval_{name}"] = [str(lo), str(hi)]
            out[f"approx_{name}"] = v.approx_str(12)
        out["approx_note"] = "approx fields are non-authoritative renderings"
        return out

    def __repr__(self) -> str:
        if self.is_cyclotomic:
            return f"Character(x=e^(2pi*i*{self.x.turn}), y=e^(2pi*i*{self.y.turn}))"
        return f"Character(x~{self.x.approx_str(8)}, y~{self.y.approx_str(8)})"


class GaloisType(enum.Enum):
    TRIVIAL = "Trivial"
    C2_FIXING_FP = "C2FixingFP"
    C2_MOVING_FP = "C2MovingFP"
    C3 = "C3"
    S3 = "S3"


@dataclass(frozen=True)
class GaloisInfo:
    tag: GaloisType
    orbits: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"tag": self.tag.value, "orbits": [list(o) for o in self.orbits]}


@dataclass(frozen=True)
class CharacterSystem:
    """The three characters of a rank-3 ring, dimension character first."""

    ring: FusionRing
    chars: tuple[Character, ...]
    params: Rank3Params | None
    x_poly: IntPoly | None
    y_poly: IntPoly | None

    @property
    def is_cyclotomic(self) -> bool:
        return self.chars[0].is_cyclotomic

    def to_json(self) -> dict:
        return {"characters": [c.to_json() for c in self.chars]}


def solve_characters(ring: FusionRing) -> CharacterSystem:
    """All ring homomorphisms to the complex numbers; exactly three for a
    valid rank-3 based ring, ordered with the dimension character first."""
    if ring.rank != 3:
        raise ValueError("only rank-3 rings are supported")
    if ring.dual == (0, 2, 1):
        if ring.N != make_z3_ring().N:
            raise DegenerateSystem("unrecognized ring with nontrivial duality")
        return _z3_characters(ring)
    params = _extract_params(ring)
    if params is None:
        raise DegenerateSystem("tensor is not of the self-dual rank-3 form")
    chars = _selfdual_characters(params)
    fp = [i for i, c in enumerate(chars) if c.is_positive]
    if len(fp) != 1:
        raise NoPositiveCharacter(f"{len(fp)} everywhere-positive characters found")
    ordered = [chars[fp[0]]] + sorted(
        (c for i, c in enumerate(chars) if i != fp[0]), key=Character.sort_key
    )
    if len({(repr(c.x), repr(c.y)) for c in ordered}) < 3:
        raise DegenerateSystem("characters are not pairwise distinct")
    return CharacterSystem(
        ring=ring,
        chars=tuple(ordered),
        params=params,
        x_poly=char_poly_x(params),
        y_poly=char_poly_y(params),
    )


def _extract_params(ring: FusionRing) -> Rank3Params | None:
    n_tensor = ring.N
    params = Rank3Params(
        k=n_tensor[1][1][2], l=n_tensor[2][2][1], m=n_tensor[1][1][1], n=n_tensor[2][2][2]
    )
    if not params.satisfies_star:
        return None
    if n_tensor != rank3_tensor(params):
        return None
    return params


def _z3_characters(ring: FusionRing) -> CharacterSystem:
    one = RootOfUnity.one()
    w = RootOfUnity.make(1, 3)
    w2 = RootOfUnity.make(2, 3)
    chars = (
        Character(x=one, y=one),
        Character(x=w, y=w2),
        Character(x=w2, y=w),
    )
    return CharacterSystem(ring=ring, chars=chars, params=None, x_poly=None, y_poly=None)


def _selfdual_characters(params: Rank3Params) -> list[Character]:
    k, l, m, n = params.as_tuple()
    if k == 0:
        # The star constraint forces l = 1, m = 0 here; the characters are
        # (-1, 0) and (1, y) for the two roots of y^2 = 2 + n y.
        assert l == 1 and m == 0, "star constraint violated in k = 0 family"
        chars = [
            Character(
                x=RealAlgebraic.from_rational(-1),
                y=RealAlgebraic.from_rational(0),
                gen=None,
                x_rep=qconst(-1),
                y_rep=qconst(0),
            )
        ]
        ypoly = IntPoly((-2, -n, 1))
        for factor, mult in factor_into_irreducibles(ypoly):
            assert mult == 1
            for root in roots_of_irreducible(factor, Fraction(1, 1 << 20)):
                if root.is_rational:
                    chars.append(
                        Character(
                            x=RealAlgebraic.from_rational(1),
                            y=root,
                            gen=None,
                            x_rep=qconst(1),
                            y_rep=qconst(root.rational_value),
                        )
                    )
                else:
                    chars.append(
                        Character(
                            x=RealAlgebraic.from_rational(1),
                            y=root,
                            gen=root,
                            x_rep=qconst(1),
                            y_rep=X,
                        )
                    )
        if len(chars) != 3:
            raise DegenerateSystem("expected three characters in the k = 0 family")
        return chars
    xpoly = char_poly_x(params)
    # With k != 0 the first defining relation determines y = (x^2 - m x - 1)/k.
    y_expr: QPoly = qscale(qnormalize((Fraction(-1), Fraction(-m), Fraction(1))), Fraction(1, k))
    chars = []
    for factor, mult in factor_into_irreducibles(xpoly):
        if mult > 1:
            raise DegenerateSystem("repeated eigenvalue with k != 0")
        for root in roots_of_irreducible(factor, Fraction(1, 1 << 20)):
            if root.is_rational:
                xv = root.rational_value
                yv = qeval(y_expr, xv)
                _verify_relations_rational(params, xv, yv)
                chars.append(
                    Character(
                        x=root,
                        y=RealAlgebraic.from_rational(yv),
                        gen=None,
                        x_rep=qconst(xv),
                        y_rep=qconst(yv),
                    )
                )
            else:
                _verify_relations_modular(params, root.minpoly, X, y_expr)
                chars.append(
                    Character(
                        x=root,
                        y=from_poly_expr(root, y_expr),
                        gen=root,
                        x_rep=X,
                        y_rep=qmod(y_expr, root.minpoly.to_q()),
                    )
                )
    if len(chars) != 3:
        raise DegenerateSystem(f"expected 3 characters, found {len(chars)}")
    return chars


def _verify_relations_rational(params: Rank3Params, x: Fraction, y: Fraction) -> None:
    k, l, m, n = params.as_tuple()
    assert x * x == 1 + m * x + k * y
    assert y * y == 1 + l * x + n * y
    assert x * y == k * x + l * y


def _verify_relations_modular(params: Rank3Params, minpoly: IntPoly, xr: QPoly, yr: QPoly) -> None:
    k, l, m, n = params.as_tuple()
    mq = minpoly.to_q()
    # y^2 - n y - l x - 1 == 0 (mod minpoly)
    lhs2 = qsub(qsub(qsub(qmul(yr, yr), qscale(yr, n)), qscale(xr, l)), qconst(1))
    assert not qmod(lhs2, mq), "second defining relation failed"
    # x y - k x - l y == 0 (mod minpoly)
    lhs3 = qsub(qsub(qmul(xr, yr), qscale(xr, k)), qscale(yr, l))
    assert not qmod(lhs3, mq), "third defining relation failed"


def fp_character(system: CharacterSystem) -> int:
    """Index of the everywhere-positive (dimension) character."""
    hits = [i for i, c in enumerate(system.chars) if c.is_positive]
    if len(hits) != 1:
        raise NoPositiveCharacter(f"{len(hits)} positive characters")
    return hits[0]


def galois_type(system: CharacterSystem) -> GaloisInfo:
    """Image of the rational Galois action permuting the three characters.

    Determined from the factorizations of the two characteristic cubics: an
    irreducible cubic contributes a 3-cycle (cyclic iff its discriminant is a
    perfect square, otherwise the full symmetric group); otherwise the values
    generate at most a quadratic extension.
    """
    if system.params is None:
        raise ValueError("galois_type applies to the self-dual family")
    chars = system.chars
    degrees = [max(c.x.degree, c.y.degree) for c in chars]
    maxdeg = max(degrees)
    if maxdeg == 1:
        return GaloisInfo(GaloisType.TRIVIAL, ((0,), (1,), (2,)))
    if maxdeg == 3:
        cubic = next(
            c.x.minpoly if c.x.degree == 3 else c.y.minpoly for c in chars if max(c.x.degree, c.y.degree) == 3
        )
        disc = cubic_discriminant(_monicize(cubic))
        tag = GaloisType.C3 if is_perfect_square(disc) else GaloisType.S3
        return GaloisInfo(tag, ((0, 1, 2),))
    # Quadratic case: the two conjugate characters form one orbit.
    irrational = tuple(i for i, c in enumerate(chars) if not c.all_rational)
    rational = tuple(i for i, c in enumerate(chars) if c.all_rational)
    assert len(irrational) == 2 and len(rational) == 1
    if 0 in rational:
        return GaloisInfo(GaloisType.C2_FIXING_FP, (rational, irrational))
    return GaloisInfo(GaloisType.C2_MOVING_FP, (irrational, rational))


def _monicize(p: IntPoly) -> IntPoly:
    if p.is_monic:
        return p
    raise ValueError("expected a monic minimal polynomial")


def vieta_products(system: CharacterSystem) -> tuple[Fraction, Fraction]:
    """Exact products of all x-values and all y-values, from the factored
    characteristic polynomials (product of roots of a monic cubic = -c0)."""
    if system.x_poly is None:
        raise ValueError("vieta_products applies to the self-dual family")
    px = -Fraction(system.x_poly.coeffs[0])
    py = -Fraction(system.y_poly.coeffs[0])
    return px, py
