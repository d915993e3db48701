"""Complex ball arithmetic with exact rational centers and radii.

Every operation is outward-rounded in the strong sense that the radius bound
is computed with exact rational arithmetic, so the true value of an expression
always lies inside the resulting ball.  Division never appears: callers invert
roots of unity by conjugation and compare products instead of quotients.
"""

from __future__ import annotations

from fractions import Fraction


class ComplexBall:
    """Disk { z : |z - (re + i*im)| <= rad } with rational data."""

    __slots__ = ("re", "im", "rad")

    def __init__(self, re, im, rad=0):
        self.re = Fraction(re)
        self.im = Fraction(im)
        self.rad = Fraction(rad)
        if self.rad < 0:
            raise ValueError("radius must be nonnegative")

    @staticmethod
    def from_rational(value) -> "ComplexBall":
        return ComplexBall(Fraction(value), 0, 0)

    @staticmethod
    def from_real_interval(lo: Fraction, hi: Fraction) -> "ComplexBall":
        return ComplexBall((lo + hi) / 2, 0, (hi - lo) / 2)

    def __add__(self, other: "ComplexBall") -> "ComplexBall":
        return ComplexBall(self.re + other.re, self.im + other.im, self.rad + other.rad)

    def __sub__(self, other: "ComplexBall") -> "ComplexBall":
        return ComplexBall(self.re - other.re, self.im - other.im, self.rad + other.rad)

    def __neg__(self) -> "ComplexBall":
        return ComplexBall(-self.re, -self.im, self.rad)

    def __mul__(self, other: "ComplexBall") -> "ComplexBall":
        re = self.re * other.re - self.im * other.im
        im = self.re * other.im + self.im * other.re
        # |c1| r2 + |c2| r1 + r1 r2 with the L1 overestimate of |c|.
        mag1 = abs(self.re) + abs(self.im)
        mag2 = abs(other.re) + abs(other.im)
        rad = mag1 * other.rad + mag2 * self.rad + self.rad * other.rad
        return ComplexBall(re, im, rad)

    def scale(self, c) -> "ComplexBall":
        c = Fraction(c)
        return ComplexBall(self.re * c, self.im * c, self.rad * abs(c))

    def conjugate(self) -> "ComplexBall":
        return ComplexBall(self.re, -self.im, self.rad)

    # -- magnitude queries ---------------------------------------------------

    def mag_upper(self) -> Fraction:
        """Upper bound on |z| for any z in the ball (L1 overestimate)."""
        return abs(self.re) + abs(self.im) + self.rad

    def definitely_nonzero(self) -> bool:
        """True only if every point of the ball is nonzero."""
        return max(abs(self.re), abs(self.im)) > self.rad

    def contains_zero_possibly(self) -> bool:
        return not self.definitely_nonzero()

    def center_distance(self, other: "ComplexBall") -> float:
        dre = float(self.re - other.re)
        dim = float(self.im - other.im)
        return (dre * dre + dim * dim) ** 0.5

    def center_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"ComplexBall({float(self.re):.6g}{float(self.im):+.6g}j, rad~{float(self.rad):.3g})"


def ball_det3(m: list[list[ComplexBall]]) -> ComplexBall:
    """Determinant of a 3x3 ball matrix by cofactor expansion."""
    def minor(r1, r2, c1, c2):
        return m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]

    return (
        m[0][0] * minor(1, 2, 1, 2)
        - m[0][1] * minor(1, 2, 0, 2)
        + m[0][2] * minor(1, 2, 0, 1)
    )
