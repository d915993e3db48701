"""S-matrices from candidate (dimension, twist) data, their structure
classification, and the search for ribbon-data witnesses.

Given a rank-3 ring with structure tensor N and duality *, a character d used
as candidate dimensions, and twists theta (roots of unity, unit twist 1), the
matrix is

    S[i][j] = theta_i^-1 theta_j^-1 * sum_k N[i*][j][k] theta_k d_k.

Numerics are two-tier: a vectorized floating scan proposes twist pairs, and
every candidate is then re-verified with exact cyclotomic arithmetic over the
character field.  A witness is admitted only if its structure class passes the
corresponding consistency rule:

- Symmetric (rank 1): the dimensions must be the everywhere-positive character
  with integer values and total squared dimension within the Landau bound for
  three classes, since a symmetric structure forces the ring to be the
  character ring of a finite group.
- Modular (nonzero determinant): the second Frobenius-Schur indicators
  computed from (N, d, theta) must be +-1 on self-dual elements and 0
  otherwise; this is the standard admissibility test for modular data and is
  what pins the twists beyond the S-matrix itself.
- Properly premodular (degenerate, rank 2): such data cannot be certified at
  this level and are reported only when `include_degenerate` is set; the
  dedicated non-modular ring filter covers that regime.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .characters import Character, CharacterSystem, solve_characters
from .exactnum import ComplexBall, CycloNum, RootOfUnity, ball_det3, lcm, two_cos
from .exactnum.cyclotomic import roots_of_unity_up_to
from .exactnum.qpoly import QPoly, qnormalize
from .fusion import FusionRing, Rank3Params, canonicalize

EXACT_PHI_CAP = 256  # largest cyclotomic degree for which exact certification runs
PRECISION_CAP_BITS = 4096  # ball precision cap before declaring Undecidable


class ZeroDimension(ValueError):
    """A candidate dimension is exactly zero."""


class Undecidable(RuntimeError):
    """Precision cap reached without an exact certificate."""


class StructureClass(enum.Enum):
    SYMMETRIC = "Symmetric"
    PROPER_PREMODULAR = "ProperPremodular"
    MODULAR = "Modular"


class Verdict(enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"
    NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class FilterVerdict:
    status: Verdict
    certificate: dict

    @property
    def passed(self) -> bool:
        return self.status == Verdict.PASS

    def to_json(self) -> dict:
        return {"status": self.status.value, "certificate": self.certificate}


@dataclass(frozen=True)
class Twists:
    """Twist tuple (roots of unity); index 0 is the unit object, twist 1."""

    theta: tuple[RootOfUnity, RootOfUnity, RootOfUnity]

    def __post_init__(self):
        if not self.theta[0].is_one:
            raise ValueError("the unit twist must be 1")

    @staticmethod
    def of(t1: RootOfUnity, t2: RootOfUnity) -> "Twists":
        return Twists((RootOfUnity.one(), t1, t2))

    def to_json(self) -> list[dict]:
        return [t.to_json() for t in self.theta]


@dataclass
class SMatrix:
    """3x3 ball-arithmetic S-matrix plus the data that generated it."""

    entries: tuple  # 3x3 tuple of ComplexBall
    ring: FusionRing
    dims: Character
    twists: Twists
    precision_bits: int

    def entry(self, i: int, j: int) -> ComplexBall:
        return self.entries[i][j]

    def max_radius(self) -> Fraction:
        return max(self.entries[i][j].rad for i in range(3) for j in range(3))

    def to_json(self) -> dict:
        return {
            "entries": [
                [
                    {
                        "re": _dec(self.entries[i][j].re),
                        "im": _dec(self.entries[i][j].im),
                        "radius": _dec(self.entries[i][j].rad),
                        "note": "approx",
                    }
                    for j in range(3)
                ]
                for i in range(3)
            ],
            "precision_bits": self.precision_bits,
        }


def _dec(x: Fraction) -> str:
    from .exactnum.realalg import decimal_str

    return decimal_str(x, 12) if x != 0 else "0"


@dataclass
class PremodularDatum:
    """A candidate premodular structure: dimensions, twists, S-matrix, class."""

    ring: FusionRing
    dims: Character
    dims_index: int
    twists: Twists
    smatrix: SMatrix
    structure_class: StructureClass
    certificate: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "dims": self.dims.to_json(),
            "dims_index": self.dims_index,
            "twists": self.twists.to_json(),
            "structure_class": self.structure_class.value,
            "smatrix": self.smatrix.to_json(),
            "certificate": self.certificate,
        }


# ---------------------------------------------------------------------------
# Ball S-matrix
# ---------------------------------------------------------------------------

def build_s_matrix(ring: FusionRing, dims: Character, twists: Twists,
                   precision_bits: int = 128) -> SMatrix:
    """Entrywise evaluation of the defining formula in ball arithmetic."""
    if not dims.nonzero():
        raise ZeroDimension("candidate dimensions contain an exact zero")
    theta_balls = [
        _root_ball(t, precision_bits) for t in twists.theta
    ]
    dim_balls = [dims.value_ball(j, precision_bits + 16) for j in range(3)]
    dual = ring.dual
    entries = []
    for i in range(3):
        row = []
        inv_i = theta_balls[i].conjugate()
        for j in range(3):
            inv_j = theta_balls[j].conjugate()
            acc = ComplexBall.from_rational(0)
            for k in range(3):
                coef = ring.N[dual[i]][j][k]
                if coef:
                    term = theta_balls[k] * dim_balls[k]
                    acc = acc + term.scale(coef)
            row.append(inv_i * inv_j * acc)
        entries.append(tuple(row))
    sm = SMatrix(tuple(entries), ring, dims, twists, precision_bits)
    # Unit-row identity: entry (0, j) equals d_j up to the ball radius.
    for j in range(3):
        assert (sm.entry(0, j) - dim_balls[j]).mag_upper() < Fraction(1, 2**(precision_bits // 2))
    return sm


def _root_ball(r: RootOfUnity, precision_bits: int) -> ComplexBall:
    from .exactnum import root_of_unity_value

    return root_of_unity_value(r, precision_bits + 16)


# ---------------------------------------------------------------------------
# Exact entries over Q(zeta_N) extended by the character field
# ---------------------------------------------------------------------------

class ExtNum:
    """Element of Q(zeta_n)[x]/(modulus), the exact house for S-matrix entries.

    `modulus` is the (monic) minimal polynomial of the character generator, or
    None when the character values are rational/cyclotomic.
    """

    __slots__ = ("n", "modulus", "coeffs")

    def __init__(self, n: int, modulus: Optional[QPoly], coeffs: tuple[CycloNum, ...]):
        self.n = n
        self.modulus = modulus
        deg = 1 if modulus is None else len(modulus) - 1
        cs = list(coeffs) + [CycloNum.from_rational(n, 0)] * (deg - len(coeffs))
        self.coeffs = tuple(cs[:deg])

    @staticmethod
    def from_cyclo(n: int, modulus: Optional[QPoly], c: CycloNum) -> "ExtNum":
        return ExtNum(n, modulus, (c,))

    @staticmethod
    def from_rational(n: int, modulus: Optional[QPoly], value) -> "ExtNum":
        return ExtNum(n, modulus, (CycloNum.from_rational(n, value),))

    @staticmethod
    def from_gen_poly(n: int, modulus: Optional[QPoly], rep: QPoly) -> "ExtNum":
        return ExtNum(
            n, modulus, tuple(CycloNum.from_rational(n, c) for c in rep)
        )

    def _zero(self) -> CycloNum:
        return CycloNum.from_rational(self.n, 0)

    def __add__(self, other: "ExtNum") -> "ExtNum":
        return ExtNum(
            self.n,
            self.modulus,
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __sub__(self, other: "ExtNum") -> "ExtNum":
        return ExtNum(
            self.n,
            self.modulus,
            tuple(a - b for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __neg__(self) -> "ExtNum":
        return ExtNum(self.n, self.modulus, tuple(-a for a in self.coeffs))

    def scale_cyclo(self, c: CycloNum) -> "ExtNum":
        return ExtNum(self.n, self.modulus, tuple(a * c for a in self.coeffs))

    def scale(self, r) -> "ExtNum":
        return ExtNum(self.n, self.modulus, tuple(a.scale(r) for a in self.coeffs))

    def __mul__(self, other: "ExtNum") -> "ExtNum":
        da, db = len(self.coeffs), len(other.coeffs)
        prod = [self._zero() for _ in range(da + db - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                prod[i + j] = prod[i + j] + a * b
        deg = 1 if self.modulus is None else len(self.modulus) - 1
        if self.modulus is not None:
            # Reduce modulo the monic modulus.
            for d in range(len(prod) - 1, deg - 1, -1):
                lead = prod[d]
                if lead.is_zero:
                    continue
                for t in range(deg):
                    prod[d - deg + t] = prod[d - deg + t] - lead.scale(self.modulus[t])
                prod[d] = self._zero()
        return ExtNum(self.n, self.modulus, tuple(prod[:deg]))

    @property
    def is_zero_in_tensor_ring(self) -> bool:
        """Zero on the nose in Q(zeta_n)[x]/(modulus).  Sufficient but not
        necessary for the value to vanish: the character field may meet the
        cyclotomic field (e.g. sqrt(2) lies in the 8th cyclotomic field), so a
        vanishing value can have a nonzero tensor representative."""
        return all(c.is_zero for c in self.coeffs)

    def __hash__(self):
        raise TypeError("ExtNum is unhashable")


# -- polynomials with CycloNum coefficients (lowest degree first) -----------

def _cpoly_trim(p: list[CycloNum]) -> list[CycloNum]:
    while p and p[-1].is_zero:
        p.pop()
    return p


def _cpoly_rem(a: list[CycloNum], b: list[CycloNum]) -> list[CycloNum]:
    rem = _cpoly_trim(list(a))
    b = _cpoly_trim(list(b))
    inv_lead = b[-1].inverse()
    db = len(b) - 1
    while rem and len(rem) - 1 >= db:
        factor = rem[-1] * inv_lead
        shift = len(rem) - 1 - db
        for i, c in enumerate(b):
            rem[shift + i] = rem[shift + i] - factor * c
        rem.pop()
        _cpoly_trim(rem)
    return rem


def _cpoly_gcd(a: list[CycloNum], b: list[CycloNum]) -> list[CycloNum]:
    x, y = _cpoly_trim(list(a)), _cpoly_trim(list(b))
    while y:
        x, y = y, _cpoly_rem(x, y)
    if x:
        inv = x[-1].inverse()
        x = [c * inv for c in x]
    return x


def _cpoly_exact_div(a: list[CycloNum], b: list[CycloNum]) -> list[CycloNum]:
    rem = _cpoly_trim(list(a))
    b = _cpoly_trim(list(b))
    inv_lead = b[-1].inverse()
    db = len(b) - 1
    zero = CycloNum.from_rational(b[-1].n, 0)
    quot = [zero] * max(len(rem) - db, 1)
    while rem and len(rem) - 1 >= db:
        factor = rem[-1] * inv_lead
        shift = len(rem) - 1 - db
        quot[shift] = factor
        for i, c in enumerate(b):
            rem[shift + i] = rem[shift + i] - factor * c
        rem.pop()
        _cpoly_trim(rem)
    assert not rem, "division was not exact"
    return quot


class ExactContext:
    """Exact S-matrix entries for one (ring, dims, twists) datum."""

    def __init__(self, ring: FusionRing, dims: Character, twists: Twists):
        n = ambient_cyclotomic_order(dims, twists)
        self.n = n
        self.phi_degree = euler_phi(n)
        modulus: Optional[QPoly] = None
        if dims.gen is not None:
            modulus = tuple(
                Fraction(c, dims.gen.minpoly.leading) for c in dims.gen.minpoly.coeffs
            )
        self.modulus = modulus
        self.gen = dims.gen
        self.ring = ring
        self.dims = dims
        self.twists = twists
        self.theta = [
            ExtNum.from_cyclo(n, modulus, CycloNum.from_root(t, n)) for t in twists.theta
        ]
        self.theta_inv = [
            ExtNum.from_cyclo(n, modulus, CycloNum.from_root(t.inverse(), n))
            for t in twists.theta
        ]
        self.d = [self._dim_value(j) for j in range(3)]
        self.entries = self._build_entries()

    def _dim_value(self, j: int) -> ExtNum:
        if j == 0:
            return ExtNum.from_rational(self.n, self.modulus, 1)
        if self.dims.is_cyclotomic:
            root = self.dims.x if j == 1 else self.dims.y
            return ExtNum.from_cyclo(self.n, self.modulus, CycloNum.from_root(root, self.n))
        rep = self.dims.x_rep if j == 1 else self.dims.y_rep
        if self.dims.gen is None:
            return ExtNum.from_rational(self.n, self.modulus, qnormalize(rep)[0] if rep else 0)
        return ExtNum.from_gen_poly(self.n, self.modulus, rep)

    def _build_entries(self):
        dual = self.ring.dual
        out = []
        for i in range(3):
            row = []
            for j in range(3):
                acc = ExtNum.from_rational(self.n, self.modulus, 0)
                for k in range(3):
                    coef = self.ring.N[dual[i]][j][k]
                    if coef:
                        acc = acc + (self.theta[k] * self.d[k]).scale(coef)
                row.append(self.theta_inv[i] * self.theta_inv[j] * acc)
            out.append(row)
        return out

    # -- faithful zero test --------------------------------------------------

    def _is_zero(self, elem: ExtNum) -> bool:
        """Whether the represented value vanishes in the actual number field.

        The tensor representation Q(zeta_n)[x]/(modulus) can be larger than
        the field Q(zeta_n, alpha) when the character field meets the
        cyclotomic one, so a nonzero representative is re-tested: the value is
        g(alpha) for g over Q(zeta_n); it vanishes iff alpha is a root of
        gcd(g, modulus), which is decided by certified enclosures of the two
        complementary factors (alpha is a simple root of the modulus, so
        exactly one factor separates from zero).
        """
        if elem.is_zero_in_tensor_ring:
            return True
        if self.modulus is None:
            return False
        g = _cpoly_trim(list(elem.coeffs))
        if len(g) == 1:
            return False
        m = [CycloNum.from_rational(self.n, c) for c in self.modulus]
        h = _cpoly_gcd(g, m)
        if len(h) <= 1:
            return False
        if len(h) == len(m):
            return True
        h2 = _cpoly_exact_div(m, h)
        prec = 96
        while prec <= PRECISION_CAP_BITS:
            bh = self._eval_cpoly_ball(h, prec)
            if bh.definitely_nonzero():
                return False
            bh2 = self._eval_cpoly_ball(h2, prec)
            if bh2.definitely_nonzero():
                return True
            prec *= 2
        raise Undecidable("zero test did not separate at the precision cap")

    def _eval_cpoly_ball(self, poly, prec: int) -> ComplexBall:
        self.gen.refine_to(Fraction(1, 2**prec))
        ab = ComplexBall.from_real_interval(*self.gen.interval())
        acc = ComplexBall.from_rational(0)
        for c in reversed(poly):
            acc = acc * ab + c.ball(prec)
        return acc

    # -- exact checks -----------------------------------------------------

    def is_symmetric(self) -> bool:
        e = self.entries
        return all(
            self._is_zero(e[i][j] - e[j][i]) for i in range(3) for j in range(i + 1, 3)
        )

    def unit_row_ok(self) -> bool:
        return all(self._is_zero(self.entries[0][j] - self.d[j]) for j in range(3))

    def rows_are_characters(self) -> bool:
        """Row i over d_i satisfies the defining relations of the ring,
        verified after clearing denominators."""
        N = self.ring.N
        for i in range(3):
            di = self.d[i]
            e = self.entries[i]
            if not self._is_zero(e[0] - di):
                return False
            for a, b in ((1, 1), (1, 2), (2, 2)):
                lhs = e[a] * e[b]
                rhs = (di * di).scale(N[a][b][0])
                rhs = rhs + (di * e[1]).scale(N[a][b][1])
                rhs = rhs + (di * e[2]).scale(N[a][b][2])
                if not self._is_zero(lhs - rhs):
                    return False
        return True

    def det(self) -> ExtNum:
        e = self.entries

        def minor(r1, r2, c1, c2):
            return e[r1][c1] * e[r2][c2] - e[r1][c2] * e[r2][c1]

        return (
            e[0][0] * minor(1, 2, 1, 2)
            - e[0][1] * minor(1, 2, 0, 2)
            + e[0][2] * minor(1, 2, 0, 1)
        )

    def rank_is_one(self) -> bool:
        e = self.entries
        for r1 in range(3):
            for r2 in range(r1 + 1, 3):
                for c1 in range(3):
                    for c2 in range(c1 + 1, 3):
                        m = e[r1][c1] * e[r2][c2] - e[r1][c2] * e[r2][c1]
                        if not self._is_zero(m):
                            return False
        return True

    def structure_class(self) -> StructureClass:
        if not self._is_zero(self.det()):
            return StructureClass.MODULAR
        if self.rank_is_one():
            return StructureClass.SYMMETRIC
        return StructureClass.PROPER_PREMODULAR

    # -- second Frobenius-Schur indicators ---------------------------------

    def global_dim_sq(self) -> ExtNum:
        acc = ExtNum.from_rational(self.n, self.modulus, 0)
        for j in range(3):
            acc = acc + self.d[j] * self.d[j]
        return acc

    def fs_indicator_sums(self) -> list[ExtNum]:
        """A_k = sum_{i,j} N[i][j][k] d_i d_j (theta_i / theta_j)^2 for each k;
        an admissible modular datum has A_k = nu_k * D^2 with nu_k in {0,+-1}."""
        ratios = [[None] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                r = (self.twists.theta[i] * self.twists.theta[j].inverse()) ** 2
                ratios[i][j] = ExtNum.from_cyclo(
                    self.n, self.modulus, CycloNum.from_root(r, self.n)
                )
        out = []
        for k in range(3):
            acc = ExtNum.from_rational(self.n, self.modulus, 0)
            for i in range(3):
                for j in range(3):
                    coef = self.ring.N[i][j][k]
                    if coef:
                        acc = acc + (self.d[i] * self.d[j] * ratios[i][j]).scale(coef)
            out.append(acc)
        return out

    def fs_indicators(self) -> Optional[list[int]]:
        """Exact indicators [nu_0, nu_1, nu_2] if each A_k is 0 or +-D^2 with
        the duality pattern (unit +1, self-dual +-1, non-self-dual 0); None if
        the datum is not admissible as modular data."""
        d2 = self.global_dim_sq()
        if self._is_zero(d2):
            return None
        sums = self.fs_indicator_sums()
        out = []
        for k in range(3):
            allowed = [1] if k == 0 else ([1, -1] if self.ring.dual[k] == k else [0])
            hit = None
            for nu in allowed:
                if self._is_zero(sums[k] - d2.scale(nu)):
                    hit = nu
                    break
            if hit is None:
                return None
            out.append(hit)
        return out


def euler_phi(n: int) -> int:
    out = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            out -= out // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out -= out // m
    return out


def ambient_cyclotomic_order(dims: Character, twists: Twists) -> int:
    n = lcm(*(t.q for t in twists.theta))
    if dims.is_cyclotomic:
        n = lcm(n, 3)
    return n


# ---------------------------------------------------------------------------
# Classification and row verification
# ---------------------------------------------------------------------------

def classify_s_matrix(s: SMatrix) -> StructureClass:
    """Symmetric / ProperPremodular / Modular, with certified decisions.

    The determinant ball decides modularity when it excludes zero; degenerate
    cases escalate to exact cyclotomic arithmetic.  Raises Undecidable only if
    the exact route is out of reach (cyclotomic degree beyond the cap).
    """
    det = ball_det3([[s.entry(i, j) for j in range(3)] for i in range(3)])
    if det.definitely_nonzero():
        return StructureClass.MODULAR
    ctx = ExactContext(s.ring, s.dims, s.twists)
    if ctx.phi_degree > EXACT_PHI_CAP:
        raise Undecidable(
            "determinant ball straddles zero and the exact field is too large"
        )
    return ctx.structure_class()


def verify_row_characters(s: SMatrix, dims: Character, system: CharacterSystem,
                          tol: float) -> bool:
    """True iff every row i of S, divided by d_i, matches some character of
    the system within tol (compared at ball centers)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    for i in range(3):
        di = dims.value_ball(i, s.precision_bits)
        row_ok = False
        for char in system.chars:
            err = 0.0
            for j in range(3):
                target = di * char.value_ball(j, s.precision_bits)
                err = max(err, s.entry(i, j).center_distance(target))
            if err <= tol:
                row_ok = True
                break
        if not row_ok:
            return False
    return True


# ---------------------------------------------------------------------------
# Witness search
# ---------------------------------------------------------------------------

def search_ribbon_data(
    ring: FusionRing,
    max_twist_order: int,
    tol: float = 1e-9,
    precision_bits: int = 128,
    include_degenerate: bool = False,
    threads: int | None = None,
) -> list[PremodularDatum]:
    """All admissible (dimension character, twist pair) data with twist orders
    up to `max_twist_order`, deterministically ordered.

    The scan accepts a pair when the S-matrix is symmetric and every row is a
    character within `tol`; each candidate is then re-verified exactly and
    must pass its structure-class consistency rule (see module docstring).
    Degenerate (properly premodular) candidates are returned only when
    `include_degenerate` is set.
    """
    if max_twist_order < 1:
        raise ValueError("max_twist_order must be >= 1")
    system = solve_characters(ring)
    roots = roots_of_unity_up_to(max_twist_order)
    root_values = np.array([r.complex_approx() for r in roots])
    witnesses: list[PremodularDatum] = []
    for dims_index, dims in enumerate(system.chars):
        if not dims.nonzero():
            continue
        pairs = _scan_twist_grid(ring, system, dims, root_values, tol, threads)
        for a, b in pairs:
            datum = _certify_candidate(
                ring, system, dims, dims_index,
                Twists.of(roots[a], roots[b]),
                tol, precision_bits, include_degenerate,
            )
            if datum is not None:
                witnesses.append(datum)
    witnesses.sort(
        key=lambda w: (w.dims_index, w.twists.theta[1].turn, w.twists.theta[2].turn)
    )
    return witnesses


def _scan_twist_grid(ring, system, dims, root_values, tol, threads,
                     chunk: int = 256) -> list[tuple[int, int]]:
    """Vectorized floating filter over the twist grid.

    Keeps pairs that look symmetric and row-characterlike within tol, and that
    either look degenerate (det ~ 0) or pass the floating Frobenius-Schur
    screen; exact verification later redoes everything rigorously.
    """
    dual = ring.dual
    nt = ring.N
    d = np.array([dims.value_complex(j) for j in range(3)])
    chars = [
        np.array([c.value_complex(j) for j in range(3)]) for c in system.chars
    ]
    u = root_values
    size = len(u)
    d2_scalar = complex((d * d).sum())
    fs_allowed = [
        [1] if k == 0 else ([1, -1] if dual[k] == k else [0]) for k in range(3)
    ]

    def process(start: int) -> list[tuple[int, int]]:
        A = u[start:start + chunk][:, None]
        B = u[None, :]
        t = [np.ones_like(A * B), A * d[1], B * d[2]]
        inv = [np.ones_like(A * B), np.conj(A) + 0 * B, np.conj(B) + 0 * A]
        S = [[None] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                acc = 0
                for k in range(3):
                    coef = nt[dual[i]][j][k]
                    if coef:
                        acc = acc + coef * t[k]
                S[i][j] = inv[i] * inv[j] * acc
        mask = np.ones(S[0][0].shape, dtype=bool)
        for i in range(3):
            for j in range(i + 1, 3):
                mask &= np.abs(S[i][j] - S[j][i]) <= tol
        for i in (1, 2):
            best = None
            for c in chars:
                err = np.abs(S[i][0] - d[i] * c[0])
                err = np.maximum(err, np.abs(S[i][1] - d[i] * c[1]))
                err = np.maximum(err, np.abs(S[i][2] - d[i] * c[2]))
                best = err if best is None else np.minimum(best, err)
            mask &= best <= tol
        if not mask.any():
            return []
        det = (
            S[0][0] * (S[1][1] * S[2][2] - S[1][2] * S[2][1])
            - S[0][1] * (S[1][0] * S[2][2] - S[1][2] * S[2][0])
            + S[0][2] * (S[1][0] * S[2][1] - S[1][1] * S[2][0])
        )
        degenerate = np.abs(det) <= 1e-6
        ratio2 = [[None] * 3 for _ in range(3)]
        th = [np.ones_like(A * B), A + 0 * B, B + 0 * A]
        for i in range(3):
            for j in range(3):
                ratio2[i][j] = (th[i] * np.conj(th[j])) ** 2
        fs_ok = np.ones_like(mask)
        for k in range(3):
            acc = 0
            for i in range(3):
                for j in range(3):
                    coef = nt[i][j][k]
                    if coef:
                        acc = acc + coef * (d[i] * d[j]) * ratio2[i][j]
            k_ok = np.zeros_like(mask)
            for nu in fs_allowed[k]:
                k_ok |= np.abs(acc - nu * d2_scalar) <= 1e-6 * max(1.0, abs(d2_scalar))
            fs_ok &= k_ok
        mask &= degenerate | fs_ok
        rows, cols = np.nonzero(mask)
        return [(start + int(r), int(c)) for r, c in zip(rows, cols)]

    starts = list(range(0, size, chunk))
    if threads and threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(process, starts))
    else:
        chunks = [process(s) for s in starts]
    out: list[tuple[int, int]] = []
    for c in chunks:
        out.extend(c)
    return out


def _certify_candidate(ring, system, dims, dims_index, twists, tol,
                       precision_bits, include_degenerate) -> Optional[PremodularDatum]:
    """Exact verification and class-consistency rules for one scan survivor."""
    certificate: dict = {}
    exact = euler_phi(ambient_cyclotomic_order(dims, twists)) <= EXACT_PHI_CAP
    ctx = None
    if exact:
        ctx = ExactContext(ring, dims, twists)
        if not (ctx.is_symmetric() and ctx.unit_row_ok() and ctx.rows_are_characters()):
            return None
        certificate["verification"] = "exact"
        sclass = ctx.structure_class()
    else:
        sm = build_s_matrix(ring, dims, twists, max(precision_bits, 256))
        if not verify_row_characters(sm, dims, system, tol):
            return None
        certificate["verification"] = f"ball(tol={tol})"
        try:
            sclass = classify_s_matrix(sm)
        except Undecidable:
            return None

    if sclass == StructureClass.SYMMETRIC:
        ok, sym_cert = _symmetric_admissible(system, dims, dims_index)
        certificate["symmetric_rule"] = sym_cert
        if not ok:
            return None
    elif sclass == StructureClass.MODULAR:
        fs = ctx.fs_indicators() if ctx is not None else None
        if fs is None:
            certificate["fs_indicators"] = None
            return None
        certificate["fs_indicators"] = fs
    else:
        if not include_degenerate:
            return None
        certificate["degenerate_rule"] = _degenerate_certificate(ring, dims, twists)

    sm = build_s_matrix(ring, dims, twists, precision_bits)
    return PremodularDatum(
        ring=ring,
        dims=dims,
        dims_index=dims_index,
        twists=twists,
        smatrix=sm,
        structure_class=sclass,
        certificate=certificate,
    )


def _symmetric_admissible(system, dims, dims_index) -> tuple[bool, dict]:
    """Rank-1 data must look like a finite-group character ring: dimension
    character positive with integer values and total squared dimension at
    most 6 (the Landau bound for three classes)."""
    cert: dict = {}
    if dims.is_cyclotomic:
        ok = dims_index == 0
        cert["dims_integer"] = ok
        cert["global_dim"] = 3
        return ok, cert
    if dims_index != 0 or not dims.is_positive:
        cert["dims_positive"] = False
        return False, cert
    if not (dims.x.is_integer and dims.y.is_integer):
        cert["dims_integer"] = False
        cert["nonintegral_value"] = dims.y.approx_str(12) if not dims.y.is_integer else dims.x.approx_str(12)
        return False, cert
    dx = dims.x.rational_value
    dy = dims.y.rational_value
    total = 1 + dx * dx + dy * dy
    cert["dims_integer"] = True
    cert["global_dim"] = str(total)
    if total > 6:
        cert["landau_bound"] = 6
        return False, cert
    return True, cert


def _degenerate_certificate(ring, dims, twists) -> dict:
    """For rings of canonical shape (0,1,0,n), record whether the degenerate
    datum satisfies the exact twist relation n*d_Y = -2*(theta_Y+theta_Y^-1),
    where Y is the element outside the two-object symmetric subring."""
    cert: dict = {"checked": False}
    params = ring.params
    if params is None:
        return cert
    canon = canonicalize(params)
    if (canon.k, canon.l, canon.m) != (0, 1, 0):
        return cert
    n = canon.n
    if params.k == 0:
        d_val, theta = dims.y, twists.theta[2]
    else:  # swapped orientation (1, 0, n, 0)
        d_val, theta = dims.x, twists.theta[1]
    target = theta.real_two_cos()  # theta + theta^-1
    lhs_needed = _scaled_value(d_val, Fraction(-n, 2))
    cert["checked"] = True
    cert["relation_holds"] = bool(lhs_needed == target)
    cert["theta_turn"] = str(theta.turn)
    return cert


def _scaled_value(v, c: Fraction):
    from .exactnum.qpoly import X, qscale
    from .exactnum.realalg import from_poly_expr

    if v.is_rational:
        from .exactnum import RealAlgebraic

        return RealAlgebraic.from_rational(v.rational_value * c)
    return from_poly_expr(v, qscale(X, c))


def symmetric_witness(ring: FusionRing, system: CharacterSystem,
                      precision_bits: int = 128) -> Optional[PremodularDatum]:
    """The all-twists-1 datum on the dimension character, if it verifies as a
    rank-1 (symmetric-class) matrix; exact certificate included."""
    dims = system.chars[0]
    if not dims.nonzero():
        return None
    twists = Twists.of(RootOfUnity.one(), RootOfUnity.one())
    ctx = ExactContext(ring, dims, twists)
    if not (ctx.is_symmetric() and ctx.rows_are_characters() and ctx.rank_is_one()):
        return None
    return PremodularDatum(
        ring=ring,
        dims=dims,
        dims_index=0,
        twists=twists,
        smatrix=build_s_matrix(ring, dims, twists, precision_bits),
        structure_class=StructureClass.SYMMETRIC,
        certificate={"verification": "exact", "rank": 1},
    )


# ---------------------------------------------------------------------------
# Non-modular, non-symmetric filter
# ---------------------------------------------------------------------------

def nonmodular_filter(params: Rank3Params, system: CharacterSystem | None = None,
                      max_cos_order: int = 60) -> FilterVerdict:
    """Necessary conditions for a degenerate, non-symmetric structure.

    Applies only to rings whose canonical form is (0, 1, 0, n) -- the shape
    forced by a two-object symmetric subring.  Passing requires n*y_+ <= 4 for
    the positive root y_+ of y^2 = 2 + n*y, together with a root of unity
    theta satisfying n*d_Y = -2*(theta + theta^-1) for some root d_Y; both
    checks are exact (minimal-polynomial comparison for the 2cos values).
    """
    canon = canonicalize(params)
    if (canon.k, canon.l, canon.m) != (0, 1, 0):
        return FilterVerdict(Verdict.NOT_APPLICABLE, {"reason": "ring has no two-object symmetric subring shape"})
    n = canon.n
    from .exactnum import IntPoly, isolate_real_roots

    ypoly = IntPoly((-2, -n, 1))
    yroots = [r.value for r in isolate_real_roots(ypoly, Fraction(1, 1 << 20))]
    y_plus = yroots[-1]
    cert: dict = {"n": n, "y_plus": y_plus.approx_str(12)}
    if n > 0 and not (y_plus <= Fraction(4, n)):
        cert["violated"] = f"n*y_+ = {_scaled_value(y_plus, Fraction(n)).approx_str(12)} > 4"
        return FilterVerdict(Verdict.FAIL, cert)
    witness = None
    for d_y in yroots:
        if d_y.is_zero:
            continue
        target = _scaled_value(d_y, Fraction(-n, 2))
        hit = _match_two_cos(target, max_cos_order)
        if hit is not None:
            witness = {"d_Y": d_y.approx_str(12), "theta_turn": str(hit.turn)}
            break
    if witness is None:
        cert["violated"] = "no root of unity satisfies n*d_Y = -2*(theta+theta^-1)"
        return FilterVerdict(Verdict.FAIL, cert)
    cert["witness"] = witness
    return FilterVerdict(Verdict.PASS, cert)


def _match_two_cos(value, max_order: int) -> Optional[RootOfUnity]:
    """Exact search for a reduced turn p/q, q <= max_order, with
    2cos(2*pi*p/q) equal to the given real algebraic number."""
    import math

    if value < Fraction(-2) or value > Fraction(2):
        return None
    deg = value.degree
    for q in range(1, max_order + 1):
        from .exactnum.cyclotomic import cos_minimal_poly

        if cos_minimal_poly(q).degree != deg:
            continue
        for p in range(1, q // 2 + 1):
            if math.gcd(p, q) != 1:
                continue
            if two_cos(Fraction(p, q)) == value:
                return RootOfUnity(p, q)
        if q <= 2 and two_cos(Fraction(0, 1) if q == 1 else Fraction(1, 2)) == value:
            return RootOfUnity(0, 1) if q == 1 else RootOfUnity(1, 2)
    return None
