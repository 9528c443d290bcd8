"""Classification of symmetric periods.

A quadratic surd's period is a cyclic palindrome exactly when one of four
trace/norm conditions holds for some equivalent surd omega:

    (a)  omega + conjugate = 0        (even center)
    (b)  omega + conjugate = 1        (odd center)
    (c)  omega * conjugate = 1        (odd center; equivalent to (b))
    (d)  omega * conjugate = -1       (gap center)

Each flag is certified constructively: the period word is rotated so the
center sits at letter 0, a seed edge specific to the case is extended by
the vertex recurrence over two periods, and omega is the expanding fixed
slope of the resulting period map.  An involution exchanging the two cone
lines is attached as the certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterator, Mapping

from .arith import QuadraticSurd, UnimodularMatrix, sqrt_of
from .cfrac import PeriodicCF, expand, serret_equivalent
from .errors import (
    IncompatibleCenter,
    InternalInvariantError,
    ShapeViolation,
)
from .geometry import LatticePoint, det2, fixed_line_surds
from .symmetry import Center, CenterKind, CyclicWord, centers, is_regular_palindrome, shape_decompose

_KIND_FLAGS = {
    CenterKind.EVEN_ELEMENT: ("a",),
    CenterKind.ODD_ELEMENT: ("b", "c"),
    CenterKind.GAP: ("d",),
}

_FLAG_KIND = {
    "a": CenterKind.EVEN_ELEMENT,
    "b": CenterKind.ODD_ELEMENT,
    "c": CenterKind.ODD_ELEMENT,
    "d": CenterKind.GAP,
}

# involutions exchanging the two cone lines in each case
_CERTIFICATES = {
    "a": UnimodularMatrix(1, 0, 0, -1),
    "b": UnimodularMatrix(1, 0, 1, -1),
    "c": UnimodularMatrix(0, 1, 1, 0),
    "d": UnimodularMatrix(0, -1, 1, 0),
}


@dataclass(frozen=True)
class Witness:
    """Equivalent surd realizing one criterion case, with its certificate."""

    omega: QuadraticSurd
    certificate: UnimodularMatrix
    period_map: UnimodularMatrix

    def to_json(self) -> dict:
        return {
            "omega": str(self.omega),
            "trace": str(self.omega.trace()),
            "norm": str(self.omega.norm()),
            "certificate": [list(r) for r in self.certificate.rows()],
            "period_map": [list(r) for r in self.period_map.rows()],
        }


@dataclass(frozen=True)
class Classification:
    surd: QuadraticSurd
    cf: PeriodicCF
    centers: tuple[Center, ...]
    flags: frozenset[str]
    witnesses: Mapping[str, Witness]

    def to_json(self) -> dict:
        return {
            "surd": str(self.surd),
            "preperiod": list(self.cf.preperiod),
            "period": list(self.cf.period),
            "flags": sorted(self.flags),
            "centers": [c.to_json() for c in self.centers],
            "witnesses": {f: w.to_json() for f, w in sorted(self.witnesses.items())},
        }


def _seed_edge(flag: str, a0: int) -> tuple[LatticePoint, LatticePoint]:
    """Seed vertices v_{-2}, v_0 putting the symmetry axis through letter 0."""
    if flag == "a":
        if a0 % 2:
            raise IncompatibleCenter(f"case (a) needs an even center letter, got {a0}")
        h = a0 // 2
        return LatticePoint(1, -h), LatticePoint(1, h)
    if flag in ("b", "c"):
        if a0 % 2 == 0:
            raise IncompatibleCenter(f"case ({flag}) needs an odd center letter, got {a0}")
        lo, hi = (1 - a0) // 2, (1 + a0) // 2
        if flag == "b":
            return LatticePoint(1, lo), LatticePoint(1, hi)
        return LatticePoint(hi, lo), LatticePoint(lo, hi)
    return LatticePoint(1, 0), LatticePoint(1, a0)


def _period_map(word: tuple[int, ...], v_m2: LatticePoint, v_0: LatticePoint) -> UnimodularMatrix:
    """Matrix sending (v_{-2}, v_{-1}) to (v_{2t-2}, v_{2t-1}) along the chain."""
    t = len(word)
    a0 = word[0]
    diff = v_0 - v_m2
    v_m1 = LatticePoint(diff.x // a0, diff.y // a0)
    if v_m1.scaled(a0) != diff or abs(det2(v_m2, v_m1)) != 1:
        raise InternalInvariantError(f"bad seed edge {v_m2}..{v_0} for letter {a0}")
    prev2, prev1 = v_m2, v_m1
    cur = v_0
    for k in range(1, 2 * t):
        prev2, prev1 = prev1, cur
        cur = prev2 + prev1.scaled(word[k % t])
    # columns: M (v_{-2} | v_{-1}) = (v_{2t-2} | v_{2t-1})
    seed = UnimodularMatrix(v_m2.x, v_m1.x, v_m2.y, v_m1.y)
    image = UnimodularMatrix(prev1.x, cur.x, prev1.y, cur.y)
    return image @ seed.inverse()


def witness(alpha: QuadraticSurd, flag: str, center: Center) -> Witness:
    """Construct the equivalent surd certifying one flag from its center.

    The period word of alpha is rotated so the fixed letter of the center is
    letter 0 (for a gap center, the gap falls just before letter 0); the
    case's seed edge is extended over two periods; omega is the expanding
    fixed slope of the resulting period map.  The defining equation, the
    equivalence with alpha, and the line-exchanging certificate are all
    verified exactly.
    """
    if flag not in _FLAG_KIND:
        raise ValueError(f"unknown flag {flag!r}")
    if _FLAG_KIND[flag] is not center.kind:
        raise IncompatibleCenter(f"flag {flag!r} is incompatible with {center.kind.value} center")
    word = CyclicWord(expand(alpha).period)
    offset = center.position if center.kind is not CenterKind.GAP else center.position + 1
    rot = word.rotated(offset)
    v_m2, v_0 = _seed_edge(flag, rot[0])
    m = _period_map(rot, v_m2, v_0)
    omega, _contracting = fixed_line_surds(m)

    trace, norm = omega.trace_norm()
    expected = {
        "a": trace == 0,
        "b": trace == 1,
        "c": norm == 1,
        "d": norm == -1,
    }[flag]
    if not expected:
        raise InternalInvariantError(
            f"witness for ({flag}) has trace {trace}, norm {norm}: {omega}"
        )
    if not serret_equivalent(alpha, omega):
        raise InternalInvariantError(f"witness {omega} is not equivalent to {alpha}")
    cert = _CERTIFICATES[flag]
    if cert.act_on_slope(omega) != omega.conjugate():
        raise InternalInvariantError(f"certificate for ({flag}) does not exchange the cone lines")
    return Witness(omega, cert, m)


def classify(alpha: QuadraticSurd) -> Classification:
    """Centers, criterion flags, and witnesses of a surd's period word."""
    cf = expand(alpha)
    word = CyclicWord(cf.period)
    axis_list = tuple(centers(word))
    flags: set[str] = set()
    witnesses: dict[str, Witness] = {}
    for center in axis_list:
        for flag in _KIND_FLAGS[center.kind]:
            if flag not in witnesses:  # first center of each kind decides
                flags.add(flag)
                witnesses[flag] = witness(alpha, flag, center)
    return Classification(alpha, cf, axis_list, frozenset(flags), witnesses)


def shape_oracle(alpha: QuadraticSurd) -> frozenset[str]:
    """Flags {a, b, d} read off the period's shape alone.

    A rotation that is a regular palindrome gives d; a palindrome plus one
    even letter gives a; a palindrome plus one odd letter gives b.  This is
    an independent derivation that must agree with classify() on {a, b, d}.
    """
    word = CyclicWord(expand(alpha).period)
    shape = shape_decompose(word)
    flags = set()
    if shape.regular_rotation is not None:
        flags.add("d")
    if shape.even_extra is not None:
        flags.add("a")
    if shape.odd_extra is not None:
        flags.add("b")
    return frozenset(flags)


def sqrt_shape_check(r) -> bool:
    """Verify the expansion shape of sqrt(r) for rational r > 1, not a square.

    The expansion must be a one-letter preperiod [n] followed by a period
    whose last letter is 2n and whose other letters form a regular
    palindrome.  Raises ShapeViolation if the law fails (it never should).
    """
    r = Fraction(r)
    if r <= 1:
        raise ValueError("need r > 1")
    root = sqrt_of(r)  # raises RationalValue when r is a square
    cf = expand(root)
    head, period = cf.preperiod, cf.period
    ok = (
        len(head) == 1
        and period[-1] == 2 * head[0]
        and (len(period) == 1 or is_regular_palindrome(period[:-1]))
    )
    if not ok:
        raise ShapeViolation(f"sqrt({r}) expands to {cf}")
    return True


def unit_period_check(q: int) -> bool:
    """Verify the single- and double-letter period families of quadratic units.

    The larger root of x^2 - q*x - 1 must expand to the pure period (q); the
    larger root of x^2 - (q+2)*x + 1, shifted down by 1, must expand to the
    pure period (q, 1) -- which collapses to (1) when q = 1.
    """
    if q < 1:
        raise ValueError("need q >= 1")
    single = expand(QuadraticSurd.from_root(1, -q, -1))
    if single != PeriodicCF((), (q,)):
        return False
    shifted = expand(QuadraticSurd.from_root(1, -(q + 2), 1) - 1)
    want = PeriodicCF((), (1,)) if q == 1 else PeriodicCF((), (q, 1))
    return shifted == want


def iter_reduced_surds(max_disc: int) -> Iterator[tuple[int, QuadraticSurd]]:
    """All canonical reduced surds of discriminant <= max_disc, as (disc, surd).

    Enumerates primitive triples (A, B, C) with A >= 1 and the larger root
    reduced; the bounds A < sqrt(disc) and -sqrt(disc) < B < 0 with
    C = (B^2 - disc)/(4A) are provable consequences of reducedness, and the
    exact is_reduced filter has the final say.
    """
    for disc in range(5, max_disc + 1):
        if disc % 4 not in (0, 1):
            continue
        s = isqrt(disc)
        if s * s == disc:
            continue
        for qa in range(1, s + 1):
            for babs in range(1, s + 1):
                qb = -babs
                num = qb * qb - disc
                if num % (4 * qa):
                    continue
                qc = num // (4 * qa)
                if gcd(qa, qb, qc) != 1:
                    continue
                alpha = QuadraticSurd(-qb, 1, 2 * qa, disc)
                if alpha.is_reduced():
                    yield disc, alpha
