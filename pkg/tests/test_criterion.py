import json
from fractions import Fraction

import pytest

from surd_sails.arith import QuadraticSurd, UnimodularMatrix, sqrt_of
from surd_sails.cfrac import PeriodicCF, expand, serret_equivalent, value
from surd_sails.criterion import (
    classify,
    iter_reduced_surds,
    shape_oracle,
    sqrt_shape_check,
    unit_period_check,
    witness,
)
from surd_sails.errors import IncompatibleCenter, RationalValue
from surd_sails.symmetry import Center, CenterKind, CyclicWord, is_cyclic_palindrome

PHI = QuadraticSurd(1, 1, 2, 5)
SQRT2 = sqrt_of(2)
SQRT3 = sqrt_of(3)


class TestClassify:
    def test_sqrt3(self):
        result = classify(SQRT3)
        assert result.flags == {"a", "b", "c"}
        assert result.witnesses["a"].omega == SQRT3  # trace 0 witness is sqrt(3) itself
        assert result.witnesses["a"].omega.trace() == 0

    def test_golden_ratio(self):
        result = classify(PHI)
        assert result.flags == {"b", "c", "d"}
        assert result.witnesses["b"].omega.trace() == 1
        assert result.witnesses["c"].omega.norm() == 1
        assert result.witnesses["d"].omega.norm() == -1

    def test_root_of_x2_minus_x_minus_3(self):
        alpha = QuadraticSurd.from_root(1, -1, -3)
        result = classify(alpha)
        assert "b" in result.flags
        assert result.witnesses["b"].omega.trace() == 1

    def test_no_flags_for_asymmetric_period(self):
        alpha = value(PeriodicCF((), (1, 2, 3)))
        result = classify(alpha)
        assert result.flags == frozenset()
        assert result.centers == ()
        assert result.witnesses == {}

    def test_b_iff_c(self):
        for _disc, alpha in iter_reduced_surds(150):
            flags = classify(alpha).flags
            assert ("b" in flags) == ("c" in flags)

    def test_flags_iff_cyclic_palindrome(self):
        for _disc, alpha in iter_reduced_surds(150):
            result = classify(alpha)
            assert bool(result.flags) == is_cyclic_palindrome(CyclicWord(result.cf.period))

    def test_witness_soundness(self):
        for _disc, alpha in iter_reduced_surds(120):
            result = classify(alpha)
            for flag, w in result.witnesses.items():
                trace, norm = w.omega.trace_norm()
                assert {"a": trace == 0, "b": trace == 1,
                        "c": norm == 1, "d": norm == -1}[flag]
                assert serret_equivalent(alpha, w.omega)
                assert w.certificate.act_on_slope(w.omega) == w.omega.conjugate()

    def test_json_schema(self):
        payload = classify(PHI).to_json()
        text = json.dumps(payload)
        back = json.loads(text)
        assert back["surd"] == "(1+sqrt(5))/2"
        assert back["period"] == [1]
        assert back["flags"] == ["b", "c", "d"]
        assert {c["kind"] for c in back["centers"]} == {"odd", "gap"}
        assert back["witnesses"]["b"]["trace"] == "1"
        assert back["witnesses"]["d"]["norm"] == "-1"


class TestWitness:
    def test_even_center_gives_sqrt2(self):
        alpha = value(PeriodicCF((), (2,)))  # 1 + sqrt(2)
        w = witness(alpha, "a", Center(CenterKind.EVEN_ELEMENT, 0))
        assert w.omega == SQRT2
        # remark: sqrt(2) carries the one-letter preperiod [1] = [a_0 / 2]
        assert expand(w.omega).preperiod == (1,)

    def test_odd_center_gives_golden(self):
        w = witness(PHI, "b", Center(CenterKind.ODD_ELEMENT, 0))
        assert w.omega == PHI
        assert w.period_map.rows() == ((1, 1), (1, 2))

    def test_gap_center_gives_silver(self):
        alpha = value(PeriodicCF((), (2,)))
        w = witness(alpha, "d", Center(CenterKind.GAP, 0))
        assert w.omega == alpha == 1 + SQRT2
        assert w.omega.norm() == -1

    def test_incompatible_center(self):
        with pytest.raises(IncompatibleCenter):
            witness(PHI, "a", Center(CenterKind.ODD_ELEMENT, 0))
        with pytest.raises(IncompatibleCenter):
            # period (1) has an odd letter; an even-element center is a lie
            witness(PHI, "a", Center(CenterKind.EVEN_ELEMENT, 0))
        with pytest.raises(IncompatibleCenter):
            witness(PHI, "d", Center(CenterKind.ODD_ELEMENT, 0))

    def test_rotation_respected(self):
        # sqrt(3) has period (1, 2): the even center sits at position 1
        w = witness(SQRT3, "a", Center(CenterKind.EVEN_ELEMENT, 1))
        assert w.omega == SQRT3


class TestShapeOracle:
    def test_examples(self):
        assert shape_oracle(SQRT3) == {"a", "b"}
        assert shape_oracle(1 + SQRT2) == {"a", "d"}
        assert shape_oracle(value(PeriodicCF((), (1, 2, 3)))) == frozenset()

    def test_agrees_with_classify(self):
        for _disc, alpha in iter_reduced_surds(150):
            assert shape_oracle(alpha) == classify(alpha).flags & {"a", "b", "d"}


class TestSqrtShape:
    def test_integers(self):
        assert sqrt_shape_check(2)
        assert sqrt_shape_check(19)
        for r in range(2, 60):
            try:
                assert sqrt_shape_check(r)
            except RationalValue:
                pass  # perfect squares lie outside the precondition

    def test_rationals(self):
        assert sqrt_shape_check(Fraction(5, 4))
        assert sqrt_shape_check(Fraction(29, 3))

    def test_square_rejected(self):
        with pytest.raises(RationalValue):
            sqrt_shape_check(9)
        with pytest.raises(ValueError):
            sqrt_shape_check(1)
        with pytest.raises(ValueError):
            sqrt_shape_check(Fraction(1, 2))


class TestUnitPeriods:
    def test_small(self):
        for q in range(1, 30):
            assert unit_period_check(q)

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            unit_period_check(0)

    def test_quadratic_integers_have_flags(self):
        # every root of a monic x^2 + Bx + C with positive nonsquare
        # discriminant has a symmetric period
        for qb in range(-8, 9):
            for qc in range(-8, 9):
                disc = qb * qb - 4 * qc
                try:
                    alpha = QuadraticSurd.from_root(1, qb, qc)
                except (ValueError, RationalValue):
                    continue
                assert classify(alpha).flags, f"x^2 + {qb}x + {qc}"


class TestFalsification:
    def test_no_small_witness_when_unflagged(self):
        # converse direction at desk scale: when the period is not a cyclic
        # palindrome, no equivalent surd reachable by a small unimodular
        # matrix satisfies any of the four trace/norm equations
        mats = []
        span = range(-3, 4)
        for p in span:
            for q in span:
                for r in span:
                    for s in span:
                        if p * s - q * r in (1, -1):
                            mats.append(UnimodularMatrix(p, q, r, s))
        checked = 0
        for _disc, alpha in iter_reduced_surds(400):
            if classify(alpha).flags:
                continue
            checked += 1
            for m in mats:
                omega = m.mobius(alpha)
                trace, norm = omega.trace_norm()
                assert trace != 0 and trace != 1, (alpha, m)
                assert norm != 1 and norm != -1, (alpha, m)
        assert checked >= 10


class TestReducedEnumeration:
    def test_all_reduced_and_within_bound(self):
        for disc, alpha in iter_reduced_surds(200):
            assert alpha.is_reduced()
            assert alpha.discriminant() == disc <= 200

    def test_no_duplicates(self):
        surds = [alpha for _d, alpha in iter_reduced_surds(300)]
        assert len(surds) == len(set(surds))

    def test_exhaustive_against_independent_scan(self):
        # every reduced surd found by a plain canonical-tuple sweep must
        # appear in the enumeration
        from math import gcd

        enumerated = {alpha for _d, alpha in iter_reduced_surds(500)}
        for d in (2, 3, 5, 7, 13):
            for c in range(1, 12):
                for b in (1, 2):
                    for a in range(0, 15):
                        if gcd(a, b, c) != 1:
                            continue
                        alpha = QuadraticSurd(a, b, c, d)
                        if alpha.is_reduced() and alpha.discriminant() <= 500:
                            assert alpha in enumerated

    def test_cycle_closure(self):
        # the reduced surds of one discriminant are closed under the
        # complete-quotient step
        from surd_sails.cfrac import complete_quotient_cycle

        by_disc: dict[int, set] = {}
        for disc, alpha in iter_reduced_surds(200):
            by_disc.setdefault(disc, set()).add(alpha)
        for disc, group in by_disc.items():
            for alpha in group:
                assert set(complete_quotient_cycle(alpha)) <= group
