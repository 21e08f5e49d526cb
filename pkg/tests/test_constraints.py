"""Constraint polynomial extraction, family verification, multiplicity search."""

from fractions import Fraction

import pytest

from trigvee.configuration import build_configuration
from trigvee.constraints import find_multiplicities, series_constraints, verify_family
from trigvee.errors import DegenerateParametrization, SpanDeficient
from trigvee.multipoly import MultiPoly, RatFunc
from trigvee.veecheck import check_series_condition

from conftest import rand_nonzero_fraction

F = Fraction

B2_VECTORS = [(1, 0), (0, 1), (1, 1), (1, -1)]
B2_SYMBOLS = ("c1", "c2", "cp", "cm")
A2_VECTORS = [(1, 0), (0, 1), (1, 1)]
PROP4_VECTORS = [(1, 0), (2, 0), (0, 1), (1, 1), (1, -1)]
PROP5_VECTORS = [
    (1, 0),
    (0, 1),
    (0, 2),
    (F(1, 2), F(1, 2)),
    (F(1, 2), F(-1, 2)),
    (F(1, 2), F(3, 2)),
    (F(1, 2), F(-3, 2)),
]
PROP5_SYMBOLS = ("c1", "c2", "ct2", "ap", "am", "bp", "bm")
G2A2_VECTORS = [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2), (2, 0), (2, 2), (4, 2)]
TEN_VECTORS = [
    (1, 0), (2, 0), (0, 1), (0, 2), (1, 1), (1, -1), (1, 2), (1, -2), (2, 1), (2, -1),
]


class TestExtraction:
    def test_b2_reduces_to_c1_equals_c2(self):
        cs = series_constraints(B2_VECTORS, symbols=B2_SYMBOLS)
        nonzero = [c for c in cs.polynomials if not c.poly.is_zero()]
        assert nonzero
        diff = MultiPoly.variable(B2_SYMBOLS, "c1") - MultiPoly.variable(B2_SYMBOLS, "c2")
        for c in nonzero:
            # each nonzero constraint is a polynomial multiple of (c1 - c2):
            # substituting c1 = c2 kills it
            sub = c.poly.substitute(
                {
                    "c1": RatFunc.variable(("c2", "cm", "cp"), "c2"),
                    "c2": RatFunc.variable(("c2", "cm", "cp"), "c2"),
                    "cp": RatFunc.variable(("c2", "cm", "cp"), "cp"),
                    "cm": RatFunc.variable(("c2", "cm", "cp"), "cm"),
                }
            )
            assert sub.is_zero()
        assert diff  # documentational: the locus is exactly c1 = c2

    def test_nondegeneracy_is_the_form_determinant(self):
        cs = series_constraints(B2_VECTORS, symbols=B2_SYMBOLS)
        expected = (
            MultiPoly.variable(B2_SYMBOLS, "c1") * MultiPoly.variable(B2_SYMBOLS, "c2")
            + (MultiPoly.variable(B2_SYMBOLS, "c1") + MultiPoly.variable(B2_SYMBOLS, "c2"))
            * (MultiPoly.variable(B2_SYMBOLS, "cp") + MultiPoly.variable(B2_SYMBOLS, "cm"))
            + 4 * MultiPoly.variable(B2_SYMBOLS, "cp") * MultiPoly.variable(B2_SYMBOLS, "cm")
        )
        assert cs.nondegeneracy == expected

    def test_a2_constraints_identically_zero(self):
        cs = series_constraints(A2_VECTORS)
        assert all(c.poly.is_zero() for c in cs.polynomials)

    def test_orthogonal_pair_constraints_vanish(self):
        cs = series_constraints([(1, 0), (0, 1)])
        assert all(c.poly.is_zero() for c in cs.polynomials)

    def test_homogeneity_degree_matches_dimension(self):
        # c_b times an adjugate entry: degree 1 + (n - 1) = n
        for vectors, n in ((B2_VECTORS, 2), (PROP4_VECTORS, 2), (G2A2_VECTORS, 2)):
            cs = series_constraints(vectors)
            for c in cs.polynomials:
                if not c.poly.is_zero():
                    assert c.poly.homogeneous_degree() == n

    def test_span_deficient_rejected(self):
        with pytest.raises(SpanDeficient):
            series_constraints([(1, 0), (2, 0)])

    def test_consistency_with_exact_check(self, rng):
        # constraints vanish at a nondegenerate point <=> series check passes
        cs = series_constraints(B2_VECTORS, symbols=B2_SYMBOLS)
        for _ in range(12):
            assignment = {s: rand_nonzero_fraction(rng, -4, 4) for s in B2_SYMBOLS}
            if cs.nondegeneracy.evaluate(assignment) == 0:
                continue
            all_zero = all(c.poly.evaluate(assignment) == 0 for c in cs.polynomials)
            cfg = build_configuration(
                2, [(v, assignment[s]) for v, s in zip(B2_VECTORS, B2_SYMBOLS)]
            )
            assert all_zero == check_series_condition(cfg).passed


class TestVerifyFamily:
    def test_prop5_family_passes(self):
        pv = ("s", "t")
        t = RatFunc.variable(pv, "t")
        s = RatFunc.variable(pv, "s")
        par = {
            "bp": t,
            "bm": t,
            "ap": 3 * t,
            "am": 3 * t,
            "ct2": s,
            "c2": 3 * t + 2 * s,
            "c1": t * (3 * t - 2 * s) / (3 * t + 4 * s),
        }
        verdict = verify_family(PROP5_VECTORS, par, symbols=PROP5_SYMBOLS)
        assert verdict.passed

    def test_prop5_wrong_c1_fails(self):
        pv = ("s", "t")
        t = RatFunc.variable(pv, "t")
        s = RatFunc.variable(pv, "s")
        par = {
            "bp": t,
            "bm": t,
            "ap": 3 * t,
            "am": 3 * t,
            "ct2": s,
            "c2": 3 * t + 2 * s,
            "c1": t,
        }
        assert not verify_family(PROP5_VECTORS, par, symbols=PROP5_SYMBOLS).passed

    def test_prop4_family_passes(self):
        pv = ("c1", "c2", "u")
        c1 = RatFunc.variable(pv, "c1")
        c2 = RatFunc.variable(pv, "c2")
        u = RatFunc.variable(pv, "u")
        par = {
            "m1": c1,
            "m2": u * (c1 - c2) / (2 * c2),
            "m3": c2,
            "m4": u,
            "m5": u,
        }
        verdict = verify_family(
            PROP4_VECTORS, par, symbols=("m1", "m2", "m3", "m4", "m5")
        )
        assert verdict.passed

    def test_b2_equal_multiplicities_pass_fixed_fail(self):
        t_poly = MultiPoly.variable(("cm", "cp", "t"), "t")
        assert verify_family(
            B2_VECTORS, {"c1": t_poly, "c2": t_poly}, symbols=B2_SYMBOLS
        ).passed
        verdict = verify_family(B2_VECTORS, {"c1": 1, "c2": 2}, symbols=B2_SYMBOLS)
        assert not verdict.passed
        assert verdict.failing

    def test_degenerate_parametrization_detected(self):
        # forcing the form determinant to vanish identically must be rejected:
        # on the three-covector system, cc = -ca*cb/(ca+cb) kills it
        pv = ("ca", "cb")
        ca = RatFunc.variable(pv, "ca")
        cb = RatFunc.variable(pv, "cb")
        with pytest.raises(DegenerateParametrization):
            verify_family(
                A2_VECTORS,
                {"c1": ca, "c2": cb, "c3": -ca * cb / (ca + cb)},
                symbols=("c1", "c2", "c3"),
            )

    def test_deterministic_across_runs(self):
        results = {
            verify_family(B2_VECTORS, {"c1": 1, "c2": 2}, symbols=B2_SYMBOLS).passed
            for _ in range(3)
        }
        assert results == {False}


class TestSearch:
    def test_b2_recovers_equal_short_multiplicities(self):
        solutions = find_multiplicities(
            B2_VECTORS, fix_symbol="cp", symbols=B2_SYMBOLS, seed=3, starts=6
        )
        assert solutions
        for sol in solutions:
            assert sol["c1"] == sol["c2"]
            cfg = build_configuration(
                2, [(v, sol[s]) for v, s in zip(B2_VECTORS, B2_SYMBOLS)]
            )
            assert check_series_condition(cfg).passed

    def test_g2_union_doubled_short_roots(self):
        solutions = find_multiplicities(G2A2_VECTORS, seed=0, starts=12)
        assert solutions
        for sol in solutions:
            cfg = build_configuration(
                2, [(v, sol[f"c{i + 1}"]) for i, v in enumerate(G2A2_VECTORS)]
            )
            assert cfg.gram_det != 0
            assert check_series_condition(cfg).passed

    def test_ten_vector_system(self):
        solutions = find_multiplicities(TEN_VECTORS, seed=0, starts=12)
        assert solutions
        for sol in solutions:
            cfg = build_configuration(
                2, [(v, sol[f"c{i + 1}"]) for i, v in enumerate(TEN_VECTORS)]
            )
            assert cfg.gram_det != 0
            assert check_series_condition(cfg).passed
