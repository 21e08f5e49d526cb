"""Symbolic multiplicities: constraint polynomials and multiplicity search.

Treating the multiplicities c_1..c_m as variables, each (base, series) pair
yields one polynomial: the series residual with the form's denominator
cleared through the adjugate, det(G) * (a,b) = a . adj(G) . b^T.  A rational
assignment is a trigonometric vee-system exactly when all constraint
polynomials vanish and the nondegeneracy polynomial det G does not.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np
from scipy.optimize import least_squares

from .configuration import (
    alpha_series,
    build_configuration,
    covector,
    relative_wedge_signs,
)
from .errors import DegenerateParametrization, SpanDeficient
from .exactnum import as_rational, rank
from .multipoly import MultiPoly, RatFunc
from .veecheck import check_series_condition


@dataclass(frozen=True)
class ConstraintPoly:
    base_index: int
    series_index: int
    member_indices: tuple[int, ...]
    poly: MultiPoly


@dataclass(frozen=True)
class ConstraintSet:
    symbols: tuple[str, ...]
    vectors: tuple[tuple[Fraction, ...], ...]
    polynomials: tuple[ConstraintPoly, ...]
    nondegeneracy: MultiPoly

    def distinct_polynomials(self) -> list[MultiPoly]:
        seen: list[MultiPoly] = []
        for c in self.polynomials:
            if not c.poly.is_zero() and c.poly not in seen and (-c.poly) not in seen:
                seen.append(c.poly)
        return seen


def _poly_matrix_det(mat: list[list[MultiPoly]]) -> MultiPoly:
    """Determinant of a small matrix of polynomials by Laplace expansion."""
    n = len(mat)
    if n == 1:
        return mat[0][0]
    variables = mat[0][0].vars
    total = MultiPoly.zero(variables)
    for j in range(n):
        if mat[0][j].is_zero():
            continue
        minor = [[mat[r][c] for c in range(n) if c != j] for r in range(1, n)]
        term = mat[0][j] * _poly_matrix_det(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


def _poly_matrix_adjugate(mat: list[list[MultiPoly]]) -> list[list[MultiPoly]]:
    n = len(mat)
    variables = mat[0][0].vars
    if n == 1:
        return [[MultiPoly.const(variables, 1)]]
    adj = [[MultiPoly.zero(variables) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[mat[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            cof = _poly_matrix_det(minor)
            adj[j][i] = cof if (i + j) % 2 == 0 else -cof
    return adj


def series_constraints(
    vectors: Sequence[Sequence], symbols: Sequence[str] | None = None
) -> ConstraintSet:
    """Extract the series-condition polynomials for a fixed vector set.

    One polynomial per (base, series) pair: sum over the series of
    c_b * r_b * (a . adj(G(c)) . b^T), homogeneous of degree n in the
    multiplicity variables.  The nondegeneracy polynomial is det G(c).
    """
    vecs = [covector(v) for v in vectors]
    if not vecs:
        raise SpanDeficient("empty vector set")
    dim = len(vecs[0])
    if rank(vecs) < dim:
        raise SpanDeficient(f"vectors span only {rank(vecs)} of {dim} dimensions")
    m = len(vecs)
    if symbols is None:
        symbols = tuple(f"c{i + 1}" for i in range(m))
    else:
        symbols = tuple(symbols)
        if len(symbols) != m:
            raise ValueError("need one symbol per vector")
        if len(set(symbols)) != m:
            raise ValueError("symbols must be distinct")

    # series structure is independent of multiplicities; build with mult 1
    cfg = build_configuration(dim, [(v, 1) for v in vecs])

    gram = [
        [
            sum(
                (MultiPoly.variable(symbols, symbols[k]) * (vecs[k][i] * vecs[k][j]) for k in range(m)),
                MultiPoly.zero(symbols),
            )
            for j in range(dim)
        ]
        for i in range(dim)
    ]
    adj = _poly_matrix_adjugate(gram)
    det = _poly_matrix_det(gram)

    def adj_pairing(u, v) -> MultiPoly:
        total = MultiPoly.zero(symbols)
        for i in range(dim):
            if u[i] == 0:
                continue
            for j in range(dim):
                if v[j] == 0:
                    continue
                total = total + adj[i][j] * (u[i] * v[j])
        return total

    out = []
    for i in range(m):
        for s_idx, series in enumerate(alpha_series(cfg, i)):
            signs = relative_wedge_signs(series)
            poly = MultiPoly.zero(symbols)
            for member, r in zip(series.members, signs):
                j = member.entry_index
                term = MultiPoly.variable(symbols, symbols[j]) * adj_pairing(vecs[i], vecs[j])
                poly = poly + (term if r == 1 else -term)
            out.append(
                ConstraintPoly(
                    base_index=i,
                    series_index=s_idx,
                    member_indices=series.entry_indices(),
                    poly=poly,
                )
            )
    return ConstraintSet(
        symbols=symbols, vectors=tuple(vecs), polynomials=tuple(out), nondegeneracy=det
    )


@dataclass(frozen=True)
class FamilyVerdict:
    passed: bool
    failing: tuple[ConstraintPoly, ...]
    residual_numerators: tuple[MultiPoly, ...]


def verify_family(
    vectors: Sequence[Sequence],
    parametrization: Mapping[str, object],
    symbols: Sequence[str] | None = None,
) -> FamilyVerdict:
    """Check a multiplicity parametrization against all constraints, exactly.

    `parametrization` maps multiplicity symbols to RatFunc values, MultiPoly
    values, rationals, or expression results; unmapped symbols stay free
    parameters.  Substitution is fully expanded over a common denominator, so
    a constraint passes iff its substituted numerator is the zero polynomial.
    The nondegeneracy polynomial must NOT vanish identically after
    substitution, otherwise DegenerateParametrization is raised.
    """
    cs = series_constraints(vectors, symbols)

    param_vars: set[str] = set()
    for sym in cs.symbols:
        val = parametrization.get(sym)
        if val is None:
            param_vars.add(sym)
        elif isinstance(val, RatFunc):
            param_vars.update(val.vars)
        elif isinstance(val, MultiPoly):
            param_vars.update(val.vars)
    variables = tuple(sorted(param_vars)) or ("_t",)

    images: dict[str, RatFunc] = {}
    for sym in cs.symbols:
        val = parametrization.get(sym)
        if val is None:
            images[sym] = RatFunc.variable(variables, sym)
        elif isinstance(val, RatFunc):
            images[sym] = RatFunc(val.num.with_vars(variables), val.den.with_vars(variables))
        elif isinstance(val, MultiPoly):
            images[sym] = RatFunc.from_poly(val.with_vars(variables))
        else:
            images[sym] = RatFunc.constant(variables, as_rational(val))

    nondeg = cs.nondegeneracy.substitute(images)
    if nondeg.is_zero():
        raise DegenerateParametrization(
            "the form determinant vanishes identically under this parametrization"
        )

    failing = []
    residues = []
    for c in cs.polynomials:
        sub = c.poly.substitute(images)
        if not sub.is_zero():
            failing.append(c)
            residues.append(sub.num)
    return FamilyVerdict(
        passed=not failing, failing=tuple(failing), residual_numerators=tuple(residues)
    )


# ---------------------------------------------------------------------------
# Numeric search for valid multiplicities, with exact certification.
# ---------------------------------------------------------------------------

_SNAP_BOUNDS = (1, 2, 3, 4, 6, 8, 12, 24, 60, 1000, 10**6)


def _exact_solution(
    vectors: Sequence[tuple[Fraction, ...]],
    symbols: Sequence[str],
    assignment: dict[str, Fraction],
) -> bool:
    """True when the assignment builds a nondegenerate passing configuration."""
    if any(v == 0 for v in assignment.values()):
        return False
    dim = len(vectors[0])
    try:
        cfg = build_configuration(
            dim, [(v, assignment[sym]) for v, sym in zip(vectors, symbols)]
        )
    except Exception:
        return False
    if cfg.gram_det == 0:
        return False
    return check_series_condition(cfg).passed


def find_multiplicities(
    vectors: Sequence[Sequence],
    fix_symbol: str | None = None,
    seed: int = 0,
    symbols: Sequence[str] | None = None,
    starts: int = 12,
    residual_tol: float = 1e-10,
) -> list[dict[str, Fraction]]:
    """Search for exactly-verified multiplicity assignments.

    Strategy: least-squares descent on the constraint polynomials from
    seeded random starts, then a greedy snap-to-rational refinement (fix one
    coordinate to a small-denominator rational, re-optimize the rest), and
    finally exact verification of the candidate.  Only candidates that pass
    the exact series check with a nondegenerate form are returned; an empty
    result means "not found", never "nonexistent".
    """
    cs = series_constraints(vectors, symbols)
    syms = cs.symbols
    if fix_symbol is None:
        fix_symbol = syms[0]
    if fix_symbol not in syms:
        raise ValueError(f"unknown symbol {fix_symbol!r}")
    free = [s for s in syms if s != fix_symbol]

    polys = cs.distinct_polynomials()
    if not polys:
        # no constraints at all: any nonzero assignment with nondegenerate
        # form works; try all-ones
        cand = {s: Fraction(1) for s in syms}
        return [cand] if _exact_solution(cs.vectors, syms, cand) else []

    order = list(syms)

    def values_at(free_syms: list[str], fixed: dict[str, float], xs) -> list[float]:
        values = dict(fixed)
        values[fix_symbol] = 1.0
        for s, v in zip(free_syms, xs):
            values[s] = v
        return [values[s] for s in order]

    def residual_fn(free_syms: list[str], fixed: dict[str, float]):
        def fn(xs: np.ndarray) -> np.ndarray:
            vec = values_at(free_syms, fixed, xs)
            return np.array([p.evaluate_float(vec) for p in polys])

        return fn

    def minimize(free_syms: list[str], fixed: dict[str, float], x0: np.ndarray):
        fit = least_squares(
            residual_fn(free_syms, fixed), x0, xtol=1e-15, ftol=1e-15, gtol=1e-15
        )
        err = float(np.linalg.norm(fit.fun))
        det = cs.nondegeneracy.evaluate_float(values_at(free_syms, fixed, fit.x))
        return fit.x, err, det

    # the constraint polynomials also vanish wherever det G vanishes becomes
    # easy to reach numerically, so every accepted step must keep the form
    # visibly nondegenerate
    det_floor = 1e-6

    rng = np.random.default_rng(seed)
    solutions: list[dict[str, Fraction]] = []
    for _start in range(starts):
        x = rng.uniform(-2.0, 2.0, size=len(free))
        x[np.abs(x) < 0.2] += 0.5  # keep multiplicities away from zero
        fixed: dict[str, float] = {}
        remaining = list(free)
        if remaining:
            x, err, det = minimize(remaining, fixed, x)
            if err > 1e-8 or abs(det) < det_floor:
                continue

        # greedy snap: rationalize one coordinate at a time, re-optimize the
        # rest, and backtrack over denominator bounds if the residual degrades
        # or the form collapses
        snapped: dict[str, Fraction] = {fix_symbol: Fraction(1)}
        ok = True
        while remaining:
            sym = remaining[0]
            rest = remaining[1:]
            accepted = None
            for bound in _SNAP_BOUNDS:
                q = Fraction(float(x[0])).limit_denominator(bound)
                if q == 0:
                    continue
                trial = dict(fixed)
                trial[sym] = float(q)
                if rest:
                    xs, err, det = minimize(rest, trial, x[1:])
                    if err <= residual_tol and abs(det) > det_floor and np.all(
                        np.abs(xs) > 1e-4
                    ):
                        accepted = (q, xs)
                        break
                else:
                    vec = values_at([], trial, [])
                    err = max(abs(p.evaluate_float(vec)) for p in polys)
                    det = cs.nondegeneracy.evaluate_float(vec)
                    if err <= residual_tol and abs(det) > det_floor:
                        accepted = (q, np.array([]))
                        break
            if accepted is None:
                ok = False
                break
            q, x = accepted
            snapped[sym] = q
            fixed[sym] = float(q)
            remaining = rest
        if not ok:
            continue

        candidate = {s: snapped[s] for s in syms}
        if _exact_solution(cs.vectors, syms, candidate) and candidate not in solutions:
            solutions.append(candidate)
    return solutions
