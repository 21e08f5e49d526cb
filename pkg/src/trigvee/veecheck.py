"""Exact checks deciding whether a configuration is a trigonometric vee-system
and solving for the WDVV coupling lambda^2.

The central condition: for every covector a and every a-series, the weighted
2-form sum over the series vanishes.  Because all members of a series lie in
the plane spanned by the base and any one member, each condition collapses to
a single rational number (the residual), which is reported exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .configuration import (
    Covector,
    PositiveSystem,
    VConfiguration,
    alpha_series,
    decompose_components,
    is_parallel,
    positive_system,
    relative_wedge_signs,
    signed_covectors,
    vee_product,
    wedge_coeffs,
)
from .errors import DegenerateForm
from .exactnum import rref

Pairing = Callable[[Covector, Covector], Fraction]


@dataclass(frozen=True)
class SeriesResidual:
    base_index: int
    series_index: int
    residue: tuple[int, ...]
    member_indices: tuple[int, ...]
    residual: Fraction

    @property
    def passed(self) -> bool:
        return self.residual == 0


@dataclass(frozen=True)
class SeriesCheckReport:
    residuals: tuple[SeriesResidual, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.residuals)

    def failures(self) -> tuple[SeriesResidual, ...]:
        return tuple(r for r in self.residuals if not r.passed)


def series_residuals(cfg: VConfiguration, pairing: Pairing) -> SeriesCheckReport:
    """Series condition residuals with an arbitrary covector pairing.

    For base a and series with representative b0, the 2-form condition
    sum_b c_b (a,b) a^b = 0 reduces to sum_b c_b (a,b) r_b = 0 where
    r_b = +-1 relates a^b to a^b0.
    """
    residuals = []
    for i, entry in enumerate(cfg.entries):
        for s_idx, series in enumerate(alpha_series(cfg, i)):
            signs = relative_wedge_signs(series)
            total = Fraction(0)
            for member, r in zip(series.members, signs):
                other = cfg.entries[member.entry_index]
                total += other.mult * pairing(entry.covector, other.covector) * r
            residuals.append(
                SeriesResidual(
                    base_index=i,
                    series_index=s_idx,
                    residue=series.residue,
                    member_indices=series.entry_indices(),
                    residual=total,
                )
            )
    return SeriesCheckReport(residuals=tuple(residuals))


def check_series_condition(cfg: VConfiguration) -> SeriesCheckReport:
    """Definition check: every series residual vanishes under the vee product."""
    if cfg.gram_det == 0:
        raise DegenerateForm("the form G is degenerate")
    return series_residuals(cfg, lambda u, v: vee_product(cfg, u, v))


@dataclass(frozen=True)
class TwoFormWitness:
    base_index: int
    coefficients: tuple[Fraction, ...]


@dataclass(frozen=True)
class V3Report:
    witnesses: tuple[TwoFormWitness, ...]

    @property
    def passed(self) -> bool:
        return not self.witnesses


def check_v3_identity(cfg: VConfiguration) -> V3Report:
    """For each base a, the full 2-form sum_b c_b (a,b) a^b must vanish.

    This follows from the series conditions whenever they hold, so it serves
    as an internal consistency check rather than an independent criterion.
    """
    if cfg.gram_det == 0:
        raise DegenerateForm("the form G is degenerate")
    n = cfg.dim
    m = n * (n - 1) // 2
    witnesses = []
    for i, entry in enumerate(cfg.entries):
        acc = [Fraction(0)] * m
        for other in cfg.entries:
            p = vee_product(cfg, entry.covector, other.covector)
            if p == 0:
                continue
            w = wedge_coeffs(entry.covector, other.covector)
            cp = other.mult * p
            for k in range(m):
                acc[k] += cp * w[k]
        if any(acc):
            witnesses.append(TwoFormWitness(base_index=i, coefficients=tuple(acc)))
    return V3Report(witnesses=tuple(witnesses))


@dataclass(frozen=True)
class PlaneWitness:
    base_index: int
    plane_indices: tuple[int, ...]
    deviation: tuple[Fraction, ...]


@dataclass(frozen=True)
class RationalVeeReport:
    witnesses: tuple[PlaneWitness, ...]
    planes_checked: int

    @property
    def passed(self) -> bool:
        return not self.witnesses


def _plane_key(u: Covector, v: Covector) -> tuple:
    reduced, _ = rref([u, v])
    return tuple(tuple(row) for row in reduced)


def check_rational_vee(cfg: VConfiguration) -> RationalVeeReport:
    """Per 2-plane proportionality: sum of c_b (a,b) b over the plane is ~ a.

    For every base covector and every plane it spans with another entry, the
    weighted sum over all entries lying in that plane (parallel ones
    included) must be a rational multiple of the base.
    """
    if cfg.gram_det == 0:
        raise DegenerateForm("the form G is degenerate")
    witnesses = []
    planes_checked = 0
    for i, entry in enumerate(cfg.entries):
        a = entry.covector
        planes: dict[tuple, list[int]] = {}
        for j, other in enumerate(cfg.entries):
            if j == i or is_parallel(a, other.covector):
                continue
            planes.setdefault(_plane_key(a, other.covector), []).append(j)
        for key in sorted(planes, key=lambda k: planes[k][0]):
            # members of the plane: the listed non-parallel entries plus
            # every entry parallel to the base (those lie in all planes)
            member_idx = sorted(
                set(planes[key])
                | {j for j, e in enumerate(cfg.entries) if is_parallel(a, e.covector)}
            )
            total = [Fraction(0)] * cfg.dim
            for j in member_idx:
                e = cfg.entries[j]
                cp = e.mult * vee_product(cfg, a, e.covector)
                for k in range(cfg.dim):
                    total[k] += cp * e.covector[k]
            deviation = wedge_coeffs(tuple(total), a)
            planes_checked += 1
            if any(deviation):
                witnesses.append(
                    PlaneWitness(
                        base_index=i,
                        plane_indices=tuple(member_idx),
                        deviation=deviation,
                    )
                )
    return RationalVeeReport(witnesses=tuple(witnesses), planes_checked=planes_checked)


@dataclass(frozen=True)
class TensorMismatch:
    component: tuple[int, int]
    lhs: Fraction
    rhs: Fraction


@dataclass(frozen=True)
class LambdaSolution:
    """Outcome of the coupling solve over a positive system.

    status is one of:
      'solved'     -- lambda^2 is the unique rational making the 4-tensor
                      identity hold exactly;
      'no_solution' -- no coupling works; witness holds the first mismatch;
      'any_lambda' -- both tensors vanish identically (the identity is
                      vacuous, e.g. in dimension 1), so any coupling works.
    """

    status: str
    lambda2: Fraction | None
    psys: PositiveSystem
    witness: TensorMismatch | None = None

    @property
    def solved(self) -> bool:
        return self.status == "solved"


def tensor_ratio(
    cfg: VConfiguration, psys: PositiveSystem, pairing: Pairing
) -> tuple[str, Fraction | None, TensorMismatch | None]:
    """Solve r * P = Q for the two 4-tensors over a positive system.

    P = sum c_a c_b (a,b) (a^b) x (a^b) and Q = sum c_a c_b (a^b) x (a^b),
    both over ordered pairs from the signed system, laid out on the basis
    e^i ^ e^j (i < j) of 2-forms.  Returns (status, ratio, witness).
    """
    n = cfg.dim
    m = n * (n - 1) // 2
    if m == 0:
        return "any_lambda", None, None
    signed = signed_covectors(cfg, psys)
    mults = cfg.mults()
    p = [[Fraction(0)] * m for _ in range(m)]
    q = [[Fraction(0)] * m for _ in range(m)]
    for k in range(len(signed)):
        for l in range(k + 1, len(signed)):
            w = wedge_coeffs(signed[k], signed[l])
            if not any(w):
                continue
            cc2 = 2 * mults[k] * mults[l]
            pw = cc2 * pairing(signed[k], signed[l])
            for u in range(m):
                if w[u] == 0:
                    continue
                for v in range(m):
                    if w[v] == 0:
                        continue
                    ww = w[u] * w[v]
                    q[u][v] += cc2 * ww
                    if pw != 0:
                        p[u][v] += pw * ww
    first = next(
        ((u, v) for u in range(m) for v in range(m) if p[u][v] != 0),
        None,
    )
    if first is None:
        if any(any(row) for row in q):
            u, v = next((u, v) for u in range(m) for v in range(m) if q[u][v] != 0)
            return "no_solution", None, TensorMismatch((u, v), Fraction(0), q[u][v])
        return "any_lambda", None, None
    u0, v0 = first
    ratio = q[u0][v0] / p[u0][v0]
    for u in range(m):
        for v in range(m):
            if ratio * p[u][v] != q[u][v]:
                return "no_solution", None, TensorMismatch((u, v), ratio * p[u][v], q[u][v])
    return "solved", ratio, None


def solve_lambda_squared(
    cfg: VConfiguration, psys: PositiveSystem | None = None
) -> LambdaSolution:
    """Solve the 4-tensor identity for lambda^2 = 4 * Q/P over a positive system."""
    if cfg.gram_det == 0:
        raise DegenerateForm("the form G is degenerate")
    if psys is None:
        psys = positive_system(cfg)
    status, ratio, witness = tensor_ratio(cfg, psys, lambda u, v: vee_product(cfg, u, v))
    lambda2 = 4 * ratio if status == "solved" else None
    return LambdaSolution(status=status, lambda2=lambda2, psys=psys, witness=witness)


@dataclass(frozen=True)
class FullCheckReport:
    degenerate: bool
    series: SeriesCheckReport | None
    is_trig_vee: bool
    is_irreducible: bool | None
    lambda_solution: LambdaSolution | None

    @property
    def defines_wdvv_solution(self) -> bool:
        """Series condition holds and a coupling exists (or is unconstrained)."""
        return (
            self.is_trig_vee
            and self.lambda_solution is not None
            and self.lambda_solution.status in ("solved", "any_lambda")
        )


def full_check(cfg: VConfiguration, psys: PositiveSystem | None = None) -> FullCheckReport:
    """Aggregate verdict: non-degeneracy, series condition, irreducibility,
    coupling solve.  Never raises on valid configurations; a degenerate form
    is reported as the failure reason."""
    if cfg.gram_det == 0:
        return FullCheckReport(
            degenerate=True,
            series=None,
            is_trig_vee=False,
            is_irreducible=None,
            lambda_solution=None,
        )
    series = check_series_condition(cfg)
    components = decompose_components(cfg)
    lam = solve_lambda_squared(cfg, psys)
    return FullCheckReport(
        degenerate=False,
        series=series,
        is_trig_vee=series.passed,
        is_irreducible=(len(components) == 1),
        lambda_solution=lam,
    )
