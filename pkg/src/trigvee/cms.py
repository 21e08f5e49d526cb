"""Generalized Calogero-Moser-Sutherland checks.

For a configuration with pairwise non-collinear covectors and an inner
product (a,b) on covectors, the Schrodinger operator

    L = -Delta + sum_a c_a (c_a + 1) (a,a) / sin^2 a(x)

has the factorized formal eigenfunction psi = prod_a sin^(-c_a) a(x) exactly
when the double sum  sum_{a != b} c_a c_b (a,b) cot a(x) cot b(x)  is
constant in x.  This module verifies that identity numerically, estimates
the eigenvalue, runs the series condition with an arbitrary metric, and
recovers the vee-system structure from a metric that works.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .configuration import (
    PositiveSystem,
    VConfiguration,
    is_parallel,
    positive_system,
    vee_pairing_matrix,
)
from .errors import CollinearPair, DegenerateForm, NonScalarAction
from .exactnum import RatMatrix, nullspace
from .veecheck import (
    SeriesCheckReport,
    TensorMismatch,
    check_series_condition,
    series_residuals,
    tensor_ratio,
)
from .wdvv import EvalPoint, sample_points


@dataclass(frozen=True)
class Metric:
    """Symmetric inner product on covectors: (a,b) = a . matrix . b^T."""

    matrix: RatMatrix
    is_vee_form: bool = False

    def __post_init__(self):
        if not self.matrix.is_symmetric():
            raise DegenerateForm("metric matrix must be symmetric")

    def pairing(self, u, v) -> Fraction:
        total = Fraction(0)
        for i, ui in enumerate(u):
            if ui == 0:
                continue
            row = self.matrix.row(i)
            for j, vj in enumerate(v):
                if vj != 0:
                    total += ui * row[j] * vj
        return total

    def scaled(self, t) -> "Metric":
        return Metric(self.matrix.scale(t), is_vee_form=False)


def vee_form_metric(cfg: VConfiguration) -> Metric:
    """The metric induced by the configuration's own form (matrix G^-1)."""
    return Metric(vee_pairing_matrix(cfg), is_vee_form=True)


def euclidean_metric(dim: int) -> Metric:
    return Metric(RatMatrix.identity(dim))


@dataclass(frozen=True)
class CmsReport:
    identity_values: tuple[complex, ...]
    mean: complex
    max_deviation: float
    eigenvalue_values: tuple[complex, ...]
    eigenvalue_estimate: complex
    eigenvalue_deviation: float
    points: tuple[EvalPoint, ...]
    seed: int

    def constant(self) -> complex:
        return self.mean


def _require_cms_hypotheses(cfg: VConfiguration, metric: Metric) -> None:
    for i in range(len(cfg.entries)):
        for j in range(i + 1, len(cfg.entries)):
            if is_parallel(cfg.entries[i].covector, cfg.entries[j].covector):
                raise CollinearPair(
                    f"covectors {cfg.entries[i].label} and {cfg.entries[j].label} are collinear"
                )
    if metric.matrix.rows != cfg.dim:
        raise DegenerateForm("metric size does not match the configuration dimension")
    if metric.matrix.det() == 0:
        raise DegenerateForm("metric is degenerate")


def cms_identity_residual(
    cfg: VConfiguration,
    metric: Metric,
    num_points: int = 10,
    seed: int = 0,
    margin_floor: float = 0.1,
) -> CmsReport:
    """Evaluate the pair identity and the eigenvalue ratio at sample points.

    The report carries the identity values (whose constancy is the criterion),
    their mean and max deviation from it, and the pointwise (L psi)/psi values
    computed through the logarithmic-derivative expansion of psi.
    """
    _require_cms_hypotheses(cfg, metric)
    points = sample_points(cfg, num_points, seed, margin_floor)

    m = len(cfg.entries)
    a = np.array([[float(x) for x in e.covector] for e in cfg.entries])
    c = np.array([float(e.mult) for e in cfg.entries])
    pair = np.array(
        [
            [
                float(metric.pairing(cfg.entries[i].covector, cfg.entries[j].covector))
                for j in range(m)
            ]
            for i in range(m)
        ]
    )
    pair_offdiag = pair - np.diag(np.diag(pair))
    metric_f = np.array([[float(v) for v in row] for row in metric.matrix.entries])
    norms = np.diag(pair)  # (a,a) per entry

    identity_values = []
    eigen_values = []
    for p in points:
        x = np.asarray(p.x, dtype=complex)
        values = a @ x
        sin = np.sin(values)
        cot = np.cos(values) / sin
        csc2 = 1.0 / sin**2
        cc = c * cot
        identity = cc @ pair_offdiag @ cc  # sum over ordered pairs i != j
        identity_values.append(complex(identity))

        # (L psi)/psi through log derivatives:
        #   d_i psi/psi = -sum c a_i cot a(x)
        #   d_i d_j psi/psi = (d_i psi/psi)(d_j psi/psi) + sum c a_i a_j csc^2
        grad = -(cc @ a)
        hess = np.outer(grad, grad) + (a.T * (c * csc2)) @ a
        laplacian = float(0) + np.sum(metric_f * hess)
        potential = np.sum(c * (c + 1) * norms * csc2)
        eigen_values.append(complex(-laplacian + potential))

    mean = sum(identity_values) / len(identity_values)
    max_dev = max(abs(v - mean) for v in identity_values)
    mu = sum(eigen_values) / len(eigen_values)
    mu_dev = max(abs(v - mu) for v in eigen_values)
    return CmsReport(
        identity_values=tuple(identity_values),
        mean=mean,
        max_deviation=max_dev,
        eigenvalue_values=tuple(eigen_values),
        eigenvalue_estimate=mu,
        eigenvalue_deviation=mu_dev,
        points=points,
        seed=seed,
    )


def eigenvalue_estimate(
    cfg: VConfiguration,
    metric: Metric,
    num_points: int = 10,
    seed: int = 0,
    margin_floor: float = 0.1,
) -> tuple[complex, float]:
    """Mean and max deviation of (L psi)/psi over sample points.

    Only meaningful when the pair identity is constant (the factorized
    eigenfunction exists); otherwise the deviation exposes the failure.
    """
    report = cms_identity_residual(cfg, metric, num_points, seed, margin_floor)
    return report.eigenvalue_estimate, report.eigenvalue_deviation


def check_series_with_metric(cfg: VConfiguration, metric: Metric) -> SeriesCheckReport:
    """Series condition with (a,b) taken from the supplied metric.

    With the vee-form metric this coincides exactly with the intrinsic
    series check.
    """
    if metric.matrix.rows != cfg.dim:
        raise DegenerateForm("metric size does not match the configuration dimension")
    if metric.matrix.det() == 0:
        raise DegenerateForm("metric is degenerate")
    return series_residuals(cfg, metric.pairing)


def _integer_roots(coeffs: list[int]) -> list[tuple[int, int]]:
    """Integer roots (with multiplicity) of an integer polynomial.

    Candidates are seeded from numeric root finding and verified exactly;
    verified roots are deflated by exact synthetic division.
    """
    # strip trailing zero coefficients: roots at 0
    work = list(coeffs)
    zero_mult = 0
    while work and work[-1] == 0:
        work.pop()
        zero_mult += 1
    roots: list[tuple[int, int]] = []
    if zero_mult:
        roots.append((0, zero_mult))
    if len(work) <= 1:
        return roots

    candidates: set[int] = set()
    approx = np.roots(np.array(work, dtype=float))
    for r in approx:
        if abs(r.imag) < 0.5:
            base = int(round(r.real))
            candidates.update((base - 1, base, base + 1))
    candidates.discard(0)

    def eval_poly(poly: list[int], r: int) -> int:
        total = 0
        for coef in poly:  # highest degree first
            total = total * r + coef
        return total

    for r in sorted(candidates):
        mult = 0
        while len(work) > 1 and eval_poly(work, r) == 0:
            # synthetic division by (x - r)
            out = [work[0]]
            for coef in work[1:-1]:
                out.append(coef + out[-1] * r)
            work = out
            mult += 1
        if mult:
            roots.append((r, mult))
    return roots


def _rational_eigenvalues(t: RatMatrix) -> list[tuple[Fraction, int]] | None:
    """Rational eigenvalues with algebraic multiplicities, or None if some
    eigenvalue is irrational."""
    n = t.rows
    den = 1
    for row in t.entries:
        for x in row:
            den = math.lcm(den, x.denominator)
    scaled = t.scale(den)
    coeffs_frac = scaled.charpoly()  # monic with integer coefficients
    assert all(c.denominator == 1 for c in coeffs_frac)
    coeffs = [int(c) for c in coeffs_frac]
    roots = _integer_roots(coeffs)
    total = sum(m for _, m in roots)
    if total != n:
        return None
    return [(Fraction(r, den), m) for r, m in sorted(roots)]


@dataclass(frozen=True)
class CmsToVeeResult:
    is_trig_vee: bool
    component_scalars: tuple[Fraction, ...]
    component_dims: tuple[int, ...]
    vee_series: SeriesCheckReport


def cms_to_vee(cfg: VConfiguration, metric: Metric) -> CmsToVeeResult:
    """Recover the vee-system structure from a metric whose series check holds.

    Decomposes the space into eigenspaces of the exact rational operator
    T = M G (M the metric matrix, G the form), on each of which the form is
    the scalar multiple mu_i of the metric's inner product on vectors.  Each
    covector dual must land in a single eigenspace; failures of rationality,
    diagonalizability, or that alignment raise NonScalarAction.  The final
    verdict re-runs the intrinsic series check exactly.
    """
    if cfg.gram_det == 0:
        raise DegenerateForm("the form G is degenerate")
    metric_report = check_series_with_metric(cfg, metric)
    if not metric_report.passed:
        raise ValueError("metric series condition fails; nothing to recover")

    t = metric.matrix @ cfg.gram
    eigen = _rational_eigenvalues(t)
    if eigen is None:
        raise NonScalarAction("operator M G has an irrational eigenvalue")

    n = cfg.dim
    spaces = []
    for mu, alg_mult in eigen:
        shifted = t - RatMatrix.identity(n).scale(mu)
        kernel = nullspace(shifted)
        if len(kernel) != alg_mult:
            raise NonScalarAction(
                f"operator M G is not diagonalizable at eigenvalue {mu}"
            )
        spaces.append((mu, kernel))

    # every covector dual M a^T must be an eigenvector (lie in one component)
    for e in cfg.entries:
        dual = metric.matrix.mat_vec(e.covector)
        image = t.mat_vec(dual)
        matched = any(
            all(iv == mu * dv for iv, dv in zip(image, dual)) for mu, _ in eigen
        )
        if not matched:
            raise NonScalarAction(
                f"dual of covector {e.label} does not lie in a single scalar block"
            )

    vee_series = check_series_condition(cfg)
    return CmsToVeeResult(
        is_trig_vee=vee_series.passed,
        component_scalars=tuple(mu for mu, _ in eigen),
        component_dims=tuple(len(k) for _, k in spaces),
        vee_series=vee_series,
    )


@dataclass(frozen=True)
class CapitalLambdaSolution:
    status: str
    value: Fraction | None
    psys: PositiveSystem
    witness: TensorMismatch | None = None

    @property
    def solved(self) -> bool:
        return self.status == "solved"


def solve_capital_lambda(
    cfg: VConfiguration, metric: Metric, psys: PositiveSystem | None = None
) -> CapitalLambdaSolution:
    """Solve the 4-tensor identity with the metric pairing for the constant.

    Same proportionality solve as the lambda^2 computation but with (a,b)
    from the supplied metric; with the vee-form metric the value equals
    lambda^2 / 4 exactly.
    """
    if metric.matrix.det() == 0:
        raise DegenerateForm("metric is degenerate")
    if psys is None:
        psys = positive_system(cfg)
    status, ratio, witness = tensor_ratio(cfg, psys, metric.pairing)
    return CapitalLambdaSolution(
        status=status,
        value=ratio if status == "solved" else None,
        psys=psys,
        witness=witness,
    )
