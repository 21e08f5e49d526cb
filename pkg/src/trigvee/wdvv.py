"""Floating-point verification that a solved configuration satisfies the WDVV
equations.

Checks are done in the coordinates (x0 = y, x1..xn): the constant matrix F0
and the point-dependent matrices F1..Fn of third derivatives are assembled,
and the commutator residuals Fi F0^-1 Fj - Fj F0^-1 Fi are maximized over
seeded random sample points.  The prepotential itself is evaluated through a
direct trilogarithm series.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .configuration import PositiveSystem, VConfiguration, signed_covectors
from .errors import (
    DegenerateForm,
    OutOfDomain,
    SamplingExhausted,
    SingularPoint,
    ZeroLambda,
)

_TRILOG_TOL = 1e-16
_MAX_TRILOG_TERMS = 200_000


@dataclass(frozen=True)
class EvalPoint:
    """A complex sample point; margin = min over covectors of |sin a(x)|."""

    y: complex
    x: tuple[complex, ...]
    margin: float


@dataclass(frozen=True)
class ResidualReport:
    per_point: tuple[float, ...]
    aggregate: float
    points: tuple[EvalPoint, ...]
    seed: int


def trilog(z: complex) -> complex:
    """Li3(z) = sum_{k>=1} z^k / k^3 for |z| < 1, summed to machine tail."""
    if abs(z) >= 1:
        raise OutOfDomain(f"trilogarithm series needs |z| < 1, got |z| = {abs(z):.6f}")
    total = 0j
    power = z
    k = 1
    while abs(power) > _TRILOG_TOL:
        total += power / k**3
        power *= z
        k += 1
        if k > _MAX_TRILOG_TERMS:
            raise OutOfDomain("trilogarithm series did not converge")
    return total


def f_trig(x: complex) -> complex:
    """The prepotential kernel i x^3/6 + Li3(e^{-2ix})/4 with f'''(x) = cot x.

    Convergent for Im x < 0.
    """
    return 1j * x**3 / 6 + trilog(cmath.exp(-2j * x)) / 4


def check_f_derivative(samples, h: float) -> float:
    """Max deviation of the central third finite difference of f from cot.

    Uses the half-step stencil (f(x+3h/2) - 3f(x+h/2) + 3f(x-h/2)
    - f(x-3h/2)) / h^3, which converges at order h^2.  Samples must lie in
    the convergence half-plane Im x < 0, away from the poles of cot.
    """
    worst = 0.0
    for x in samples:
        x = complex(x)
        fd = (
            f_trig(x + 1.5 * h) - 3 * f_trig(x + 0.5 * h) + 3 * f_trig(x - 0.5 * h) - f_trig(x - 1.5 * h)
        ) / h**3
        dev = abs(fd - 1 / cmath.tan(x))
        worst = max(worst, dev)
    return worst


def _float_covectors(cfg: VConfiguration) -> np.ndarray:
    return np.array([[float(x) for x in e.covector] for e in cfg.entries])


def point_margin(cfg: VConfiguration, x) -> float:
    a = _float_covectors(cfg)
    values = a @ np.asarray(x, dtype=complex)
    return float(np.min(np.abs(np.sin(values))))


def sample_points(
    cfg: VConfiguration,
    num_points: int,
    seed: int,
    margin_floor: float = 0.1,
    max_tries: int = 1000,
) -> tuple[EvalPoint, ...]:
    """Seeded rejection sampling of nonsingular evaluation points.

    Coordinates are uniform in [-2, 2] + i [-1, -1/4]; each point index draws
    from an independent generator split off the seed, so point k is the same
    regardless of how many points are requested.
    """
    points = []
    for idx in range(num_points):
        rng = np.random.default_rng([seed, idx])
        for _ in range(max_tries):
            x = tuple(
                complex(rng.uniform(-2.0, 2.0), rng.uniform(-1.0, -0.25))
                for _ in range(cfg.dim)
            )
            y = complex(rng.uniform(-2.0, 2.0), rng.uniform(-1.0, -0.25))
            margin = point_margin(cfg, x)
            if margin > margin_floor:
                points.append(EvalPoint(y=y, x=x, margin=margin))
                break
        else:
            raise SamplingExhausted(
                f"no point with margin > {margin_floor} found in {max_tries} tries"
            )
    return tuple(points)


def third_derivative_matrices(
    cfg: VConfiguration, lambda_squared, point: EvalPoint
) -> list[np.ndarray]:
    """The (n+1)x(n+1) matrices F0..Fn of third derivatives at a point.

    F0 is constant: 2 blockdiag(1, G).  For i >= 1, Fi has a zero corner,
    off-diagonal blocks 2 sum_a c_a a_i a, and lower-right block
    lambda sum_a c_a a_i cot(a(x)) a x a, with lambda the principal square
    root of lambda_squared.
    """
    if cfg.gram_det == 0:
        raise DegenerateForm("the form G is degenerate")
    lam2 = complex(lambda_squared)
    if lam2 == 0:
        raise ZeroLambda("lambda must be nonzero")
    lam = cmath.sqrt(lam2)
    n = cfg.dim
    a = _float_covectors(cfg)
    c = np.array([float(e.mult) for e in cfg.entries])
    x = np.asarray(point.x, dtype=complex)
    values = a @ x
    sins = np.sin(values)
    margin = float(np.min(np.abs(sins)))
    if margin < 1e-12:
        raise SingularPoint(f"point margin {margin} too small")
    cots = np.cos(values) / sins

    gram = np.array([[float(v) for v in row] for row in cfg.gram.entries])
    f0 = np.zeros((n + 1, n + 1), dtype=complex)
    f0[0, 0] = 2.0
    f0[1:, 1:] = 2.0 * gram

    matrices = [f0]
    for i in range(n):
        fi = np.zeros((n + 1, n + 1), dtype=complex)
        top = 2.0 * (c * a[:, i]) @ a
        fi[0, 1:] = top
        fi[1:, 0] = top
        weights = c * a[:, i] * cots
        fi[1:, 1:] = lam * (a.T * weights) @ a
        matrices.append(fi)
    return matrices


def wdvv_residual(
    cfg: VConfiguration,
    lambda_squared,
    num_points: int = 10,
    seed: int = 0,
    margin_floor: float = 0.1,
) -> ResidualReport:
    """Max WDVV commutator residual over seeded sample points (pivot k = 0)."""
    if cfg.gram_det == 0:
        raise DegenerateForm("the form G is degenerate")
    points = sample_points(cfg, num_points, seed, margin_floor)
    n = cfg.dim
    f0_inv = None
    per_point = []
    for p in points:
        mats = third_derivative_matrices(cfg, lambda_squared, p)
        if f0_inv is None:
            f0_inv = np.linalg.inv(mats[0])
        worst = 0.0
        for i in range(n + 1):
            left_i = mats[i] @ f0_inv
            for j in range(i + 1, n + 1):
                res = left_i @ mats[j] - mats[j] @ f0_inv @ mats[i]
                worst = max(worst, float(np.max(np.abs(res))))
        per_point.append(worst)
    return ResidualReport(
        per_point=tuple(per_point),
        aggregate=max(per_point),
        points=points,
        seed=seed,
    )


def eval_prepotential(
    cfg: VConfiguration, lambda_squared, psys: PositiveSystem, point: EvalPoint
) -> complex:
    """Evaluate F = y^3/3 + sum c a(x)^2 y + lambda sum c f(a(x)).

    Covector signs come from the positive system; every signed a(x) must have
    negative imaginary part so the trilogarithm series converges.
    """
    if cfg.gram_det == 0:
        raise DegenerateForm("the form G is degenerate")
    lam = cmath.sqrt(complex(lambda_squared))
    x = np.asarray(point.x, dtype=complex)
    signed = signed_covectors(cfg, psys)
    total = point.y**3 / 3
    for vec, entry in zip(signed, cfg.entries):
        av = complex(sum(float(vc) * xv for vc, xv in zip(vec, x)))
        if av.imag >= 0:
            raise OutOfDomain(
                f"Im a(x) = {av.imag:.6f} >= 0 for covector {entry.label}; "
                "trilogarithm series diverges"
            )
        total += float(entry.mult) * (av**2 * point.y + lam * f_trig(av))
    return total
