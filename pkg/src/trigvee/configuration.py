"""Covector configurations with multiplicities.

A configuration is a finite list of nonzero rational covectors with nonzero
rational multiplicities.  Building one caches the bilinear form
G = sum_a c_a a^T a, its determinant, and an integer lattice basis for the
covectors.  The form identifies vectors and covectors; all pairings of
covectors below go through its inverse (the "vee product").
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    DegenerateForm,
    DimensionMismatch,
    DuplicateCovector,
    FunctionalVanishes,
    ZeroCovector,
    ZeroMultiplicity,
)
from .exactnum import (
    RatMatrix,
    as_rational,
    hnf_basis,
    lattice_coordinates,
    mat_inverse,
    rref,
)

Covector = tuple[Fraction, ...]


def covector(coords: Iterable) -> Covector:
    return tuple(as_rational(x) for x in coords)


def cov_neg(v: Covector) -> Covector:
    return tuple(-x for x in v)

def cov_add(u: Covector, v: Covector) -> Covector:
    return tuple(a + b for a, b in zip(u, v))

def cov_scale(c, v: Covector) -> Covector:
    c = as_rational(c)
    return tuple(c * x for x in v)

def cov_dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((as_rational(a) * as_rational(b) for a, b in zip(u, v)), Fraction(0))


def wedge_coeffs(u: Covector, v: Covector) -> tuple[Fraction, ...]:
    """Coefficients of u ^ v in the ordered basis e^i ^ e^j, i < j."""
    n = len(u)
    return tuple(u[i] * v[j] - u[j] * v[i] for i in range(n) for j in range(i + 1, n))


def is_parallel(u: Covector, v: Covector) -> bool:
    """True when u and v span the same line (both assumed nonzero)."""
    return all(x == 0 for x in wedge_coeffs(u, v))


@dataclass(frozen=True)
class ConfigEntry:
    covector: Covector
    mult: Fraction
    label: str


@dataclass(frozen=True)
class PositiveSystem:
    """Signs putting every covector strictly inside a half-space."""

    signs: tuple[int, ...]
    functional: Covector


@dataclass(frozen=True)
class SeriesMember:
    """One covector of a series: sign * covector + step * base = residue."""

    entry_index: int
    sign: int
    step: int


@dataclass(frozen=True)
class AlphaSeries:
    """A maximal series of covectors relative to a base covector.

    Any two members b1, b2 satisfy b1 - b2 = k * base or b1 + b2 = k * base
    with k an integer in lattice coordinates; the residue is the canonical
    representative of the common class modulo integer steps of the base.
    """

    base_index: int
    residue: tuple[int, ...]
    members: tuple[SeriesMember, ...]

    def entry_indices(self) -> tuple[int, ...]:
        return tuple(m.entry_index for m in self.members)


@dataclass(frozen=True)
class VConfiguration:
    dim: int
    entries: tuple[ConfigEntry, ...]
    gram: RatMatrix
    gram_det: Fraction
    lattice_basis: tuple[Covector, ...]
    lattice_coords: tuple[tuple[int, ...], ...]

    @cached_property
    def gram_inverse(self) -> RatMatrix:
        if self.gram_det == 0:
            raise DegenerateForm("the form G is degenerate")
        return mat_inverse(self.gram)

    def covectors(self) -> tuple[Covector, ...]:
        return tuple(e.covector for e in self.entries)

    def mults(self) -> tuple[Fraction, ...]:
        return tuple(e.mult for e in self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def build_configuration(dim: int, entries: Iterable) -> VConfiguration:
    """Assemble and validate a configuration.

    `entries` is an iterable of (coords, mult) or (coords, mult, label).
    Covectors equal up to sign are rejected; genuinely distinct parallel
    covectors (like e1 and 2*e1) are allowed.
    """
    if dim < 1:
        raise DimensionMismatch("dimension must be at least 1")
    built: list[ConfigEntry] = []
    for k, item in enumerate(entries):
        if len(item) == 3:
            coords, mult, label = item
        else:
            coords, mult = item
            label = f"v{k}"
        v = covector(coords)
        if len(v) != dim:
            raise DimensionMismatch(f"entry {label}: expected {dim} coordinates, got {len(v)}")
        if all(x == 0 for x in v):
            raise ZeroCovector(f"entry {label} is the zero covector")
        c = as_rational(mult)
        if c == 0:
            raise ZeroMultiplicity(f"entry {label} has multiplicity 0")
        for prev in built:
            if v == prev.covector or v == cov_neg(prev.covector):
                raise DuplicateCovector(f"entries {prev.label} and {label} coincide up to sign")
        built.append(ConfigEntry(v, c, label))
    if not built:
        raise ZeroCovector("configuration needs at least one covector")

    gram_rows = [[Fraction(0)] * dim for _ in range(dim)]
    for e in built:
        for i in range(dim):
            if e.covector[i] == 0:
                continue
            ci = e.mult * e.covector[i]
            for j in range(dim):
                gram_rows[i][j] += ci * e.covector[j]
    gram = RatMatrix(gram_rows)

    basis, _rank = hnf_basis([e.covector for e in built])
    coords_list = []
    for e in built:
        coords = lattice_coordinates(basis, e.covector)
        # always succeeds: the basis generates the Z-span of these covectors
        assert coords is not None
        coords_list.append(coords)

    return VConfiguration(
        dim=dim,
        entries=tuple(built),
        gram=gram,
        gram_det=gram.det(),
        lattice_basis=basis,
        lattice_coords=tuple(coords_list),
    )


def dual_vector(cfg: VConfiguration, v: Sequence) -> tuple[Fraction, ...]:
    """The vector dual to covector v under the form: gram . result = v^T."""
    if cfg.gram_det == 0:
        raise DegenerateForm("the form G is degenerate")
    return cfg.gram_inverse.mat_vec(v)


def vee_product(cfg: VConfiguration, u: Sequence, v: Sequence) -> Fraction:
    """Inner product of covectors induced by the form: u . G^-1 . v^T."""
    return cov_dot(u, dual_vector(cfg, v))


def vee_pairing_matrix(cfg: VConfiguration) -> RatMatrix:
    """Matrix of the covector inner product, i.e. G^-1."""
    if cfg.gram_det == 0:
        raise DegenerateForm("the form G is degenerate")
    return cfg.gram_inverse


def positive_system(cfg: VConfiguration, functional: Sequence | None = None) -> PositiveSystem:
    """Choose signs making every covector strictly positive on a functional.

    When no functional is supplied, the row (1, t, t^2, ...) is used with t
    the smallest positive integer that vanishes on no covector, which keeps
    the result deterministic.
    """
    if functional is not None:
        f = covector(functional)
        if len(f) != cfg.dim:
            raise DimensionMismatch("functional has wrong length")
        values = [cov_dot(f, e.covector) for e in cfg.entries]
        if any(val == 0 for val in values):
            bad = next(e.label for e, val in zip(cfg.entries, values) if val == 0)
            raise FunctionalVanishes(f"functional vanishes on covector {bad}")
    else:
        t = 1
        while True:
            f = covector([Fraction(t) ** k for k in range(cfg.dim)])
            values = [cov_dot(f, e.covector) for e in cfg.entries]
            if all(val != 0 for val in values):
                break
            t += 1
    signs = tuple(1 if val > 0 else -1 for val in values)
    return PositiveSystem(signs=signs, functional=f)


def signed_covectors(cfg: VConfiguration, psys: PositiveSystem) -> tuple[Covector, ...]:
    return tuple(
        e.covector if s == 1 else cov_neg(e.covector) for e, s in zip(cfg.entries, psys.signs)
    )


def _coset_rep(b: tuple[int, ...], a: tuple[int, ...], pivot: int) -> tuple[tuple[int, ...], int]:
    """Reduce b modulo integer multiples of a; returns (representative, step).

    `a[pivot]` must be positive; the representative has its pivot coordinate
    in [0, a[pivot]), which pins down the step uniquely.
    """
    k = b[pivot] // a[pivot]
    return tuple(x - k * y for x, y in zip(b, a)), -k


def alpha_series(cfg: VConfiguration, base_index: int) -> tuple[AlphaSeries, ...]:
    """Partition the entries non-parallel to the base covector into series.

    Two covectors share a series exactly when their difference or sum is an
    integer multiple of the base in lattice coordinates.  Entries parallel
    to the base (including the base itself) belong to no series.
    """
    base = cfg.entries[base_index].covector
    a = cfg.lattice_coords[base_index]
    pivot = next(j for j, x in enumerate(a) if x != 0)
    if a[pivot] < 0:
        a = tuple(-x for x in a)
        flipped = True
    else:
        flipped = False

    groups: dict[tuple[int, ...], list[SeriesMember]] = {}
    for j, e in enumerate(cfg.entries):
        if j == base_index or is_parallel(e.covector, base):
            continue
        b = cfg.lattice_coords[j]
        rep_pos, step_pos = _coset_rep(b, a, pivot)
        rep_neg, step_neg = _coset_rep(tuple(-x for x in b), a, pivot)
        if rep_pos <= rep_neg:
            key, sign, step = rep_pos, 1, step_pos
        else:
            key, sign, step = rep_neg, -1, step_neg
        if flipped:
            step = -step
        groups.setdefault(key, []).append(SeriesMember(j, sign, step))

    series = [
        AlphaSeries(base_index=base_index, residue=key, members=tuple(sorted(ms, key=lambda m: m.entry_index)))
        for key, ms in groups.items()
    ]
    series.sort(key=lambda s: s.members[0].entry_index)
    return tuple(series)


def relative_wedge_signs(series: AlphaSeries) -> tuple[int, ...]:
    """Signs r with member = r * (first member) modulo the base direction.

    For members of one series, base ^ member = r * (base ^ first_member),
    so these signs turn the series 2-form condition into a scalar sum.
    """
    s0 = series.members[0].sign
    return tuple(m.sign * s0 for m in series.members)


def decompose_components(cfg: VConfiguration) -> list[VConfiguration]:
    """Split into irreducible components orthogonal under the vee product.

    Components are the connected parts of the graph whose edges join entries
    with nonzero vee product; each is rebuilt on a basis of its own span.
    Returns a single-element list exactly when the configuration is
    irreducible.
    """
    if cfg.gram_det == 0:
        raise DegenerateForm("the form G is degenerate")
    n = len(cfg.entries)
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if vee_product(cfg, cfg.entries[i].covector, cfg.entries[j].covector) != 0:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj

    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    components = sorted(groups.values(), key=min)
    if len(components) == 1:
        return [cfg]

    result = []
    for idx_list in components:
        rows = [cfg.entries[i].covector for i in idx_list]
        basis, pivots = rref(rows)
        sub_entries = []
        for i in idx_list:
            v = cfg.entries[i].covector
            coords = tuple(v[p] for p in pivots)
            # rref basis rows carry an identity pattern on pivot columns,
            # so coordinates read off there must reconstruct v exactly
            recon = [Fraction(0)] * cfg.dim
            for c, brow in zip(coords, basis):
                for k in range(cfg.dim):
                    recon[k] += c * brow[k]
            assert tuple(recon) == v
            sub_entries.append((coords, cfg.entries[i].mult, cfg.entries[i].label))
        result.append(build_configuration(len(basis), sub_entries))
    return result


def direct_sum(left: VConfiguration, right: VConfiguration) -> VConfiguration:
    """Block-embed two configurations side by side in dim(left)+dim(right)."""
    dim = left.dim + right.dim
    entries = []
    for e in left.entries:
        entries.append((e.covector + (Fraction(0),) * right.dim, e.mult, f"L.{e.label}"))
    for e in right.entries:
        entries.append(((Fraction(0),) * left.dim + e.covector, e.mult, f"R.{e.label}"))
    return build_configuration(dim, entries)
