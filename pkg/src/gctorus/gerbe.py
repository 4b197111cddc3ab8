"""Trivial gerbes with flat connections on the standard 9^n torus cover.

The cover indexes charts by a pair of n-tuples with entries in {1,2,3},
one tuple per coordinate block; each slot selects one of three
overlapping intervals on the circle.  Any two charts intersect; a triple
(or quadruple) of charts intersects iff no slot sees all three interval
labels at once.  All geometric reasoning reduces to this index
arithmetic: an overlap "wraps" in a slot exactly when the two labels are
1 and 3, and the chart lifts then differ by an integer shift recorded in
a wrap vector.

A gerbe connection assigns to every ordered chart pair an overlap
one-form (built from the wrap vector and the twist matrix) and to every
chart the same global two-form.  The axiom checker verifies the section
cocycle, triple-overlap flatness, the curvature cocycle and the
compatibility of the chart two-forms, exhaustively for n <= 2 and on a
seeded sample of index tuples for larger n.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Optional, Tuple

from .errors import DimensionMismatchError, NotAlternatingError
from .forms import (
    CoordSystem,
    Form,
    complex_coords,
    constant_covector_row,
    covector_pairing,
    mirror_coords,
)
from .linalg import MINUS_I, ONE, CMatrix, CScalar, alt_check
from .report import AxiomReport
from .sampling import DEFAULT_AX_SAMPLES

COMPLEX_SIDE = "complex"
MIRROR_SIDE = "mirror"

# Exhaustive enumeration is reserved for covers of at most this many charts
# (n <= 2); beyond that the checkers draw seeded samples.
EXHAUSTIVE_CHART_LIMIT = 81


@dataclass(frozen=True)
class CoverIndex:
    """Chart label: one interval choice per slot of each coordinate block."""

    l: Tuple[int, ...]
    m: Tuple[int, ...]

    def __post_init__(self):
        if len(self.l) != len(self.m):
            raise DimensionMismatchError("chart label blocks differ in length")
        for v in self.l + self.m:
            if v not in (1, 2, 3):
                raise ValueError(f"chart labels live in {{1,2,3}}, got {v}")

    @property
    def n(self) -> int:
        return len(self.l)

    def slots(self) -> Tuple[int, ...]:
        return self.l + self.m

    def __str__(self) -> str:
        return "(" + "".join(map(str, self.l)) + ";" + "".join(map(str, self.m)) + ")"


def cover_indices(n: int) -> Iterator[CoverIndex]:
    values = (1, 2, 3)
    for l in itertools.product(values, repeat=n):
        for m in itertools.product(values, repeat=n):
            yield CoverIndex(l, m)


def cover_size(n: int) -> int:
    return 9 ** n


def _slot_shift(a: int, b: int) -> int:
    # Lift difference for one slot of the ordered pair (a, b): the chart
    # labelled 3 sees the wrap region near 1, the chart labelled 1 near 0.
    if a == 3 and b == 1:
        return 1
    if a == 1 and b == 3:
        return -1
    return 0


def wrap_vector(i: CoverIndex, j: CoverIndex) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Integer lift shifts (base block, fiber block) of chart i relative to j."""
    dl = tuple(_slot_shift(a, b) for a, b in zip(i.l, j.l))
    dm = tuple(_slot_shift(a, b) for a, b in zip(i.m, j.m))
    return dl, dm


def _values_compatible(values: Iterable[int]) -> bool:
    return set(values) != {1, 2, 3}


def charts_intersect(*charts: CoverIndex) -> bool:
    """Whether the listed charts have a common nonempty intersection."""
    for slot in range(2 * charts[0].n):
        if not _values_compatible(c.slots()[slot] for c in charts):
            return False
    return True


def nonempty_triples(n: int, limit: Optional[int], seed: int) -> Iterator[Tuple[CoverIndex, CoverIndex, CoverIndex]]:
    """Unordered chart triples with nonempty overlap.

    Exhaustive when the cover is small or ``limit`` is None is not given;
    otherwise a seeded pseudorandom sample of ``limit`` triples.
    """
    charts = list(cover_indices(n))
    if limit is None:
        for i, j, k in itertools.combinations(charts, 3):
            if charts_intersect(i, j, k):
                yield (i, j, k)
        return
    rng = random.Random(seed)
    produced = 0
    while produced < limit:
        i, j, k = rng.sample(charts, 3)
        if charts_intersect(i, j, k):
            yield (i, j, k)
            produced += 1


@dataclass(frozen=True)
class GerbeConnection:
    """Trivial gerbe on the 9^n cover with a flat connection.

    The overlap one-forms are determined by the twist matrix and the wrap
    vector of the ordered chart pair; every chart carries the same global
    two-form.  ``overrides`` allows tests to corrupt individual overlaps.
    """

    n: int
    tau: CMatrix
    side: str
    coords: CoordSystem
    overrides: Dict[Tuple[CoverIndex, CoverIndex], Form] = field(default_factory=dict)

    def zero_conn(self, i: CoverIndex, j: CoverIndex) -> Form:
        """Overlap one-form of the ordered chart pair (i, j)."""
        override = self.overrides.get((i, j))
        if override is not None:
            return override
        dl, _ = wrap_vector(i, j)
        return self._wrap_form(dl)

    def _wrap_form(self, dl: Tuple[int, ...]) -> Form:
        # pi * sum over wrapped slots s of (-shift_s) tau_s^t dx, i.e. the
        # covector coefficient vector is -pi * tau^t * shift.
        coeffs = []
        for t in range(self.n):
            acc = Fraction(0)
            for s in range(self.n):
                if dl[s]:
                    acc -= dl[s] * self.tau[(s, t)].re
            coeffs.append(CScalar(acc))
        return constant_covector_row(self.coords, coeffs, cov_offset=0, pi_power=1)

    def one_conn(self) -> Form:
        """The global chart two-form: -i pi dx^t tau dx (same on every chart)."""
        return covector_quadratic(self.coords, self.tau)

    def section_value(self, i: CoverIndex, j: CoverIndex, k: CoverIndex) -> CScalar:
        """Triple-overlap section value; identically one for the trivial gerbe."""
        return ONE

    def with_corrupted_pair(self, i: CoverIndex, j: CoverIndex) -> "GerbeConnection":
        """Copy with the (i, j) overlap one-form sign-flipped (and the (j, i)
        form kept antisymmetric), for negative tests."""
        flipped = -self.zero_conn(i, j)
        overrides = dict(self.overrides)
        overrides[(i, j)] = flipped
        overrides[(j, i)] = -flipped
        return GerbeConnection(self.n, self.tau, self.side, self.coords, overrides)

    def twist_is_integral(self) -> bool:
        return self.tau.is_integer()


def covector_quadratic(coords: CoordSystem, tau: CMatrix) -> Form:
    """-i pi dx^t tau dx over the base covector block."""
    return covector_pairing(coords, tau, row_offset=0, col_offset=0, scalar=MINUS_I, pi_power=1)


def build_gerbe(n: int, tau: CMatrix, side: str = COMPLEX_SIDE) -> GerbeConnection:
    """Construct the trivial gerbe with the flat connection of twist ``tau``."""
    if tau.rows != n or tau.cols != n:
        raise DimensionMismatchError(f"twist must be {n}x{n}")
    if not alt_check(tau):
        raise NotAlternatingError("twist must be an alternating real matrix")
    if side == COMPLEX_SIDE:
        coords = complex_coords(n)
    elif side == MIRROR_SIDE:
        coords = mirror_coords(n)
    else:
        raise ValueError(f"unknown side {side!r}")
    return GerbeConnection(n, tau, side, coords)


def check_gerbe_axioms(
    gerbe: GerbeConnection,
    samples: int = DEFAULT_AX_SAMPLES,
    seed: int = 0,
) -> AxiomReport:
    """Verify the four connection axioms and report per-axiom pass/fail.

    * section-cocycle: the product of triple-overlap section values around
      every nonempty quadruple is one.
    * overlap-flatness: the cyclic sum of overlap one-forms vanishes on
      every nonempty triple.
    * curvature-cocycle: the cyclic sum of overlap curvatures d(one-form)
      vanishes on every nonempty triple.
    * compatibility: the difference of the chart two-forms across an
      overlap equals the overlap curvature.
    """
    n = gerbe.n
    report = AxiomReport()
    exhaustive = cover_size(n) <= EXHAUSTIVE_CHART_LIMIT
    limit = None if exhaustive else samples
    charts = list(cover_indices(n))

    # Fast paths keyed on wrap classes are only sound without corruptions:
    # the connection forms depend on the chart pair through its wrap vector.
    clean = not gerbe.overrides
    form_memo: Dict = {}
    triple_memo: Dict = {}

    def zero_conn(i, j):
        if not clean:
            return gerbe.zero_conn(i, j)
        dl, _ = wrap_vector(i, j)
        form = form_memo.get(dl)
        if form is None:
            form = gerbe.zero_conn(i, j)
            form_memo[dl] = form
        return form

    def triple_defects(i, j, k):
        """(flatness defect, curvature defect) for one nonempty triple."""
        if clean:
            key = (wrap_vector(i, j)[0], wrap_vector(j, k)[0], wrap_vector(k, i)[0])
            cached = triple_memo.get(key)
            if cached is not None:
                return cached
        total = zero_conn(i, j) + zero_conn(j, k) + zero_conn(k, i)
        curv = zero_conn(i, j).d() + zero_conn(j, k).d() + zero_conn(k, i).d()
        result = (total, curv)
        if clean:
            triple_memo[key] = result
        return result

    # -- section cocycle over quadruples ------------------------------------
    witness = None
    for i, j, k, l in _quadruples(charts, limit, seed):
        values = (
            gerbe.section_value(j, k, l),
            gerbe.section_value(i, k, l),
            gerbe.section_value(i, j, l),
            gerbe.section_value(i, j, k),
        )
        if all(v is ONE for v in values):
            continue  # product of unit sections is one
        product = values[0] * values[1].conjugate() * values[2] * values[3].conjugate()
        if product != ONE:
            witness = f"{i}{j}{k}{l}"
            break
    report.add("section-cocycle", witness is None, witness)

    # -- flatness and curvature cocycle over triples --------------------------
    flat_witness = None
    curv_witness = None
    for i, j, k in nonempty_triples(n, limit, seed):
        total, curv_total = triple_defects(i, j, k)
        if flat_witness is None and not total.is_zero():
            flat_witness = f"{i}{j}{k}: {total.render()}"
        if curv_witness is None and not curv_total.is_zero():
            curv_witness = f"{i}{j}{k}: {curv_total.render()}"
        if flat_witness is not None and curv_witness is not None:
            break
    report.add("overlap-flatness", flat_witness is None, flat_witness)
    report.add("curvature-cocycle", curv_witness is None, curv_witness)

    # -- compatibility over pairs ---------------------------------------------
    compat_witness = None
    beta = gerbe.one_conn()
    for i, j in _pairs(charts, limit, seed):
        delta_beta = beta - beta  # every chart carries the same two-form
        omega = zero_conn(i, j).d()
        if delta_beta != omega:
            compat_witness = f"{i}{j}: {(omega - delta_beta).render()}"
            break
    report.add("compatibility", compat_witness is None, compat_witness)
    return report


def _quadruples(charts, limit: Optional[int], seed: int):
    """Nonempty chart quadruples: exhaustive (bitmask filter) or seeded sample."""
    if limit is None:
        sigs = [tuple(1 << v for v in c.slots()) for c in charts]
        nslots = len(charts[0].slots())
        full = (1 << 1) | (1 << 2) | (1 << 3)
        for a, b, c, d in itertools.combinations(range(len(charts)), 4):
            sa, sb, sc, sd = sigs[a], sigs[b], sigs[c], sigs[d]
            for s in range(nslots):
                if sa[s] | sb[s] | sc[s] | sd[s] == full:
                    break
            else:
                yield (charts[a], charts[b], charts[c], charts[d])
        return
    rng = random.Random(seed + 1)
    produced = 0
    while produced < limit:
        quad = tuple(rng.sample(charts, 4))
        if charts_intersect(*quad):
            yield quad
            produced += 1


def _pairs(charts, limit: Optional[int], seed: int):
    if limit is None:
        yield from itertools.permutations(charts, 2)
        return
    rng = random.Random(seed + 2)
    for _ in range(limit):
        yield tuple(rng.sample(charts, 2))
