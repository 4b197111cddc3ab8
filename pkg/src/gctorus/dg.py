"""Hom-complex algebra between complex-side objects.

Morphisms are single-chart symbolic representatives: antiholomorphic
forms of pure bidegree (0, r) with polynomial coefficients.  The
differential conjugates the antiholomorphic derivative by the
(0,1)-parts of the endpoint connections; because the twist contributes a
scalar one-form, its graded commutator vanishes and the differential is
computed with the untwisted parts (a fact the verifier re-checks by
running both routes).  Over integrable endpoints the differential
squares to zero and satisfies the graded Leibniz rule with respect to
wedge composition; the verifier samples random morphisms with a fixed
seed and checks both identities exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, Optional, Sequence

from .bundles import ComplexSideObject, check_integrability, connection_form
from .errors import (
    ChainMismatchError,
    NonIntegrableObjectError,
    ParameterMismatchError,
)
from .forms import PQForm, Poly, complex_coords, pq_split
from .linalg import CScalar
from .sampling import random_rational

MAX_COEFF_DEGREE = 2  # bounded-degree morphism coefficients; identities are multilinear


@dataclass(frozen=True)
class Morphism:
    """Degree-r hom element between two objects of the same twisted torus."""

    source: ComplexSideObject
    target: ComplexSideObject
    degree: int
    body: PQForm

    def __post_init__(self):
        if (
            self.source.period.matrix != self.target.period.matrix
            or self.source.tau != self.target.tau
        ):
            raise ParameterMismatchError(
                "morphism endpoints must share the period matrix and twist"
            )
        bad = [bd for bd in self.body.bidegrees() if bd != (0, self.degree)]
        if bad:
            raise ValueError(f"body holds bidegrees {bad}, expected (0, {self.degree})")


def identity_morphism(obj: ComplexSideObject) -> Morphism:
    body = PQForm.scalar(complex_coords(obj.n), obj.period, CScalar(1))
    return Morphism(obj, obj, 0, body)


def _antiholomorphic_connection(obj: ComplexSideObject, twisted: bool) -> PQForm:
    source = obj if twisted else obj.untwisted()
    return pq_split(connection_form(source), obj.period).component(0, 1)


def differential(phi: Morphism, use_twisted_connection: bool = False) -> Morphism:
    """The hom-complex differential of a degree-r morphism.

    dbar(phi) + omega_target^(0,1) ^ phi - (-1)^r phi ^ omega_source^(0,1).
    The untwisted (0,1)-parts are used by default; passing
    ``use_twisted_connection=True`` exercises the cancellation of the
    twist term and must give the same answer.
    """
    r = phi.degree
    dbar = pq_split(phi.body.to_form().d(), phi.source.period).component(0, r + 1)
    omega_t = _antiholomorphic_connection(phi.target, use_twisted_connection)
    omega_s = _antiholomorphic_connection(phi.source, use_twisted_connection)
    tail = phi.body.wedge(omega_s)
    if r % 2 == 0:
        tail = -tail
    body = dbar + omega_t.wedge(phi.body) + tail
    return Morphism(phi.source, phi.target, r + 1, body)


def compose(psi: Morphism, phi: Morphism) -> Morphism:
    """Wedge composition; degrees add and the chain must match."""
    if not psi.source.shares_parameters(phi.target):
        raise ChainMismatchError("composition needs matching middle object")
    return Morphism(
        phi.source, psi.target, psi.degree + phi.degree, psi.body.wedge(phi.body)
    )


def random_morphism(
    rng: random.Random,
    source: ComplexSideObject,
    target: ComplexSideObject,
    degree: Optional[int] = None,
) -> Morphism:
    """Seeded random morphism with bounded polynomial coefficients."""
    n = source.n
    coords = complex_coords(n)
    if degree is None:
        degree = rng.randint(0, min(2, n))
    terms: Dict[tuple, Poly] = {}
    index_pool = list(range(n, 2 * n))
    for _ in range(rng.randint(1, 2)):
        picks = tuple(sorted(rng.sample(index_pool, degree)))
        poly = Poly.zero(coords.nvars)
        for _ in range(rng.randint(1, 3)):
            expo = [0] * (coords.nvars + 1)
            for _ in range(rng.randint(0, MAX_COEFF_DEGREE)):
                expo[rng.randrange(coords.nvars)] += 1
            coeff = CScalar(random_rational(rng), random_rational(rng))
            poly = poly + Poly(coords.nvars, {tuple(expo): coeff})
        if poly.is_zero():
            poly = Poly.const(coords.nvars, CScalar(1))
        acc = terms.get(picks)
        terms[picks] = poly if acc is None else acc + poly
    body = PQForm(coords, source.period, terms)
    if body.is_zero():
        body = PQForm.scalar(coords, source.period, CScalar(1))
        degree = 0
    return Morphism(source, target, degree, body)


def verify_dg_axioms(
    objects: Sequence[ComplexSideObject],
    samples: int = 100,
    seed: int = 0,
):
    """Check the hom-complex identities on sampled morphisms.

    Refuses non-integrable objects (their curvature obstructs the square
    of the differential).  Returns an AxiomReport with one line per
    identity: differential-squared, leibniz, twist-cancellation.
    """
    from .report import AxiomReport

    if not objects:
        raise ValueError("need at least one object")
    first = objects[0]
    for obj in objects[1:]:
        if obj.period.matrix != first.period.matrix or obj.tau != first.tau:
            raise ParameterMismatchError("objects must share the period matrix and twist")
    for obj in objects:
        if not check_integrability(obj).integrable:
            raise NonIntegrableObjectError(
                "object with asymmetric section-period product refused"
            )

    rng = random.Random(seed)
    report = AxiomReport()

    d2_witness = None
    for _ in range(samples):
        src, tgt = rng.choice(objects), rng.choice(objects)
        phi = random_morphism(rng, src, tgt)
        square = differential(differential(phi))
        if not square.body.is_zero():
            d2_witness = square.body.render()
            break
    report.add("differential-squared", d2_witness is None, d2_witness)

    leibniz_witness = None
    for _ in range(samples):
        o1, o2, o3 = rng.choice(objects), rng.choice(objects), rng.choice(objects)
        phi = random_morphism(rng, o1, o2)
        psi = random_morphism(rng, o2, o3)
        lhs = differential(compose(psi, phi))
        rhs = compose(differential(psi), phi).body + (
            compose(psi, differential(phi)).body
            if psi.degree % 2 == 0
            else -compose(psi, differential(phi)).body
        )
        if lhs.body != rhs:
            leibniz_witness = (lhs.body - rhs).render()
            break
    report.add("leibniz", leibniz_witness is None, leibniz_witness)

    twist_witness = None
    for _ in range(samples):
        src, tgt = rng.choice(objects), rng.choice(objects)
        phi = random_morphism(rng, src, tgt)
        plain = differential(phi)
        twisted = differential(phi, use_twisted_connection=True)
        if plain.body != twisted.body:
            twist_witness = (plain.body - twisted.body).render()
            break
    report.add("twist-cancellation", twist_witness is None, twist_witness)
    return report
