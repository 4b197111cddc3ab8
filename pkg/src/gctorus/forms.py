"""Symbolic exterior algebra with polynomial coefficients.

Forms live over the 2n real torus coordinates of either the complex side
(x_1..x_n, y_1..y_n) or the mirror side (xv_1..xv_n, yv_1..yv_n, the
checked coordinates).  Coefficients are polynomials in those coordinates
with exact Gaussian-rational coefficients; the transcendental constant pi
is carried as a distinguished extra polynomial slot so that expressions
of mixed pi-degree stay exact.  The exterior derivative treats pi as a
constant.

:class:`PQForm` re-expresses a real form over the antiholomorphic /
holomorphic covector basis determined by a period matrix; the covector
substitution is invertible, so splitting and resubstituting round-trips
exactly.  Coordinates themselves are never rewritten: only covectors
change basis, and all identity checking happens on canonical coefficient
dictionaries.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Sequence, Tuple, Union

from .errors import (
    CoordinateMismatchError,
    DimensionMismatchError,
)
from .linalg import ONE, ZERO, CMatrix, CScalar, PeriodMatrix, _coerce

Expo = Tuple[int, ...]
Indices = Tuple[int, ...]


@dataclass(frozen=True)
class CoordSystem:
    """Named real coordinates of one side of the mirror pair.

    ``variables`` lists the 2n coordinate names (first the base block,
    then the fiber block); ``covectors`` their differentials in the same
    order.  Polynomials over this system additionally carry one trailing
    exponent slot for pi.
    """

    side: str
    n: int
    variables: Tuple[str, ...]
    covectors: Tuple[str, ...]

    @property
    def nvars(self) -> int:
        return 2 * self.n

    def x_index(self, i: int) -> int:
        return i

    def y_index(self, i: int) -> int:
        return self.n + i


def complex_coords(n: int) -> CoordSystem:
    names = tuple(f"x{i+1}" for i in range(n)) + tuple(f"y{i+1}" for i in range(n))
    covs = tuple(f"dx{i+1}" for i in range(n)) + tuple(f"dy{i+1}" for i in range(n))
    return CoordSystem("complex", n, names, covs)


def mirror_coords(n: int) -> CoordSystem:
    # "v" marks the checked (mirror-side) coordinates.
    names = tuple(f"xv{i+1}" for i in range(n)) + tuple(f"yv{i+1}" for i in range(n))
    covs = tuple(f"dxv{i+1}" for i in range(n)) + tuple(f"dyv{i+1}" for i in range(n))
    return CoordSystem("mirror", n, names, covs)


def _term_sort_key(expo: Expo):
    return (-sum(expo), tuple(-e for e in expo))


class Poly:
    """Polynomial in the 2n coordinates and pi, over exact complex rationals.

    Terms map exponent tuples of length ``nvars + 1`` (the trailing slot
    is the pi power) to nonzero :class:`CScalar` coefficients.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Dict[Expo, CScalar]):
        self.nvars = nvars
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}

    # --- constructors -----------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "Poly":
        return Poly(nvars, {})

    @staticmethod
    def const(nvars: int, value, pi_power: int = 0) -> "Poly":
        c = value if isinstance(value, CScalar) else CScalar(value)
        expo = (0,) * nvars + (pi_power,)
        return Poly(nvars, {expo: c})

    @staticmethod
    def variable(nvars: int, index: int) -> "Poly":
        expo = tuple(1 if k == index else 0 for k in range(nvars)) + (0,)
        return Poly(nvars, {expo: ONE})

    # --- arithmetic ---------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            acc = out.get(e)
            out[e] = c if acc is None else acc + c
        return Poly(self.nvars, out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        out: Dict[Expo, CScalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                acc = out.get(e)
                out[e] = c if acc is None else acc + c
        return Poly(self.nvars, out)

    def scale(self, value) -> "Poly":
        c = value if isinstance(value, CScalar) else _coerce(value)
        if c is None:
            raise TypeError(f"cannot scale by {value!r}")
        return Poly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def diff(self, index: int) -> "Poly":
        """Partial derivative in coordinate ``index`` (pi is a constant)."""
        out: Dict[Expo, CScalar] = {}
        for e, c in self.terms.items():
            k = e[index]
            if k == 0:
                continue
            de = tuple(v - 1 if pos == index else v for pos, v in enumerate(e))
            dc = c * k
            acc = out.get(de)
            out[de] = dc if acc is None else acc + dc
        return Poly(self.nvars, out)

    def substitute(self, images: Dict[int, "Poly"]) -> "Poly":
        """Replace coordinate variables by polynomials (pi never changes)."""
        out = Poly.zero(self.nvars)
        for e, c in self.terms.items():
            term = Poly.const(self.nvars, c, pi_power=e[-1])
            for idx in range(self.nvars):
                power = e[idx]
                if power == 0:
                    continue
                base = images.get(idx)
                if base is None:
                    base = Poly.variable(self.nvars, idx)
                for _ in range(power):
                    term = term * base
            out = out + term
        return out

    def shift(self, offsets: Sequence[Fraction]) -> "Poly":
        """Substitute variable_i -> variable_i + offsets[i]."""
        images = {
            i: Poly.variable(self.nvars, i) + Poly.const(self.nvars, CScalar(off))
            for i, off in enumerate(offsets)
            if off != 0
        }
        return self.substitute(images) if images else self

    # --- predicates / rendering ----------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e[:-1]) == 0 for e in self.terms)

    def constant_value(self) -> CScalar:
        """Value of the pi-free constant term."""
        return self.terms.get((0,) * (self.nvars + 1), ZERO)

    def uses_variable(self, index: int) -> bool:
        return any(e[index] != 0 for e in self.terms)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def render(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_term_sort_key):
            c = self.terms[e]
            factors = []
            cs = str(c)
            if ("+" in cs[1:]) or ("-" in cs[1:]):
                cs = f"({cs})"
            factors.append(cs)
            if e[-1] == 1:
                factors.append("pi")
            elif e[-1] > 1:
                factors.append(f"pi^{e[-1]}")
            for idx in range(self.nvars):
                if e[idx] == 1:
                    factors.append(names[idx])
                elif e[idx] > 1:
                    factors.append(f"{names[idx]}^{e[idx]}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({len(self.terms)} terms)"

    def _check(self, other: "Poly") -> None:
        if self.nvars != other.nvars:
            raise DimensionMismatchError("polynomials over different variable counts")


PolyLike = Union[Poly, CScalar, int, Fraction]


def _merge_sign(left: Indices, right: Indices):
    """Sorted concatenation of two strictly increasing index tuples.

    Returns (indices, sign) or None when an index repeats.
    """
    sign = 1
    merged = list(left)
    for pos, idx in enumerate(right):
        if idx in merged:
            return None
        where = bisect_left(merged, idx)
        # idx moves left past the factors currently after position `where`,
        # plus the remaining untouched factors of `right` stay put.
        sign *= -1 if (len(merged) - where) % 2 else 1
        merged.insert(where, idx)
    return tuple(merged), sign


class _GradedTerms:
    """Shared engine for exterior-algebra term dictionaries."""

    @staticmethod
    def add(a: Dict[Indices, Poly], b: Dict[Indices, Poly], nvars: int) -> Dict[Indices, Poly]:
        out = dict(a)
        for idx, poly in b.items():
            acc = out.get(idx)
            merged = poly if acc is None else acc + poly
            if merged.is_zero():
                out.pop(idx, None)
            else:
                out[idx] = merged
        return out

    @staticmethod
    def wedge(a: Dict[Indices, Poly], b: Dict[Indices, Poly], nvars: int) -> Dict[Indices, Poly]:
        out: Dict[Indices, Poly] = {}
        for ia, pa in a.items():
            for ib, pb in b.items():
                merged = _merge_sign(ia, ib)
                if merged is None:
                    continue
                idx, sign = merged
                poly = pa * pb
                if sign < 0:
                    poly = -poly
                acc = out.get(idx)
                total = poly if acc is None else acc + poly
                if total.is_zero():
                    out.pop(idx, None)
                else:
                    out[idx] = total
        return out

    @staticmethod
    def substitute_covectors(
        terms: Dict[Indices, Poly],
        images: Sequence[Sequence[Tuple[CScalar, int]]],
        nvars: int,
    ) -> Dict[Indices, Poly]:
        """Rewrite each covector as a linear combination of new covectors."""
        out: Dict[Indices, Poly] = {}
        for idx_tuple, poly in terms.items():
            partial = [(ONE, ())]  # (scalar coefficient, new index tuple)
            for old in idx_tuple:
                grown = []
                for coeff, inds in partial:
                    for c, j in images[old]:
                        merged = _merge_sign(inds, (j,))
                        if merged is None:
                            continue
                        new_inds, sign = merged
                        factor = coeff * c
                        if sign < 0:
                            factor = -factor
                        grown.append((factor, new_inds))
                partial = grown
                if not partial:
                    break
            for coeff, inds in partial:
                if coeff.is_zero():
                    continue
                contrib = poly.scale(coeff)
                acc = out.get(inds)
                total = contrib if acc is None else acc + contrib
                if total.is_zero():
                    out.pop(inds, None)
                else:
                    out[inds] = total
        return out


class Form:
    """Differential form over a :class:`CoordSystem`.

    Terms map strictly increasing covector index tuples to polynomial
    coefficients; antisymmetry is normalised at construction, so equality
    is a straight coefficient comparison.  Forms may be inhomogeneous.
    """

    __slots__ = ("coords", "terms")

    def __init__(self, coords: CoordSystem, terms: Dict[Indices, Poly]):
        self.coords = coords
        self.terms = {i: p for i, p in terms.items() if not p.is_zero()}

    # --- constructors -----------------------------------------------------

    @staticmethod
    def zero(coords: CoordSystem) -> "Form":
        return Form(coords, {})

    @staticmethod
    def scalar(coords: CoordSystem, value: PolyLike, pi_power: int = 0) -> "Form":
        poly = value if isinstance(value, Poly) else Poly.const(coords.nvars, value, pi_power)
        return Form(coords, {(): poly})

    @staticmethod
    def covector(coords: CoordSystem, index: int, coeff: PolyLike = 1, pi_power: int = 0) -> "Form":
        poly = coeff if isinstance(coeff, Poly) else Poly.const(coords.nvars, coeff, pi_power)
        return Form(coords, {(index,): poly})

    # --- algebra ------------------------------------------------------------

    def __add__(self, other: "Form") -> "Form":
        self._compatible(other)
        return Form(self.coords, _GradedTerms.add(self.terms, other.terms, self.coords.nvars))

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __neg__(self) -> "Form":
        return Form(self.coords, {i: -p for i, p in self.terms.items()})

    def scale(self, value) -> "Form":
        return Form(self.coords, {i: p.scale(value) for i, p in self.terms.items()})

    def wedge(self, other: "Form") -> "Form":
        self._compatible(other)
        return Form(self.coords, _GradedTerms.wedge(self.terms, other.terms, self.coords.nvars))

    def d(self) -> "Form":
        """Exterior derivative; raises degree by one and satisfies d(d(f)) = 0."""
        out: Dict[Indices, Poly] = {}
        for idx_tuple, poly in self.terms.items():
            for v in range(self.coords.nvars):
                dp = poly.diff(v)
                if dp.is_zero():
                    continue
                merged = _merge_sign((v,), idx_tuple)
                if merged is None:
                    continue
                inds, sign = merged
                if sign < 0:
                    dp = -dp
                acc = out.get(inds)
                total = dp if acc is None else acc + dp
                if total.is_zero():
                    out.pop(inds, None)
                else:
                    out[inds] = total
        return Form(self.coords, out)

    # --- structure ------------------------------------------------------------

    def degrees(self) -> tuple:
        return tuple(sorted({len(i) for i in self.terms}))

    def homogeneous_part(self, degree: int) -> "Form":
        return Form(self.coords, {i: p for i, p in self.terms.items() if len(i) == degree})

    def is_zero(self) -> bool:
        return not self.terms

    def uses_variable(self, index: int) -> bool:
        return any(p.uses_variable(index) for p in self.terms.values())

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.coords == other.coords and self.terms == other.terms

    def __hash__(self):
        return hash((self.coords, frozenset((i, p) for i, p in self.terms.items())))

    def render(self) -> str:
        """Canonical text: terms in (degree, index) order, coefficients in
        graded-lex order.  Used by CLI reports and golden tests."""
        if not self.terms:
            return "0"
        parts = []
        for idx_tuple in sorted(self.terms, key=lambda t: (len(t), t)):
            poly = self.terms[idx_tuple]
            coeff = poly.render(self.coords.variables)
            if "+" in coeff.replace("(", "").replace(")", "")[1:] and len(poly.terms) > 1:
                coeff = f"({coeff})"
            wedge = "^".join(self.coords.covectors[i] for i in idx_tuple)
            parts.append(f"{coeff} {wedge}".rstrip())
        return " + ".join(parts)

    def __repr__(self):
        return f"Form<{self.coords.side}>({self.render()})"

    def _compatible(self, other: "Form") -> None:
        if self.coords != other.coords:
            raise CoordinateMismatchError(
                f"forms over different coordinates: {self.coords.side} vs {other.coords.side}"
            )


# --- builders ----------------------------------------------------------------


def covector_pairing(
    coords: CoordSystem,
    matrix: CMatrix,
    row_offset: int,
    col_offset: int,
    scalar: CScalar = ONE,
    pi_power: int = 0,
) -> Form:
    """The 2-form  sum_ij scalar * pi^k * M_ij  alpha_i ^ beta_j  where alpha
    runs over the covector block at ``row_offset`` and beta at ``col_offset``."""
    n = matrix.rows
    total = Form.zero(coords)
    for i in range(n):
        for j in range(matrix.cols):
            c = scalar * matrix[(i, j)]
            if c.is_zero():
                continue
            left = Form.covector(coords, row_offset + i, Poly.const(coords.nvars, c, pi_power))
            right = Form.covector(coords, col_offset + j)
            total = total + left.wedge(right)
    return total


def coordinate_pairing(
    coords: CoordSystem,
    matrix: CMatrix,
    var_offset: int,
    cov_offset: int,
    scalar: CScalar = ONE,
    pi_power: int = 0,
) -> Form:
    """The 1-form  sum_ij scalar * pi^k * v_i M_ij dcov_j  with variables from
    the block at ``var_offset`` and covectors from ``cov_offset``."""
    n = matrix.rows
    total: Dict[Indices, Poly] = {}
    for j in range(matrix.cols):
        poly = Poly.zero(coords.nvars)
        for i in range(n):
            c = scalar * matrix[(i, j)]
            if c.is_zero():
                continue
            expo = tuple(
                1 if k == var_offset + i else 0 for k in range(coords.nvars)
            ) + (pi_power,)
            poly = poly + Poly(coords.nvars, {expo: c})
        if not poly.is_zero():
            total[(cov_offset + j,)] = poly
    return Form(coords, total)


def constant_covector_row(
    coords: CoordSystem,
    coefficients: Sequence[CScalar],
    cov_offset: int,
    pi_power: int = 0,
) -> Form:
    """The constant-coefficient 1-form  sum_j c_j dcov_{offset+j}."""
    terms: Dict[Indices, Poly] = {}
    for j, c in enumerate(coefficients):
        if c.is_zero():
            continue
        terms[(cov_offset + j,)] = Poly.const(coords.nvars, c, pi_power)
    return Form(coords, terms)


# --- (p,q) decomposition -------------------------------------------------------


class PQForm:
    """A form over the holomorphic/antiholomorphic covector basis.

    Indices 0..n-1 are the holomorphic covectors dz_i, indices n..2n-1 the
    antiholomorphic dzb_i; bidegree of a term counts them.  Coefficients
    stay polynomials in the underlying real coordinates.
    """

    __slots__ = ("coords", "period", "terms")

    def __init__(self, coords: CoordSystem, period: PeriodMatrix, terms: Dict[Indices, Poly]):
        if coords.n != period.n:
            raise DimensionMismatchError("coordinate/period dimension mismatch")
        self.coords = coords
        self.period = period
        self.terms = {i: p for i, p in terms.items() if not p.is_zero()}

    @staticmethod
    def zero(coords: CoordSystem, period: PeriodMatrix) -> "PQForm":
        return PQForm(coords, period, {})

    @staticmethod
    def scalar(coords: CoordSystem, period: PeriodMatrix, value: PolyLike) -> "PQForm":
        poly = value if isinstance(value, Poly) else Poly.const(coords.nvars, value)
        return PQForm(coords, period, {(): poly})

    def bidegree(self, idx_tuple: Indices) -> Tuple[int, int]:
        n = self.coords.n
        p = sum(1 for i in idx_tuple if i < n)
        return (p, len(idx_tuple) - p)

    def bidegrees(self) -> tuple:
        return tuple(sorted({self.bidegree(i) for i in self.terms}))

    def component(self, p: int, q: int) -> "PQForm":
        return PQForm(
            self.coords,
            self.period,
            {i: poly for i, poly in self.terms.items() if self.bidegree(i) == (p, q)},
        )

    def __add__(self, other: "PQForm") -> "PQForm":
        self._compatible(other)
        return PQForm(
            self.coords, self.period, _GradedTerms.add(self.terms, other.terms, self.coords.nvars)
        )

    def __sub__(self, other: "PQForm") -> "PQForm":
        return self + (-other)

    def __neg__(self) -> "PQForm":
        return PQForm(self.coords, self.period, {i: -p for i, p in self.terms.items()})

    def scale(self, value) -> "PQForm":
        return PQForm(self.coords, self.period, {i: p.scale(value) for i, p in self.terms.items()})

    def wedge(self, other: "PQForm") -> "PQForm":
        self._compatible(other)
        return PQForm(
            self.coords,
            self.period,
            _GradedTerms.wedge(self.terms, other.terms, self.coords.nvars),
        )

    def is_zero(self) -> bool:
        return not self.terms

    def to_form(self) -> Form:
        """Back-substitute dz = dx + T dy and dzb = dx + conj(T) dy."""
        n = self.coords.n
        T = self.period.matrix
        Tbar = self.period.conjugate()
        images = []
        for i in range(n):  # dz_i
            combo = [(ONE, self.coords.x_index(i))]
            combo += [
                (T[(i, j)], self.coords.y_index(j)) for j in range(n) if not T[(i, j)].is_zero()
            ]
            images.append(combo)
        for i in range(n):  # dzb_i
            combo = [(ONE, self.coords.x_index(i))]
            combo += [
                (Tbar[(i, j)], self.coords.y_index(j))
                for j in range(n)
                if not Tbar[(i, j)].is_zero()
            ]
            images.append(combo)
        return Form(
            self.coords,
            _GradedTerms.substitute_covectors(self.terms, images, self.coords.nvars),
        )

    def __eq__(self, other):
        if not isinstance(other, PQForm):
            return NotImplemented
        return (
            self.coords == other.coords
            and self.period == other.period
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.coords, self.period.matrix, frozenset(self.terms.items())))

    def render(self) -> str:
        if not self.terms:
            return "0"
        n = self.coords.n
        names = [f"dz{i+1}" for i in range(n)] + [f"dzb{i+1}" for i in range(n)]
        parts = []
        for idx_tuple in sorted(self.terms, key=lambda t: (len(t), t)):
            poly = self.terms[idx_tuple]
            wedge = "^".join(names[i] for i in idx_tuple)
            parts.append(f"{poly.render(self.coords.variables)} {wedge}".rstrip())
        return " + ".join(parts)

    def __repr__(self):
        return f"PQForm({self.render()})"

    def _compatible(self, other: "PQForm") -> None:
        if self.coords != other.coords or self.period != other.period:
            raise CoordinateMismatchError("pq-forms over different coordinates or periods")


def pq_split(form: Form, period: PeriodMatrix) -> PQForm:
    """Express a real-basis form over the dz/dzb covector basis.

    Solving dz = dx + T dy, dzb = dx + conj(T) dy for the real covectors
    gives dy = W (dz - dzb) and dx = dz - T W (dz - dzb) with
    W = (T - conj(T))^{-1}; the substitution is exact and invertible.
    """
    n = form.coords.n
    if period.n != n:
        raise DimensionMismatchError("form/period dimension mismatch")
    T = period.matrix
    W = (T - period.conjugate()).inverse()
    TW = T * W
    images = []
    for i in range(n):  # dx_i  ->  dz_i - sum_j TW_ij dz_j + sum_j TW_ij dzb_j
        combo = {}
        combo[i] = ONE - TW[(i, i)]
        for j in range(n):
            if j != i:
                combo[j] = -TW[(i, j)]
            combo[n + j] = combo.get(n + j, ZERO) + TW[(i, j)]
        images.append([(c, j) for j, c in sorted(combo.items()) if not c.is_zero()])
    for i in range(n):  # dy_i  ->  sum_j W_ij dz_j - sum_j W_ij dzb_j
        combo = []
        for j in range(n):
            if not W[(i, j)].is_zero():
                combo.append((W[(i, j)], j))
        for j in range(n):
            if not W[(i, j)].is_zero():
                combo.append((-W[(i, j)], n + j))
        images.append(combo)
    return PQForm(
        form.coords,
        period,
        _GradedTerms.substitute_covectors(form.terms, images, form.coords.nvars),
    )


def restrict_to_graph(form: Form, linear: CMatrix, offset: Sequence[Fraction]) -> Form:
    """Pull a mirror-side form back along the graph of an affine section.

    Substitutes the fiber coordinates yv = linear * xv + offset and the
    fiber covectors dyv = linear * dxv; the result involves the base
    block only.
    """
    coords = form.coords
    n = coords.n
    if linear.rows != n or linear.cols != n or len(offset) != n:
        raise DimensionMismatchError("section dimension does not match the form")
    # Covectors first: dyv_i -> sum_j linear_ij dxv_j.
    images = [[(ONE, i)] for i in range(n)]
    for i in range(n):
        images.append(
            [(linear[(i, j)], j) for j in range(n) if not linear[(i, j)].is_zero()]
        )
    new_terms = _GradedTerms.substitute_covectors(form.terms, images, coords.nvars)
    # Then coefficients: yv_i -> sum_j linear_ij xv_j + offset_i.
    substitution: Dict[int, Poly] = {}
    for i in range(n):
        poly = Poly.const(coords.nvars, CScalar(offset[i]))
        for j in range(n):
            entry = linear[(i, j)]
            if entry.is_zero():
                continue
            poly = poly + Poly.variable(coords.nvars, coords.x_index(j)).scale(entry)
        substitution[coords.y_index(i)] = poly
    out = {i: p.substitute(substitution) for i, p in new_terms.items()}
    return Form(coords, out)
