"""Truncated jet groups under composition of power series.

Two models live here:

* ``start_index=1``: invertible series x_1 u + ... + x_n u^n (x_1 a unit),
  the group of jets fixing the origin.  Composition, identity, inverse and
  the projections are all exact at the stated truncation.

* ``start_index=0``: series with a constant term, modeling diffeomorphisms
  that move the origin.  The degree-0 coordinates are treated as nilpotent of
  a configurable order m (monomials of total degree > m in the degree-0
  coordinates are dropped), which makes the otherwise infinite coordinate
  sums finite.  Composition then yields exact coordinates only up to index
  x.n - m, and the result is truncated there.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import series as ts
from .coeffpoly import LaurentPoly, Variable, VarKind, poly

_LETTER_KINDS = {"x": VarKind.GROUP_X, "y": VarKind.GROUP_Y, "z": VarKind.GROUP_Z}

# Codes of the degree-0 group coordinates; these are the nilpotent generators
# of the extended model.
ZERO_COORD_CODES = frozenset(
    Variable(kind, 0).code for kind in (VarKind.GROUP_X, VarKind.GROUP_Y, VarKind.GROUP_Z)
)


class ShapeMismatch(ValueError):
    pass


class NotInvertible(ValueError):
    pass


def nilpotent_reduce(p: LaurentPoly, m: int) -> LaurentPoly:
    return p.drop_high_degree(ZERO_COORD_CODES, m)


@dataclass(frozen=True)
class JetElement:
    start_index: int
    coords: tuple
    n: int
    nilpotency: Optional[int] = None

    def coord(self, i: int) -> LaurentPoly:
        if i < self.start_index or i > self.n:
            return LaurentPoly.zero()
        return self.coords[i - self.start_index]

    def indices(self):
        return range(self.start_index, self.n + 1)

    def to_series(self, var: str = "u", bound: Optional[int] = None) -> ts.TruncSeries:
        bound = self.n if bound is None else bound
        return ts.make(
            (var,), (bound,), {(i,): self.coord(i) for i in self.indices() if i <= bound}
        )

    def __repr__(self):
        inner = ", ".join(f"{i}: {self.coord(i).render()}" for i in self.indices())
        return f"JetElement(start={self.start_index}, n={self.n}, [{inner}])"


def make_jet(coords, start_index: int = 1, nilpotency: Optional[int] = None) -> JetElement:
    coords = tuple(poly(c) for c in coords)
    n = start_index + len(coords) - 1
    if start_index == 0 and nilpotency is None:
        raise ShapeMismatch("extended jets need a nilpotency order")
    return JetElement(start_index, coords, n, nilpotency if start_index == 0 else None)


def symbolic_jet(n: int, letter: str = "x", start_index: int = 1,
                 nilpotency: Optional[int] = None) -> JetElement:
    kind = _LETTER_KINDS[letter]
    coords = [LaurentPoly.var(Variable(kind, i)) for i in range(start_index, n + 1)]
    return make_jet(coords, start_index, nilpotency)


def jet_identity(n: int, start_index: int = 1, nilpotency: Optional[int] = None) -> JetElement:
    if start_index == 1:
        return make_jet([1] + [0] * (n - 1), 1)
    return make_jet([0, 1] + [0] * (n - 1), 0, nilpotency)


def jet_compose(x: JetElement, y: JetElement) -> JetElement:
    """Coordinates of the jet u -> x(y(u))."""
    if x.start_index != y.start_index:
        raise ShapeMismatch("jets from different models")
    if x.start_index == 1:
        n = min(x.n, y.n)
        z = ts.compose(x.to_series(bound=n), y.to_series(bound=n))
        return make_jet([z.coeff((i,)) for i in range(1, n + 1)], 1)

    if x.nilpotency != y.nilpotency:
        raise ShapeMismatch("mismatched nilpotency orders")
    m = x.nilpotency
    n = min(x.n - m, y.n)
    if n < 0:
        raise ShapeMismatch("not enough coordinates for an exact extended composition")
    y_series = y.to_series(bound=n)
    # Horner evaluation of sum_i x_i * y(u)^i with nilpotent reduction layered
    # into every step so degree-0 powers never accumulate.
    acc = ts.zero(("u",), (n,))
    for i in range(x.n, x.start_index - 1, -1):
        acc = ts.mul(acc, y_series)
        ci = x.coord(i)
        if not ci.is_zero():
            acc = ts.add(acc, ts.const(ci, ("u",), (n,)))
        acc = ts.make(("u",), (n,), {e: nilpotent_reduce(c, m) for e, c in acc.coeffs.items()})
    return make_jet([acc.coeff((j,)) for j in range(0, n + 1)], 0, m)


def jet_inverse(x: JetElement) -> JetElement:
    if x.start_index != 1:
        raise NotInvertible("only jets fixing the origin are inverted here")
    try:
        inv = ts.comp_inverse(x.to_series(), x.n)
    except ts.NotInvertible as exc:
        raise NotInvertible(str(exc)) from exc
    return make_jet([inv.coeff((i,)) for i in range(1, x.n + 1)], 1)


def jet_project(x: JetElement, m: int) -> JetElement:
    if m < x.start_index:
        raise ShapeMismatch("projection below the first coordinate")
    if m >= x.n:
        return x
    return JetElement(x.start_index, x.coords[: m - x.start_index + 1], m, x.nilpotency)


# -- left-invariant vector fields -------------------------------------------


@dataclass(frozen=True)
class VectorField:
    components: dict  # coordinate index -> LaurentPoly

    def component(self, i: int) -> LaurentPoly:
        return self.components.get(i, LaurentPoly.zero())

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components.values())


def left_invariant_field(k: int, n: int) -> VectorField:
    """X_k = sum_{i=1}^{n-k+1} i * x_i * d/dx_{i+k-1} at truncation n."""
    comps = {}
    for i in range(1, n - k + 2):
        comps[i + k - 1] = LaurentPoly.var(Variable(VarKind.GROUP_X, i)) * i
    return VectorField(comps)


def left_invariant_fields(n: int) -> list[VectorField]:
    return [left_invariant_field(k, n) for k in range(1, n + 1)]


def vf_commutator(a: VectorField, b: VectorField) -> VectorField:
    comps: dict = {}
    for j in set(a.components) | set(b.components):
        total = LaurentPoly.zero()
        for i, ai in a.components.items():
            bj = b.component(j)
            if not bj.is_zero():
                total = total + ai * bj.derivative(Variable(VarKind.GROUP_X, i))
        for i, bi in b.components.items():
            aj = a.component(j)
            if not aj.is_zero():
                total = total - bi * aj.derivative(Variable(VarKind.GROUP_X, i))
        if not total.is_zero():
            comps[j] = total
    return VectorField(comps)


def vf_sub(a: VectorField, b: VectorField) -> VectorField:
    comps = {}
    for j in set(a.components) | set(b.components):
        d = a.component(j) - b.component(j)
        if not d.is_zero():
            comps[j] = d
    return VectorField(comps)


def vf_scale(a: VectorField, c) -> VectorField:
    c = poly(c)
    return VectorField({j: p * c for j, p in a.components.items() if not (p * c).is_zero()})
