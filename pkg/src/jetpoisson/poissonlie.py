"""Poisson-Lie brackets on jet groups from antisymmetric generating functions.

A generating function phi(u,v) = sum lam_{mn} u^m v^n (antisymmetric table)
packages a whole bracket table: the generating series of the brackets is

    Omega(u,v;x) = phi(u,v) x'(u) x'(v) - phi(x(u), x(v)),

and the coefficient of u^i v^j is the bracket omega_ij of the i-th and j-th
jet coordinates.  This module builds such tables (two independent ways for
the monomial families, cross-checked in the tests) and verifies the defining
identities exactly: Jacobi, multiplicativity under jet composition, the
functional equation on phi equivalent to Jacobi, and anti-Poisson inversion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from . import jetgroup as jg
from . import report as rep
from . import series as ts
from .coeffpoly import LaurentPoly, Variable, VarKind, param, poly


class DivisibilityViolation(ValueError):
    pass


class DegreeBoundTooSmall(ValueError):
    pass


# ---------------------------------------------------------------------------
# The generating-function catalog


@dataclass(frozen=True)
class PhiFunction:
    """Antisymmetric coefficient table lam_{mn}, m,n >= min_index.

    ``degree`` is a box bound: entries with max(m,n) <= degree are exact.
    Tables of polynomial generating functions are complete; they set
    ``exact=True`` and ignore the bound.
    """

    min_index: int
    table: dict  # (m, n) -> LaurentPoly, both orientations stored
    degree: int
    exact: bool
    provenance: str = "custom"

    def coeff(self, m: int, n: int) -> LaurentPoly:
        return self.table.get((m, n), LaurentPoly.zero())

    def support(self):
        return self.table.keys()

    def ensure_degree(self, needed: int, what: str):
        if not self.exact and self.degree < needed:
            raise DegreeBoundTooSmall(
                f"{what} needs table entries up to degree {needed}, have {self.degree}"
            )

    def divisible_by_uv(self) -> bool:
        return all(m >= 1 and n >= 1 for (m, n) in self.table)

    def as_series(self, var_a: str, var_b: str, space, bounds) -> ts.TruncSeries:
        """The series sum lam_{mn} a^m b^n inside the given variable space."""
        pa, pb = space.index(var_a), space.index(var_b)
        coeffs: dict = {}
        for (m, n), c in self.table.items():
            exps = [0] * len(space)
            exps[pa] += m
            exps[pb] += n
            coeffs[tuple(exps)] = coeffs.get(tuple(exps), LaurentPoly.zero()) + c
        return ts.make(tuple(space), tuple(bounds), coeffs)


def _symmetrize(entries: Mapping) -> dict:
    table: dict = {}
    for (m, n), c in entries.items():
        c = poly(c)
        if c.is_zero() or m == n:
            continue
        table[(m, n)] = table.get((m, n), LaurentPoly.zero()) + c
        table[(n, m)] = table.get((n, m), LaurentPoly.zero()) - c
    return {k: v for k, v in table.items() if not v.is_zero()}


def phi_from_table(entries: Mapping, min_index: int, degree: int, exact: bool = False,
                   provenance: str = "custom") -> PhiFunction:
    return PhiFunction(min_index, _symmetrize(entries), degree, exact, provenance)


def phi_power_family(d: int, degree: int = 0) -> PhiFunction:
    """phi(u,v) = u v (u^d - v^d)."""
    if d < 1:
        raise ValueError("power family needs d >= 1")
    return phi_from_table(
        {(d + 1, 1): 1}, 1, max(degree, d + 1), exact=True, provenance=f"power d={d}"
    )


def phi_extended_family(d: int, lam, degree: int) -> PhiFunction:
    """One-parameter deformation of u v (v^d - u^d), expanded to the degree box.

    The closed form is
      [ (d-1) u v (v^d - u^d) + lam d u^2 v^2 (u^{d-1} - v^{d-1}) ]
        / [ (d-1) (1 - lam u)(1 - lam v) ]
    so the expansion multiplies the bracketed polynomial by two geometric
    series.  ``lam`` may be rational or a parameter polynomial.
    """
    if d < 2:
        raise ValueError("extended family needs d >= 2")
    lam = poly(lam if not isinstance(lam, str) else LaurentPoly.var(param(lam)))
    B = degree
    space, bounds = ("u", "v"), (B, B)

    def geom(var: str) -> ts.TruncSeries:
        pos = space.index(var)
        coeffs = {}
        for k in range(B + 1):
            exps = [0, 0]
            exps[pos] = k
            coeffs[tuple(exps)] = lam ** k
        return ts.make(space, bounds, coeffs)

    numerator: dict = {}

    def addmono(eu, ev, c):
        key = (eu, ev)
        numerator[key] = numerator.get(key, LaurentPoly.zero()) + poly(c)

    addmono(1, d + 1, d - 1)
    addmono(d + 1, 1, -(d - 1))
    addmono(d + 1, 2, lam * d)
    addmono(2, d + 1, -(lam * d))
    series = ts.product(ts.make(space, bounds, numerator), geom("u"), geom("v"))
    series = ts.scale(series, Fraction(1, d - 1))
    entries = {(m, n): c for (m, n), c in series.coeffs.items() if m < n}
    return PhiFunction(1, _symmetrize(entries), B, False, f"extended d={d}")


def phi_linear() -> PhiFunction:
    """phi(u,v) = u - v (extended-group table, indices from 0)."""
    return phi_from_table({(1, 0): 1}, 0, 1, exact=True, provenance="linear")


def phi_exponential(lam, degree: int) -> PhiFunction:
    """phi(u,v) = e^{lam u} - e^{lam v}, truncated at the degree box."""
    lam = poly(lam if not isinstance(lam, str) else LaurentPoly.var(param(lam)))
    entries = {}
    fact = 1
    power = LaurentPoly.one()
    for n in range(1, degree + 1):
        fact *= n
        power = power * lam
        entries[(n, 0)] = power / fact
    return phi_from_table(entries, 0, degree, exact=False, provenance="exponential")


# ---------------------------------------------------------------------------
# Building bracket tables


_LETTERS = {"x": VarKind.GROUP_X, "y": VarKind.GROUP_Y, "z": VarKind.GROUP_Z}


@dataclass(frozen=True)
class PoissonStructure:
    n: int
    start_index: int
    omega: dict  # (i, j) with i < j -> LaurentPoly
    coord_kind: VarKind = VarKind.GROUP_X
    meta: dict = field(default_factory=dict)

    def bracket(self, i: int, j: int) -> LaurentPoly:
        if i == j:
            return LaurentPoly.zero()
        if i < j:
            return self.omega.get((i, j), LaurentPoly.zero())
        return -self.omega.get((j, i), LaurentPoly.zero())

    def pairs(self):
        return sorted(self.omega.keys())

    def coord(self, i: int) -> Variable:
        return Variable(self.coord_kind, i)

    def substituted(self, bindings) -> "PoissonStructure":
        return PoissonStructure(
            self.n,
            self.start_index,
            {k: p.substitute(bindings) for k, p in self.omega.items()},
            self.coord_kind,
            dict(self.meta),
        )

    def perturbed(self, i: int, j: int, delta: LaurentPoly) -> "PoissonStructure":
        """Deliberately corrupted copy; used by the negative-control tests."""
        omega = dict(self.omega)
        omega[(i, j)] = omega.get((i, j), LaurentPoly.zero()) + delta
        return PoissonStructure(self.n, self.start_index, omega, self.coord_kind,
                                dict(self.meta) | {"perturbed": f"({i},{j})"})


def build_omega(phi: PhiFunction, n: int, start_index: int = 1,
                coord_letter: str = "x") -> PoissonStructure:
    """Bracket table from the generating series, exact at truncation n.

    For the origin-fixing model the table entries only involve coordinates up
    to max(i, j); for the extended model they reach one index higher, so the
    internal symbolic jet carries one extra coordinate.
    """
    phi.ensure_degree(n + 1, "build_omega")
    if start_index == 1 and not phi.divisible_by_uv():
        raise DivisibilityViolation(
            "origin-fixing jets need a generating function divisible by u and v"
        )
    if start_index == 0 and not phi.exact:
        # with a constant coordinate, phi(x(u), x(v)) sums over the whole
        # table row by row; only finitely supported tables extract exactly
        raise DegreeBoundTooSmall(
            "extended-model tables need a finitely supported generating function"
        )
    kind = _LETTERS[coord_letter]
    bounds = (n, n)
    space = ("u", "v")
    hi = n if start_index == 1 else n + 1
    coords = {
        i: LaurentPoly.var(Variable(kind, i)) for i in range(start_index, hi + 1)
    }
    x_u = ts.make(("u",), (hi,), {(i,): c for i, c in coords.items()})
    x_v = ts.make(("v",), (hi,), {(i,): c for i, c in coords.items()})
    xp_u = ts.lift(ts.derivative(x_u, "u"), space, bounds)
    xp_v = ts.lift(ts.derivative(x_v, "v"), space, bounds)
    phi_series = phi.as_series("u", "v", space, bounds)
    first = ts.product(phi_series, xp_u, xp_v)
    second = ts.subst(
        phi.as_series("u", "v", ("u", "v"), (n, n)),
        {"u": ts.lift(ts.truncate(x_u, (n,)), space, bounds),
         "v": ts.lift(ts.truncate(x_v, (n,)), space, bounds)},
    )
    omega_series = ts.sub(first, second)
    omega = {}
    for i in range(start_index, n + 1):
        for j in range(i + 1, n + 1):
            c = omega_series.coeff((i, j))
            if not c.is_zero():
                omega[(i, j)] = c
    return PoissonStructure(
        n, start_index, omega, kind,
        {"phi": phi, "provenance": phi.provenance},
    )


def omega_power_closed_form(d: int, n: int, coord_letter: str = "x") -> PoissonStructure:
    """Independent construction of the u v (u^d - v^d) bracket table:

      omega_ij = (i-d) j x_j x_{i-d} - i (j-d) x_i x_{j-d}
                 + x_i S_{d+1}(j) - x_j S_{d+1}(i)

    with S_p(m) the sum of x_{s_1}...x_{s_p} over compositions of m into p
    positive parts and x_k = 0 for k < 1.
    """
    kind = _LETTERS[coord_letter]

    def xv(k: int) -> LaurentPoly:
        if k < 1 or k > n:
            return LaurentPoly.zero()
        return LaurentPoly.var(Variable(kind, k))

    def comp_sum(m: int, parts: int) -> LaurentPoly:
        total = LaurentPoly.zero()
        for comp in _compositions(m, parts):
            term = LaurentPoly.one()
            for s in comp:
                term = term * xv(s)
            total = total + term
        return total

    omega = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            val = (
                xv(j) * xv(i - d) * ((i - d) * j)
                - xv(i) * xv(j - d) * (i * (j - d))
                + xv(i) * comp_sum(j, d + 1)
                - xv(j) * comp_sum(i, d + 1)
            )
            if not val.is_zero():
                omega[(i, j)] = val
    return PoissonStructure(n, 1, omega, kind, {"provenance": f"power-closed-form d={d}"})


def _compositions(total: int, parts: int):
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# Verifiers


def verify_jacobi(omega: PoissonStructure, check_max: Optional[int] = None) -> rep.VerificationReport:
    """Jacobi identity, triple by triple, as exact polynomial cancellation.

    A triple is checked only when every bracket it needs lies inside the
    stored table (extended-model tables reference one coordinate beyond any
    finite block, so boundary triples are skipped and counted)."""
    top = omega.n if check_max is None else min(check_max, omega.n)
    lo = omega.start_index
    checked = skipped = 0
    indices = range(lo, top + 1)
    params = {"n": omega.n, "start": omega.start_index, "check_max": top}
    for (j, k, l) in itertools.combinations(indices, 3):
        ok = True
        residual = LaurentPoly.zero()
        for a, bc in ((j, (k, l)), (k, (l, j)), (l, (j, k))):
            b, c = bc
            target = omega.bracket(b, c)
            for v in target.variables():
                if v.kind != omega.coord_kind:
                    continue
                i = v.index
                dv = target.derivative(v)
                if dv.is_zero() or i == a:
                    continue
                if max(i, a) > omega.n:
                    ok = False
                    break
                residual = residual + omega.bracket(i, a) * dv
            if not ok:
                break
        if not ok:
            skipped += 1
            continue
        checked += 1
        if not residual.is_zero():
            params.update(checked=checked, skipped=skipped)
            return rep.failed("jacobi", (j, k, l), residual.render(), **params)
    params.update(checked=checked, skipped=skipped)
    return rep.passed("jacobi", **params)


def verify_multiplicativity(omega: PoissonStructure,
                            nilpotency: int = 2,
                            check_max: Optional[int] = None) -> rep.VerificationReport:
    """The bracket of a product against the two translated brackets, exactly.

    Origin-fixing model: an identity of polynomials in the 2n symbolic
    coordinates of the two factors.  Extended model: the same identity in the
    nilpotent quotient; the composition is carried out at one order higher
    than asserted so that differentiation by the degree-0 coordinates is
    exact on every asserted monomial.
    """
    if omega.start_index == 1:
        return _verify_mult_origin_fixing(omega, check_max)
    return _verify_mult_extended(omega, nilpotency, check_max)


def _verify_mult_origin_fixing(omega, check_max):
    n = omega.n if check_max is None else min(check_max, omega.n)
    x = jg.symbolic_jet(n, "x")
    y = jg.symbolic_jet(n, "y")
    z = jg.jet_compose(x, y)
    to_y = {Variable(omega.coord_kind, i): y.coord(i) for i in range(1, n + 1)}
    to_z = {Variable(omega.coord_kind, i): z.coord(i) for i in range(1, n + 1)}
    omega_y = {pair: p.substitute(to_y) for pair, p in omega.omega.items()}
    dzx = {(i, k): z.coord(i).derivative(Variable(VarKind.GROUP_X, k))
           for i in range(1, n + 1) for k in range(1, i + 1)}
    dzy = {(i, k): z.coord(i).derivative(Variable(VarKind.GROUP_Y, k))
           for i in range(1, n + 1) for k in range(1, i + 1)}
    params = {"n": n, "start": 1}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            lhs = omega.bracket(i, j).substitute(to_z)
            rhs = LaurentPoly.zero()
            for (k, l), w in omega.omega.items():
                if l > n:
                    continue
                wy = omega_y[(k, l)]
                rhs = rhs + w * (
                    dzx.get((i, k), LaurentPoly.zero()) * dzx.get((j, l), LaurentPoly.zero())
                    - dzx.get((i, l), LaurentPoly.zero()) * dzx.get((j, k), LaurentPoly.zero())
                )
                rhs = rhs + wy * (
                    dzy.get((i, k), LaurentPoly.zero()) * dzy.get((j, l), LaurentPoly.zero())
                    - dzy.get((i, l), LaurentPoly.zero()) * dzy.get((j, k), LaurentPoly.zero())
                )
            residual = lhs - rhs
            if not residual.is_zero():
                return rep.failed("multiplicativity", (i, j), residual.render(), **params)
    return rep.passed("multiplicativity", **params)


def _verify_mult_extended(omega, m, check_max):
    # Assert pairs (i, j) <= K.  Work at nilpotency order M = m+1 and require
    # the residual to vanish on all monomials of degree-0 weight <= m: the
    # composition at order M is exact there even after one d/dx_0.
    K = (omega.n if check_max is None else min(check_max, omega.n))
    phi = omega.meta.get("phi")
    if phi is None:
        raise ValueError("extended-model multiplicativity needs the generating function")
    M = m + 1
    # The translated sums reach coordinate pairs up to K + M (the composition
    # depends on x_k for k <= i + M), so the table is built that wide.
    wide = build_omega(phi, K + M, 0)
    nx = K + M + 1
    x = jg.symbolic_jet(nx, "x", 0, nilpotency=M)
    y = jg.symbolic_jet(K + 1, "y", 0, nilpotency=M)
    z = jg.jet_compose(x, y)  # exact coords through nx - M = K + 1
    to_y = {Variable(wide.coord_kind, i): y.coord(i) for i in range(0, K + 2)}
    to_z = {Variable(wide.coord_kind, i): z.coord(i) for i in range(0, K + 2)}
    params = {"n": K, "start": 0, "nilpotency": m}
    for i in range(0, K + 1):
        for j in range(i + 1, K + 1):
            lhs = wide.bracket(i, j).substitute(to_z)
            rhs = LaurentPoly.zero()
            for (k, l), w in wide.omega.items():
                dik = z.coord(i).derivative(Variable(VarKind.GROUP_X, k))
                dil = z.coord(i).derivative(Variable(VarKind.GROUP_X, l))
                djk = z.coord(j).derivative(Variable(VarKind.GROUP_X, k))
                djl = z.coord(j).derivative(Variable(VarKind.GROUP_X, l))
                if not (dik.is_zero() and dil.is_zero() and djk.is_zero() and djl.is_zero()):
                    rhs = rhs + w * (dik * djl - dil * djk)
                if k > i and k > j:
                    continue  # the factor-two derivatives below vanish
                dik = z.coord(i).derivative(Variable(VarKind.GROUP_Y, k))
                dil = z.coord(i).derivative(Variable(VarKind.GROUP_Y, l))
                djk = z.coord(j).derivative(Variable(VarKind.GROUP_Y, k))
                djl = z.coord(j).derivative(Variable(VarKind.GROUP_Y, l))
                if not (dik.is_zero() and dil.is_zero() and djk.is_zero() and djl.is_zero()):
                    rhs = rhs + w.substitute(to_y) * (dik * djl - dil * djk)
            residual = jg.nilpotent_reduce(lhs - rhs, m)
            if not residual.is_zero():
                return rep.failed("multiplicativity", (i, j), residual.render(), **params)
    return rep.passed("multiplicativity", **params)


def phi_equation_series(phi: PhiFunction, bound: int) -> ts.TruncSeries:
    """The trivariate series phi(u,v)[d_u phi(w,u) + d_v phi(w,v)] + cyclic."""
    space = ("u", "v", "w")
    B1 = bound + 1
    cache: dict = {}

    def pair(a: str, b: str) -> ts.TruncSeries:
        if (a, b) not in cache:
            cache[(a, b)] = phi.as_series(a, b, space, (B1, B1, B1))
        return cache[(a, b)]

    def d(series: ts.TruncSeries, var: str) -> ts.TruncSeries:
        return ts.truncate(ts.derivative(series, var), (bound,) * 3)

    def t(a: str, b: str) -> ts.TruncSeries:
        return ts.truncate(pair(a, b), (bound,) * 3)

    total = ts.zero(space, (bound,) * 3)
    for (a, b, c) in (("w", "u", "v"), ("u", "v", "w"), ("v", "w", "u")):
        # phi(b,c) [ d_b phi(a,b) + d_c phi(a,c) ]
        inner = ts.add(d(pair(a, b), b), d(pair(a, c), c))
        total = ts.add(total, ts.mul(t(b, c), inner))
    return total


def verify_phi_equation(phi: PhiFunction, dcheck: int) -> rep.VerificationReport:
    phi.ensure_degree(dcheck + 1, "verify_phi_equation")
    residual = phi_equation_series(phi, dcheck)
    params = {"dcheck": dcheck, "provenance": phi.provenance}
    if residual.is_zero():
        return rep.passed("phi-equation", **params)
    exps, c = min(residual.coeffs.items(), key=lambda item: (sum(item[0]), item[0]))
    return rep.failed("phi-equation", exps, c.render(), **params)


def quadric_residual(phi: PhiFunction, k: int, n: int, r: int) -> LaurentPoly:
    """Direct evaluation of one coefficient equation of the quadric system
    equivalent to the functional equation; an independent cross-check of
    phi_equation_series used by the tests."""
    total = LaurentPoly.zero()
    top = max(k, n, r) + 1
    for s in range(min(0, phi.min_index), top + 1):
        term = (
            (phi.coeff(k - s + 1, n) + phi.coeff(k, n - s + 1)) * phi.coeff(r, s)
            + (phi.coeff(n - s + 1, r) + phi.coeff(n, r - s + 1)) * phi.coeff(k, s)
            + (phi.coeff(r - s + 1, k) + phi.coeff(r, k - s + 1)) * phi.coeff(n, s)
        )
        total = total + term * s
    return total


def verify_inversion_antipoisson(omega: PoissonStructure) -> rep.VerificationReport:
    """omega at the inverse jet against minus the push-forward of omega."""
    if omega.start_index != 1:
        raise jg.NotInvertible("inversion check needs the origin-fixing model")
    n = omega.n
    x = jg.symbolic_jet(n, "x")
    xbar = jg.jet_inverse(x)
    to_inv = {Variable(omega.coord_kind, i): xbar.coord(i) for i in range(1, n + 1)}
    dinv = {(a, k): xbar.coord(a).derivative(Variable(VarKind.GROUP_X, k))
            for a in range(1, n + 1) for k in range(1, n + 1)}
    params = {"n": n, "start": 1}
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            lhs = omega.bracket(a, b).substitute(to_inv)
            rhs = LaurentPoly.zero()
            for (k, l), w in omega.omega.items():
                rhs = rhs + w * (dinv[(a, k)] * dinv[(b, l)] - dinv[(a, l)] * dinv[(b, k)])
            residual = lhs + rhs
            if not residual.is_zero():
                return rep.failed("inversion-anti-poisson", (a, b), residual.render(), **params)
    return rep.passed("inversion-anti-poisson", **params)
