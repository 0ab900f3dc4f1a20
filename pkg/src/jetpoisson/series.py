"""Truncated formal power series in u, v, w with Laurent-polynomial coefficients.

A series carries its own per-variable truncation bounds; mixed-bound
arithmetic truncates to the minimum, so precision loss is always explicit.
All operations are exact on the retained coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .coeffpoly import LaurentPoly, Variable, VarKind, poly

FORMAL_VARS = ("u", "v", "w")


class VarMismatch(ValueError):
    pass


class NotInvertible(ValueError):
    pass


class NonzeroConstantTerm(ValueError):
    pass


class NonUnitConstantTerm(ValueError):
    pass


class NonNilpotentConstantTerm(ValueError):
    pass


@dataclass(frozen=True)
class TruncSeries:
    vars: tuple[str, ...]
    bounds: tuple[int, ...]
    coeffs: dict

    def coeff(self, exps) -> LaurentPoly:
        if isinstance(exps, int):
            exps = (exps,)
        return self.coeffs.get(tuple(exps), LaurentPoly.zero())

    def constant_coeff(self) -> LaurentPoly:
        return self.coeff((0,) * len(self.vars))

    def is_zero(self) -> bool:
        return not self.coeffs

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        def order(item):
            exps, _ = item
            return (sum(exps), exps)
        parts = []
        for exps, c in sorted(self.coeffs.items(), key=order):
            mono = " ".join(
                f"{v}^{e}" for v, e in zip(self.vars, exps) if e
            )
            parts.append(f"({c.render()})" + (f" * {mono}" if mono else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"TruncSeries[{','.join(self.vars)};{self.bounds}]({self.render()})"


def make(vars: tuple[str, ...], bounds: tuple[int, ...], coeffs: Mapping) -> TruncSeries:
    vars = tuple(vars)
    if tuple(sorted(vars, key=FORMAL_VARS.index)) != vars:
        raise VarMismatch(f"formal variables out of canonical order: {vars}")
    clean = {}
    for exps, c in coeffs.items():
        exps = tuple(exps)
        c = poly(c)
        if c.is_zero():
            continue
        if any(e < 0 for e in exps):
            raise ValueError("negative exponent in series")
        if all(e <= b for e, b in zip(exps, bounds)):
            clean[exps] = c
    return TruncSeries(vars, tuple(bounds), clean)


def zero(vars, bounds) -> TruncSeries:
    return TruncSeries(tuple(vars), tuple(bounds), {})


def const(value, vars, bounds) -> TruncSeries:
    return make(vars, bounds, {(0,) * len(vars): poly(value)})


def formal_var(name: str, bound: int) -> TruncSeries:
    return make((name,), (bound,), {(1,): LaurentPoly.one()})


def lift(s: TruncSeries, vars: tuple[str, ...], bounds: tuple[int, ...]) -> TruncSeries:
    """Embed a series into a larger formal-variable space."""
    positions = []
    for v in s.vars:
        if v not in vars:
            raise VarMismatch(f"cannot lift: {v} not in {vars}")
        positions.append(vars.index(v))
    coeffs = {}
    for exps, c in s.coeffs.items():
        new = [0] * len(vars)
        for p, e in zip(positions, exps):
            new[p] = e
        coeffs[tuple(new)] = c
    return make(vars, bounds, coeffs)


def _common(a: TruncSeries, b: TruncSeries):
    if a.vars != b.vars:
        raise VarMismatch(f"variable sets differ: {a.vars} vs {b.vars}")
    return tuple(min(x, y) for x, y in zip(a.bounds, b.bounds))


def add(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    bounds = _common(a, b)
    coeffs = dict(a.coeffs)
    for exps, c in b.coeffs.items():
        s = coeffs.get(exps, LaurentPoly.zero()) + c
        if s.is_zero():
            coeffs.pop(exps, None)
        else:
            coeffs[exps] = s
    return make(a.vars, bounds, coeffs)


def sub(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return add(a, scale(b, -1))


def scale(a: TruncSeries, c) -> TruncSeries:
    c = poly(c)
    return make(a.vars, a.bounds, {e: p * c for e, p in a.coeffs.items()})


def mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    bounds = _common(a, b)
    acc: dict = {}
    for ea, ca in a.coeffs.items():
        for eb, cb in b.coeffs.items():
            exps = tuple(x + y for x, y in zip(ea, eb))
            if any(e > bd for e, bd in zip(exps, bounds)):
                continue
            cur = acc.get(exps)
            acc[exps] = ca * cb if cur is None else cur + ca * cb
    return make(a.vars, bounds, acc)


def product(*factors: TruncSeries) -> TruncSeries:
    out = factors[0]
    for f in factors[1:]:
        out = mul(out, f)
    return out


def series_power(a: TruncSeries, n: int) -> TruncSeries:
    out = const(1, a.vars, a.bounds)
    for _ in range(n):
        out = mul(out, a)
    return out


def derivative(a: TruncSeries, var: str) -> TruncSeries:
    if var not in a.vars:
        raise VarMismatch(f"{var} not a variable of the series")
    pos = a.vars.index(var)
    bounds = tuple(b - 1 if i == pos else b for i, b in enumerate(a.bounds))
    coeffs = {}
    for exps, c in a.coeffs.items():
        e = exps[pos]
        if e == 0:
            continue
        new = exps[:pos] + (e - 1,) + exps[pos + 1:]
        coeffs[new] = coeffs.get(new, LaurentPoly.zero()) + c * e
    return make(a.vars, bounds, coeffs)


_NILPOTENT_KINDS = (VarKind.GROUP_X, VarKind.GROUP_Y, VarKind.GROUP_Z)


def _constant_is_nilpotent(c: LaurentPoly) -> bool:
    if not c.constant_term() == 0:
        return False  # a plain scalar part would force an infinite sum
    return all(v.kind in _NILPOTENT_KINDS and v.index == 0 for v in c.variables())


def compose(outer: TruncSeries, inner: TruncSeries) -> TruncSeries:
    """Substitute ``inner`` for the single formal variable of ``outer``.

    The inner constant term must vanish, except when it is built purely from
    degree-0 group coordinates (the nilpotent extended-group model), in which
    case the finitely many retained outer coefficients make the sum finite.
    """
    if len(outer.vars) != 1:
        raise VarMismatch("compose expects a univariate outer series")
    c0 = inner.constant_coeff()
    if not c0.is_zero() and not _constant_is_nilpotent(c0):
        raise NonNilpotentConstantTerm(
            f"inner constant term {c0.render()} is neither zero nor nilpotent-modeled"
        )
    degree = max((e[0] for e in outer.coeffs), default=0)
    out = zero(inner.vars, inner.bounds)
    for i in range(degree, -1, -1):
        out = mul(out, inner)
        ci = outer.coeff((i,))
        if not ci.is_zero():
            out = add(out, const(ci, inner.vars, inner.bounds))
    return out


def comp_inverse(x: TruncSeries, bound: int) -> TruncSeries:
    """Compositional inverse of a univariate series with zero constant term.

    Solved by forward substitution; the only divisions are by the linear
    coefficient, which must be a nonzero rational or an invertible monomial.
    """
    if len(x.vars) != 1:
        raise VarMismatch("comp_inverse expects a univariate series")
    var = x.vars[0]
    if not x.coeff((0,)).is_zero():
        raise NotInvertible("nonzero constant term")
    c1 = x.coeff((1,))
    if c1.is_zero():
        raise NotInvertible("zero linear coefficient")
    try:
        c1_inv = c1.monomial_inverse()
    except Exception as exc:
        raise NotInvertible(f"linear coefficient not invertible: {c1.render()}") from exc
    inv_coeffs = {(1,): c1_inv}
    for j in range(2, bound + 1):
        partial = make((var,), (j,), inv_coeffs)
        # [u^j] of sum_{i>=2} c_i * partial^i depends only on lower inverse coeffs.
        acc = LaurentPoly.zero()
        power = mul(partial, partial)
        for i in range(2, j + 1):
            ci = x.coeff((i,))
            if not ci.is_zero():
                acc = acc + ci * power.coeff((j,))
            if i < j:
                power = mul(power, partial)
        bj = -(acc * c1_inv)
        if not bj.is_zero():
            inv_coeffs[(j,)] = bj
    return make((var,), (bound,), inv_coeffs)


def exp(a: TruncSeries, bound: int | None = None) -> TruncSeries:
    if not a.constant_coeff().is_zero():
        raise NonzeroConstantTerm("exp needs a zero constant term")
    if bound is not None and len(a.vars) == 1:
        a = truncate(a, (bound,))
    out = const(1, a.vars, a.bounds)
    term = const(1, a.vars, a.bounds)
    k = 0
    limit = sum(a.bounds)
    while k < limit:
        k += 1
        term = scale(mul(term, a), Fraction(1, k))
        if term.is_zero():
            break
        out = add(out, term)
    return out


def binomial_power(base: TruncSeries, exponent, bound: int | None = None) -> TruncSeries:
    """(1 + w)**lam as sum of generalized binomial coefficients times w**k.

    ``exponent`` may be a parameter variable, a polynomial or a rational; the
    binomial coefficients are polynomials in it.
    """
    if base.constant_coeff() != LaurentPoly.one():
        raise NonUnitConstantTerm("binomial power needs constant term 1")
    lam = poly(LaurentPoly.var(exponent) if isinstance(exponent, Variable) else exponent)
    w = sub(base, const(1, base.vars, base.bounds))
    out = const(1, base.vars, base.bounds)
    wk = const(1, base.vars, base.bounds)
    binom = LaurentPoly.one()
    limit = sum(base.bounds) if bound is None else min(bound, sum(base.bounds))
    for k in range(1, limit + 1):
        binom = binom * (lam - (k - 1)) / k
        wk = mul(wk, w)
        if wk.is_zero():
            break
        out = add(out, scale(wk, binom))
    return out


def truncate(a: TruncSeries, bounds: tuple[int, ...]) -> TruncSeries:
    return make(a.vars, bounds, a.coeffs)


def subst(s: TruncSeries, replacements: Mapping[str, TruncSeries]) -> TruncSeries:
    """Replace every formal variable of ``s`` by a series; all replacement
    series must live in one common variable space."""
    repls = [replacements[v] for v in s.vars]
    space = repls[0]
    for r in repls[1:]:
        if r.vars != space.vars:
            raise VarMismatch("replacement series live in different spaces")
    bounds = tuple(min(r.bounds[i] for r in repls) for i in range(len(space.vars)))
    caches: list[dict[int, TruncSeries]] = [
        {0: const(1, space.vars, bounds), 1: truncate(r, bounds)} for r in repls
    ]

    def power(i: int, e: int) -> TruncSeries:
        cache = caches[i]
        if e not in cache:
            cache[e] = mul(power(i, e - 1), cache[1])
        return cache[e]

    out = zero(space.vars, bounds)
    for exps, c in s.coeffs.items():
        term = const(c, space.vars, bounds)
        for i, e in enumerate(exps):
            if e:
                term = mul(term, power(i, e))
        out = add(out, term)
    return out
