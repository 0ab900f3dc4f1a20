"""Exact coefficient arithmetic: rationals and sparse multivariate Laurent polynomials.

Every identity in this package is checked over the rationals, so coefficients
are `fractions.Fraction` values (exposed here as ``ExactScalar``) and
polynomials are sparse term maps handled by the selected kernel backend.

A variable is a (kind, index) pair.  Group coordinates come in three kinds
(x, y, z) so that identities mixing several group elements stay unambiguous;
density coordinates, named parameters (C, C1..C5, lambda, h, ...) and the
opaque unit ``t`` (standing for a fractional power of a leading jet
coefficient) are further kinds.  Negative exponents are allowed only on
invertible variables: the leading coordinate of an invertible jet and the
opaque units.

Term order is graded-lexicographic on the (kind, index) codes and is the
one used by `LaurentPoly.render`, so rendered polynomials are byte-stable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from typing import Iterable, Mapping

from . import backend as _k

ExactScalar = Fraction


class VarKind(IntEnum):
    GROUP_X = 0
    GROUP_Y = 1
    GROUP_Z = 2
    DENSITY_X = 3
    PARAM = 4
    AUX_T = 5


# Stride between kinds in the integer variable code; indices from -1 upward.
_STRIDE = 1 << 20
_MIN_INDEX = -1

_KIND_LETTERS = {
    VarKind.GROUP_X: "x",
    VarKind.GROUP_Y: "y",
    VarKind.GROUP_Z: "z",
    VarKind.DENSITY_X: "x",
}

# Well-known parameter names get fixed indices so term order (and therefore
# all rendered output) does not depend on call order.
_PARAM_NAMES = ["lam", "C", "C1", "C2", "C3", "C4", "C5", "h", "mu", "nu"]
_PARAM_INDEX = {name: i for i, name in enumerate(_PARAM_NAMES)}


class SubstituteSingular(ValueError):
    """An invertible variable with a negative exponent was bound to a non-unit."""


@dataclass(frozen=True)
class Variable:
    kind: VarKind
    index: int
    invertible: bool = field(init=False)

    def __post_init__(self):
        if self.index < _MIN_INDEX:
            raise ValueError(f"variable index {self.index} below minimum {_MIN_INDEX}")
        inv = (
            self.kind in (VarKind.GROUP_X, VarKind.GROUP_Y, VarKind.GROUP_Z)
            and self.index == 1
        ) or self.kind is VarKind.AUX_T
        object.__setattr__(self, "invertible", inv)

    @property
    def code(self) -> int:
        return int(self.kind) * _STRIDE + (self.index - _MIN_INDEX)

    @property
    def name(self) -> str:
        if self.kind is VarKind.PARAM:
            return _PARAM_NAMES[self.index] if self.index < len(_PARAM_NAMES) else f"p{self.index}"
        if self.kind is VarKind.AUX_T:
            return "t" if self.index == 0 else f"t{self.index}"
        return f"{_KIND_LETTERS[self.kind]}{self.index}"


def decode(code: int) -> Variable:
    return Variable(VarKind(code // _STRIDE), code % _STRIDE + _MIN_INDEX)


def _code_invertible(code: int) -> bool:
    kind = code // _STRIDE
    index = code % _STRIDE + _MIN_INDEX
    return (kind <= VarKind.GROUP_Z and index == 1) or kind == VarKind.AUX_T


def param(name: str) -> Variable:
    if name not in _PARAM_INDEX:
        _PARAM_INDEX[name] = len(_PARAM_NAMES)
        _PARAM_NAMES.append(name)
    return Variable(VarKind.PARAM, _PARAM_INDEX[name])


def aux_t(index: int = 0) -> Variable:
    return Variable(VarKind.AUX_T, index)


def _as_pair(value) -> tuple[int, int]:
    if isinstance(value, int):
        return (value, 1)
    if isinstance(value, Fraction):
        return (value.numerator, value.denominator)
    if isinstance(value, tuple):
        return value
    raise TypeError(f"not an exact scalar: {value!r}")


class LaurentPoly:
    """Immutable sparse Laurent polynomial over ExactScalar."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict):
        # terms is a normalized kernel dict; callers outside this module
        # should use the constructors below.
        self.terms = terms

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return _ZERO

    @staticmethod
    def one() -> "LaurentPoly":
        return _ONE

    @staticmethod
    def const(value) -> "LaurentPoly":
        num, den = _as_pair(Fraction(value) if isinstance(value, int) else value)
        if num == 0:
            return _ZERO
        return LaurentPoly({(): _k.rat_norm(num, den)})

    @staticmethod
    def var(v: Variable, exp: int = 1) -> "LaurentPoly":
        if exp == 0:
            return _ONE
        if exp < 0 and not v.invertible:
            raise ValueError(f"negative exponent on non-invertible variable {v.name}")
        return LaurentPoly({((v.code, exp),): (1, 1)})

    @staticmethod
    def monomial(coeff, vars_exps: Iterable[tuple[Variable, int]]) -> "LaurentPoly":
        p = LaurentPoly.const(coeff)
        for v, e in vars_exps:
            p = p * LaurentPoly.var(v, e)
        return p

    # -- ring operations ---------------------------------------------------

    def __add__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        return LaurentPoly(_k.poly_add(self.terms, other.terms))

    __radd__ = __add__

    def __sub__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        return LaurentPoly(_k.poly_sub(self.terms, other.terms))

    def __rsub__(self, other) -> "LaurentPoly":
        return _coerce(other) - self

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(_k.poly_neg(self.terms))

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            num, den = _as_pair(other)
            return LaurentPoly(_k.poly_scale(self.terms, num, den))
        return LaurentPoly(_k.poly_mul(self.terms, other.terms))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "LaurentPoly":
        num, den = _as_pair(other if isinstance(other, (Fraction, tuple)) else Fraction(other))
        if num == 0:
            raise ZeroDivisionError("division of polynomial by zero scalar")
        return LaurentPoly(_k.poly_scale(self.terms, den, num))

    def __pow__(self, exp: int) -> "LaurentPoly":
        if exp < 0:
            inv = self.monomial_inverse()
            return inv ** (-exp)
        result = _ONE
        base = self
        while exp:
            if exp & 1:
                result = result * base
            base = base * base if exp > 1 else base
            exp >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_unit_monomial(self) -> bool:
        """True when the value is c * (product of invertible variables)."""
        if len(self.terms) != 1:
            return False
        key = next(iter(self.terms))
        return all(_code_invertible(code) for code, _ in key)

    def monomial_inverse(self) -> "LaurentPoly":
        if len(self.terms) != 1:
            raise SubstituteSingular(f"not an invertible monomial: {self.render()}")
        key, (num, den) = next(iter(self.terms.items()))
        if not all(_code_invertible(code) for code, _ in key):
            raise SubstituteSingular(f"not an invertible monomial: {self.render()}")
        inv_key = tuple((code, -e) for code, e in key)
        return LaurentPoly({inv_key: _k.rat_norm(den, num)})

    def variables(self) -> set[Variable]:
        return {decode(code) for key in self.terms for code, _ in key}

    def degree_in(self, codes) -> int:
        """Max total degree over the given variable codes (0 for the zero poly)."""
        best = 0
        for key in self.terms:
            d = sum(e for code, e in key if code in codes)
            if d > best:
                best = d
        return best

    def coefficient(self, v: Variable, exp: int) -> "LaurentPoly":
        """Collect the coefficient of v**exp (the rest of each matching term)."""
        code = v.code
        out = {}
        for key, c in self.terms.items():
            e = 0
            rest = []
            for vc, ve in key:
                if vc == code:
                    e = ve
                else:
                    rest.append((vc, ve))
            if e == exp:
                out[tuple(rest)] = c
        return LaurentPoly(out)

    def constant_term(self) -> Fraction:
        c = self.terms.get((), (0, 1))
        return Fraction(c[0], c[1])

    def as_scalar(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1 and () in self.terms:
            return self.constant_term()
        raise ValueError(f"not a scalar: {self.render()}")

    # -- calculus / substitution -------------------------------------------

    def derivative(self, v: Variable) -> "LaurentPoly":
        code = v.code
        out = {}
        for key, (num, den) in self.terms.items():
            for pos, (vc, ve) in enumerate(key):
                if vc != code:
                    continue
                if ve == 1:
                    nk = key[:pos] + key[pos + 1:]
                else:
                    nk = key[:pos] + ((vc, ve - 1),) + key[pos + 1:]
                c = _k.rat_norm(num * ve, den)
                cur = out.get(nk)
                if cur is None:
                    out[nk] = c
                else:
                    s = _k.rat_add(cur, c)
                    if s[0]:
                        out[nk] = s
                    else:
                        del out[nk]
                break
        return LaurentPoly(out)

    def substitute(self, bindings: Mapping[Variable, "LaurentPoly"]) -> "LaurentPoly":
        """Simultaneously replace variables by polynomials, exactly.

        Raises SubstituteSingular when a variable occurring with a negative
        exponent is bound to anything but an invertible monomial.
        """
        by_code = {v.code: _coerce(p) for v, p in bindings.items()}
        acc: dict = {}
        pow_cache: dict[tuple[int, int], LaurentPoly] = {}
        for key, (num, den) in self.terms.items():
            factor = LaurentPoly({(): (num, den)})
            leftover = []
            for vc, ve in key:
                repl = by_code.get(vc)
                if repl is None:
                    leftover.append((vc, ve))
                    continue
                ck = (vc, ve)
                powed = pow_cache.get(ck)
                if powed is None:
                    if ve < 0:
                        powed = repl.monomial_inverse() ** (-ve)
                    else:
                        powed = repl ** ve
                    pow_cache[ck] = powed
                factor = factor * powed
            _k.poly_iadd_mul(acc, {tuple(leftover): (1, 1)}, factor.terms)
        return LaurentPoly(acc)

    def drop_high_degree(self, codes, max_degree: int) -> "LaurentPoly":
        """Drop terms whose total degree in the given variable codes exceeds the bound."""
        out = {
            key: c
            for key, c in self.terms.items()
            if sum(e for code, e in key if code in codes) <= max_degree
        }
        return LaurentPoly(out) if len(out) != len(self.terms) else self

    def filter_terms(self, pred) -> "LaurentPoly":
        return LaurentPoly({k: c for k, c in self.terms.items() if pred(k)})

    # -- rendering ----------------------------------------------------------

    def sorted_terms(self):
        def order(item):
            key, _ = item
            return (sum(e for _, e in key), key)

        return sorted(self.terms.items(), key=order)

    def render(self) -> str:
        """Canonical textual form, e.g. ``-1*x1^2 + 1*x1^4`` (used in reports)."""
        if not self.terms:
            return "0"
        parts = []
        for key, (num, den) in self.sorted_terms():
            coeff = str(num) if den == 1 else f"{num}/{den}"
            factors = [coeff]
            for code, e in key:
                v = decode(code)
                factors.append(v.name if e == 1 else f"{v.name}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self.render()})"


_ZERO = LaurentPoly({})
_ONE = LaurentPoly({(): (1, 1)})


def _coerce(value) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return LaurentPoly.const(value)
    raise TypeError(f"cannot coerce {value!r} to LaurentPoly")


def poly(value) -> LaurentPoly:
    return _coerce(value)


# -- the grading used by the quantum layer ----------------------------------

_H_CODE = Variable(VarKind.PARAM, _PARAM_INDEX["h"]).code


def graded_degree_of_key(key, d: int, word_weight: int = 0):
    """Weight of one commutative monomial: x_i has weight i-1, h has weight d,
    parameters weight 0.  Returns None (Undefined) when any other variable
    appears.  ``word_weight`` is added for callers that combine a coefficient
    monomial with a noncommutative word."""
    total = word_weight
    for code, e in key:
        kind = code // _STRIDE
        index = code % _STRIDE + _MIN_INDEX
        if code == _H_CODE:
            total += e * d
        elif kind == VarKind.PARAM:
            continue
        elif kind == VarKind.GROUP_X:
            total += e * (index - 1)
        else:
            return None
    return total


def graded_degree(monomial: LaurentPoly, d: int):
    """Graded degree of a single-term polynomial; None when undefined."""
    if len(monomial.terms) != 1:
        raise ValueError("graded_degree expects a single monomial")
    key = next(iter(monomial.terms))
    return graded_degree_of_key(key, d)


def homogeneous_graded_degree(p: LaurentPoly, d: int, word_weight: int = 0):
    """The common graded degree of all terms, or None if mixed/undefined.

    The zero polynomial is homogeneous of every degree; it returns "zero".
    """
    degrees = {graded_degree_of_key(key, d, word_weight) for key in p.terms}
    if not degrees:
        return "zero"
    if len(degrees) == 1:
        return degrees.pop()
    return None


# Convenience coordinate constructors used across the package.

def x_var(i: int) -> Variable:
    return Variable(VarKind.GROUP_X, i)


def y_var(i: int) -> Variable:
    return Variable(VarKind.GROUP_Y, i)


def z_var(i: int) -> Variable:
    return Variable(VarKind.GROUP_Z, i)


def density_var(i: int) -> Variable:
    return Variable(VarKind.DENSITY_X, i)
