"""Finitely generated quantum semigroups: rewriting, PBW certification,
comultiplication and the quasiclassical link to the bracket tables.

Elements of the free algebra on x_1..x_n over rational polynomials in h and
named parameters are sums of (word, coefficient) pairs, truncated at a stated
h order.  A word is canonical when its generator indices are non-increasing;
a relation set rewrites each ascending adjacent pair x_i x_j (i < j) to
x_j x_i plus a tail whose every term carries at least one power of h.  With
the h truncation this makes reduction terminate: a swap lowers the ascent
count at fixed h degree and every spawned term climbs the finite h ladder.

Confluence is certified the Diamond-Lemma way: for each overlap word
x_i x_j x_k (i < j < k) the two one-step reductions must meet at the same
normal form.  With symbolic parameters in the coefficients, a vanishing
residual certifies the property for every parameter value at once, and a
nonzero residual pins the constraint.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Mapping, Optional

from . import report as rep
from .coeffpoly import (
    LaurentPoly,
    Variable,
    VarKind,
    homogeneous_graded_degree,
    param,
    poly,
)
from .poissonlie import PoissonStructure

H = param("h")
_H_CODE = H.code


class ShapeMismatch(ValueError):
    pass


class UnknownParameters(ValueError):
    pass


def h_exponent(key) -> int:
    for code, e in key:
        if code == _H_CODE:
            return e
    return 0


def h_truncate_poly(p: LaurentPoly, order: int) -> LaurentPoly:
    return p.filter_terms(lambda key: h_exponent(key) <= order)


def word_is_canonical(word: tuple) -> bool:
    return all(word[p] >= word[p + 1] for p in range(len(word) - 1))


def ascent_count(word: tuple) -> int:
    return sum(1 for p, q in itertools.combinations(range(len(word)), 2) if word[p] < word[q])


@dataclass(frozen=True)
class NCElement:
    n_gens: int
    h_order: int
    terms: dict  # word tuple -> LaurentPoly in h and parameters

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, word: tuple) -> LaurentPoly:
        return self.terms.get(tuple(word), LaurentPoly.zero())

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for word in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[word]
            mono = " ".join(_word_factors(word)) or "1"
            parts.append(f"({c.render()}) {mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"NCElement({self.render()})"


def _word_factors(word: tuple) -> list[str]:
    factors = []
    for g, run in itertools.groupby(word):
        k = len(list(run))
        factors.append(f"x{g}" if k == 1 else f"x{g}^{k}")
    return factors


def nc_make(n_gens: int, h_order: int, terms: Mapping) -> NCElement:
    clean = {}
    for word, c in terms.items():
        word = tuple(word)
        if any(not 1 <= g <= n_gens for g in word):
            raise ShapeMismatch(f"generator out of range in {word}")
        c = h_truncate_poly(poly(c), h_order)
        if not c.is_zero():
            clean[word] = c
    return NCElement(n_gens, h_order, clean)


def nc_zero(n_gens: int, h_order: int) -> NCElement:
    return NCElement(n_gens, h_order, {})


def nc_word(n_gens: int, h_order: int, word, coeff=1) -> NCElement:
    return nc_make(n_gens, h_order, {tuple(word): coeff})


def nc_add(a: NCElement, b: NCElement) -> NCElement:
    _check_shape(a, b)
    terms = dict(a.terms)
    for w, c in b.terms.items():
        s = terms.get(w, LaurentPoly.zero()) + c
        if s.is_zero():
            terms.pop(w, None)
        else:
            terms[w] = s
    return NCElement(a.n_gens, a.h_order, terms)


def nc_sub(a: NCElement, b: NCElement) -> NCElement:
    return nc_add(a, nc_scale(b, -1))


def nc_scale(a: NCElement, c) -> NCElement:
    c = h_truncate_poly(poly(c), a.h_order)
    terms = {}
    for w, v in a.terms.items():
        s = h_truncate_poly(v * c, a.h_order)
        if not s.is_zero():
            terms[w] = s
    return NCElement(a.n_gens, a.h_order, terms)


def nc_multiply(a: NCElement, b: NCElement) -> NCElement:
    """Concatenation product, h-truncated, NOT reduced."""
    _check_shape(a, b)
    terms: dict = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            c = h_truncate_poly(ca * cb, a.h_order)
            if c.is_zero():
                continue
            w = wa + wb
            s = terms.get(w, LaurentPoly.zero()) + c
            if s.is_zero():
                terms.pop(w, None)
            else:
                terms[w] = s
    return NCElement(a.n_gens, a.h_order, terms)


def _check_shape(a: NCElement, b: NCElement):
    if a.n_gens != b.n_gens or a.h_order != b.h_order:
        raise ShapeMismatch("mismatched generator count or h order")


# ---------------------------------------------------------------------------
# Relation sets and reduction


@dataclass(frozen=True)
class RelationSet:
    label: str
    d: int
    n_gens: int
    h_order: int
    tails: dict  # (i, j) with i < j -> NCElement: x_i x_j = x_j x_i + tail
    params: tuple = ()

    def tail(self, i: int, j: int) -> NCElement:
        return self.tails[(i, j)]

    def with_h_order(self, h_order: int) -> "RelationSet":
        tails = {
            pair: nc_make(self.n_gens, h_order, t.terms) for pair, t in self.tails.items()
        }
        return replace(self, h_order=h_order, tails=tails)


def make_relation_set(label: str, d: int, n_gens: int, h_order: int,
                      tails: Mapping, params=()) -> RelationSet:
    full = {}
    for i in range(1, n_gens + 1):
        for j in range(i + 1, n_gens + 1):
            t = tails.get((i, j))
            t = nc_zero(n_gens, h_order) if t is None else nc_make(n_gens, h_order, t.terms)
            for word, c in t.terms.items():
                if not word_is_canonical(word):
                    raise ValueError(f"tail of ({i},{j}) has non-canonical word {word}")
                if any(h_exponent(key) < 1 for key in c.terms):
                    raise ValueError(f"tail of ({i},{j}) has an h-free term")
            full[(i, j)] = t
    return RelationSet(label, d, n_gens, h_order, full, tuple(params))


def nc_reduce(a: NCElement, R: RelationSet, rng: Optional[random.Random] = None) -> NCElement:
    """Normal form: rewrite ascending adjacent pairs until every word is
    canonical.  Deterministic (leftmost site, smallest word first) unless an
    rng is supplied, in which case sites are chosen at random; confluent sets
    give the same answer either way."""
    if a.h_order != R.h_order or a.n_gens != R.n_gens:
        raise ShapeMismatch("element and relation set disagree on shape")
    done: dict = {}
    pending: dict = {}

    def push(store, word, c):
        s = store.get(word, LaurentPoly.zero()) + c
        if s.is_zero():
            store.pop(word, None)
        else:
            store[word] = s

    for word, c in a.terms.items():
        push(done if word_is_canonical(word) else pending, word, c)
    while pending:
        word = min(pending, key=lambda w: (len(w), w))
        coeff = pending.pop(word)
        sites = [p for p in range(len(word) - 1) if word[p] < word[p + 1]]
        p = sites[0] if rng is None else rng.choice(sites)
        i, j = word[p], word[p + 1]
        swapped = word[:p] + (j, i) + word[p + 2:]
        push(done if word_is_canonical(swapped) else pending, swapped, coeff)
        for w2, c2 in R.tail(i, j).terms.items():
            c = h_truncate_poly(coeff * c2, a.h_order)
            if c.is_zero():
                continue
            grown = word[:p] + w2 + word[p + 2:]
            push(done if word_is_canonical(grown) else pending, grown, c)
    return NCElement(a.n_gens, a.h_order, done)


def commutator_normal_form(R: RelationSet, i: int, j: int) -> NCElement:
    """nc_reduce(x_i x_j - x_j x_i): equals the tail for i < j."""
    lhs = nc_word(R.n_gens, R.h_order, (i, j))
    rhs = nc_word(R.n_gens, R.h_order, (j, i))
    return nc_reduce(nc_sub(lhs, rhs), R)


def pbw_overlap_check(R: RelationSet, triples=None) -> rep.VerificationReport:
    """Resolve every overlap word x_i x_j x_k (i<j<k) two ways and compare."""
    if triples is None:
        triples = list(itertools.combinations(range(1, R.n_gens + 1), 3))
    params = {"set": R.label, "h_order": R.h_order, "triples": len(triples)}
    for (i, j, k) in triples:
        left = _one_step(R, (i, j, k), 0)
        right = _one_step(R, (i, j, k), 1)
        diff = nc_sub(nc_reduce(left, R), nc_reduce(right, R))
        if not diff.is_zero():
            word = min(diff.terms, key=lambda w: (len(w), w))
            return rep.failed(
                "pbw-overlap", (i, j, k),
                f"normal forms differ; e.g. ({diff.terms[word].render()}) {' '.join(_word_factors(word))}",
                **params)
    return rep.passed("pbw-overlap", **params)


def _one_step(R: RelationSet, word: tuple, p: int) -> NCElement:
    i, j = word[p], word[p + 1]
    swapped = word[:p] + (j, i) + word[p + 2:]
    out = {swapped: LaurentPoly.one()}
    for w2, c2 in R.tail(i, j).terms.items():
        grown = word[:p] + w2 + word[p + 2:]
        out[grown] = out.get(grown, LaurentPoly.zero()) + c2
    return nc_make(R.n_gens, R.h_order, out)


# ---------------------------------------------------------------------------
# Comultiplication, counit, gradings, quasiclassical limit


def compositions(total: int, parts: int):
    """Ordered tuples of positive integers with the given sum."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def delta_generator(i: int, R: RelationSet) -> dict:
    """Delta(x_i) = sum_k x_k (x) sum over compositions of i into k parts,
    as a tensor table {(left word, right word): coefficient}."""
    out = {}
    for k in range(1, i + 1):
        for comp in compositions(i, k):
            out[((k,), comp)] = LaurentPoly.one()
    return out


def tensor_multiply(a: dict, b: dict, R: RelationSet) -> dict:
    out: dict = {}
    for (la, ra), ca in a.items():
        for (lb, rb), cb in b.items():
            c = h_truncate_poly(ca * cb, R.h_order)
            if c.is_zero():
                continue
            key = (la + lb, ra + rb)
            s = out.get(key, LaurentPoly.zero()) + c
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
    return out


def tensor_scale(a: dict, c) -> dict:
    c = poly(c)
    out = {}
    for key, v in a.items():
        s = v * c
        if not s.is_zero():
            out[key] = s
    return out


def tensor_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for key, c in b.items():
        s = out.get(key, LaurentPoly.zero()) + c
        if s.is_zero():
            out.pop(key, None)
        else:
            out[key] = s
    return out


def tensor_reduce(a: dict, R: RelationSet) -> dict:
    """Componentwise normal form in both tensor slots."""
    out: dict = {}
    for (lw, rw), c in a.items():
        left = nc_reduce(nc_word(R.n_gens, R.h_order, lw), R)
        right = nc_reduce(nc_word(R.n_gens, R.h_order, rw), R)
        for wl, cl in left.terms.items():
            for wr, cr in right.terms.items():
                v = h_truncate_poly(c * cl * cr, R.h_order)
                if v.is_zero():
                    continue
                key = (wl, wr)
                s = out.get(key, LaurentPoly.zero()) + v
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
    return out


def delta_of_element(a: NCElement, R: RelationSet) -> dict:
    """Apply the comultiplication to every word (h and parameters are scalars)."""
    total: dict = {}
    for word, c in a.terms.items():
        cur = {((), ()): LaurentPoly.one()}
        for g in word:
            cur = tensor_multiply(cur, delta_generator(g, R), R)
        total = tensor_add(total, tensor_scale(cur, c))
    return total


def verify_delta_homomorphism(R: RelationSet) -> rep.VerificationReport:
    """Delta respects every relation: Delta(xi)Delta(xj) - Delta(xj)Delta(xi)
    - Delta(tail) reduces to zero componentwise."""
    params = {"set": R.label, "h_order": R.h_order}
    for (i, j) in sorted(R.tails):
        di, dj = delta_generator(i, R), delta_generator(j, R)
        lhs = tensor_add(
            tensor_multiply(di, dj, R), tensor_scale(tensor_multiply(dj, di, R), -1)
        )
        diff = tensor_add(lhs, tensor_scale(delta_of_element(R.tail(i, j), R), -1))
        residual = tensor_reduce(diff, R)
        if residual:
            (lw, rw) = min(residual, key=lambda k: (len(k[0]) + len(k[1]), k))
            txt = (f"({residual[(lw, rw)].render()}) "
                   f"{' '.join(_word_factors(lw)) or '1'} (x) {' '.join(_word_factors(rw)) or '1'}")
            return rep.failed("delta-homomorphism", (i, j), txt, **params)
    return rep.passed("delta-homomorphism", **params)


def counit(a: NCElement) -> LaurentPoly:
    """c(x_i) = 1 iff i == 1; extended multiplicatively, h and parameters fixed."""
    total = LaurentPoly.zero()
    for word, c in a.terms.items():
        if all(g == 1 for g in word):
            total = total + c
    return total


def verify_counit_coassoc(R: RelationSet) -> rep.VerificationReport:
    params = {"set": R.label}
    # counit annihilates every relation
    for (i, j) in sorted(R.tails):
        residual = counit(R.tail(i, j))
        if not residual.is_zero():
            return rep.failed("counit-coassoc", (i, j), residual.render(), **params)
    for i in range(1, R.n_gens + 1):
        di = delta_generator(i, R)
        left = {}
        right = {}
        for (lw, rw), c in di.items():
            if all(g == 1 for g in lw):
                left[rw] = left.get(rw, LaurentPoly.zero()) + c
            if all(g == 1 for g in rw):
                right[lw] = right.get(lw, LaurentPoly.zero()) + c
        gen = {(i,): LaurentPoly.one()}
        if {w: c for w, c in left.items() if not c.is_zero()} != gen:
            return rep.failed("counit-coassoc", (i,), "(c (x) id) Delta != id", **params)
        if {w: c for w, c in right.items() if not c.is_zero()} != gen:
            return rep.failed("counit-coassoc", (i,), "(id (x) c) Delta != id", **params)
        # coassociativity on the generator
        lhs: dict = {}
        rhs: dict = {}
        for (lw, rw), c in di.items():
            for (a2, b2), c2 in delta_of_element(
                nc_word(R.n_gens, R.h_order, lw), R
            ).items():
                key = (a2, b2, rw)
                lhs[key] = lhs.get(key, LaurentPoly.zero()) + c * c2
            for (a2, b2), c2 in delta_of_element(
                nc_word(R.n_gens, R.h_order, rw), R
            ).items():
                key = (lw, a2, b2)
                rhs[key] = rhs.get(key, LaurentPoly.zero()) + c * c2
        lhs = {k: v for k, v in lhs.items() if not v.is_zero()}
        rhs = {k: v for k, v in rhs.items() if not v.is_zero()}
        if lhs != rhs:
            keys = sorted(set(lhs) | set(rhs))
            bad = next(k for k in keys if lhs.get(k) != rhs.get(k))
            return rep.failed("counit-coassoc", (i,), f"coassociativity differs at {bad}", **params)
    return rep.passed("counit-coassoc", **params)


def verify_grading(R: RelationSet) -> rep.VerificationReport:
    """Every monomial of every relation is homogeneous of degree i+j-2 when
    x_i weighs i-1 and h weighs d."""
    params = {"set": R.label, "d": R.d}
    for (i, j), tail in sorted(R.tails.items()):
        target = i + j - 2
        for word, c in tail.terms.items():
            weight = sum(g - 1 for g in word)
            deg = homogeneous_graded_degree(c, R.d, word_weight=weight)
            if deg != target:
                return rep.failed(
                    "grading", (i, j),
                    f"term ({c.render()}) {' '.join(_word_factors(word)) or '1'} "
                    f"has degree {deg}, want {target}", **params)
    return rep.passed("grading", **params)


def word_to_commutative(word: tuple) -> LaurentPoly:
    out = LaurentPoly.one()
    for g in word:
        out = out * LaurentPoly.var(Variable(VarKind.GROUP_X, g))
    return out


def verify_quasiclassical(R: RelationSet, omega: PoissonStructure) -> rep.VerificationReport:
    """[x_i, x_j] = h {x_i, x_j} + O(h^2): the h-linear part of each reduced
    commutator must equal the bracket table entry, read commutatively."""
    params = {"set": R.label, "n": omega.n}
    for (i, j) in sorted(R.tails):
        tail = commutator_normal_form(R, i, j)
        order0 = LaurentPoly.zero()
        order1 = LaurentPoly.zero()
        for word, c in tail.terms.items():
            cm = word_to_commutative(word)
            order0 = order0 + c.coefficient(H, 0) * cm
            order1 = order1 + c.coefficient(H, 1) * cm
        if not order0.is_zero():
            return rep.failed("quasiclassical", (i, j),
                              f"h-free part {order0.render()}", **params)
        residual = order1 - omega.bracket(i, j)
        if not residual.is_zero():
            return rep.failed("quasiclassical", (i, j), residual.render(), **params)
    return rep.passed("quasiclassical", **params)


# ---------------------------------------------------------------------------
# The shipped relation sets


def _sym(value, name: str):
    if value == "symbolic":
        return LaurentPoly.var(param(name))
    return poly(value)


def _tail(n_gens: int, h_order: int, terms) -> NCElement:
    """terms: list of (h exponent, coefficient, word as ((gen, power), ...))."""
    table: dict = {}
    for hexp, c, factors in terms:
        word = tuple(g for g, k in factors for _ in range(k))
        val = poly(c) * LaurentPoly.var(H, hexp) if hexp else poly(c)
        table[word] = table.get(word, LaurentPoly.zero()) + val
    return nc_make(n_gens, h_order, table)


def relation_set_catalog(which: str, params: Optional[Mapping] = None,
                         h_order: Optional[int] = None) -> RelationSet:
    """The three shipped quantum semigroup relation sets plus the two-constant
    intermediate ansatz used by the confluence analysis of the quadratic
    family.

    params values are rationals or the string "symbolic"; defaults are
    symbolic.  Default h orders: quadratic set 8, linear set 10, cubic set 4
    (strictly above the deepest h power reachable in any length-3 overlap
    reduction; the tests re-run at h_order+2 and compare).
    """
    params = dict(params or {})

    def take(name, *also):
        value = params.pop(name, "symbolic")
        for alias in also:
            if alias in params:
                value = params.pop(alias)
        return _sym(value, name)

    if which == "R2":
        C = take("C")
        if params:
            raise UnknownParameters(f"unused parameters: {sorted(params)}")
        K = 8 if h_order is None else h_order
        F = Fraction
        tails = {
            (1, 2): [],
            (1, 3): [(1, -1, ((1, 2),)), (1, 1, ((1, 4),))],
            (2, 3): [(1, 1, ((2, 1), (1, 3))), (1, -2, ((2, 1), (1, 1)))],
            (1, 4): [(1, 3, ((2, 1), (1, 3))), (1, -2, ((2, 1), (1, 1)))],
            # x1 exponent 2 in the cubic term: forced by the quadratic-family
            # bracket, the cocycle identity and Delta-compatibility alike.
            (2, 4): [(1, 3, ((2, 2), (1, 2))), (1, -4, ((2, 2),))],
            (3, 4): [(1, 4, ((4, 1), (1, 1))), (1, -1, ((4, 1), (1, 3))),
                     (1, 3, ((3, 1), (2, 1), (1, 2))), (1, -6, ((3, 1), (2, 1))),
                     (2, 2, ((2, 1), (1, 1)))],
            (1, 5): [(1, 3, ((3, 1), (1, 3))), (1, -3, ((3, 1), (1, 1))),
                     (1, 3, ((2, 2), (1, 2))),
                     (2, -6, ((1, 4),)), (2, F(9, 2), ((1, 6),)), (2, F(3, 2), ((1, 2),))],
            (2, 5): [(1, 3, ((2, 3), (1, 1))),
                     (1, 3, ((3, 1), (2, 1), (1, 2))), (1, -6, ((3, 1), (2, 1))),
                     (2, 6, ((2, 1), (1, 1))), (2, -9, ((2, 1), (1, 3))),
                     (2, F(9, 2), ((2, 1), (1, 5)))],
            (3, 5): [(1, 5, ((5, 1), (1, 1))), (1, -1, ((5, 1), (1, 3))),
                     (1, 3, ((3, 2), (1, 2))), (1, -9, ((3, 2),)),
                     (1, 3, ((3, 1), (2, 2), (1, 1))),
                     (2, F(-15, 2), ((3, 1), (1, 1))), (2, 6, ((3, 1), (1, 3))),
                     (2, F(3, 2), ((3, 1), (1, 5))),
                     (3, C, ((1, 8),)), (3, -C, ((1, 2),))],
            (4, 5): [(1, 10, ((5, 1), (2, 1))), (1, -3, ((5, 1), (2, 1), (1, 2))),
                     (1, 3, ((4, 1), (3, 1), (1, 2))), (1, -12, ((4, 1), (3, 1))),
                     (1, 3, ((4, 1), (2, 2), (1, 1))),
                     (2, -24, ((4, 1), (1, 1))), (2, 9, ((4, 1), (1, 3))),
                     (2, F(3, 2), ((4, 1), (1, 5))), (2, 6, ((3, 1), (2, 1))),
                     (3, -(C * 2 + 6), ((2, 1), (1, 1))), (3, C * 3, ((2, 1), (1, 7)))],
        }
        built = {pair: _tail(5, K, t) for pair, t in tails.items()}
        return make_relation_set("R2", 2, 5, K, built, ("C",))

    if which == "R2_ansatz":
        C1 = take("C1")
        C2 = take("C2")
        C3 = take("C3", "C")
        if params:
            raise UnknownParameters(f"unused parameters: {sorted(params)}")
        K = 8 if h_order is None else h_order
        base = relation_set_catalog("R2", {"C": 0}, K)
        tails = {
            (1, 2): [], (1, 3): None, (2, 3): None, (1, 4): None,
            (2, 4): [(1, 3, ((2, 2), (1, 2))), (1, -4, ((2, 2),)),
                     (2, C1, ((1, 6),)), (2, -C1, ((1, 2),))],
            (3, 4): [(1, 4, ((4, 1), (1, 1))), (1, -1, ((4, 1), (1, 3))),
                     (1, 3, ((3, 1), (2, 1), (1, 2))), (1, -6, ((3, 1), (2, 1))),
                     (2, 2 - C1 * 2, ((2, 1), (1, 1))), (2, C1 * 2, ((2, 1), (1, 5)))],
            (1, 5): [(1, 3, ((3, 1), (1, 3))), (1, -3, ((3, 1), (1, 1))),
                     (1, 3, ((2, 2), (1, 2))),
                     (2, 6, ((1, 2),)), (2, -6, ((1, 4),)),
                     (2, C2, ((1, 6),)), (2, -C2, ((1, 2),))],
            (2, 5): [(1, 3, ((2, 3), (1, 1))),
                     (1, 3, ((3, 1), (2, 1), (1, 2))), (1, -6, ((3, 1), (2, 1))),
                     (2, 15 - C2 * 2, ((2, 1), (1, 1))), (2, -9, ((2, 1), (1, 3))),
                     (2, C2, ((2, 1), (1, 5)))],
            (3, 5): [(1, 5, ((5, 1), (1, 1))), (1, -1, ((5, 1), (1, 3))),
                     (1, 3, ((3, 2), (1, 2))), (1, -9, ((3, 2),)),
                     (1, 3, ((3, 1), (2, 2), (1, 1))),
                     (2, 6 - C2 * 3, ((3, 1), (1, 1))), (2, 6, ((3, 1), (1, 3))),
                     (2, C2 - 3, ((3, 1), (1, 5))),
                     (3, C3, ((1, 8),)), (3, -C3, ((1, 2),))],
            (4, 5): [(1, 10, ((5, 1), (2, 1))), (1, -3, ((5, 1), (2, 1), (1, 2))),
                     (1, 3, ((4, 1), (3, 1), (1, 2))), (1, -12, ((4, 1), (3, 1))),
                     (1, 3, ((4, 1), (2, 2), (1, 1))),
                     (2, -(C2 * 4 + 6), ((4, 1), (1, 1))), (2, 9, ((4, 1), (1, 3))),
                     (2, C2 - 3, ((4, 1), (1, 5))), (2, 6, ((3, 1), (2, 1))),
                     (3, 3 - C2 * 2 - C3 * 2, ((2, 1), (1, 1))), (3, C3 * 3, ((2, 1), (1, 7)))],
        }
        built = {}
        for pair, t in tails.items():
            built[pair] = base.tail(*pair) if t is None else _tail(5, K, t)
        return make_relation_set("R2_ansatz", 2, 5, K, built, ("C1", "C2", "C3"))

    if which == "R1":
        C3 = take("C3")
        C4 = take("C4")
        C5 = take("C5")
        if params:
            raise UnknownParameters(f"unused parameters: {sorted(params)}")
        K = 10 if h_order is None else h_order
        tails = {
            (1, 2): [(1, 1, ((1, 3),)), (1, -1, ((1, 2),))],
            (1, 3): [(1, 2, ((2, 1), (1, 2))), (1, -2, ((2, 1), (1, 1))),
                     (2, 2, ((1, 4),)), (2, -3, ((1, 3),)), (2, 1, ((1, 2),))],
            (2, 3): [(1, 3, ((3, 1), (1, 1))), (1, -1, ((3, 1), (1, 2))),
                     (1, 2, ((2, 2), (1, 1))), (1, -4, ((2, 2),)),
                     (2, 3, ((2, 1), (1, 2))), (2, -3, ((2, 1), (1, 1))),
                     (3, 2 - C3 * 2, ((1, 5),)), (3, -(2 - C3 * 2), ((1, 2),))],
            (1, 4): [(1, -3, ((3, 1), (1, 1))), (1, 2, ((3, 1), (1, 2))),
                     (1, 1, ((2, 2), (1, 1))),
                     (2, 3, ((2, 1), (1, 1))), (2, -8, ((2, 1), (1, 2))),
                     (2, 5, ((2, 1), (1, 3))),
                     (3, 5, ((1, 5),)), (3, -12, ((1, 4),)), (3, 7, ((1, 3),)),
                     (3, C3, ((1, 5),)), (3, -C3, ((1, 2),))],
            (2, 4): [(1, 4, ((4, 1), (1, 1))), (1, -1, ((4, 1), (1, 2))),
                     (1, 2, ((3, 1), (2, 1), (1, 1))), (1, -6, ((3, 1), (2, 1))),
                     (1, 1, ((2, 3),)),
                     (2, 3, ((2, 2), (1, 2))), (2, -10, ((2, 2), (1, 1))),
                     (2, 12, ((2, 2),)),
                     (2, 12, ((3, 1), (1, 2))), (2, -2, ((3, 1), (1, 3))),
                     (2, -15, ((3, 1), (1, 1))),
                     (3, C3 * 2 + 9, ((2, 1), (1, 1))), (3, -17, ((2, 1), (1, 2))),
                     (3, 6, ((2, 1), (1, 3))), (3, 5 - C3 * 5, ((2, 1), (1, 4))),
                     (4, 22 - C3 * 22, ((1, 2),)), (4, C3 * 4 - 4, ((1, 3),)),
                     (4, C3 * 18 - 18, ((1, 5),)),
                     (4, C4, ((1, 6),)), (4, -C4, ((1, 2),))],
            (3, 4): [(1, 8, ((4, 1), (2, 1))), (1, -2, ((4, 1), (2, 1), (1, 1))),
                     (1, 1, ((3, 1), (2, 2))), (1, -9, ((3, 2),)), (1, 2, ((3, 2), (1, 1))),
                     (2, -1, ((3, 1), (2, 1), (1, 2))), (2, 16, ((3, 1), (2, 1), (1, 1))),
                     (2, -24, ((3, 1), (2, 1))),
                     (2, -7, ((4, 1), (1, 2))), (2, 16, ((4, 1), (1, 1))),
                     (3, 10 - C3 * 10, ((2, 2), (1, 3))), (3, C3 * 8 - 9, ((2, 2),)),
                     (3, C3 * 5 - 5, ((3, 1), (1, 4))), (3, 16, ((3, 1), (1, 2))),
                     (3, -(C3 * 9 + 6), ((3, 1), (1, 1))),
                     (4, 8 - C3 * 9 - C4 * 2, ((2, 1), (1, 1))),
                     (4, 9 - C3 * 8, ((2, 1), (1, 2))),
                     (4, 10 - C3 * 10, ((2, 1), (1, 4))),
                     (4, C4 * 2 - 18 + C3 * 18, ((2, 1), (1, 5))),
                     (5, C4 + C3 * 2 - 2, ((1, 2),)), (5, 4 - C3 * 4 - C4, ((1, 6),)),
                     (5, C3 * 2 - 2, ((1, 5),)),
                     (5, C5, ((1, 7),)), (5, -C5, ((1, 2),))],
        }
        built = {pair: _tail(4, K, t) for pair, t in tails.items()}
        return make_relation_set("R1", 1, 4, K, built, ("C3", "C4", "C5"))

    if which == "R1_pbw":
        # The confluent section of the linear-family set: the x2 x3 x4 overlap
        # resolves iff C5 = 2 C3^2 + 36 C3 + 4 C4 - 38 (see the overlap report
        # for the unconstrained set), so this catalog entry bakes that value.
        C3 = take("C3")
        C4 = take("C4")
        if params:
            raise UnknownParameters(f"unused parameters: {sorted(params)}")
        base = relation_set_catalog("R1", None, h_order)
        section = C3 * C3 * 2 + C3 * 36 + C4 * 4 - 38
        sub = {param("C3"): C3, param("C4"): C4, param("C5"): section}
        tails = {
            pair: nc_make(4, base.h_order,
                          {w: c.substitute(sub) for w, c in t.terms.items()})
            for pair, t in base.tails.items()
        }
        return make_relation_set("R1_pbw", 1, 4, base.h_order, tails, ("C3", "C4"))

    if which == "R3":
        if params:
            raise UnknownParameters(f"unused parameters: {sorted(params)}")
        K = 4 if h_order is None else h_order
        tails = {
            (1, 2): [], (1, 3): [], (2, 3): [],
            (1, 4): [(1, 1, ((1, 5),)), (1, -1, ((1, 2),))],
            (2, 4): [(1, 1, ((2, 1), (1, 4))), (1, -2, ((2, 1), (1, 1)))],
            (3, 4): [(1, 1, ((3, 1), (1, 4))), (1, -3, ((3, 1), (1, 1)))],
            (1, 5): [(1, 4, ((2, 1), (1, 4))), (1, -2, ((2, 1), (1, 1)))],
            # x1 exponent 3 in the quartic term: forced as in the quadratic set.
            (2, 5): [(1, 4, ((2, 2), (1, 3))), (1, -4, ((2, 2),))],
            (3, 5): [(1, 4, ((3, 1), (2, 1), (1, 3))), (1, -6, ((3, 1), (2, 1)))],
            (4, 5): [(1, 4, ((4, 1), (2, 1), (1, 3))), (1, -8, ((4, 1), (2, 1))),
                     (1, 5, ((5, 1), (1, 1))), (1, -1, ((5, 1), (1, 4))),
                     (2, 3, ((2, 1), (1, 1)))],
        }
        built = {pair: _tail(5, K, t) for pair, t in tails.items()}
        return make_relation_set("R3", 3, 5, K, built)

    raise ValueError(f"unknown relation set {which}")


# ---------------------------------------------------------------------------
# Textual DSL for relation sets


def render_relation_set(R: RelationSet) -> str:
    lines = [f"# set {R.label} d={R.d} gens={R.n_gens} h_order={R.h_order}"]
    for (i, j) in sorted(R.tails):
        tail = R.tail(i, j)
        rhs = f"x{j} x{i}"
        if not tail.is_zero():
            rhs += " + " + tail.render()
        lines.append(f"x{i} x{j} -> {rhs}")
    return "\n".join(lines) + "\n"


_TERM_RE = re.compile(r"\(([^)]*)\)\s*((?:x\d+(?:\^\d+)?\s*)*)")
_FACTOR_RE = re.compile(r"x(\d+)(?:\^(\d+))?")


def _parse_coeff(text: str) -> LaurentPoly:
    total = LaurentPoly.zero()
    for piece in text.split(" + "):
        piece = piece.strip()
        if not piece:
            continue
        value = LaurentPoly.one()
        for factor in piece.split("*"):
            factor = factor.strip()
            if re.fullmatch(r"-?\d+(/\d+)?", factor):
                value = value * Fraction(factor)
            else:
                m = re.fullmatch(r"([A-Za-z]\w*)(?:\^(\d+))?", factor)
                if not m:
                    raise ValueError(f"cannot parse coefficient factor {factor!r}")
                value = value * LaurentPoly.var(param(m.group(1)), int(m.group(2) or 1))
        total = total + value
    return total


def parse_relation_set(text: str) -> RelationSet:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    header = re.fullmatch(
        r"# set (\S+) d=(\d+) gens=(\d+) h_order=(\d+)", lines[0]
    )
    if not header:
        raise ValueError("missing relation-set header")
    label, d, n_gens, h_order = header.group(1), *map(int, header.groups()[1:])
    tails = {}
    for ln in lines[1:]:
        lhs, rhs = ln.split("->")
        gi, gj = (int(m.group(1)) for m in _FACTOR_RE.finditer(lhs))
        terms: dict = {}
        for m in _TERM_RE.finditer(rhs):
            coeff = _parse_coeff(m.group(1))
            word = tuple(
                int(f.group(1))
                for f in _FACTOR_RE.finditer(m.group(2))
                for _ in range(int(f.group(2) or 1))
            )
            terms[word] = terms.get(word, LaurentPoly.zero()) + coeff
        tails[(gi, gj)] = nc_make(n_gens, h_order, terms)
    return make_relation_set(label, d, n_gens, h_order, tails)
