"""Lie-bialgebra side: cochains on the Witt algebra and its jet subalgebra.

Basis conventions.  The Witt algebra here is span{e_i : i >= -1} with
[e_i, e_j] = (i - j) e_{i+j}; the subalgebra tangent to the origin-fixing
jet group is span{e_i : i >= 0}.  A 2-cochain table alpha^n_{ij} uses the
full-sum convention: alpha(e_n) = sum over ALL i,j of alpha^n_{ij} e_i ^ e_j
with an antisymmetric table, so a printed term c * e_a ^ e_b contributes c/2
to the (a, b) entry.

Cochain tables built here are complete: for every stored level n the (i, j)
support is the full support, which is what makes the finite-range checks
below exact instances of the corresponding infinite systems.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from . import report as rep
from . import series as ts
from .coeffpoly import LaurentPoly, Variable, poly
from .poissonlie import PhiFunction, PoissonStructure


def witt_structure_constant(i: int, j: int, k: int) -> Fraction:
    """[e_i, e_j] = (i - j) e_{i+j}: the coefficient of e_k."""
    return Fraction(i - j) if k == i + j else Fraction(0)


# ---------------------------------------------------------------------------
# Tables


@dataclass(frozen=True)
class WedgeCochain:
    min_index: int
    alpha: dict  # n -> {(i, j): LaurentPoly}, antisymmetric per level
    upper: int   # levels n <= upper are stored exactly
    max_index: Optional[int] = None  # restrict to a finite subalgebra (e.g. sl2)

    def entry(self, n: int, i: int, j: int) -> LaurentPoly:
        if not self._in_range(i) or not self._in_range(j):
            return LaurentPoly.zero()
        return self.alpha.get(n, {}).get((i, j), LaurentPoly.zero())

    def _in_range(self, i: int) -> bool:
        return i >= self.min_index and (self.max_index is None or i <= self.max_index)

    def levels(self):
        return sorted(self.alpha.keys())

    def lower_support(self) -> list[int]:
        seen = set()
        for table in self.alpha.values():
            for (i, j) in table:
                seen.add(i)
                seen.add(j)
        return sorted(seen)


def cochain_from_wedge_terms(terms: Mapping, min_index: int, upper: int,
                             max_index: Optional[int] = None) -> WedgeCochain:
    """Build from printed wedge terms {n: [(a, b, c), ...]} meaning
    alpha(e_n) = sum c * e_a ^ e_b (each unordered pair listed once)."""
    alpha: dict = {}
    for n, items in terms.items():
        table: dict = {}
        for (a, b, c) in items:
            c = poly(c)
            if c.is_zero() or a == b:
                continue
            half = c / 2
            table[(a, b)] = table.get((a, b), LaurentPoly.zero()) + half
            table[(b, a)] = table.get((b, a), LaurentPoly.zero()) - half
        alpha[n] = {k: v for k, v in table.items() if not v.is_zero()}
    return WedgeCochain(min_index, alpha, upper, max_index)


@dataclass(frozen=True)
class RMatrix:
    min_index: int
    r: dict  # (i, j) -> LaurentPoly, antisymmetric

    def entry(self, i: int, j: int) -> LaurentPoly:
        if i < self.min_index or j < self.min_index:
            return LaurentPoly.zero()
        return self.r.get((i, j), LaurentPoly.zero())

    def support_indices(self) -> list[int]:
        return sorted({i for pair in self.r for i in pair})


def rmatrix_from_entries(entries: Mapping, min_index: int) -> RMatrix:
    table: dict = {}
    for (i, j), c in entries.items():
        c = poly(c)
        if c.is_zero() or i == j:
            continue
        table[(i, j)] = table.get((i, j), LaurentPoly.zero()) + c
        table[(j, i)] = table.get((j, i), LaurentPoly.zero()) - c
    return RMatrix(min_index, {k: v for k, v in table.items() if not v.is_zero()})


def r_from_phi(phi: PhiFunction) -> RMatrix:
    """r_{ij} = lam_{i+1, j+1}: the tangent r-matrix of a generating function."""
    return RMatrix(phi.min_index - 1, {(m - 1, n - 1): c for (m, n), c in phi.table.items()})


# ---------------------------------------------------------------------------
# Coboundaries and the cocycle / co-Jacobi checks


def coboundary(r: RMatrix, upper: int) -> WedgeCochain:
    """alpha^n_{ij} = (2n - i) r_{i-n, j} + (2n - j) r_{i, j-n} for n <= upper."""
    alpha: dict = {}
    for n in range(r.min_index, upper + 1):
        table: dict = {}
        for (a, b), c in r.r.items():
            for (i, j, coeff) in (((n + a), b, n - a), (a, (n + b), n - b)):
                if coeff == 0 or i < r.min_index or j < r.min_index:
                    continue
                key = (i, j)
                val = table.get(key, LaurentPoly.zero()) + c * coeff
                if val.is_zero():
                    table.pop(key, None)
                else:
                    table[key] = val
        alpha[n] = table
    return WedgeCochain(r.min_index, alpha, upper)


def verify_cocycle(alpha: WedgeCochain, N: int) -> rep.VerificationReport:
    """The linearized multiplicativity system on a cochain table:

      (n-m) a^{n+m}_{ij} = (2n-i) a^m_{i-n,j} + (2n-j) a^m_{i,j-n}
                           - (2m-i) a^n_{i-m,j} - (2m-j) a^n_{i,j-m}

    checked for every n, m (with n+m also stored) and every potentially
    nonzero (i, j).  Entries below the basis range count as zero.
    """
    lo = alpha.min_index
    top = min(N, alpha.upper)
    params = {"N": N, "min_index": lo, "levels": top}
    checked = 0
    for n in range(lo, top + 1):
        for m in range(lo, top + 1):
            if n == m:
                continue
            if n + m > alpha.upper:
                continue  # target level not stored; equation undecidable here
            candidates = set(alpha.alpha.get(n + m, {}).keys())
            for (a, b) in alpha.alpha.get(m, {}):
                candidates.add((a + n, b))
                candidates.add((a, b + n))
            for (a, b) in alpha.alpha.get(n, {}):
                candidates.add((a + m, b))
                candidates.add((a, b + m))
            for (i, j) in candidates:
                if not alpha._in_range(i) or not alpha._in_range(j):
                    continue
                residual = (
                    alpha.entry(n + m, i, j) * (n - m)
                    - alpha.entry(m, i - n, j) * (2 * n - i)
                    - alpha.entry(m, i, j - n) * (2 * n - j)
                    + alpha.entry(n, i - m, j) * (2 * m - i)
                    + alpha.entry(n, i, j - m) * (2 * m - j)
                )
                checked += 1
                if not residual.is_zero():
                    params["checked"] = checked
                    return rep.failed("cocycle", (n, m, i, j), residual.render(), **params)
    params["checked"] = checked
    return rep.passed("cocycle", **params)


def verify_cojacobi(alpha: WedgeCochain, N: int) -> rep.VerificationReport:
    """sum_j [a^n_{ij} a^j_{sp} + a^n_{pj} a^j_{is} + a^n_{sj} a^j_{pi}] = 0.

    The inner sum couples the lower index of one table to the level of the
    next, so levels up to the stored bound are needed; quadruples that would
    reach beyond it are skipped and counted.
    """
    lo = alpha.min_index
    top = min(N, alpha.upper)
    support = [i for i in alpha.lower_support() if alpha._in_range(i)]
    params = {"N": N, "min_index": lo, "levels": top}
    checked = skipped = 0

    def paired(n, first):
        # lower partners j such that alpha^n_{first, j} != 0
        return [j for (a, j) in alpha.alpha.get(n, {}) if a == first]

    for n in range(lo, top + 1):
        for (i, s, p) in itertools.product(support, repeat=3):
            residual = LaurentPoly.zero()
            ok = True
            for first, pair in ((i, (s, p)), (p, (i, s)), (s, (p, i))):
                for j in paired(n, first):
                    if j > alpha.upper:
                        ok = False
                        break
                    residual = residual + alpha.entry(n, first, j) * alpha.entry(j, *pair)
                if not ok:
                    break
            if not ok:
                skipped += 1
                continue
            checked += 1
            if not residual.is_zero():
                params.update(checked=checked, skipped=skipped)
                return rep.failed("cojacobi", (n, i, s, p), residual.render(), **params)
    params.update(checked=checked, skipped=skipped)
    return rep.passed("cojacobi", **params)


# ---------------------------------------------------------------------------
# Classical Yang-Baxter layer


def cybe_residual(r: RMatrix, n: int, j: int, l: int) -> LaurentPoly:
    """One component of the classical Yang-Baxter equation:

      sum_k k [ (r_{n-k,l} + r_{n,l-k}) r_{kj}
              + (r_{j,n-k} + r_{j-k,n}) r_{kl}
              + (r_{l,j-k} + r_{l-k,j}) r_{kn} ]
    """
    total = LaurentPoly.zero()
    for k in r.support_indices():
        if k == 0:
            continue
        term = (
            (r.entry(n - k, l) + r.entry(n, l - k)) * r.entry(k, j)
            + (r.entry(j, n - k) + r.entry(j - k, n)) * r.entry(k, l)
            + (r.entry(l, j - k) + r.entry(l - k, j)) * r.entry(k, n)
        )
        total = total + term * k
    return total


def verify_cybe(r: RMatrix, N: int) -> rep.VerificationReport:
    params = {"N": N, "min_index": r.min_index}
    for n in range(r.min_index, N + 1):
        for j in range(n + 1, N + 1):
            for l in range(j + 1, N + 1):
                residual = cybe_residual(r, n, j, l)
                if not residual.is_zero():
                    return rep.failed("cybe", (n, j, l), residual.render(), **params)
    return rep.passed("cybe", **params)


def rr_tensor(r: RMatrix) -> dict:
    """<r,r> as a tensor-cube coefficient table, by direct contraction of the
    three commutator terms with the structure constants."""
    T: dict = {}

    def bump(key, c):
        if c.is_zero():
            return
        cur = T.get(key, LaurentPoly.zero()) + c
        if cur.is_zero():
            T.pop(key, None)
        else:
            T[key] = cur

    lo = r.min_index
    for (i, a), ci in r.r.items():
        for (k, b), ck in r.r.items():
            prod = ci * ck
            if i + k >= lo:
                bump((i + k, a, b), prod * (i - k))      # [r12, r13]
            if a + k >= lo:
                bump((i, a + k, b), prod * (a - k))      # [r12, r23]
            if a + b >= lo:
                bump((i, k, a + b), prod * (a - b))      # [r13, r23]
    return T


def adjoint_action(T: dict, m: int, min_index: int) -> dict:
    """e_m acting on a tensor-cube table through the adjoint representation."""
    out: dict = {}
    for (a, b, c), v in T.items():
        for slot, idx in enumerate((a, b, c)):
            coeff = m - idx
            tgt = m + idx
            if coeff == 0 or tgt < min_index:
                continue
            key = tuple(tgt if q == slot else (a, b, c)[q] for q in range(3))
            cur = out.get(key, LaurentPoly.zero()) + v * coeff
            if cur.is_zero():
                out.pop(key, None)
            else:
                out[key] = cur
    return out


def verify_rr_invariance(r: RMatrix, N: int, max_m: int = 2) -> rep.VerificationReport:
    """Adjoint invariance of <r,r>, plus the structural identity that ties
    the e_0 action to the Yang-Baxter residuals:

        (e_0 . <r,r>)_{njl} = -(n+j+l) * cybe_residual(n,j,l).

    The identity is asserted always; invariance itself holds iff every
    e_m-action table vanishes (m = 0..max_m).
    """
    T = rr_tensor(r)
    params = {"N": N, "min_index": r.min_index, "max_m": max_m,
              "rr_is_zero": not T}
    act0 = adjoint_action(T, 0, r.min_index)
    keys = set(act0)
    for n in range(r.min_index, N + 1):
        for j in range(r.min_index, N + 1):
            for l in range(r.min_index, N + 1):
                keys.add((n, j, l))
    for (n, j, l) in sorted(keys):
        expect = cybe_residual(r, n, j, l) * (-(n + j + l))
        got = act0.get((n, j, l), LaurentPoly.zero())
        if got != expect:
            return rep.failed(
                "rr-invariance", (0, n, j, l),
                f"action {got.render()} vs -(n+j+l)*cybe {expect.render()}", **params)
    for m in range(0, max_m + 1):
        act = adjoint_action(T, m, r.min_index) if m else act0
        for key in sorted(act):
            if not act[key].is_zero():
                return rep.failed("rr-invariance", (m,) + key, act[key].render(), **params)
    return rep.passed("rr-invariance", **params)


# ---------------------------------------------------------------------------
# Tangent correspondence between bracket tables and cochains


def beta_correspondence(omega: PoissonStructure, phi: PhiFunction) -> rep.VerificationReport:
    """First-order jet of a bracket table at the identity against the cochain
    the generating function predicts, entry by entry and as generating series.
    """
    n_t = omega.n
    at_e = {}
    for i in range(1, n_t + 2):
        v = Variable(omega.coord_kind, i)
        at_e[v] = LaurentPoly.one() if i == 1 else LaurentPoly.zero()
    params = {"n": n_t, "provenance": phi.provenance}
    space, bounds = ("u", "v"), (n_t, n_t)
    phi_series = phi.as_series("u", "v", space, (n_t + 1, n_t + 1))
    du = ts.truncate(ts.derivative(phi_series, "u"), bounds)
    dv = ts.truncate(ts.derivative(phi_series, "v"), bounds)
    phi_t = ts.truncate(phi_series, bounds)
    for n in range(1, n_t + 1):
        # entrywise: d(omega_ij)/dx_n at the identity jet
        beta = {}
        for (i, j), w in omega.omega.items():
            val = w.derivative(Variable(omega.coord_kind, n)).substitute(at_e)
            if not val.is_zero():
                beta[(i, j)] = val
        for i in range(1, n_t + 1):
            for j in range(1, n_t + 1):
                expect = (
                    phi.coeff(i - n + 1, j) * (2 * n - i - 1)
                    + phi.coeff(i, j - n + 1) * (2 * n - j - 1)
                )
                got = beta.get((i, j), LaurentPoly.zero())
                if i > j:
                    got = -beta.get((j, i), LaurentPoly.zero())
                if got != expect:
                    return rep.failed(
                        "beta-correspondence", (n, i, j),
                        f"d(omega)/dx entry {got.render()} vs table {expect.render()}",
                        **params)
        # generating series: n phi (u^{n-1} + v^{n-1}) - [u^n d_u phi + v^n d_v phi]
        series = ts.zero(space, bounds)
        for (i, j), val in beta.items():
            series = ts.add(series, ts.make(space, bounds, {(i, j): val, (j, i): -val}))
        mono = lambda eu, ev: ts.make(space, bounds, {(eu, ev): LaurentPoly.one()})
        expect_series = ts.sub(
            ts.scale(ts.mul(phi_t, ts.add(mono(n - 1, 0), mono(0, n - 1))), n),
            ts.add(ts.mul(mono(n, 0), du), ts.mul(mono(0, n), dv)),
        )
        diff = ts.sub(series, expect_series)
        if not diff.is_zero():
            exps = min(diff.coeffs)
            return rep.failed("beta-correspondence", (n,) + exps,
                              diff.coeffs[exps].render(), **params)
    return rep.passed("beta-correspondence", **params)


# ---------------------------------------------------------------------------
# The quantitative recursion behind the cocycle classification


def witt_a_sequence(N: int) -> list[Fraction]:
    """a_2 = 1, a_3 = 3, then
    a_{n+1} = 2n/((n-1)(n+2)) + 2(n+1)/(n+2) a_n - (n+1)(n-2)/((n-1)(n+2)) a_{n-1}.

    Returned as [a_2, a_3, ..., a_N].
    """
    if N < 2:
        raise ValueError("need N >= 2")
    a = {2: Fraction(1), 3: Fraction(3)}
    for n in range(3, N):
        a[n + 1] = (
            Fraction(2 * n, (n - 1) * (n + 2))
            + Fraction(2 * (n + 1), n + 2) * a[n]
            - Fraction((n + 1) * (n - 2), (n - 1) * (n + 2)) * a[n - 1]
        )
    return [a[k] for k in range(2, N + 1)]


# ---------------------------------------------------------------------------
# Classifiers: coefficient tables of all solutions, one branch at a time


@dataclass(frozen=True)
class LambdaTable:
    d: Optional[int]            # branch label; None for the extended-group branch
    min_index: int
    table: dict                 # (m, n) -> LaurentPoly, antisymmetric
    degree: int                 # entries with max(m, n) <= degree are exact

    def coeff(self, m: int, n: int) -> LaurentPoly:
        return self.table.get((m, n), LaurentPoly.zero())

    def to_phi(self, provenance: str = "classified") -> PhiFunction:
        return PhiFunction(self.min_index, dict(self.table), self.degree, False, provenance)


def classify_branch_d(d: int, free: Mapping[int, object], n_max: int) -> LambdaTable:
    """Fill a branch-d coefficient table from its free parameters.

    Normalization lam_{1,d+1} = 1.  Free data: lam_{1,n} for
    n in [d+2, 2d] and (2d+1, n_max]; lam_{1,2d+1} is forced, the row
    lam_{d+1,n} follows by recursion, and every remaining entry is the
    two-by-two determinant of those two rows.  The output box is n_max - d.
    """
    if d < 1:
        raise ValueError("branch label must be >= 1")
    lam1 = {d + 1: LaurentPoly.one()}
    for n, val in free.items():
        if not (d + 2 <= n <= 2 * d or 2 * d + 1 < n <= n_max):
            raise ValueError(f"lam_1{n} is not free on branch {d}")
        lam1[n] = poly(val)

    row = {1: -LaurentPoly.one()}  # lam_{d+1, 1} = -lam_{1, d+1}

    def lam1_at(n: int) -> LaurentPoly:
        return lam1.get(n, LaurentPoly.zero())

    def row_at(n: int) -> LaurentPoly:
        return row.get(n, LaurentPoly.zero())

    def recurse(n: int) -> LaurentPoly:
        # lam_{d+1,n} = -[ d lam_{1,n+d} - sum_{s=1}^{n-1} (n+d-2s+1)
        #                  lam_{1,n+d-s+1} lam_{s,d+1} ] / (d-n+1)
        acc = lam1_at(n + d) * d
        for s in range(1, n):
            acc = acc - lam1_at(n + d - s + 1) * (-row_at(s)) * (n + d - 2 * s + 1)
        return acc / Fraction(-(d - n + 1))

    for n in range(2, d + 1):
        row[n] = recurse(n)
    # the single forced parameter on the first row:
    forced = LaurentPoly.zero()
    for s in range(2, d + 1):
        forced = forced - lam1_at(2 * d + 2 - s) * (-row_at(s)) * Fraction(2 * (d + 1 - s), d)
    lam1[2 * d + 1] = forced
    row[d + 1] = LaurentPoly.zero()
    for n in range(d + 2, n_max - d + 1):
        row[n] = recurse(n)

    box = n_max - d
    entries = {}
    for m in range(1, box + 1):
        for n in range(m + 1, box + 1):
            val = lam1_at(m) * row_at(n) - lam1_at(n) * row_at(m)
            if not val.is_zero():
                entries[(m, n)] = val
    return LambdaTable(d, 1, _antisym(entries), box)


def classify_g0_branch(free: Mapping[int, object], n_max: int) -> LambdaTable:
    """Extended-group branch with lam_{0,1} = 1 and free lam_{0,n}, n >= 2.

    lam_{1,r} follows recursively, then every entry is the two-by-two
    determinant of the first two rows.  Supplying lam_{0,n} up to n_max + 1
    makes the output box n_max exact.
    """
    lam0 = {1: LaurentPoly.one()}
    for n, val in free.items():
        if n < 2:
            raise ValueError("free extended-row parameters start at lam_{0,2}")
        lam0[n] = poly(val)
    lam1 = {0: -LaurentPoly.one()}

    def l0(n):
        return lam0.get(n, LaurentPoly.zero())

    def l1(n):
        return lam1.get(n, LaurentPoly.zero())

    for r in range(2, n_max + 1):
        acc = l0(r) * l0(2) * 2
        for s in range(0, r):
            acc = acc + l0(r - s + 1) * l1(s) * (r - 2 * s + 1)
        lam1[r] = acc / r

    entries = {}
    for m in range(0, n_max + 1):
        for n in range(m + 1, n_max + 1):
            if m == 0:
                val = l0(n)
            elif m == 1:
                val = l1(n)
            else:
                val = l0(m) * l1(n) - l1(m) * l0(n)
            if not val.is_zero():
                entries[(m, n)] = val
    return LambdaTable(None, 0, _antisym(entries), n_max)


def _antisym(entries: dict) -> dict:
    table = {}
    for (m, n), c in entries.items():
        table[(m, n)] = c
        table[(n, m)] = -c
    return table


# ---------------------------------------------------------------------------
# Explicitly printed cochain families


def family_jet_monomial(d: int, N: int) -> WedgeCochain:
    """alpha(e_n) = 2n e_d ^ e_n - 2(n-d) e_0 ^ e_{d+n} on the jet subalgebra."""
    terms = {n: [(d, n, 2 * n), (0, d + n, -2 * (n - d))] for n in range(0, N + 1)}
    return cochain_from_wedge_terms(terms, 0, N)


def family_jet_extended(d: int, lam, N: int) -> WedgeCochain:
    """The one-parameter deformation of the monomial family, truncated at N.

    lam must be a rational (or parameter) value small in the sense that the
    geometric tails are simply cut at index N.
    """
    lam = poly(lam)
    terms: dict = {}
    for n in range(0, N + 1):
        items = []
        for i in range(d + n, N + 1):
            items.append((0, i, 2 * (2 * n - i) * lam ** (i - n - d)))
        for i in range(d, N + 1):
            items.append((i, n, -2 * n * lam ** (i - d)))
        for i in range(d + n, N + 1):
            for j in range(1, d):
                items.append((i, j, Fraction(2, d - 1) * (2 * n - i) * lam ** (i + j - n - d)))
        for i in range(d, N + 1):
            for j in range(n + 1, d + n):
                items.append((i, j, Fraction(2, d - 1) * (2 * n - j) * lam ** (i + j - n - d)))
        terms[n] = items
    return cochain_from_wedge_terms(terms, 0, N)


def family_witt_linear(N: int) -> WedgeCochain:
    """alpha(e_n) = -2n e_{-1} ^ e_n + 2(n+1) e_0 ^ e_{n-1} on the Witt range."""
    terms = {}
    for n in range(-1, N + 1):
        items = [(-1, n, -2 * n)]
        if n - 1 >= -1:
            items.append((0, n - 1, 2 * (n + 1)))
        terms[n] = items
    return cochain_from_wedge_terms(terms, -1, N)


def sl2_pair() -> tuple[WedgeCochain, WedgeCochain]:
    """The two cobracket structures induced on the sl2 subalgebra
    span{e_-1, e_0, e_1} of the Witt algebra."""
    first = cochain_from_wedge_terms(
        {-1: [], 0: [(0, -1, 2)], 1: [(-1, 1, -2)]}, -1, 1, max_index=1
    )
    second = cochain_from_wedge_terms(
        {-1: [(1, -1, 2)], 0: [(0, 1, -2)], 1: []}, -1, 1, max_index=1
    )
    return first, second


def explicit_families(kind: str, N: int, d: int = 1, lam=None):
    if kind == "G_inf_539":
        return family_jet_monomial(d, N)
    if kind == "G_inf_540":
        return family_jet_extended(d, lam, N)
    if kind == "Witt_610":
        return family_witt_linear(N)
    if kind == "sl2_pair":
        return sl2_pair()
    raise ValueError(f"unknown family {kind}")
