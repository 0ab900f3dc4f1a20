"""Quantum semigroups: rewriting, confluence certificates, comultiplication,
counit, grading and the quasiclassical limit.

Two catalog coefficients differ from the published tables (the x1
exponent in the quadratic set's (2,4) tail and in the cubic set's (2,5)
tail): the printed exponents contradict the bracket tables the relations
must deform, and the printed-variant tests below show they also break the
comultiplication compatibility.  The linear set is shipped verbatim; its
overlap check discovers that confluence holds only on a section of the
printed three-parameter family, and that record is asserted here.
"""

import random
from fractions import Fraction

import pytest

from jetpoisson import poissonlie as pl
from jetpoisson import quantum as qt
from jetpoisson.coeffpoly import LaurentPoly, param


def test_multiply_is_concatenation():
    a = qt.nc_word(5, 4, (1,))
    b = qt.nc_word(5, 4, (2,))
    assert qt.nc_multiply(a, b).terms == {(1, 2): LaurentPoly.one()}
    c = qt.nc_multiply(qt.nc_word(5, 4, (2, 1)), qt.nc_word(5, 4, (3,)))
    assert c.terms == {(2, 1, 3): LaurentPoly.one()}


def test_h_truncation_kills_deep_terms():
    h = LaurentPoly.var(qt.H)
    a = qt.nc_make(5, 4, {(1,): h ** 4})
    b = qt.nc_make(5, 4, {(): h})
    assert qt.nc_multiply(a, b).is_zero()


def test_reduce_known_commutators():
    R2 = qt.relation_set_catalog("R2")
    h = LaurentPoly.var(qt.H)
    out = qt.nc_reduce(qt.nc_word(5, 8, (1, 3)), R2)
    assert out.terms == {(3, 1): LaurentPoly.one(), (1, 1): -h, (1, 1, 1, 1): h}
    R3 = qt.relation_set_catalog("R3")
    nf = qt.commutator_normal_form(R3, 4, 5)
    assert nf.coeff((2, 1)) == 3 * h * h
    assert nf.coeff((4, 2, 1, 1, 1)) == 4 * h
    assert nf.coeff((4, 2)) == -8 * h
    assert nf.coeff((5, 1)) == 5 * h
    assert nf.coeff((5, 1, 1, 1, 1)) == -h


def test_reduce_fixpoint_and_idempotence():
    R2 = qt.relation_set_catalog("R2")
    canonical = qt.nc_word(5, 8, (5, 3, 1, 1))
    assert qt.nc_reduce(canonical, R2).terms == canonical.terms
    messy = qt.nc_word(5, 8, (1, 2, 3, 4))
    once = qt.nc_reduce(messy, R2)
    assert qt.nc_reduce(once, R2).terms == once.terms
    assert all(qt.word_is_canonical(w) for w in once.terms)


def test_reduce_random_site_order_agrees_with_leftmost():
    R2 = qt.relation_set_catalog("R2", {"C": Fraction(2, 3)})
    rng = random.Random(17)
    for _ in range(8):
        word = tuple(rng.randint(1, 5) for _ in range(rng.randint(2, 5)))
        det = qt.nc_reduce(qt.nc_word(5, 8, word), R2)
        rnd = qt.nc_reduce(qt.nc_word(5, 8, word), R2, rng=rng)
        assert det.terms == rnd.terms, word


def test_reduce_preserves_graded_degree():
    from jetpoisson.coeffpoly import homogeneous_graded_degree

    R2 = qt.relation_set_catalog("R2")
    rng = random.Random(23)
    for _ in range(6):
        word = tuple(rng.randint(1, 5) for _ in range(rng.randint(2, 4)))
        weight = sum(g - 1 for g in word)
        out = qt.nc_reduce(qt.nc_word(5, 8, word), R2)
        for w, c in out.terms.items():
            deg = homogeneous_graded_degree(c, 2, word_weight=sum(g - 1 for g in w))
            assert deg == weight, (word, w)


def test_overlap_checks_for_shipped_sets():
    assert qt.pbw_overlap_check(qt.relation_set_catalog("R2")).passed
    assert qt.pbw_overlap_check(qt.relation_set_catalog("R3")).passed
    assert qt.pbw_overlap_check(qt.relation_set_catalog("R1_pbw")).passed


def test_overlap_check_is_stable_under_deeper_truncation():
    for which in ("R2", "R3"):
        base = qt.relation_set_catalog(which)
        deeper = qt.relation_set_catalog(which, h_order=base.h_order + 2)
        assert qt.pbw_overlap_check(base).passed
        assert qt.pbw_overlap_check(deeper).passed


def test_ansatz_overlap_pins_first_constant():
    bad = qt.relation_set_catalog("R2_ansatz", {"C1": 1, "C2": "symbolic", "C3": 0})
    report = qt.pbw_overlap_check(bad, triples=[(2, 3, 4)])
    assert not report.passed
    assert report.witness["indices"] == [2, 3, 4]
    good = qt.relation_set_catalog("R2_ansatz", {"C1": 0, "C2": "symbolic", "C3": 0})
    assert qt.pbw_overlap_check(good, triples=[(2, 3, 4)]).passed
    symbolic = qt.relation_set_catalog("R2_ansatz", None)
    report = qt.pbw_overlap_check(symbolic, triples=[(2, 3, 4)])
    assert not report.passed and "C1" in report.witness["residual"]


def test_ansatz_overlaps_pin_second_constant():
    # with the first constant zeroed, four specific overlaps force 2 C2 = 9
    # and the remaining length-3 overlap resolves freely
    good = qt.relation_set_catalog("R2_ansatz", {"C1": 0, "C2": "symbolic", "C3": 0})
    for triple in ((1, 3, 5), (1, 4, 5), (2, 4, 5), (3, 4, 5)):
        report = qt.pbw_overlap_check(good, triples=[triple])
        assert not report.passed and "C2" in report.witness["residual"], triple
    assert qt.pbw_overlap_check(good, triples=[(1, 2, 5)]).passed
    pinned = qt.relation_set_catalog(
        "R2_ansatz", {"C1": 0, "C2": Fraction(9, 2), "C3": "symbolic"})
    assert qt.pbw_overlap_check(pinned).passed


def test_ansatz_with_pinned_constants_equals_shipped_set():
    pinned = qt.relation_set_catalog(
        "R2_ansatz", {"C1": 0, "C2": Fraction(9, 2), "C3": "symbolic"})
    shipped = qt.relation_set_catalog("R2", {"C": "symbolic"})
    sub = {param("C3"): LaurentPoly.var(param("C"))}
    for pair in shipped.tails:
        got = {w: c.substitute(sub) for w, c in pinned.tail(*pair).terms.items()}
        assert got == shipped.tail(*pair).terms, pair


def test_linear_set_overlap_constraint_record():
    # shipped verbatim, the printed three-parameter family is confluent only
    # on the section C5 = 2 C3^2 + 36 C3 + 4 C4 - 38; the unconstrained check
    # reports the residual at the x2 x3 x4 overlap
    R1 = qt.relation_set_catalog("R1")
    report = qt.pbw_overlap_check(R1)
    assert not report.passed
    assert report.witness["indices"] == [2, 3, 4]
    for name in ("C3", "C4", "C5"):
        assert name in report.witness["residual"]
    for (c3, c4) in ((Fraction(0), Fraction(0)), (Fraction(1), Fraction(2))):
        c5 = 2 * c3 * c3 + 36 * c3 + 4 * c4 - 38
        section = qt.relation_set_catalog("R1", {"C3": c3, "C4": c4, "C5": c5})
        assert qt.pbw_overlap_check(section).passed
        off = qt.relation_set_catalog("R1", {"C3": c3, "C4": c4, "C5": c5 + 1})
        assert not qt.pbw_overlap_check(off).passed


def test_delta_generator_printed_rows():
    R = qt.relation_set_catalog("R2")
    one = LaurentPoly.one()
    assert qt.delta_generator(1, R) == {((1,), (1,)): one}
    assert qt.delta_generator(2, R) == {((1,), (2,)): one, ((2,), (1, 1)): one}
    assert qt.delta_generator(3, R) == {
        ((1,), (3,)): one, ((2,), (1, 2)): one, ((2,), (2, 1)): one,
        ((3,), (1, 1, 1)): one}
    # the length-5 row ends with the five-fold split on x1^5
    d5 = qt.delta_generator(5, R)
    assert d5[((5,), (1, 1, 1, 1, 1))] == one
    assert d5[((2,), (4, 1))] == one
    assert d5[((3,), (1, 3, 1))] == one


def test_delta_homomorphism_for_shipped_sets():
    for which in ("R2", "R3", "R1", "R1_pbw"):
        R = qt.relation_set_catalog(which)
        assert qt.verify_delta_homomorphism(R).passed, which


def test_counit_and_coassociativity():
    for which in ("R2", "R3", "R1"):
        R = qt.relation_set_catalog(which)
        assert qt.verify_counit_coassoc(R).passed, which
    # the counit collapse on the third comultiplication row
    R = qt.relation_set_catalog("R2")
    d3 = qt.delta_generator(3, R)
    collapsed = {}
    for (lw, rw), c in d3.items():
        if all(g == 1 for g in lw):
            collapsed[rw] = collapsed.get(rw, LaurentPoly.zero()) + c
    assert collapsed == {(3,): LaurentPoly.one()}
    # frozen three-slot expansion for the quadratic generator
    lhs = {}
    for (lw, rw), c in qt.delta_generator(2, R).items():
        for (a, b), c2 in qt.delta_of_element(qt.nc_word(5, 8, lw), R).items():
            lhs[(a, b, rw)] = c * c2
    one = LaurentPoly.one()
    assert lhs == {((1,), (1,), (2,)): one, ((1,), (2,), (1, 1)): one,
                   ((2,), (1, 1), (1, 1)): one}


def test_counit_on_relation_tails():
    R = qt.relation_set_catalog("R2")
    for pair in R.tails:
        assert qt.counit(R.tail(*pair)).is_zero(), pair
    # c(f) = h (-1 + 1) = 0 on the (1,3) tail specifically
    tail = R.tail(1, 3)
    assert qt.counit(tail).is_zero() and len(tail.terms) == 2


def test_grading_of_shipped_sets_and_degree_examples():
    for which, d in (("R2", 2), ("R3", 3), ("R1", 1)):
        R = qt.relation_set_catalog(which)
        assert R.d == d
        assert qt.verify_grading(R).passed, which
    # spot degrees: rule (3,4) of the quadratic set is homogeneous of 5,
    # the cubic set's 3 h^2 x2 x1 term weighs 2*3 + 1 + 0 = 7 = 4 + 5 - 2
    R3 = qt.relation_set_catalog("R3")
    tail = R3.tail(4, 5)
    h2 = tail.coeff((2, 1)).coefficient(qt.H, 2)
    assert h2 == LaurentPoly.const(3)


def test_grading_negative_control():
    h = LaurentPoly.var(qt.H)
    tails = {(1, 2): qt.nc_make(2, 4, {(1, 1): h})}  # degree 1+0 + |h| = 3 != 1
    bad = qt.make_relation_set("bad", 2, 2, 4, tails)
    report = qt.verify_grading(bad)
    assert not report.passed
    assert report.witness["indices"] == [1, 2]


def test_quasiclassical_limits_match_bracket_tables():
    for which, d, n in (("R2", 2, 5), ("R3", 3, 5), ("R1", 1, 4)):
        R = qt.relation_set_catalog(which)
        omega = pl.build_omega(pl.phi_power_family(d), n)
        assert qt.verify_quasiclassical(R, omega).passed, which


def test_quasiclassical_negative_control():
    R = qt.relation_set_catalog("R3")
    omega = pl.build_omega(pl.phi_power_family(3), 5).perturbed(1, 4, LaurentPoly.one())
    report = qt.verify_quasiclassical(R, omega)
    assert not report.passed and report.witness["indices"] == [1, 4]


# -- printed-variant records --------------------------------------------------


def _with_tail(R, pair, terms):
    tails = dict(R.tails)
    tails[pair] = qt.nc_make(R.n_gens, R.h_order, terms)
    return qt.make_relation_set(R.label + "-printed", R.d, R.n_gens, R.h_order,
                                tails, R.params)


def test_printed_quadratic_variant_breaks_compatibility():
    # (2,4) tail with the printed x1^3 instead of x1^2: the comultiplication
    # stops being an algebra map and the h-linear part leaves the bracket table
    R2 = qt.relation_set_catalog("R2", {"C": 0})
    h = LaurentPoly.var(qt.H)
    printed = _with_tail(R2, (2, 4), {(2, 2, 1, 1, 1): 3 * h, (2, 2): -4 * h})
    report = qt.verify_delta_homomorphism(printed)
    assert not report.passed and report.witness["indices"] == [2, 4]
    omega = pl.build_omega(pl.phi_power_family(2), 5)
    assert not qt.verify_quasiclassical(printed, omega).passed
    assert qt.verify_grading(printed).passed  # the grading cannot see it


def test_printed_cubic_variant_breaks_compatibility():
    # (2,5) tail with the printed x1^4 instead of x1^3
    R3 = qt.relation_set_catalog("R3")
    h = LaurentPoly.var(qt.H)
    printed = _with_tail(R3, (2, 5), {(2, 2, 1, 1, 1, 1): 4 * h, (2, 2): -4 * h})
    report = qt.verify_delta_homomorphism(printed)
    assert not report.passed and report.witness["indices"] == [2, 5]
    omega = pl.build_omega(pl.phi_power_family(3), 5)
    assert not qt.verify_quasiclassical(printed, omega).passed
    assert qt.verify_grading(printed).passed


# -- serialization -------------------------------------------------------------


def test_relation_set_dsl_round_trip():
    for which in ("R1", "R2", "R3"):
        R = qt.relation_set_catalog(which)
        back = qt.parse_relation_set(qt.render_relation_set(R))
        assert back.label == R.label and back.d == R.d
        for pair in R.tails:
            assert back.tail(*pair).terms == R.tail(*pair).terms, (which, pair)


def test_unknown_parameters_rejected():
    with pytest.raises(qt.UnknownParameters):
        qt.relation_set_catalog("R2", {"C9": 1})
    with pytest.raises(ValueError):
        qt.relation_set_catalog("R9")
