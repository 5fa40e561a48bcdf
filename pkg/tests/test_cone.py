from fractions import Fraction

import pytest

from hamcert.affine import Affine
from hamcert.cone import (CONDITIONAL, DISCONNECTED, HURWITZ, NO, NO_RULE, YES, connected_representable,
                          quadratic_cone_test, symplectic_conditions)
from hamcert.lattice import CP2, FormClass, IntClass, LatticeError, SpaceKind

TRIV, NONTRIV = SpaceKind.trivial(0), SpaceKind.nontrivial(0)


def test_linear_conditions():
    names = [n for n, _ in symplectic_conditions(NONTRIV, IntClass([3, 1])).conditions]
    assert names == ["fiber area", "section area"]
    assert symplectic_conditions(NONTRIV, IntClass([3, 1])).satisfied
    assert not symplectic_conditions(NONTRIV, IntClass([1, 1])).satisfied
    assert symplectic_conditions(TRIV, IntClass([1, 1])).satisfied
    assert not symplectic_conditions(CP2, IntClass([0])).satisfied


def test_symbolic_conditions_are_undecided():
    v = symplectic_conditions(TRIV, FormClass([Affine.var("alpha0"), Affine.var("t0")]))
    assert v.satisfied is None
    assert v.forms() == [Affine.var("t0"), Affine.var("alpha0")]


def test_quadratic_oracle_needs_constants():
    with pytest.raises(ValueError):
        quadratic_cone_test(TRIV, FormClass([Affine.var("t0"), 1]))
    with pytest.raises(LatticeError):
        symplectic_conditions(CP2, IntClass([1, 1]))


@pytest.mark.parametrize("space, cls, status, reason", [
    (CP2, [1], YES, ""),
    (CP2, [0], NO, NO_RULE),
    (TRIV, [1, 0], YES, ""),
    (TRIV, [0, 1], YES, ""),
    (TRIV, [2, 3], YES, ""),
    (TRIV, [0, 2], NO, DISCONNECTED),
    (TRIV, [-1, 2], NO, HURWITZ),
    (NONTRIV, [1, 1], YES, ""),
    (NONTRIV, [1, 2], NO, DISCONNECTED),
    (NONTRIV, [2, 1], YES, ""),
    (NONTRIV, [-2, 1], CONDITIONAL, "section area"),
    (NONTRIV, [2, 0], NO, NO_RULE),
    (TRIV, [1, -2], CONDITIONAL, "section area"),
])
def test_representability_table(space, cls, status, reason):
    v = connected_representable(space, IntClass(cls))
    assert v.status == status
    assert v.reason == reason
    assert v.admissible == (status != NO)


def test_hurwitz_margin_with_genus():
    space = SpaceKind.trivial(2)
    v = connected_representable(space, IntClass([1, 2]), genus=2)
    assert v.status == NO and v.reason == HURWITZ
    assert not v.requirements[0].holds({})
    assert connected_representable(space, IntClass([1, 2]), genus=4).status == YES


def test_conditional_requirement_uses_ambient_form():
    omega = FormClass([Affine.var("alpha0"), Affine.var("t0")])
    v = connected_representable(NONTRIV, IntClass([-1, 1]), ambient_form=omega)
    (req,) = v.requirements
    assert req.form == Affine.var("alpha0") - 2 * Affine.var("t0")
    assert str(v) == "yes if alpha0 - 2*t0 > 0"


def test_monotone_in_fiber_direction():
    # adding a fiber keeps a represented class represented (away from b = 0)
    for space in (TRIV, NONTRIV):
        for a in range(-4, 5):
            for b in range(1, 4):
                if connected_representable(space, IntClass([a, b])).status == YES:
                    assert connected_representable(space, IntClass([a + 1, b])).status == YES


def test_linear_matches_quadratic_small_grid():
    for space in (TRIV, NONTRIV, SpaceKind.trivial(2)):
        for c in range(-6, 7):
            for d in range(1, 5):
                cls = FormClass([Fraction(c, 2), Fraction(d, 3)])
                assert symplectic_conditions(space, cls).satisfied == quadratic_cone_test(space, cls)
