import random
from fractions import Fraction

import pytest

from hamcert.affine import Affine
from hamcert.feasibility import (EQ, GE, GT, Constraint, ConstraintSystem, Feasible, Infeasible,
                                 eliminate, equality, equivalent, greater, implies, verify_certificate,
                                 verify_sample)

from helpers import grid_for, grid_search, random_system

a0, t0, t1, t2 = (Affine.var(n) for n in ("alpha0", "t0", "t1", "t2"))


def test_feasible_sample_verifies():
    system = ConstraintSystem([greater(a0 - 4 * t0), greater(t0), greater(t1),
                               equality(a0, t1 + 3 * t0)])
    result = eliminate(system)
    assert isinstance(result, Feasible)
    assert verify_sample(system, result.sample)
    assert verify_sample(system, result.values(system.variables))


def test_strict_cycle_is_infeasible_with_certificate():
    system = ConstraintSystem([greater(t0, tag="up"), greater(-t0, tag="down")])
    result = eliminate(system)
    assert isinstance(result, Infeasible)
    assert result.certificate == {0: 1, 1: 1}
    assert set(result.tags) == {"up", "down"}
    assert verify_certificate(system, result)


def test_strictness_matters():
    closed = ConstraintSystem([greater(t0, strict=False), greater(-t0, strict=False)])
    assert eliminate(closed).sample == {"t0": 0}
    half_open = ConstraintSystem([greater(t0), greater(-t0, strict=False)])
    assert not eliminate(half_open).feasible


def test_constant_contradiction():
    system = ConstraintSystem([Constraint(Affine(-2), EQ, "bad"), greater(t0)])
    result = eliminate(system)
    assert result.tags == ["bad"] and verify_certificate(system, result)


def test_equality_substitution_pivots_on_latest():
    system = ConstraintSystem([equality(t2, t0), equality(a0, t1 + 2 * t0)])
    subst = system.equality_substitution()
    assert subst == {"t2": t0, "t1": a0 - 2 * t0}
    assert system.contains(t2 - t0, EQ)
    assert system.contains(2 * t0 - 2 * t2, EQ)
    assert not system.contains(t1, EQ)


def test_inconsistent_equalities():
    system = ConstraintSystem([equality(t0, 1), equality(t0, 2)])
    with pytest.raises(ValueError):
        system.equality_substitution()
    assert not eliminate(system).feasible


def test_undeclared_variable_rejected():
    with pytest.raises(ValueError):
        ConstraintSystem([greater(t0)], ["t1"])


def test_verify_sample_dimension_check():
    system = ConstraintSystem([greater(t0), greater(t1)])
    with pytest.raises(ValueError):
        verify_sample(system, [1])


def test_tampered_certificate_fails():
    system = ConstraintSystem([greater(t0), greater(-t0 - 1)])
    result = eliminate(system)
    assert verify_certificate(system, result)
    result.certificate = {k: -v for k, v in result.certificate.items()}
    assert not verify_certificate(system, result)


def test_implies_and_equivalent():
    system = ConstraintSystem([greater(t0), equality(t1, 2 * t0)])
    assert implies(system, greater(t1))
    assert not implies(system, greater(t1 - 1))
    other = ConstraintSystem([greater(t1), equality(t0, t1 / 2)])
    assert equivalent(system, other)


def test_elimination_agrees_with_grid_oracle():
    rng = random.Random(20240611)
    for _ in range(60):
        system = random_system(rng, max_vars=3)
        result = eliminate(system)
        limit, den = grid_for(len(system.variables))
        hit = grid_search(system, limit, den)
        if isinstance(result, Feasible):
            assert verify_sample(system, result.sample)
        else:
            assert hit is None
            assert verify_certificate(system, result)
