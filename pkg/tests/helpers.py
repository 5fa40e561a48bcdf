"""Independent oracles and random generators shared by the test modules."""

from __future__ import annotations

import random
from functools import lru_cache
from fractions import Fraction
from math import lcm

import numpy as np

from hamcert.affine import Affine
from hamcert.crossing import (FixedComponent, Profile, ProfileError, Twist, WallEvent,
                              flip_profile, run_profile, transport_euler)
from hamcert.feasibility import EQ, GE, GT, Constraint, ConstraintSystem, eliminate, verify_sample
from hamcert.lattice import (BLOWN_UP_PLANE, CP2, X, Y, FormClass, IntClass, SpaceKind,
                             blowdown_pullback, blowdown_preimage, pair)

P, S = FixedComponent.point, FixedComponent.surface


# -- brute-force feasibility over a rational grid ----------------------------


@lru_cache(maxsize=None)
def farey(limit: Fraction, max_den: int) -> tuple:
    """All fractions in [-limit, limit] with denominator at most ``max_den``."""
    pts = {Fraction(n, d) for d in range(1, max_den + 1)
           for n in range(-int(limit * d), int(limit * d) + 1)}
    return tuple(sorted(pts))


def grid_search(system: ConstraintSystem, limit: Fraction, max_den: int):
    """First grid point satisfying ``system``, or ``None``.

    Coordinates are scaled by the lcm of the denominators so the whole check
    runs in exact int64 arithmetic; axes are broadcast rather than meshed.
    """
    names = list(system.variables)
    pts = farey(limit, max_den)
    scale = lcm(*range(1, max_den + 1))
    ints = np.array([int(p * scale) for p in pts], dtype=np.int64)
    dims = len(names)
    axes = [ints.reshape([-1 if j == i else 1 for j in range(dims)]) for i in range(dims)]
    mask = np.ones((len(pts),) * dims, dtype=bool)
    for c in system.constraints:
        den = lcm(*(v.denominator for v in list(c.form.coeffs.values()) + [c.form.const]))
        value = np.int64(int(c.form.const * den) * scale)
        for i, name in enumerate(names):
            coeff = c.form.coeff(name) * den
            if coeff:
                value = value + int(coeff) * axes[i]
        if c.relation == EQ:
            mask &= value == 0
        elif c.relation == GT:
            mask &= value > 0
        else:
            mask &= value >= 0
        if not mask.any():
            return None
    idx = np.argwhere(mask)[0] if dims else ()
    return {name: pts[j] for name, j in zip(names, idx)}


def grid_for(nvars: int):
    """Grid box and denominator bound used for an ``nvars``-variable system."""
    return {1: (Fraction(2), 12), 2: (Fraction(2), 12), 3: (Fraction(1), 8)}.get(nvars, (Fraction(1), 5))


def random_system(rng: random.Random, max_vars: int = 4) -> ConstraintSystem:
    nvars = rng.randint(1, max_vars)
    names = [f"t{i}" for i in range(nvars)]
    cons = []
    for _ in range(rng.randint(1, 6)):
        coeffs = {n: rng.randint(-5, 5) for n in names}
        form = Affine(Fraction(rng.randint(-5, 5), rng.randint(1, 3)), coeffs)
        rel = rng.choices([GT, GE, EQ], weights=[5, 3, 1])[0]
        cons.append(Constraint(form, rel, f"row {len(cons)}"))
    return ConstraintSystem(cons, names)


# -- random consistent profiles ----------------------------------------------


def _random_dual(rng, space: SpaceKind, euler: IntClass):
    if space == CP2:
        return IntClass([rng.randint(1, 3)])
    b = rng.choice([0, 1, 1, 1, 2])
    if b == 0:
        return IntClass([1, 0])
    return IntClass([rng.randint(-2, 3), b])


def random_profile(rng: random.Random, max_walls: int = 4) -> Profile:
    """A random walk through the reduced spaces, closed off so the Euler class caps."""
    if rng.random() < 0.4:
        minimum = P(0)
        space, e = CP2, IntClass([-1])
    else:
        genus = rng.choice([0, 0, 0, 1, 2])
        b = rng.randint(-4, 4)
        minimum = S(0, genus, b)
        space = SpaceKind.trivial(genus) if b % 2 == 0 else SpaceKind.nontrivial(genus)
        e = IntClass([b // 2, -1])
    walls = []
    for _ in range(rng.randint(0, max_walls)):
        roll = rng.random()
        if space == CP2 and roll < 0.35:
            walls.append(WallEvent(P(2)))
            space, e = BLOWN_UP_PLANE, IntClass([e[0], e[0] + 1])
        elif space == BLOWN_UP_PLANE and roll < 0.35 and e[0] == e[1] + 1:
            walls.append(WallEvent(P(4)))
            space, e = CP2, IntClass([e[0]])
        else:
            eta = _random_dual(rng, space, e)
            walls.append(WallEvent(S(2, rng.randint(0, 2)), eta, same_level=False))
            e = e + eta
    # cap off
    if space == CP2:
        need = 1 - e[0]
        if need >= 1:
            walls.append(WallEvent(S(2, 0), IntClass([need])))
        maximum = P(6)
    else:
        need = 1 - e[1]
        if need not in (0, 1, 2) and rng.random() < 0.7:
            need = rng.choice([0, 1])
        if need:
            walls.append(WallEvent(S(2, rng.randint(0, 2)), IntClass([rng.randint(-2, 3), need])))
        maximum = S(4, space.genus)
    # occasionally put two disjoint spheres on one level
    if len(walls) >= 2 and rng.random() < 0.15:
        i = rng.randrange(1, len(walls))
        walls[i] = WallEvent(walls[i].component, walls[i].dual_class, same_level=True)
    twist = None
    if all(w.component.kind == "surface" for w in walls) and minimum.kind == "surface":
        twist = rng.choice([None, Twist.UNTWISTED, Twist.TWISTED])
    return Profile.build(minimum, walls, maximum, twist=twist)


def consistent_profiles(seed: int, count: int, max_walls: int = 4, capped: bool = False):
    """``count`` random profiles that run without structural errors, with their reports.

    With ``capped`` only profiles whose Euler class closes off at the maximum are kept.
    """
    rng = random.Random(seed)
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 50 * count:
            raise RuntimeError("profile generator acceptance rate too low")
        profile = random_profile(rng, max_walls)
        try:
            report = run_profile(profile)
        except ProfileError:
            continue
        if capped and not report.euler_caps:
            continue
        out.append((profile, report))
    return out


# -- profile-level invariants ------------------------------------------------


def dh_slope_holds(report) -> bool:
    """The reduced class moves with slope ``-euler`` in the level on every interval."""
    for s in report.intervals:
        for base in (Fraction(0), Fraction(3, 7)):
            step = s.at(base + 1) - s.at(base)
            if step != -FormClass.lift(s.euler):
                return False
    return True


def continuity_holds(profile, report) -> bool:
    """Consecutive intervals agree at each wall, through the blow-up maps where needed."""
    system = report.constraints
    for i, w in enumerate(report.walls):
        before, after = report.intervals[i], report.intervals[i + 1]
        comp = w.component
        if comp.kind == "surface":
            ok = before.end == after.start
        elif comp.index == 2:
            ok = blowdown_pullback(before.end) == after.start
        else:
            # the blown-down class agrees with the old one once the exceptional area is zero
            lifted = blowdown_pullback(after.start) - before.end
            ok = after.start[0] == pair(before.space, before.end, X)
            try:
                ok = ok and all(system.reduce(c) == 0 for c in lifted)
            except ValueError:
                pass  # inconsistent equalities: nothing to glue
        if not ok:
            return False
    return True


def telescoping_round_trip(profile, report) -> bool:
    """Transport the Euler class up with the crossing rules, then back down."""
    duals = {r.position: r.dual_class for r in report.walls}
    forward = transport_euler(profile, duals)
    if forward != [s.euler for s in report.intervals]:
        return False
    e = forward[-1]
    for i in reversed(range(len(profile.walls))):
        comp = profile.walls[i].component
        if comp.kind == "surface":
            e = e - duals[i]
        elif comp.index == 2:
            e = blowdown_preimage(e - Y)
        else:
            e = blowdown_pullback(e) - Y
    return e == forward[0]


def flip_agrees(profile, report) -> bool:
    """The flipped profile has the same feasible set: same verdict, and samples map across."""
    flipped, rename = flip_profile(profile, report)
    other = run_profile(flipped)
    mine = report.constraints.renamed(rename)
    a, b = eliminate(mine), eliminate(other.constraints)
    if a.feasible != b.feasible:
        return False
    if a.feasible:
        return verify_sample(other.constraints, a.sample) and verify_sample(mine, b.sample)
    return True
