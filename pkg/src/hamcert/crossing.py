"""Wall-crossing bookkeeping for semi-free circle actions on 6-manifolds.

A profile lists the fixed components in the order the moment map meets
them.  On each regular interval we track the reduced space, the Euler
class of the circle bundle over it and the reduced symplectic class, which
moves with slope ``-euler`` in the level.  Walking the profile from the
minimum to the maximum produces the rational-linear conditions on the
sizes and level gaps under which every local piece exists and the pieces
glue; :func:`run_profile` collects them into a :class:`ConstraintSystem`.

Level parameters are local: inside interval ``i`` the running level ``t``
goes from 0 to the gap ``t_i``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .affine import LEVEL, Affine, sort_params
from .cone import Representability, connected_representable, symplectic_conditions
from .feasibility import EQ, GE, GT, Constraint, ConstraintSystem
from .lattice import (BLOWN_UP_PLANE, CP2, NONTRIVIAL_RULED, TRIVIAL_RULED, U, X, Y, FormClass,
                      IntClass, LatticeError, SpaceKind, blowdown_pullback, blowdown_preimage, pair,
                      swap_ruling)

POINT, SURFACE = "point", "surface"
MIN_SIZE, MAX_SIZE = "alpha0", "alpha_max"


class Twist(str, Enum):
    TWISTED = "twisted"
    UNTWISTED = "untwisted"
    NOT_APPLICABLE = "not-applicable"


class ProfileError(ValueError):
    """Malformed or internally inconsistent profile."""


class DualClassError(ProfileError):
    """Unknown dual classes cannot be pinned down by telescoping."""


@dataclass(frozen=True)
class FixedComponent:
    index: int
    kind: str
    genus: Optional[int] = None
    #: first Chern number of the normal bundle; an input only for a surface minimum
    normal_chern: Optional[int] = None
    #: size parameter for an extremal surface
    size: Optional[str] = None

    def __post_init__(self):
        if self.index not in (0, 2, 4, 6):
            raise ProfileError(f"index must be 0, 2, 4 or 6, got {self.index}")
        if self.kind not in (POINT, SURFACE):
            raise ProfileError(f"unknown component kind {self.kind!r}")
        if self.kind == SURFACE:
            if self.genus is None or self.genus < 0:
                raise ProfileError("a fixed surface needs a nonnegative genus")
            if self.index == 6:
                raise ProfileError("a fixed surface has index at most 4")
        elif self.genus is not None:
            raise ProfileError("an isolated fixed point has no genus")

    @classmethod
    def point(cls, index: int) -> "FixedComponent":
        return cls(index, POINT)

    @classmethod
    def surface(cls, index: int, genus: int, normal_chern: int | None = None,
                size: str | None = None) -> "FixedComponent":
        return cls(index, SURFACE, genus, normal_chern, size)

    def describe(self) -> str:
        if self.kind == POINT:
            return f"index-{self.index} point"
        return f"index-{self.index} genus-{self.genus} surface"


@dataclass(frozen=True)
class WallEvent:
    component: FixedComponent
    dual_class: Optional[IntClass] = None
    #: distance from the previous critical level
    level_gap: str = "t0"
    same_level: bool = False


@dataclass(frozen=True)
class Profile:
    minimum: FixedComponent
    walls: tuple
    maximum: FixedComponent
    top_gap: str
    twist: Optional[Twist] = None
    fixed: tuple = ()
    name: str = ""

    @classmethod
    def build(cls, minimum: FixedComponent, walls: Sequence, maximum: FixedComponent,
              twist: Twist | None = None, fixed=None, name: str = "") -> "Profile":
        """Assemble a profile naming the gaps ``t0, t1, ...`` bottom-up.

        ``walls`` holds :class:`WallEvent` or ``(component, dual_class[, same_level])`` tuples.
        """
        events = []
        for i, w in enumerate(walls):
            if not isinstance(w, WallEvent):
                comp, dual, *rest = w
                w = WallEvent(comp, dual, same_level=bool(rest and rest[0]))
            events.append(replace(w, level_gap=f"t{i}"))
        if minimum.kind == SURFACE and minimum.size is None:
            minimum = replace(minimum, size=MIN_SIZE)
        if maximum.kind == SURFACE and maximum.size is None:
            maximum = replace(maximum, size=MAX_SIZE)
        fixed = tuple(sorted((k, Fraction(v)) for k, v in dict(fixed or {}).items()))
        return cls(minimum, tuple(events), maximum, f"t{len(events)}", twist, fixed, name)

    @property
    def gaps(self) -> list:
        return [w.level_gap for w in self.walls] + [self.top_gap]

    @property
    def surfaces_only(self) -> bool:
        comps = [self.minimum, self.maximum] + [w.component for w in self.walls]
        return all(c.kind == SURFACE for c in comps)


@dataclass(frozen=True)
class IntervalState:
    space: SpaceKind
    euler: IntClass
    #: reduced class at the lower end of the interval
    start: FormClass
    gap: str

    def at(self, level) -> FormClass:
        return self.start - FormClass.lift(self.euler) * Affine.lift(level)

    @property
    def omega(self) -> FormClass:
        return self.at(Affine.var(LEVEL))

    @property
    def end(self) -> FormClass:
        return self.at(Affine.var(self.gap))


# -- elementary crossings ----------------------------------------------------


def _min_space(c: FixedComponent) -> SpaceKind:
    if c.kind == POINT:
        return CP2
    if c.normal_chern % 2 == 0:
        return SpaceKind.trivial(c.genus)
    return SpaceKind.nontrivial(c.genus)


def init_min(c: FixedComponent, gap: str = "t0") -> IntervalState:
    if c.index != 0:
        raise ProfileError("the minimum has index 0")
    if c.kind == POINT:
        return IntervalState(CP2, -U, FormClass([0]), gap)
    if c.normal_chern is None or c.size is None:
        raise ProfileError("a surface minimum needs its normal Chern number and a size parameter")
    k = c.normal_chern // 2
    euler = IntClass([k, -1])
    return IntervalState(_min_space(c), euler, FormClass([Affine.var(c.size), 0]), gap)


def _check_dual(s: IntervalState, w: WallEvent) -> IntClass:
    eta = w.dual_class
    if eta is None:
        raise ProfileError("dual class unknown; solve it first")
    if not isinstance(eta, IntClass):
        raise ProfileError("dual class must be integral")
    if len(eta) != s.space.rank:
        raise ProfileError(f"dual class {eta} has rank {len(eta)} but {s.space} has rank {s.space.rank}")
    return eta


def cross_index2_surface(s: IntervalState, w: WallEvent, gap: str) -> IntervalState:
    eta = _check_dual(s, w)
    return IntervalState(s.space, s.euler + eta, s.end, gap)


def cross_index4_surface(s: IntervalState, w: WallEvent, gap: str) -> IntervalState:
    """Cross a fixed surface against the flow (used for top-down transport)."""
    eta = _check_dual(s, w)
    return IntervalState(s.space, s.euler - eta, s.end, gap)


def cross_index2_point(s: IntervalState, w: WallEvent, gap: str) -> IntervalState:
    if s.space != CP2:
        raise ProfileError(f"an index-2 point blows up the plane, but the reduced space is {s.space}")
    euler = blowdown_pullback(s.euler) + Y
    return IntervalState(BLOWN_UP_PLANE, euler, blowdown_pullback(s.end), gap)


def cross_index4_point(s: IntervalState, w: WallEvent, gap: str) -> IntervalState:
    """Blow down the exceptional sphere.  The new start is the fiber area of the old end;
    agreement with the old end is the continuity condition ``area(y) == 0``."""
    if s.space != BLOWN_UP_PLANE:
        raise ProfileError(f"an index-4 point blows down an exceptional sphere, but the reduced space is {s.space}")
    try:
        euler = blowdown_preimage(s.euler + Y)
    except LatticeError:
        raise ProfileError(f"profile inconsistent at index-4 point: {s.euler + Y} is not pulled back from the plane")
    return IntervalState(CP2, euler, FormClass([pair(s.space, s.end, X)]), gap)


def blowdown_continuity(s: IntervalState) -> Affine:
    """Area of the exceptional sphere at the end of ``s``; must vanish at an index-4 point."""
    return pair(s.space, s.end, Y)


# -- closing at the maximum --------------------------------------------------


@dataclass
class Closing:
    constraints: list
    b_max: Optional[int]
    top_fiber: Optional[IntClass]
    #: the Euler class has the normal form required at the maximum
    euler_caps: bool = True


def _top_candidates(space: SpaceKind) -> list:
    if space.kind == TRIVIAL_RULED and space.genus == 0:
        return [X, Y]
    return [X]


def _complement(z: IntClass) -> IntClass:
    return Y if z == X else X


def _euler_fits(space, euler, z) -> bool:
    return pair(space, euler, z) == 1 if space.kind == TRIVIAL_RULED else euler[1] == 1


def _coeff_on(c, z: IntClass):
    return c[0] if z == X else c[1]


def close_max(s: IntervalState, c: FixedComponent, twist: Twist | None = None) -> Closing:
    """Conditions for the last interval to cap off at the maximum ``c``."""
    end = s.end
    if c.kind == POINT:
        if s.space != CP2:
            raise ProfileError(f"an isolated maximum needs the plane below it, found {s.space}")
        cons = [
            Constraint(Affine(s.euler[0] - 1), EQ, "closing at isolated maximum: Euler class is u"),
            Constraint(end[0], EQ, "closing at isolated maximum: reduced class collapses"),
        ]
        return Closing(cons, None, None, s.euler == U)

    if not s.space.is_ruled or s.space.genus != c.genus:
        raise ProfileError(f"a genus-{c.genus} surface maximum needs a sphere bundle over it, found {s.space}")
    allowed = _top_candidates(s.space)
    fits = [z for z in allowed if _euler_fits(s.space, s.euler, z)]
    if twist in (Twist.TWISTED, Twist.UNTWISTED):
        want = X if twist == Twist.UNTWISTED else Y
        if want not in allowed:
            raise ProfileError(f"a twisted top is impossible over {s.space}")
        if want not in fits and fits:
            raise ProfileError(f"asserted {twist.value} top contradicts the Euler class {s.euler}")
        z = want
    elif len(fits) > 1:
        raise ProfileError(f"top fiber class is ambiguous for Euler class {s.euler}; assert the twist")
    else:
        z = fits[0] if fits else X
    w = _complement(z)
    # in the top basis (z, w) the Euler class reads -k'*z + w
    if s.space.kind == TRIVIAL_RULED:
        k_top = -pair(s.space, s.euler, w)
        w_coeff = pair(s.space, s.euler, z)
        b_max = 2 * k_top
    else:
        k_top = -s.euler[0]
        w_coeff = s.euler[1]
        b_max = 2 * k_top + 1
    cons = [
        Constraint(Affine(w_coeff - 1), EQ, f"closing at surface maximum: Euler class has the normal form -k'{z.render()} + {w.render()}"),
        Constraint(_coeff_on(end, w), EQ, f"closing at surface maximum: fiber {z.render()} collapses"),
        Constraint(Affine.var(c.size) - _coeff_on(end, z), EQ, "closing at surface maximum: size of the maximum"),
    ]
    return Closing(cons, b_max, z, w_coeff == 1)


# -- reduced-space walk and dual class solving -------------------------------


def wall_spaces(profile: Profile) -> list:
    """Reduced space just below each wall, plus the one below the maximum."""
    space = _min_space(_validated_min(profile.minimum))
    out = []
    for i, w in enumerate(profile.walls):
        out.append(space)
        comp = w.component
        if comp.kind == POINT:
            if comp.index == 2:
                if space != CP2:
                    raise ProfileError(f"wall {i}: index-2 point needs the plane below it, found {space}")
                space = BLOWN_UP_PLANE
            else:
                if space != BLOWN_UP_PLANE:
                    raise ProfileError(f"wall {i}: index-4 point needs the blown-up plane below it, found {space}")
                space = CP2
    out.append(space)
    return out


def _validated_min(c: FixedComponent) -> FixedComponent:
    if c.index != 0:
        raise ProfileError("the minimum must have index 0")
    if c.kind == SURFACE and c.normal_chern is None:
        raise ProfileError("a surface minimum needs its normal Chern number (b_min)")
    return c


def validate(profile: Profile) -> None:
    _validated_min(profile.minimum)
    top = profile.maximum
    if top.kind == POINT and top.index != 6:
        raise ProfileError("an isolated maximum has index 6")
    if top.kind == SURFACE:
        if top.index != 4:
            raise ProfileError("a surface maximum has index 4")
        if top.normal_chern is not None:
            raise ProfileError("b_max is derived, not an input")
        if top.size is None:
            raise ProfileError("a surface maximum needs a size parameter")
    if profile.minimum.kind == SURFACE and profile.minimum.size is None:
        raise ProfileError("a surface minimum needs a size parameter")
    for i, w in enumerate(profile.walls):
        comp = w.component
        if comp.index not in (2, 4):
            raise ProfileError(f"wall {i}: non-extremal components have index 2 or 4")
        if comp.kind == SURFACE and comp.index != 2:
            raise ProfileError(f"wall {i}: a fixed surface of index 4 is the maximum, not a wall")
        if comp.kind == POINT and w.dual_class is not None:
            raise ProfileError(f"wall {i}: isolated points carry no dual class")
        if comp.normal_chern is not None:
            raise ProfileError(f"wall {i}: normal Chern numbers of walls are derived, not input")
    if profile.walls and profile.walls[0].same_level:
        raise ProfileError("the minimum is the unique component on its level")
    names = profile.gaps + [c.size for c in (profile.minimum, top) if c.kind == SURFACE]
    if len(set(names)) != len(names):
        raise ProfileError("parameter names must be distinct")
    if profile.twist is not None and not profile.surfaces_only and profile.twist != Twist.NOT_APPLICABLE:
        raise ProfileError("twist is only defined when every fixed component is a surface")


def _linear_solutions(eqs: list, names: list, box: int):
    """Integer points of the affine equations within ``[-box, box]`` on the free variables."""
    system = ConstraintSystem([Constraint(e, EQ) for e in eqs], sort_params(names))
    try:
        subst = system.equality_substitution()
    except ValueError:
        return []
    free = [n for n in names if n not in subst]
    if len(free) > 4:
        return None
    out = []
    for values in itertools.product(range(-box, box + 1), repeat=len(free)):
        point = dict(zip(free, values))
        full = dict(point)
        ok = True
        for n, expr in subst.items():
            v = expr.evaluate(point)
            if v.denominator != 1:
                ok = False
                break
            full[n] = int(v)
        if ok:
            out.append(full)
    return out


def solve_dual_classes(profile: Profile, box: int = 8) -> dict:
    """Recover missing dual classes from the Euler class bookkeeping.

    Each unknown class is an integer unknown; the walk from the minimum to
    the maximum gives linear equations.  Integer solutions are enumerated
    over free coordinates in ``[-box, box]`` and filtered by the
    representability oracle.  Returns ``{wall index: IntClass}``.
    """
    validate(profile)
    unknown = [i for i, w in enumerate(profile.walls)
               if w.component.kind == SURFACE and w.dual_class is None]
    if not unknown:
        return {}
    spaces = wall_spaces(profile)
    start = init_min(profile.minimum)
    euler = [Affine(c) for c in start.euler]
    eqs, names = [], []
    for i, w in enumerate(profile.walls):
        comp, space = w.component, spaces[i]
        if comp.kind == SURFACE:
            if w.dual_class is None:
                vars_ = [f"eta{i}_{b}" for b in space.basis_names]
                names += vars_
                eta = [Affine.var(v) for v in vars_]
            else:
                if len(w.dual_class) != space.rank:
                    raise ProfileError(f"wall {i}: dual class has the wrong rank for {space}")
                eta = [Affine(c) for c in w.dual_class]
            euler = [a + b for a, b in zip(euler, eta)]
        elif comp.index == 2:
            euler = [euler[0], euler[0] + 1]
        else:
            a, b = euler
            eqs.append(a - b - 1)
            euler = [a]

    top_space = spaces[-1]
    options = []
    if profile.maximum.kind == POINT:
        if top_space != CP2:
            raise ProfileError(f"an isolated maximum needs the plane below it, found {top_space}")
        options.append([euler[0] - 1])
    else:
        allowed = _top_candidates(top_space)
        if profile.twist in (Twist.TWISTED, Twist.UNTWISTED):
            want = X if profile.twist == Twist.UNTWISTED else Y
            allowed = [z for z in allowed if z == want]
        for z in allowed:
            # coefficient of the complementary class must be 1
            options.append([(euler[0] if z == Y else euler[1]) - 1])

    found = set()
    for top_eqs in options:
        sols = _linear_solutions(eqs + top_eqs, names, box)
        if sols is None:
            raise DualClassError("dual classes underdetermined: too many free coordinates; supply them")
        for sol in sols:
            classes = {}
            for i in unknown:
                space = spaces[i]
                eta = IntClass([sol[f"eta{i}_{b}"] for b in space.basis_names])
                verdict = connected_representable(space, eta, profile.walls[i].component.genus)
                if not verdict.admissible:
                    break
                classes[i] = eta
            else:
                found.add(tuple(sorted(classes.items())))
    if not found:
        raise DualClassError("no integer dual classes are consistent with the fixed point data")
    if len(found) > 1:
        raise DualClassError(f"dual classes underdetermined ({len(found)} candidates); supply them")
    return dict(found.pop())


# -- the full walk -----------------------------------------------------------


@dataclass
class WallRecord:
    position: int
    component: FixedComponent
    dual_class: Optional[IntClass]
    solved: bool
    space: SpaceKind
    level_class: FormClass
    chern_plus: Optional[int] = None
    chern_minus: Optional[int] = None
    representability: Optional[Representability] = None


@dataclass
class ProfileReport:
    profile: Profile
    intervals: list
    walls: list
    b_max: Optional[int]
    twist: Twist
    top_fiber: Optional[IntClass]
    constraints: ConstraintSystem
    levels: list = field(default_factory=list)
    euler_caps: bool = True

    @property
    def solved_dual_classes(self) -> dict:
        return {r.position: r.dual_class for r in self.walls if r.solved}


def _survives_at_top(space: SpaceKind, pos: int, closing: Closing) -> bool:
    """Does the ``pos``-th cone condition stay positive at a surface maximum?"""
    if closing.top_fiber is None:
        return False
    return (X, Y)[pos] != closing.top_fiber


def _levels(profile: Profile) -> list:
    """Level group of each wall (same_level walls share the previous wall's level)."""
    out, level = [], 0
    for w in profile.walls:
        if not w.same_level:
            level += 1
        out.append(level)
    return out


def _dedupe(constraints: list) -> list:
    seen, out = set(), []
    for c in constraints:
        if c.form.is_constant() and c.holds({}):
            continue
        form = c.form.normalized()
        if c.relation == EQ and form.coeffs:
            from .affine import param_key
            lead = form.coeffs[min(form.coeffs, key=param_key)]
            form = form * lead
        key = (form, c.relation)
        if key in seen:
            continue
        seen.add(key)
        out.append(c)
    return out


def run_profile(profile: Profile) -> ProfileReport:
    validate(profile)
    solved = solve_dual_classes(profile)
    walls = [replace(w, dual_class=solved[i]) if i in solved else w for i, w in enumerate(profile.walls)]
    n = len(walls)
    levels = _levels(profile)
    top_level = (levels[-1] if levels else 0) + 1
    point_levels = {levels[i] for i, w in enumerate(walls) if w.component.kind == POINT}

    cons: list = []
    mn, mx = profile.minimum, profile.maximum
    if mn.kind == SURFACE:
        cons.append(Constraint(Affine.var(mn.size), GT, "size of the minimum is positive"))
    if mx.kind == SURFACE:
        cons.append(Constraint(Affine.var(mx.size), GT, "size of the maximum is positive"))
    for i, w in enumerate(walls):
        gap = Affine.var(w.level_gap)
        if w.same_level:
            cons.append(Constraint(gap, EQ, f"wall {i} shares the level of wall {i - 1}"))
        else:
            cons.append(Constraint(gap, GT, f"wall {i} lies strictly above the previous level"))
    cons.append(Constraint(Affine.var(profile.top_gap), GT, "the maximum lies strictly above the previous level"))

    gaps = [w.level_gap for w in walls] + [profile.top_gap]
    states = [init_min(mn, gaps[0])]
    records = []
    for i, w in enumerate(walls):
        s = states[-1]
        comp = w.component
        if comp.kind == SURFACE:
            nxt = cross_index2_surface(s, w, gaps[i + 1])
            eta = w.dual_class
            verdict = connected_representable(s.space, eta, comp.genus, s.end)
            for req in verdict.requirements:
                cons.append(replace(req, tag=f"wall {i}: {req.tag}"))
            records.append(WallRecord(i, comp, eta, i in solved, s.space, s.end,
                                      chern_plus=pair(s.space, nxt.euler, eta),
                                      chern_minus=-pair(s.space, s.euler, eta),
                                      representability=verdict))
        elif comp.index == 2:
            nxt = cross_index2_point(s, w, gaps[i + 1])
            records.append(WallRecord(i, comp, None, False, s.space, s.end))
        else:
            nxt = cross_index4_point(s, w, gaps[i + 1])
            cons.append(Constraint(blowdown_continuity(s), EQ,
                                   f"wall {i}: exceptional sphere collapses at the blow-down"))
            records.append(WallRecord(i, comp, None, False, s.space, s.end))
        states.append(nxt)

    # surfaces sharing a level must be disjoint in the reduced space
    for i, j in itertools.combinations(range(n), 2):
        if levels[i] != levels[j]:
            continue
        kinds = (walls[i].component.kind, walls[j].component.kind)
        if kinds == (SURFACE, SURFACE):
            overlap = pair(states[i].space, walls[i].dual_class, walls[j].dual_class)
        elif SURFACE in kinds:
            # the exceptional sphere of a point on the same level must miss the surface
            surf = i if kinds[0] == SURFACE else j
            space = states[surf].space
            overlap = pair(space, walls[surf].dual_class, Y) if space == BLOWN_UP_PLANE else 0
        else:
            overlap = 0
        if overlap != 0:
            raise ProfileError(f"walls {i} and {j} intersect in the reduced space and cannot share a level")

    closing = close_max(states[-1], mx, profile.twist)

    # cone conditions on every regular interval
    for i, s in enumerate(states):
        if i < n and walls[i].same_level:
            continue
        lower = 0 if i == 0 else levels[i - 1]
        upper = levels[i] if i < n else top_level
        lo_open = i == 0 or lower in point_levels
        hi_open = i == n or upper in point_levels
        verdict = symplectic_conditions(s.space, s.omega)
        gap = Affine.var(s.gap)
        for pos, (name, f) in enumerate(verdict.conditions):
            where = f"interval {i} on {s.space}: {name}"
            lo, hi = f.subs({LEVEL: 0}), f.subs({LEVEL: gap})
            # at an extremal end only the collapsing curve loses its area
            lo_rel = GE if lo_open and not (i == 0 and pos > 0 and mn.kind == SURFACE) else GT
            hi_rel = GE if hi_open and not (i == n and _survives_at_top(s.space, pos, closing)) else GT
            cons.append(Constraint(lo, lo_rel, f"{where} at the lower end"))
            cons.append(Constraint(hi, hi_rel, f"{where} at the upper end"))
            if lo_open and hi_open:
                cons.append(Constraint(f.subs({LEVEL: gap / 2}), GT, f"{where} inside"))

    # at a blow-up/blow-down level the critical reduced space is the plane
    for i, w in enumerate(walls):
        if w.component.kind != POINT:
            continue
        plane_class = states[i].end if w.component.index == 2 else states[i + 1].start
        for name, f in symplectic_conditions(CP2, plane_class).conditions:
            cons.append(Constraint(f, GT, f"wall {i}: {name} on the plane at the critical level"))

    cons += closing.constraints

    for name, value in profile.fixed:
        cons.append(Constraint(Affine.var(name) - value, EQ, f"fixed by input: {name} = {value}"))

    if profile.surfaces_only:
        twist = Twist.UNTWISTED if closing.top_fiber == X else Twist.TWISTED
    else:
        twist = Twist.NOT_APPLICABLE

    names = set(gaps)
    for c in (mn, mx):
        if c.kind == SURFACE:
            names.add(c.size)
    cons = _dedupe(cons)
    for c in cons:
        names |= c.form.variables
    system = ConstraintSystem(cons, sort_params(names))
    return ProfileReport(profile, states, records, closing.b_max, twist, closing.top_fiber, system,
                         levels, closing.euler_caps)


# -- orientation reversal ----------------------------------------------------


def flip_profile(profile: Profile, report: ProfileReport | None = None):
    """Turn a profile upside down.

    Returns ``(flipped, renaming)`` where ``renaming`` maps the original
    parameter names to the flipped ones.  Isolated points change index
    ``j -> 6 - j``; non-extremal surfaces stay at index 2.  The old top
    becomes the new bottom, so when the top fiber was ``y`` the basis is
    swapped.
    """
    report = report or run_profile(profile)
    if not report.euler_caps:
        raise ProfileError("the Euler class does not cap off at the maximum, so there is nothing to flip")
    n = len(profile.walls)
    old_gaps = profile.gaps
    rename = {old_gaps[n - j]: f"t{j}" for j in range(n + 1)}
    swap = report.top_fiber == Y

    mn, mx = profile.minimum, profile.maximum
    if mx.kind == SURFACE:
        new_min = FixedComponent.surface(0, mx.genus, report.b_max, MIN_SIZE)
        rename[mx.size] = MIN_SIZE
    else:
        new_min = FixedComponent.point(0)
    if mn.kind == SURFACE:
        new_max = FixedComponent.surface(4, mn.genus, None, MAX_SIZE)
        rename[mn.size] = MAX_SIZE
    else:
        new_max = FixedComponent.point(6)

    new_walls = []
    for j in range(n):
        old = report.walls[n - 1 - j]
        comp = old.component
        if comp.kind == POINT:
            comp = FixedComponent.point(6 - comp.index)
            dual = None
        else:
            dual = swap_ruling(old.dual_class) if swap else old.dual_class
        same = (n - j) < n and profile.walls[n - j].same_level
        new_walls.append(WallEvent(comp, dual, f"t{j}", same))

    fixed = tuple(sorted((rename.get(k, k), v) for k, v in profile.fixed))
    # the old bottom fiber is the new top fiber; in the flipped basis it is x exactly when untwisted
    twist = report.twist if profile.surfaces_only else profile.twist
    flipped = Profile(new_min, tuple(new_walls), new_max, f"t{n}", twist, fixed,
                      f"{profile.name} (flipped)" if profile.name else "")
    return flipped, rename


def transport_euler(profile: Profile, duals: dict | None = None) -> list:
    """Euler classes interval by interval, by direct application of the crossing rules."""
    duals = duals or {}
    s = init_min(profile.minimum)
    out = [s.euler]
    for i, w in enumerate(profile.walls):
        eta = w.dual_class if w.dual_class is not None else duals.get(i)
        comp = w.component
        e = out[-1]
        if comp.kind == SURFACE:
            e = e + eta
        elif comp.index == 2:
            e = IntClass([e[0], e[0] + 1])
        else:
            e = IntClass([e[0]])
        out.append(e)
    return out
