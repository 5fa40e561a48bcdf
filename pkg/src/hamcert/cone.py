"""Symplectic classes on the reduced spaces and connected symplectic representatives.

With the orientation normalization used throughout (positive area on the
line in the plane, positive fiber area on a ruled surface) the cone
conditions for a ruled class ``c*x + d*y`` are linear: ``d > 0`` together
with ``c > 0`` (product bundle) or ``c > d`` (twisted bundle).  Each is
the area of a distinguished curve: the fiber, the base section, or the
``-1`` section.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .affine import Affine
from .feasibility import GE, GT, Constraint
from .lattice import (NONTRIVIAL_RULED, PROJECTIVE_PLANE, TRIVIAL_RULED, X, Y, AnyClass,
                      FormClass, IntClass, LatticeError, SpaceKind, pair, swap_ruling)


@dataclass(frozen=True)
class ConeVerdict:
    #: (name, form) pairs; membership iff every form is > 0
    conditions: tuple
    satisfied: Optional[bool]

    def forms(self) -> list:
        return [f for _, f in self.conditions]


def symplectic_conditions(space: SpaceKind, a: AnyClass) -> ConeVerdict:
    a = FormClass.lift(a)
    if len(a) != space.rank:
        raise LatticeError(f"class of rank {len(a)} does not live on {space}")
    if space.kind == PROJECTIVE_PLANE:
        conds = (("line area", a[0]),)
    else:
        fiber = pair(space, a, X)  # = d
        if space.kind == TRIVIAL_RULED:
            conds = (("fiber area", fiber), ("base area", pair(space, a, Y)))
        else:
            conds = (("fiber area", fiber), ("section area", pair(space, a, Y)))
    if all(f.is_constant() for _, f in conds):
        satisfied = all(f.const > 0 for _, f in conds)
    else:
        satisfied = None
    return ConeVerdict(conds, satisfied)


def quadratic_cone_test(space: SpaceKind, a: AnyClass) -> bool:
    """Membership via the original quadratic inequalities (constant classes only)."""
    a = FormClass.lift(a)
    if not a.is_constant():
        raise ValueError("quadratic test needs a constant class")
    if space.kind == PROJECTIVE_PLANE:
        return a[0].const > 0
    fiber = pair(space, a, X).const
    square = pair(space, a, a).const
    if fiber <= 0 or square <= 0:
        return False
    return space.kind == TRIVIAL_RULED or square > fiber ** 2


# -- representability --------------------------------------------------------

YES, NO, CONDITIONAL = "yes", "no", "conditional"
DISCONNECTED, HURWITZ, NO_RULE = "disconnected", "hurwitz", "no-rule"


@dataclass(frozen=True)
class Representability:
    status: str
    reason: str = ""
    #: constraints that must hold for a connected symplectic representative
    requirements: tuple = field(default_factory=tuple)

    @property
    def admissible(self) -> bool:
        return self.status != NO

    def __str__(self):
        if self.status == YES:
            return "yes"
        if self.status == CONDITIONAL:
            return "yes if " + " and ".join(f"{c.form} > 0" for c in self.requirements)
        return f"no ({self.reason})"


def _no(reason: str, margin=0, strict: bool = True, tag: str = "") -> Representability:
    rel = GT if strict else GE
    return Representability(NO, reason, (Constraint(Affine(margin), rel, tag or f"representability: {reason}"),))


def connected_representable(space: SpaceKind, c: IntClass, genus: int | None = None,
                            ambient_form: AnyClass | None = None) -> Representability:
    """Can ``c`` be the class of a connected symplectic surface (of the given genus)?

    Conservative: anything outside the known families answers ``no-rule``.
    A ``no`` verdict carries an unsatisfiable constant requirement so it can
    be injected into a constraint system.
    """
    verdict = _representable(space, c, genus, ambient_form)
    if verdict.reason == NO_RULE and space.kind == TRIVIAL_RULED and space.genus == 0:
        # both rulings of the sphere times the sphere play the same role
        swapped = None if ambient_form is None else swap_ruling(FormClass.lift(ambient_form))
        other = _representable(space, swap_ruling(c), genus, swapped)
        if other.reason != NO_RULE:
            return other
    return verdict


def _representable(space, c, genus, ambient_form) -> Representability:
    if len(c) != space.rank:
        raise LatticeError(f"class of rank {len(c)} does not live on {space}")
    if space.kind == PROJECTIVE_PLANE:
        (a,) = c.coeffs
        return Representability(YES) if a >= 1 else _no(NO_RULE)

    a, b = c.coeffs
    nontrivial = space.kind == NONTRIVIAL_RULED

    if b == 2:
        # degree-2 projection onto the base surface
        if genus is not None:
            margin = 1 + genus - 2 * space.genus
            if margin < 0:
                return _no(HURWITZ, margin, strict=False)
        if (nontrivial and a == 1) or (not nontrivial and a == 0):
            return _no(DISCONNECTED)
        if a < (1 if nontrivial else 0):
            return _no(HURWITZ, a - (1 if nontrivial else 0))

    if (a, b) in ((1, 0), (0, 1)) or (nontrivial and (a, b) == (1, 1)):
        return Representability(YES)
    if b >= 1 and (a > 1 if nontrivial else a >= 1):
        return Representability(YES)
    if b == 1 and a <= -1:
        n = -a
        if ambient_form is None:
            return Representability(CONDITIONAL, "section area")
        form = FormClass.lift(ambient_form)
        need = pair(space, form, Y) - pair(space, form, X) * n
        return Representability(CONDITIONAL, "section area",
                                (Constraint(need, GT, f"representability: area(y) > {n}*area(x)"),))
    return _no(NO_RULE)
