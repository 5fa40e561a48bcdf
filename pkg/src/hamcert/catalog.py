"""Templates for the known semi-free circle actions with the generic fixed point data.

Each template builds a :class:`~hamcert.crossing.Profile` from a few integer
parameters and knows what the wall-crossing walk should produce.  Every
expected field records whether it is a relation stated for that type in the
classification (``stated``) or a consequence worked out by hand from the
crossing rules (``derived``); fields that cannot be recovered from the
published text are left out.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from .affine import Affine
from .crossing import (MAX_SIZE, MIN_SIZE, FixedComponent, Profile, ProfileReport, Twist,
                       flip_profile, run_profile)
from .feasibility import EQ, GT, Constraint, ConstraintSystem, eliminate
from .lattice import IntClass

STATED, DERIVED = "stated", "derived"

P, S = FixedComponent.point, FixedComponent.surface
a0, amax = Affine.var(MIN_SIZE), Affine.var(MAX_SIZE)


def t(i: int) -> Affine:
    return Affine.var(f"t{i}")


class CatalogError(ValueError):
    """Unknown type, variant or parameter, or a parameter out of range."""


@dataclass(frozen=True)
class Param:
    name: str
    low: Optional[int] = None
    high: Optional[int] = None
    default: int = 0

    def check(self, value: int) -> None:
        if isinstance(value, bool) or not isinstance(value, int):
            raise CatalogError(f"parameter {self.name} must be an integer")
        if (self.low is not None and value < self.low) or (self.high is not None and value > self.high):
            raise CatalogError(f"parameter {self.name}={value} outside [{self.low}, {self.high}]")


@dataclass
class Expected:
    value: object
    source: str
    note: str = ""


@dataclass
class ExpectedOutcome:
    """Fields to compare a report against; absent fields are not checked."""

    fields: dict = field(default_factory=dict)

    def get(self, name, default=None):
        item = self.fields.get(name)
        return default if item is None else item.value

    def __contains__(self, name):
        return name in self.fields


@dataclass(frozen=True)
class TypeTemplate:
    type_id: str
    summary: str
    params: tuple
    variants: tuple
    build: Callable
    expect: Callable

    def resolve(self, params: dict | None) -> dict:
        params = dict(params or {})
        known = {p.name for p in self.params}
        extra = set(params) - known
        if extra:
            raise CatalogError(f"type {self.type_id} takes no parameter(s) {sorted(extra)}")
        out = {}
        for p in self.params:
            value = params.get(p.name, p.default)
            p.check(value)
            out[p.name] = value
        return out


K_RANGE = (-3, 3)
G_RANGE = (0, 4)


def _k(default=0):
    return Param("k", *K_RANGE, default=default)


# -- type builders -----------------------------------------------------------


def _type1(p, variant):
    return Profile.build(P(0), [(S(2, 0), None)], P(6), name="type 1")


def _type1_expect(p, variant):
    return {
        "dual_classes": Expected({0: IntClass([2])}, STATED, "the sphere is dual to twice the line"),
        "equalities": Expected([t(1) - t(0)], STATED, "the class collapses at the top exactly when t1 = t0"),
        "chern": Expected({0: (2, 2)}, STATED, "both normal Chern numbers equal 2"),
        "euler": Expected({0: IntClass([-1]), 1: IntClass([1])}, DERIVED, "telescoping from -u to u"),
        "feasible": Expected(True, STATED, "realized by a linear action"),
    }


def _type2(p, variant):
    same = variant == "same-level"
    return Profile.build(P(0), [(S(2, 0), None), (S(2, 0), None, same)], P(6), name="type 2")


def _type2_expect(p, variant):
    if variant == "same-level":
        return {"error": Expected("cannot share a level", STATED, "the two spheres meet in the reduced space")}
    return {
        "dual_classes": Expected({0: IntClass([1]), 1: IntClass([1])}, DERIVED,
                                 "the unique split of the jump from -u to u into two lines"),
        "chern": Expected({0: (1, 0), 1: (0, 1)}, STATED, "normal Chern numbers (0,1) and (1,0)"),
        "equalities": Expected([t(2) - t(0)], DERIVED, "the line area returns to zero at the top"),
        "euler": Expected({1: IntClass([0])}, DERIVED, "the middle interval carries the trivial bundle"),
        "feasible": Expected(True, STATED, "realized by a linear action"),
    }


def _type3(p, variant):
    k = p["k"]
    if variant in ("alt", "same-level") and k != 0:
        raise CatalogError(f"type 3 variant {variant!r} needs b_min = 1 (k = 0)")
    minimum = S(0, 0, 2 * k + 1)
    if variant == "alt":
        walls = [(P(4), None), (S(2, 0), None)]
    else:
        walls = [(S(2, 0), None), (P(4), None, variant == "same-level")]
    return Profile.build(minimum, walls, P(6), name=f"type 3 (k={k})")


def _type3_expect(p, variant):
    k = p["k"]
    if variant == "alt":
        return {
            "dual_classes": Expected({1: IntClass([1])}, DERIVED, "the sphere is a line after the blow-down"),
            "equalities": Expected([a0 - t(0), t(2) - t(0)], DERIVED,
                                   "the exceptional section collapses at the first wall"),
            "feasible": Expected(True, STATED, "possible only for b_min = 1"),
        }
    if variant == "same-level":
        return {
            "equalities": Expected([t(1), a0 - t(0), t(2) - t(0)], DERIVED,
                                   "the shared level pins the blow-down"),
            "feasible": Expected(True, DERIVED, "the exceptional sphere misses the surface only for k = 0"),
        }
    out = {
        "dual_classes": Expected({0: IntClass([1 - k, 1])}, DERIVED,
                                 "forced by blowing down to the plane and capping with u"),
        "equalities": Expected([t(2) - t(0), a0 - t(1) - (k + 1) * t(0)], STATED,
                               "alpha0 = t1 + (k+1) t0 and the top gap matches the first"),
        "feasible": Expected(True, STATED, "constructed for every k"),
    }
    if k > 1:
        out["contains"] = Expected([Constraint(a0 - 2 * k * t(0), GT)], STATED, "alpha0 > 2k t0")
    return out


def _type4(p, variant):
    return Profile.build(S(0, 0, 2), [], S(4, 0), name="type 4")


def _type4_expect(p, variant):
    return {
        "b_max": Expected(2, DERIVED, "the only closing without walls"),
        "twist": Expected(Twist.TWISTED, DERIVED, "the fiber degenerating at the top is the base of the bottom"),
        "equalities": Expected([a0 - t(0), amax - t(0)], DERIVED, "closing conditions only"),
        "feasible": Expected(True, STATED, "the projective 3-space"),
    }


def _type5(p, variant):
    return Profile.build(S(0, 0, 1), [(P(4), None), (P(2), None)], S(4, 0), name="type 5")


def _type5_expect(p, variant):
    return {
        "equalities": Expected([a0 - t(0), amax - t(2), t(0) - t(2)], STATED,
                               "alpha0, the top size, t0 and t2 all agree"),
        "euler": Expected({1: IntClass([0])}, STATED, "trivial bundle over the plane between the points"),
        "b_max": Expected(1, DERIVED, "the top is again the blown-up plane"),
        "feasible": Expected(True, STATED, "constructed"),
    }


def _type6a(p, variant):
    k, g, g1, odd = p["k"], p["g"], p["g1"], p["odd"]
    m = 1 + g1 - 2 * g
    eta = IntClass([m + odd, 2])
    return Profile.build(S(0, g, 2 * k + odd), [(S(2, g1), eta)], S(4, g), twist=Twist.UNTWISTED,
                         name=f"type 6a (k={k}, g={g}, g1={g1}{', odd' if odd else ''})")


def _type6a_expect(p, variant):
    k, g, g1, odd = p["k"], p["g"], p["g1"], p["odd"]
    m = 1 + g1 - 2 * g
    out = {
        "feasible": Expected(m > 0, STATED, "the double cover needs 1 + g1 - 2g > 0"),
        "twist": Expected(Twist.UNTWISTED, STATED, "untwisted"),
        "b_max": Expected(-2 * (k + m) - odd, DERIVED, "read off the Euler class below the top"),
        "equalities": Expected([t(1) - t(0), amax - a0 + (2 * k + m + odd) * t(0)], DERIVED,
                               "fiber collapses after one more gap of length t0"),
    }
    if m > 0:
        # alpha0 - k t0 - k t > m t at t = 0 and t = t0
        forms = [a0 - (k + odd) * t(0), a0 - (2 * k + m + odd) * t(0)]
        out["contains"] = Expected([Constraint(f, GT) for f in forms], STATED,
                                   "alpha0 - k t0 - k t > (1 + g1 - 2g) t at both ends")
    else:
        out["obstruction"] = Expected("representability", STATED, "no connected double cover")
    return out


def _type6b(p, variant):
    k = p["k"]
    return Profile.build(S(0, 0, 2 * k), [(S(2, 0), IntClass([1 - k, 1]))], S(4, 0), twist=Twist.TWISTED,
                         name=f"type 6b (k={k})")


def _type6b_expect(p, variant):
    k = p["k"]
    out = {
        "twist": Expected(Twist.TWISTED, STATED, "twisted"),
        "b_max": Expected(0, STATED, "b_max = 0"),
        "equalities": Expected([t(1) - a0 + k * t(0), amax - t(0)], STATED, "t1 = alpha0 - k t0"),
        "feasible": Expected(True, STATED, "constructed for every k"),
    }
    if k > 1:
        out["contains"] = Expected([Constraint(a0 - (2 * k - 1) * t(0), GT)], STATED,
                                   "alpha0 > (2k - 1) t0")
    return out


_TEMPLATES = [
    TypeTemplate("1", "isolated min, index-2 sphere, isolated max", (), ("default",), _type1, _type1_expect),
    TypeTemplate("2", "isolated min, two index-2 spheres, isolated max", (),
                 ("default", "same-level"), _type2, _type2_expect),
    TypeTemplate("3", "sphere min (b_min = 2k+1), index-2 sphere, index-4 point, isolated max", (_k(),),
                 ("default", "alt", "same-level"), _type3, _type3_expect),
    TypeTemplate("4", "sphere min (b_min = 2), sphere max, no walls", (), ("default",), _type4, _type4_expect),
    TypeTemplate("5", "sphere min (b_min = 1), index-4 point, index-2 point, sphere max", (),
                 ("default",), _type5, _type5_expect),
    TypeTemplate("6a", "genus-g min (b_min = 2k or 2k+1), index-2 genus-g1 surface, genus-g max",
                 (_k(), Param("g", 0, None), Param("g1", 0, None), Param("odd", 0, 1)),
                 ("default",), _type6a, _type6a_expect),
    TypeTemplate("6b", "sphere min (b_min = 2k), index-2 sphere, sphere max, twisted", (_k(),),
                 ("default",), _type6b, _type6b_expect),
]

TEMPLATES = {tpl.type_id: tpl for tpl in _TEMPLATES}
TYPE_IDS = tuple(TEMPLATES)
FLIPPED = "flipped"


def template(type_id) -> TypeTemplate:
    try:
        return TEMPLATES[str(type_id)]
    except KeyError:
        raise CatalogError(f"unknown type {type_id!r}; choose from {', '.join(TYPE_IDS)}") from None


def _check_variant(tpl: TypeTemplate, variant: str) -> None:
    if variant not in tpl.variants and variant != FLIPPED:
        raise CatalogError(f"type {tpl.type_id} has variants {', '.join(tpl.variants + (FLIPPED,))}")


def instantiate(type_id, params: dict | None = None, variant: str = "default") -> Profile:
    tpl = template(type_id)
    _check_variant(tpl, variant)
    p = tpl.resolve(params)
    if variant == FLIPPED:
        flipped, _ = flip_profile(tpl.build(p, "default"))
        return flipped
    return tpl.build(p, variant)


def expected_outcome(type_id, params: dict | None = None, variant: str = "default") -> ExpectedOutcome:
    tpl = template(type_id)
    _check_variant(tpl, variant)
    p = tpl.resolve(params)
    if variant != FLIPPED:
        return ExpectedOutcome(tpl.expect(p, variant))
    # upside down: same feasibility, equalities renamed
    base = tpl.expect(p, "default")
    _, rename = flip_profile(tpl.build(p, "default"))
    out = {}
    if "feasible" in base:
        out["feasible"] = base["feasible"]
    if "equalities" in base:
        eq = base["equalities"]
        out["equalities"] = Expected([_rename(f, rename) for f in eq.value], DERIVED,
                                     "equalities of the original, renamed")
    return ExpectedOutcome(out)


def _rename(form: Affine, mapping: dict) -> Affine:
    return form.subs({k: Affine.var(v) for k, v in mapping.items()})


def instances(k_range=K_RANGE, g_range=G_RANGE, include_variants: bool = True) -> Iterator[tuple]:
    """Every ``(type_id, params, variant)`` in the given ranges."""
    ks = range(k_range[0], k_range[1] + 1)
    gs = range(g_range[0], g_range[1] + 1)
    for tpl in _TEMPLATES:
        names = [p.name for p in tpl.params]
        pools = {"k": ks, "g": gs, "g1": gs, "odd": (0, 1)}
        for values in itertools.product(*(pools[n] for n in names)):
            params = dict(zip(names, values))
            variants = tpl.variants + (FLIPPED,) if include_variants else ("default",)
            for variant in variants:
                if tpl.type_id == "3" and variant in ("alt", "same-level") and params["k"] != 0:
                    continue
                if variant == "same-level" and tpl.type_id == "2":
                    continue  # structurally rejected, not a valid instance
                yield tpl.type_id, params, variant


# -- golden comparison -------------------------------------------------------


def compare(report: ProfileReport, expected: ExpectedOutcome, result=None) -> list:
    """Mismatches between a report and an expected outcome (empty when they agree)."""
    problems = []
    system = report.constraints
    if "dual_classes" in expected:
        got = {r.position: r.dual_class for r in report.walls if r.dual_class is not None}
        for pos, eta in expected.get("dual_classes").items():
            if got.get(pos) != eta:
                problems.append(f"dual class of wall {pos}: expected {eta}, got {got.get(pos)}")
    if "chern" in expected:
        got = {r.position: (r.chern_minus, r.chern_plus) for r in report.walls if r.chern_plus is not None}
        if got != expected.get("chern"):
            problems.append(f"normal Chern numbers: expected {expected.get('chern')}, got {got}")
    if "euler" in expected:
        for i, e in expected.get("euler").items():
            if report.intervals[i].euler != e:
                problems.append(f"Euler class on interval {i}: expected {e}, got {report.intervals[i].euler}")
    if "b_max" in expected and report.b_max != expected.get("b_max"):
        problems.append(f"b_max: expected {expected.get('b_max')}, got {report.b_max}")
    if "twist" in expected and report.twist != expected.get("twist"):
        problems.append(f"twist: expected {expected.get('twist').value}, got {report.twist.value}")
    if "equalities" in expected:
        want = ConstraintSystem([Constraint(f, EQ) for f in expected.get("equalities")])
        if want.equality_span() != system.equality_span():
            problems.append("equalities differ: expected "
                            + "; ".join(f"{f} = 0" for f in expected.get("equalities"))
                            + ", got " + "; ".join(str(c) for c in system.equalities))
    if "contains" in expected:
        for c in expected.get("contains"):
            if not system.contains(c.form, c.relation):
                problems.append(f"constraint {c.form} {c.relation} 0 does not appear")
    if "feasible" in expected:
        result = result if result is not None else eliminate(system)
        if result.feasible != expected.get("feasible"):
            problems.append(f"feasibility: expected {expected.get('feasible')}, got {result.feasible}")
        if "obstruction" in expected and not result.feasible:
            if not any(expected.get("obstruction") in tag for tag in result.tags):
                problems.append(f"certificate does not cite {expected.get('obstruction')}")
    return problems


def run_instance(type_id, params=None, variant="default"):
    """Instantiate, run and compare; returns ``(report, result, problems)``."""
    profile = instantiate(type_id, params, variant)
    report = run_profile(profile)
    result = eliminate(report.constraints)
    return report, result, compare(report, expected_outcome(type_id, params, variant), result)
