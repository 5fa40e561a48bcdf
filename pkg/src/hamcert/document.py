"""Profile documents (JSON) and report rendering.

A profile document looks like::

    {
      "format": "hamcert.profile/1",
      "name": "type 3 (k=2)",
      "min": {"kind": "surface", "genus": 0, "normal_chern": 5},
      "walls": [
        {"index": 2, "kind": "surface", "genus": 0, "dual_class": [-1, 1]},
        {"index": 4, "kind": "point"}
      ],
      "max": {"kind": "point"},
      "twist": null,
      "fixed": {"t0": "1"}
    }

Dual classes are coefficient lists in the basis ``u`` (plane) or ``x, y``
(ruled surface); omitted dual classes are solved for.  Gaps are named
``t0, t1, ...`` bottom-up; extremal surfaces are sized ``alpha0`` and
``alpha_max``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .crossing import (MAX_SIZE, MIN_SIZE, POINT, SURFACE, FixedComponent, Profile,
                       ProfileError, ProfileReport, Twist)
from .feasibility import ConstraintSystem, Feasible, Infeasible
from .lattice import IntClass, LatticeError

PROFILE_FORMAT = "hamcert.profile/1"
REPORT_SCHEMA = "hamcert.report/1"

_TOP_KEYS = {"format", "name", "min", "walls", "max", "twist", "fixed"}
_EXTREMAL_KEYS = {"kind", "genus", "normal_chern", "size", "index"}
_WALL_KEYS = {"index", "kind", "genus", "dual_class", "same_level"}


class DocumentError(ProfileError):
    """Malformed profile document."""


def _reject_unknown(obj: dict, allowed: set, where: str) -> None:
    if not isinstance(obj, dict):
        raise DocumentError(f"{where} must be an object")
    extra = set(obj) - allowed
    if extra:
        raise DocumentError(f"{where}: unknown field(s) {', '.join(sorted(extra))}")


def _int(obj: dict, key: str, where: str, required=False):
    value = obj.get(key)
    if value is None:
        if required:
            raise DocumentError(f"{where}: missing {key}")
        return None
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"{where}: {key} must be an integer")
    return value


def _extremal(obj: dict, where: str, bottom: bool) -> FixedComponent:
    _reject_unknown(obj, _EXTREMAL_KEYS, where)
    kind = obj.get("kind")
    if kind not in (POINT, SURFACE):
        raise DocumentError(f"{where}: kind must be 'point' or 'surface'")
    index = _int(obj, "index", where)
    default_index = 0 if bottom else (6 if kind == POINT else 4)
    if index is not None and index != default_index:
        raise DocumentError(f"{where}: a {kind} {'minimum' if bottom else 'maximum'} has index {default_index}")
    if kind == POINT:
        for key in ("genus", "normal_chern", "size"):
            if obj.get(key) is not None:
                raise DocumentError(f"{where}: an isolated point has no {key}")
        return FixedComponent.point(default_index)
    genus = _int(obj, "genus", where, required=True)
    chern = _int(obj, "normal_chern", where, required=bottom)
    if not bottom and chern is not None:
        raise DocumentError(f"{where}: b_max is derived, do not supply normal_chern")
    size = obj.get("size", MIN_SIZE if bottom else MAX_SIZE)
    if not isinstance(size, str) or not size.isidentifier():
        raise DocumentError(f"{where}: size must be a parameter name")
    try:
        return FixedComponent.surface(default_index, genus, chern, size)
    except ProfileError as exc:
        raise DocumentError(f"{where}: {exc}") from None


def _wall(obj: dict, where: str):
    _reject_unknown(obj, _WALL_KEYS, where)
    kind = obj.get("kind")
    if kind not in (POINT, SURFACE):
        raise DocumentError(f"{where}: kind must be 'point' or 'surface'")
    index = _int(obj, "index", where, required=True)
    same = obj.get("same_level", False)
    if not isinstance(same, bool):
        raise DocumentError(f"{where}: same_level must be true or false")
    dual = obj.get("dual_class")
    if dual is not None:
        if not isinstance(dual, list):
            raise DocumentError(f"{where}: dual_class must be a list of integers")
        try:
            dual = IntClass(dual)
        except LatticeError as exc:
            raise DocumentError(f"{where}: {exc}") from None
    try:
        if kind == POINT:
            if obj.get("genus") is not None:
                raise DocumentError(f"{where}: an isolated point has no genus")
            comp = FixedComponent.point(index)
        else:
            comp = FixedComponent.surface(index, _int(obj, "genus", where, required=True))
    except ProfileError as exc:
        raise DocumentError(f"{where}: {exc}") from None
    return comp, dual, same


def parse_document(data: dict) -> Profile:
    _reject_unknown(data, _TOP_KEYS, "document")
    if data.get("format", PROFILE_FORMAT) != PROFILE_FORMAT:
        raise DocumentError(f"unsupported format {data.get('format')!r}")
    for key in ("min", "max"):
        if key not in data:
            raise DocumentError(f"document: missing {key}")
    minimum = _extremal(data["min"], "min", bottom=True)
    maximum = _extremal(data["max"], "max", bottom=False)
    walls_raw = data.get("walls", [])
    if not isinstance(walls_raw, list):
        raise DocumentError("walls must be a list")
    walls = [_wall(w, f"wall {i}") for i, w in enumerate(walls_raw)]
    twist = data.get("twist")
    if twist is not None:
        try:
            twist = Twist(twist)
        except ValueError:
            raise DocumentError(f"twist must be one of {[t.value for t in Twist]}") from None
    fixed = data.get("fixed") or {}
    if not isinstance(fixed, dict):
        raise DocumentError("fixed must map parameter names to rational values")
    try:
        fixed = {k: Fraction(str(v)) for k, v in fixed.items()}
    except (ValueError, ZeroDivisionError):
        raise DocumentError("fixed values must be integers or fraction strings") from None
    name = data.get("name", "")
    profile = Profile.build(minimum, walls, maximum, twist, fixed, name=name if isinstance(name, str) else "")
    known = set(profile.gaps) | {c.size for c in (minimum, maximum) if c.kind == SURFACE}
    unknown = set(fixed) - known
    if unknown:
        raise DocumentError(f"fixed: unknown parameter(s) {', '.join(sorted(unknown))}")
    return profile


def load_document(path) -> Profile:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: not valid JSON ({exc})") from None
    return parse_document(data)


def _extremal_doc(c: FixedComponent, bottom: bool) -> dict:
    if c.kind == POINT:
        return {"kind": POINT}
    out = {"kind": SURFACE, "genus": c.genus}
    if bottom:
        out["normal_chern"] = c.normal_chern
    if c.size != (MIN_SIZE if bottom else MAX_SIZE):
        out["size"] = c.size
    return out


def profile_document(profile: Profile) -> dict:
    walls = []
    for w in profile.walls:
        item = {"index": w.component.index, "kind": w.component.kind}
        if w.component.kind == SURFACE:
            item["genus"] = w.component.genus
        if w.dual_class is not None:
            item["dual_class"] = list(w.dual_class.coeffs)
        if w.same_level:
            item["same_level"] = True
        walls.append(item)
    doc = {
        "format": PROFILE_FORMAT,
        "name": profile.name,
        "min": _extremal_doc(profile.minimum, True),
        "walls": walls,
        "max": _extremal_doc(profile.maximum, False),
        "twist": profile.twist.value if profile.twist else None,
    }
    if profile.fixed:
        doc["fixed"] = {k: str(v) for k, v in profile.fixed}
    return doc


def dump_document(profile: Profile) -> str:
    return json.dumps(profile_document(profile), indent=2) + "\n"


# -- explanations ------------------------------------------------------------

_EXPLAIN = [
    ("size of the", "an extremal fixed surface has positive symplectic area"),
    ("strictly above", "distinct critical levels are separated by a positive gap"),
    ("shares the level", "components declared on one level have zero gap between them"),
    ("inside", "the reduced class stays in the symplectic cone across the whole interval"),
    ("area at the", "the reduced class must lie in the symplectic cone of the reduced space"),
    ("on the plane at the critical level", "at a blow-up or blow-down level the reduced space is the plane with positive line area"),
    ("hurwitz", "a degree-2 map between surfaces needs 1 + g1 - 2g >= 0 and a connected double cover"),
    ("disconnected", "this class is only represented by two disjoint curves"),
    ("no-rule", "no known family represents this class by a connected symplectic surface"),
    ("representability", "the dual class must carry a connected embedded symplectic surface"),
    ("exceptional sphere collapses", "at an index-4 point the exceptional sphere shrinks to zero area"),
    ("isolated maximum", "the reduced class shrinks to zero and the bundle becomes the Hopf fibration"),
    ("surface maximum", "one ruling collapses onto the top surface and its normal bundle is read off"),
    ("fixed by input", "value supplied in the profile document"),
    ("normalization", "the conditions are homogeneous, so one positive gap may be scaled to 1"),
]


def explain(tag: str) -> str:
    low = tag.lower()
    for key, text in _EXPLAIN:
        if key in low:
            return text
    return ""


# -- reports -----------------------------------------------------------------


def frac(x) -> str:
    return str(Fraction(x))


def _constraint_doc(i, c, with_explain):
    out = {"index": i, "form": str(c.form), "relation": c.relation, "tag": c.tag}
    if with_explain:
        out["explanation"] = explain(c.tag)
    return out


def report_document(report: ProfileReport, system: ConstraintSystem, result,
                    normalization: dict | None = None, explain_tags: bool = False) -> dict:
    """Everything in ``report`` plus the decision, with exact fraction strings."""
    intervals = []
    for i, s in enumerate(report.intervals):
        intervals.append({
            "index": i,
            "space": str(s.space),
            "euler": s.euler.render(s.space),
            "euler_coefficients": list(s.euler.coeffs),
            "start": [str(a) for a in s.start],
            "omega": [str(a) for a in s.omega],
            "gap": s.gap,
        })
    walls = []
    for r in report.walls:
        item = {
            "position": r.position,
            "component": r.component.describe(),
            "index": r.component.index,
            "kind": r.component.kind,
            "genus": r.component.genus,
            "space_below": str(r.space),
            "level_class": [str(a) for a in r.level_class],
            "dual_class": list(r.dual_class.coeffs) if r.dual_class is not None else None,
            "dual_class_solved": r.solved,
            "chern_minus": r.chern_minus,
            "chern_plus": r.chern_plus,
            "representability": str(r.representability) if r.representability else None,
        }
        walls.append(item)
    doc = {
        "schema": REPORT_SCHEMA,
        "name": report.profile.name,
        "status": "feasible" if result.feasible else "infeasible",
        "exit_code": 0 if result.feasible else 2,
        "variables": list(system.variables),
        "normalization": {k: frac(v) for k, v in (normalization or {}).items()},
        "intervals": intervals,
        "walls": walls,
        "b_max": report.b_max,
        "twist": report.twist.value,
        "top_fiber": report.top_fiber.render() if report.top_fiber is not None else None,
        "levels": report.levels,
        "constraints": [_constraint_doc(i, c, explain_tags) for i, c in enumerate(system.constraints)],
        "equalities": [f"{c.form} = 0" for c in system.equalities],
        "sample": None,
        "certificate": None,
    }
    if isinstance(result, Feasible):
        doc["sample"] = {k: frac(v) for k, v in result.sample.items()}
    elif isinstance(result, Infeasible):
        doc["certificate"] = {
            "multipliers": [
                {"index": i, "multiplier": frac(m), "tag": system.constraints[i].tag}
                for i, m in sorted(result.certificate.items())
            ],
            "combined": frac(result.combined),
            "strict": result.strict,
            "obstructions": sorted({system.constraints[i].tag for i in result.certificate}),
        }
    return doc


def render_text(doc: dict, explain_tags: bool = False) -> str:
    """Human-readable rendering of a report document."""
    lines = [f"profile: {doc['name'] or '(unnamed)'}", f"status: {doc['status'].upper()}"]
    if doc["normalization"]:
        lines.append("normalization: " + ", ".join(f"{k} = {v}" for k, v in doc["normalization"].items()))
    lines.append(f"twist: {doc['twist']}")
    if doc["b_max"] is not None:
        lines.append(f"b_max: {doc['b_max']}")
    lines.append("intervals:")
    for it in doc["intervals"]:
        omega = ", ".join(it["omega"])
        lines.append(f"  [{it['index']}] {it['space']}  e = {it['euler']}  omega(t) = ({omega})  gap {it['gap']}")
    if doc["walls"]:
        lines.append("walls:")
    for w in doc["walls"]:
        text = f"  [{w['position']}] {w['component']}"
        if w["dual_class"] is not None:
            text += f"  dual class {w['dual_class']}{' (solved)' if w['dual_class_solved'] else ''}"
            text += f"  normal Chern ({w['chern_minus']}, {w['chern_plus']})"
            text += f"  representable: {w['representability']}"
        lines.append(text)
    lines.append("constraints:")
    for c in doc["constraints"]:
        rel = {"==": "=", ">": ">", ">=": ">="}[c["relation"]]
        text = f"  ({c['index']}) {c['form']} {rel} 0    [{c['tag']}]"
        if explain_tags and c.get("explanation"):
            text += f"  -- {c['explanation']}"
        lines.append(text)
    if doc["sample"] is not None:
        lines.append("sample: " + ", ".join(f"{k} = {v}" for k, v in doc["sample"].items()))
    if doc["certificate"] is not None:
        cert = doc["certificate"]
        lines.append("certificate (nonnegative multipliers on inequalities):")
        for m in cert["multipliers"]:
            lines.append(f"  {m['multiplier']} x ({m['index']})  [{m['tag']}]")
        rel = ">" if cert["strict"] else ">="
        lines.append(f"  combined form is the constant {cert['combined']}, but must be {rel} 0")
        lines.append("obstructed by: " + "; ".join(cert["obstructions"]))
    if "golden" in doc:
        g = doc["golden"]
        lines.append("catalog comparison: " + ("match" if g["match"] else "MISMATCH"))
        lines += [f"  {p}" for p in g["problems"]]
    return "\n".join(lines) + "\n"
