"""Exact rational feasibility for systems of affine constraints.

Constraints are ``form == 0``, ``form > 0`` or ``form >= 0``.  Decision is by
Gaussian substitution of the equalities followed by Fourier-Motzkin
elimination with a strictness flag on every derived row.  Each derived row
remembers the multipliers of the original constraints that produced it, so a
contradiction comes with a Farkas-style certificate; a consistent system is
answered with a rational point obtained by back-substitution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor
from typing import Iterable, Mapping, Sequence, Union

from .affine import Affine, as_fraction, param_key, sort_params

EQ, GT, GE = "==", ">", ">="
RELATIONS = (EQ, GT, GE)


@dataclass(frozen=True)
class Constraint:
    form: Affine
    relation: str
    tag: str = ""

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        if not isinstance(self.form, Affine):
            object.__setattr__(self, "form", Affine.lift(self.form))

    def holds(self, point: Mapping[str, Fraction]) -> bool:
        value = self.form.evaluate(point)
        if self.relation == EQ:
            return value == 0
        if self.relation == GT:
            return value > 0
        return value >= 0

    def is_trivially_true(self) -> bool:
        return self.form.is_constant() and self.holds({})

    def negations(self) -> list["Constraint"]:
        """Constraints whose union is the complement of this one."""
        if self.relation == GT:
            return [Constraint(-self.form, GE, f"not({self.tag})")]
        if self.relation == GE:
            return [Constraint(-self.form, GT, f"not({self.tag})")]
        return [Constraint(self.form, GT, f"not({self.tag})"),
                Constraint(-self.form, GT, f"not({self.tag})")]

    def __str__(self):
        return f"{self.form} {self.relation} 0"


def equality(lhs, rhs, tag: str = "") -> Constraint:
    return Constraint(Affine.lift(lhs) - rhs, EQ, tag)


def greater(lhs, rhs=0, tag: str = "", strict: bool = True) -> Constraint:
    return Constraint(Affine.lift(lhs) - rhs, GT if strict else GE, tag)


class ConstraintSystem:
    """Ordered parameter names plus constraints, each carrying a provenance tag."""

    def __init__(self, constraints: Iterable[Constraint], variables: Sequence[str] | None = None):
        self.constraints = tuple(constraints)
        used = set()
        for c in self.constraints:
            used |= c.form.variables
        if variables is None:
            variables = sort_params(used)
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        missing = used - set(variables)
        if missing:
            raise ValueError(f"constraints mention undeclared variables {sorted(missing)}")
        self.variables = variables

    def __len__(self):
        return len(self.constraints)

    def __iter__(self):
        return iter(self.constraints)

    @property
    def equalities(self) -> list[Constraint]:
        return [c for c in self.constraints if c.relation == EQ]

    @property
    def strict_inequalities(self) -> list[Constraint]:
        return [c for c in self.constraints if c.relation == GT]

    @property
    def nonstrict_inequalities(self) -> list[Constraint]:
        return [c for c in self.constraints if c.relation == GE]

    def extended(self, extra: Iterable[Constraint]) -> "ConstraintSystem":
        extra = tuple(extra)
        names = set(self.variables)
        for c in extra:
            names |= c.form.variables
        return ConstraintSystem(self.constraints + extra, sort_params(names))

    def renamed(self, mapping: Mapping[str, str]) -> "ConstraintSystem":
        subst = {old: Affine.var(new) for old, new in mapping.items()}
        return ConstraintSystem(
            [Constraint(c.form.subs(subst), c.relation, c.tag) for c in self.constraints],
            sort_params(mapping.get(v, v) for v in self.variables),
        )

    # -- canonical reduction modulo the equalities -------------------------

    def equality_substitution(self) -> dict[str, Affine]:
        """Solve the equalities for the latest possible variables (canonical order).

        Raises ``ValueError`` if the equalities alone are inconsistent.
        """
        rows = [c.form for c in self.equalities]
        subst: dict[str, Affine] = {}
        for var in reversed(sort_params(self.variables)):
            pivot = next((r for r in rows if r.coeff(var)), None)
            if pivot is None:
                continue
            rows.remove(pivot)
            expr = (Affine.var(var, pivot.coeff(var)) - pivot) / pivot.coeff(var)
            subst = {k: v.subs({var: expr}) for k, v in subst.items()}
            subst[var] = expr
            rows = [r.subs({var: expr}) for r in rows]
        for r in rows:
            if r.is_constant() and r.const != 0:
                raise ValueError("equalities are inconsistent")
        return subst

    def reduce(self, form: Affine) -> Affine:
        return form.subs(self.equality_substitution())

    def contains(self, form: Affine, relation: str) -> bool:
        """Whether some constraint equals ``form relation 0`` after reduction by the equalities."""
        subst = self.equality_substitution()
        if relation == EQ:
            target = form.subs(subst)
            return target == 0
        target = form.subs(subst).normalized()
        for c in self.constraints:
            if c.relation == relation and c.form.subs(subst).normalized() == target:
                return True
        return False

    def equality_span(self) -> set:
        """Canonical description of the affine subspace cut out by the equalities."""
        subst = self.equality_substitution()
        return {(k, v) for k, v in subst.items()}

    def __str__(self):
        return "\n".join(f"{c}    [{c.tag}]" for c in self.constraints)


# -- results -----------------------------------------------------------------


@dataclass
class Feasible:
    sample: dict

    feasible = True

    def values(self, variables: Sequence[str]) -> list:
        return [self.sample[v] for v in variables]


@dataclass
class Infeasible:
    #: constraint index -> multiplier (inequality multipliers are nonnegative)
    certificate: dict
    tags: list = field(default_factory=list)
    #: the constant the combination collapses to
    combined: Fraction = Fraction(0)
    strict: bool = True

    feasible = False


FeasibilityResult = Union[Feasible, Infeasible]


# -- elimination -------------------------------------------------------------


class _Row:
    __slots__ = ("coeffs", "const", "rel", "mult")

    def __init__(self, coeffs, const, rel, mult):
        self.coeffs = {k: v for k, v in coeffs.items() if v}
        self.const = const
        self.rel = rel
        self.mult = {k: v for k, v in mult.items() if v}

    def scaled(self, s: Fraction) -> "_Row":
        return _Row({k: v * s for k, v in self.coeffs.items()}, self.const * s, self.rel,
                    {k: v * s for k, v in self.mult.items()})

    def plus(self, other: "_Row", s: Fraction, rel: str) -> "_Row":
        coeffs = dict(self.coeffs)
        for k, v in other.coeffs.items():
            coeffs[k] = coeffs.get(k, 0) + v * s
        mult = dict(self.mult)
        for k, v in other.mult.items():
            mult[k] = mult.get(k, 0) + v * s
        return _Row(coeffs, self.const + other.const * s, rel, mult)

    def violated(self) -> bool:
        if self.coeffs:
            return False
        if self.rel == EQ:
            return self.const != 0
        if self.rel == GT:
            return self.const <= 0
        return self.const < 0

    def trivially_true(self) -> bool:
        return not self.coeffs and not self.violated()


def _combine_rel(a: str, b: str) -> str:
    return GT if GT in (a, b) else GE


def _tidy(rows: list[_Row], order: dict) -> list[_Row]:
    """Drop satisfied constants; merge parallel inequalities keeping the tightest."""
    best: dict = {}
    out: list[_Row] = []
    for r in rows:
        if r.trivially_true():
            continue
        if r.rel == EQ or not r.coeffs:
            out.append(r)
            continue
        lead = r.coeffs[min(r.coeffs, key=order.__getitem__)]
        n = r.scaled(1 / abs(lead))
        key = tuple(sorted(n.coeffs.items()))
        prev = best.get(key)
        if prev is None or n.const < prev.const or (n.const == prev.const and n.rel == GT and prev.rel == GE):
            best[key] = n
    return out + list(best.values())


def _infeasible(system: ConstraintSystem, row: _Row) -> Infeasible:
    mult = dict(row.mult)
    const = row.const
    if row.rel == EQ and const > 0:
        mult = {k: -v for k, v in mult.items()}
        const = -const
    tags = [system.constraints[i].tag for i in sorted(mult)]
    return Infeasible(certificate=mult, tags=tags, combined=const, strict=row.rel == GT)


def _first_violated(rows):
    for r in rows:
        if r.violated():
            return r
    return None


def _pick(var: str, rows: list[_Row], values: dict) -> Fraction:
    lo = hi = None
    lo_strict = hi_strict = False
    for r in rows:
        a = r.coeffs[var]
        rest = r.const + sum(v * values[k] for k, v in r.coeffs.items() if k != var)
        bound = -rest / a
        strict = r.rel == GT
        if a > 0:
            if lo is None or bound > lo or (bound == lo and strict):
                lo, lo_strict = bound, strict
        else:
            if hi is None or bound < hi or (bound == hi and strict):
                hi, hi_strict = bound, strict
    if lo is not None and hi is not None:
        return (lo + hi) / 2 if lo < hi else lo
    if lo is not None:
        return Fraction(floor(lo) + 1)
    if hi is not None:
        return Fraction(ceil(hi) - 1)
    return Fraction(0)


def eliminate(system: ConstraintSystem):
    """Decide ``system``; return :class:`Feasible` with a sample or :class:`Infeasible`."""
    order = {v: i for i, v in enumerate(sort_params(system.variables))}
    rows = [
        _Row(dict(c.form.coeffs), c.form.const, c.relation, {i: Fraction(1)})
        for i, c in enumerate(system.constraints)
    ]
    bad = _first_violated(rows)
    if bad is not None:
        return _infeasible(system, bad)

    eq_steps = []
    for var in sorted(order, key=order.__getitem__, reverse=True):
        pivot = next((r for r in rows if r.rel == EQ and var in r.coeffs), None)
        if pivot is None:
            continue
        rows = [r for r in rows if r is not pivot]
        a = pivot.coeffs[var]
        rows = [r.plus(pivot, -r.coeffs[var] / a, r.rel) if var in r.coeffs else r for r in rows]
        eq_steps.append((var, pivot))
        rows = _tidy(rows, order)
        bad = _first_violated(rows)
        if bad is not None:
            return _infeasible(system, bad)

    fm_steps = []
    eliminated = {v for v, _ in eq_steps}
    for var in sorted(order, key=order.__getitem__, reverse=True):
        if var in eliminated:
            continue
        pos = [r for r in rows if r.coeffs.get(var, 0) > 0]
        neg = [r for r in rows if r.coeffs.get(var, 0) < 0]
        rest = [r for r in rows if var not in r.coeffs]
        new = list(rest)
        for p in pos:
            for n in neg:
                # (-n_v) * p + p_v * n cancels var
                new.append(p.scaled(-n.coeffs[var]).plus(n, p.coeffs[var], _combine_rel(p.rel, n.rel)))
        fm_steps.append((var, pos + neg))
        rows = _tidy(new, order)
        bad = _first_violated(rows)
        if bad is not None:
            return _infeasible(system, bad)

    values: dict = {}
    for var, bounding in reversed(fm_steps):
        values[var] = _pick(var, bounding, values)
    for var, pivot in reversed(eq_steps):
        a = pivot.coeffs[var]
        rest = pivot.const + sum(v * values[k] for k, v in pivot.coeffs.items() if k != var)
        values[var] = -rest / a
    sample = {v: values.get(v, Fraction(0)) for v in system.variables}
    return Feasible(sample)


# -- independent checks ------------------------------------------------------


def verify_sample(system: ConstraintSystem, point) -> bool:
    """Exact substitution check of every constraint.

    ``point`` is a mapping by name or a sequence in ``system.variables`` order.
    """
    if not isinstance(point, Mapping):
        point = list(point)
        if len(point) != len(system.variables):
            raise ValueError(f"expected {len(system.variables)} values, got {len(point)}")
        point = dict(zip(system.variables, point))
    else:
        missing = set(system.variables) - set(point)
        if missing:
            raise ValueError(f"point lacks values for {sorted(missing)}")
    point = {k: as_fraction(v) for k, v in point.items()}
    return all(c.holds(point) for c in system.constraints)


def verify_certificate(system: ConstraintSystem, result: Infeasible) -> bool:
    """Recombine the original constraints with the certificate multipliers."""
    total = Affine(0)
    strict = False
    for i, lam in result.certificate.items():
        c = system.constraints[i]
        lam = as_fraction(lam)
        if c.relation != EQ:
            if lam < 0:
                return False
            if c.relation == GT and lam > 0:
                strict = True
        total = total + c.form * lam
    if not total.is_constant():
        return False
    return total.const < 0 or (total.const == 0 and strict)


def implies(system: ConstraintSystem, constraint: Constraint) -> bool:
    """Every point of ``system`` satisfies ``constraint``."""
    for neg in constraint.negations():
        if eliminate(system.extended([neg])).feasible:
            return False
    return True


def equivalent(a: ConstraintSystem, b: ConstraintSystem) -> bool:
    """Same feasible set (over the union of their variables)."""
    a_empty = not eliminate(a).feasible
    b_empty = not eliminate(b).feasible
    if a_empty or b_empty:
        return a_empty == b_empty
    return all(implies(a, c) for c in b) and all(implies(b, c) for c in a)
