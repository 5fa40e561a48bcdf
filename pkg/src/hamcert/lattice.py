"""Second cohomology of the reduced spaces and their intersection pairings.

Only three kinds of 4-manifold occur as regular reduced spaces: the
projective plane (basis ``u``) and the trivial / nontrivial sphere bundles
over a genus ``g`` surface (basis ``x, y``).  ``x`` is always dual to the
fiber; ``y`` is dual to the base section (trivial bundle) or to the
self-intersection ``-1`` section (nontrivial bundle).  The nontrivial
bundle over the sphere is the one-point blow-up of the projective plane,
with ``u`` pulling back to ``x + y`` and ``y`` the exceptional class.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .affine import Affine, Scalar

PROJECTIVE_PLANE = "projective_plane"
TRIVIAL_RULED = "trivial_ruled"
NONTRIVIAL_RULED = "nontrivial_ruled"

_GRAM = {
    PROJECTIVE_PLANE: ((1,),),
    TRIVIAL_RULED: ((0, 1), (1, 0)),
    NONTRIVIAL_RULED: ((0, 1), (1, -1)),
}


class LatticeError(ValueError):
    """Class/space mismatch or an operation undefined on the given space."""


@dataclass(frozen=True)
class SpaceKind:
    kind: str
    genus: int = 0

    def __post_init__(self):
        if self.kind not in _GRAM:
            raise LatticeError(f"unknown space kind {self.kind!r}")
        if self.genus < 0:
            raise LatticeError("genus must be nonnegative")
        if self.kind == PROJECTIVE_PLANE and self.genus:
            raise LatticeError("the projective plane carries no genus")

    @classmethod
    def projective_plane(cls) -> "SpaceKind":
        return cls(PROJECTIVE_PLANE)

    @classmethod
    def trivial(cls, genus: int = 0) -> "SpaceKind":
        return cls(TRIVIAL_RULED, genus)

    @classmethod
    def nontrivial(cls, genus: int = 0) -> "SpaceKind":
        return cls(NONTRIVIAL_RULED, genus)

    @property
    def rank(self) -> int:
        return len(_GRAM[self.kind])

    @property
    def gram(self):
        return _GRAM[self.kind]

    @property
    def is_ruled(self) -> bool:
        return self.kind != PROJECTIVE_PLANE

    @property
    def is_blowup_of_plane(self) -> bool:
        return self.kind == NONTRIVIAL_RULED and self.genus == 0

    @property
    def basis_names(self) -> tuple:
        return ("u",) if self.kind == PROJECTIVE_PLANE else ("x", "y")

    def __str__(self):
        if self.kind == PROJECTIVE_PLANE:
            return "CP2"
        if self.kind == TRIVIAL_RULED:
            return f"S2xSigma{self.genus}"
        return f"E_Sigma{self.genus}"


CP2 = SpaceKind.projective_plane()
BLOWN_UP_PLANE = SpaceKind.nontrivial(0)


def _render(coeffs, names) -> str:
    parts = []
    for c, name in zip(coeffs, names):
        if isinstance(c, Affine):
            if c == 0:
                continue
            text = str(c)
            term = name if text == "1" else (f"-{name}" if text == "-1" else f"({text}){name}")
        else:
            if c == 0:
                continue
            term = name if c == 1 else (f"-{name}" if c == -1 else f"{c}{name}")
        parts.append(term)
    if not parts:
        return "0"
    return " + ".join(parts).replace("+ -", "- ")


class _Cls:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        self.coeffs = tuple(self._coerce(c) for c in coeffs)
        if len(self.coeffs) not in (1, 2):
            raise LatticeError("classes have rank 1 or 2")

    @staticmethod
    def _coerce(c):
        return c

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def _check(self, other):
        if len(other.coeffs) != len(self.coeffs):
            raise LatticeError(f"rank mismatch: {len(self.coeffs)} vs {len(other.coeffs)}")

    def __eq__(self, other):
        if not isinstance(other, _Cls):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def render(self, space: SpaceKind | None = None) -> str:
        names = space.basis_names if space else (("u",) if self.rank == 1 else ("x", "y"))
        return _render(self.coeffs, names)

    def __str__(self):
        return self.render()


class IntClass(_Cls):
    """Integral class: Euler classes, dual classes of fixed surfaces."""

    __slots__ = ()

    @staticmethod
    def _coerce(c):
        if isinstance(c, bool) or not isinstance(c, int):
            if isinstance(c, Fraction) and c.denominator == 1:
                return int(c)
            raise LatticeError(f"integral class needs integer coefficients, got {c!r}")
        return c

    def __add__(self, other):
        if isinstance(other, FormClass):
            return FormClass.lift(self) + other
        self._check(other)
        return IntClass([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        if isinstance(other, FormClass):
            return FormClass.lift(self) - other
        self._check(other)
        return IntClass([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return IntClass([-a for a in self.coeffs])

    def __mul__(self, k):
        if isinstance(k, int) and not isinstance(k, bool):
            return IntClass([a * k for a in self.coeffs])
        return FormClass.lift(self) * k

    __rmul__ = __mul__

    def __repr__(self):
        return f"IntClass({list(self.coeffs)})"


class FormClass(_Cls):
    """Class whose coefficients are affine in the gluing parameters."""

    __slots__ = ()

    @staticmethod
    def _coerce(c):
        return Affine.lift(c) if not isinstance(c, Affine) else c

    @classmethod
    def lift(cls, c: _Cls) -> "FormClass":
        return c if isinstance(c, FormClass) else cls(c.coeffs)

    def __add__(self, other):
        other = FormClass.lift(other)
        self._check(other)
        return FormClass([a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        other = FormClass.lift(other)
        self._check(other)
        return FormClass([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return FormClass.lift(other) - self

    def __neg__(self):
        return FormClass([-a for a in self.coeffs])

    def __mul__(self, k: Scalar):
        return FormClass([a * k for a in self.coeffs])

    __rmul__ = __mul__

    def subs(self, mapping=None, **kw) -> "FormClass":
        return FormClass([a.subs(mapping, **kw) for a in self.coeffs])

    def evaluate(self, point) -> tuple:
        return tuple(a.evaluate(point) for a in self.coeffs)

    def is_constant(self) -> bool:
        return all(a.is_constant() for a in self.coeffs)

    def __repr__(self):
        return f"FormClass([{', '.join(str(a) for a in self.coeffs)}])"


AnyClass = Union[IntClass, FormClass]

U = IntClass([1])
X = IntClass([1, 0])
Y = IntClass([0, 1])


def pair(space: SpaceKind, a: AnyClass, b: AnyClass):
    """Intersection number of ``a`` and ``b`` on ``space``.

    Integer classes give an ``int``; a form class gives an :class:`Affine`
    (at most one argument may carry non-constant coefficients).
    """
    gram = space.gram
    if len(a) != space.rank or len(b) != space.rank:
        raise LatticeError(f"class of rank {len(a)}/{len(b)} does not live on {space} (rank {space.rank})")
    total = 0
    for i, ai in enumerate(a.coeffs):
        for j, bj in enumerate(b.coeffs):
            g = gram[i][j]
            if g:
                total = total + ai * bj * g
    return total


def blowdown_pullback(c: AnyClass):
    """Pull a class on the projective plane back to its one-point blow-up: ``l*u -> l*(x+y)``."""
    if len(c) != 1:
        raise LatticeError("blowdown_pullback expects a class on the projective plane")
    (l,) = c.coeffs
    return type(c)([l, l])


def blowdown_preimage(c: AnyClass):
    """Inverse of :func:`blowdown_pullback` on its image; raises off the image."""
    if len(c) != 2:
        raise LatticeError("blowdown_preimage expects a class on the blown-up plane")
    a, b = c.coeffs
    if a != b:
        raise LatticeError(f"{c} is not pulled back from the projective plane")
    return type(c)([a])


def exceptional_class(space: SpaceKind) -> IntClass:
    if not space.is_blowup_of_plane:
        raise LatticeError(f"{space} has no exceptional sphere in scope")
    return Y


def swap_ruling(c: AnyClass):
    """Exchange the two factors of the sphere-times-sphere basis."""
    if len(c) != 2:
        raise LatticeError("swap_ruling expects a rank-2 class")
    a, b = c.coeffs
    return type(c)([b, a])
