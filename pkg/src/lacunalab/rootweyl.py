"""Root systems, Weyl groups, and highest-weight admissibility for the catalog.

Cataloged groups: SU(2) and U(n) for n in {2, 3, 4}.

All weights are stored in DOUBLED coordinates: a stored vector is 2*lambda,
where lambda is the weight in the natural character coordinates of the
maximal torus.  The half sum of positive roots has half-integer entries for
U(n), so doubling keeps every stored coordinate an exact integer.  A weight
is a character of the torus exactly when every doubled coordinate is even.

For SU(2) the torus is {diag(e^{i t}, e^{-i t})}, characters are e^{i n t}
with n an integer, the positive root is 2 in natural coordinates (doubled 4),
and the half sum of positive roots is 1 (doubled 2).  For U(n) the positive
roots are e_i - e_j for i < j and the Weyl group is the full permutation
group acting on coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import CatalogError, DomainError

GROUP_IDS = ("su2", "u2", "u3", "u4")


@dataclass(frozen=True)
class Weight:
    """Integer lattice vector in doubled coordinates (the stored tuple is 2*lambda)."""

    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    @classmethod
    def from_natural(cls, values: Iterable) -> "Weight":
        """Build from natural coordinates; accepts ints and half-integer Fractions."""
        doubled = []
        for v in values:
            d = Fraction(v) * 2
            if d.denominator != 1:
                raise DomainError(f"coordinate {v} is not a half-integer")
            doubled.append(int(d))
        return cls(tuple(doubled))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def is_character(self) -> bool:
        """True when the weight lies on the character lattice of the torus."""
        return all(c % 2 == 0 for c in self.coords)

    def natural(self) -> tuple[Fraction, ...]:
        """Coordinates as exact rationals (denominator 1 or 2)."""
        return tuple(Fraction(c, 2) for c in self.coords)

    def natural_ints(self) -> tuple[int, ...]:
        if not self.is_character():
            raise DomainError(f"{self} has half-integer natural coordinates")
        return tuple(c // 2 for c in self.coords)

    def __add__(self, other: "Weight") -> "Weight":
        if self.rank != other.rank:
            raise DomainError("rank mismatch")
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-c for c in self.coords))

    def __repr__(self) -> str:
        nat = ["%d" % (c // 2) if c % 2 == 0 else "%d/2" % c for c in self.coords]
        return "Weight(%s)" % ", ".join(nat)

    def serialize(self):
        """Natural coordinates: ints when even, 'd/2' strings otherwise."""
        return [c // 2 if c % 2 == 0 else f"{c}/2" for c in self.coords]


@dataclass(frozen=True)
class WeylElement:
    """One Weyl group element: an integer matrix acting on weight coordinates.

    ``sign`` is the determinant of ``action``.
    """

    action: tuple[tuple[int, ...], ...]
    sign: int

    def apply(self, w: Weight) -> Weight:
        return Weight(
            tuple(sum(row[j] * w.coords[j] for j in range(len(row))) for row in self.action)
        )

    def compose(self, other: "WeylElement") -> "WeylElement":
        n = len(self.action)
        prod = tuple(
            tuple(sum(self.action[i][k] * other.action[k][j] for k in range(n)) for j in range(n))
            for i in range(n)
        )
        return WeylElement(prod, self.sign * other.sign)


@dataclass(frozen=True)
class SpectrumSet:
    """A finite set of weights sharing one rank."""

    elements: frozenset[Weight]

    def __post_init__(self):
        ranks = {w.rank for w in self.elements}
        if len(ranks) > 1:
            raise DomainError("spectrum mixes weights of different ranks")

    @classmethod
    def of(cls, weights: Iterable[Weight]) -> "SpectrumSet":
        return cls(frozenset(weights))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(sorted(self.elements, key=lambda w: w.coords))

    def __contains__(self, w: Weight) -> bool:
        return w in self.elements

    def serialize(self):
        return [w.serialize() for w in self]


@dataclass(frozen=True)
class RootSystem:
    group_id: str
    rank: int
    positive_roots: tuple[Weight, ...]
    rho: Weight
    weyl_elements: tuple[WeylElement, ...]

    def __repr__(self) -> str:
        return f"RootSystem({self.group_id}, rank={self.rank}, |W|={len(self.weyl_elements)})"


def _permutation_parity(perm: tuple[int, ...]) -> int:
    inversions = sum(
        1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j]
    )
    return -1 if inversions % 2 else 1


def _permutation_element(perm: tuple[int, ...]) -> WeylElement:
    n = len(perm)
    rows = tuple(tuple(1 if perm[j] == i else 0 for j in range(n)) for i in range(n))
    return WeylElement(rows, _permutation_parity(perm))


def build_root_system(group_id: str) -> RootSystem:
    """Standard root data for a cataloged group id ("su2", "u2", "u3", "u4")."""
    if group_id == "su2":
        return RootSystem(
            group_id="su2",
            rank=1,
            positive_roots=(Weight((4,)),),
            rho=Weight((2,)),
            weyl_elements=(WeylElement(((1,),), 1), WeylElement(((-1,),), -1)),
        )
    if group_id in ("u2", "u3", "u4"):
        n = int(group_id[1])
        roots = []
        for i in range(n):
            for j in range(i + 1, n):
                coords = [0] * n
                coords[i] = 2
                coords[j] = -2
                roots.append(Weight(tuple(coords)))
        rho = Weight(tuple(n - 1 - 2 * i for i in range(n)))
        weyl = tuple(_permutation_element(p) for p in itertools.permutations(range(n)))
        return RootSystem(group_id, n, tuple(roots), rho, weyl)
    raise CatalogError(f"unknown group id {group_id!r}; catalog: {', '.join(GROUP_IDS)}")


def cartan_pairing(rs: RootSystem, lam: Weight, alpha: Weight) -> Fraction:
    """Exact pairing 2<lam, alpha>/<alpha, alpha> in the catalog coordinates.

    The doubling of both arguments cancels, so the value agrees with the
    natural-coordinate pairing.
    """
    if alpha not in rs.positive_roots:
        raise DomainError(f"{alpha} is not a positive root of {rs.group_id}")
    if lam.rank != rs.rank:
        raise DomainError("weight rank does not match the root system")
    num = 2 * sum(a * b for a, b in zip(lam.coords, alpha.coords))
    den = sum(a * a for a in alpha.coords)
    return Fraction(num, den)


@dataclass(frozen=True)
class DominanceResult:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_dominant_integral(rs: RootSystem, lam: Weight) -> DominanceResult:
    """Check the two admissibility conditions for a highest weight.

    Condition (I): the Cartan pairing with every positive root is a
    nonnegative integer (zero included, so the trivial weight passes).
    Condition (II): the weight is a character of the torus, which in doubled
    coordinates is evenness of every entry.
    """
    if lam.rank != rs.rank:
        raise DomainError("weight rank does not match the root system")
    for alpha in rs.positive_roots:
        p = cartan_pairing(rs, lam, alpha)
        if p.denominator != 1 or p < 0:
            return DominanceResult(
                False,
                f"condition (I) fails at root {alpha!r}: pairing {p} is not a nonnegative integer",
            )
    if not lam.is_character():
        return DominanceResult(
            False, "condition (II) fails: odd doubled coordinate, not a torus character"
        )
    return DominanceResult(True)


def weyl_orbit(rs: RootSystem, lam: Weight) -> SpectrumSet:
    """The orbit {w.lam : w in W}, deduplicated."""
    return SpectrumSet.of(w.apply(lam) for w in rs.weyl_elements)


def orbit_of_set(rs: RootSystem, spectrum: SpectrumSet) -> SpectrumSet:
    """Union of the Weyl orbits of every element of the set."""
    out = set()
    for lam in spectrum:
        if lam.rank != rs.rank:
            raise DomainError("spectrum rank does not match the root system")
        for w in rs.weyl_elements:
            out.add(w.apply(lam))
    return SpectrumSet.of(out)
