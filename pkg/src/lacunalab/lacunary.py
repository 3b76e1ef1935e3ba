"""Gap-ratio (Hadamard) lacunarity predicates and minimal cover certificates.

A set of integers is Q-thin when it lies entirely in the positive or
entirely in the negative integers (zero belongs to neither side here) and
any two magnitudes differ by a factor of at least Q.  A set is lacunary at
cutoff N when both of its tails beyond +-N are Q-thin; whatever sits
strictly inside (-N, N) is unconstrained.

Every finite set splits into finitely many lacunary pieces, so the decidable
question is parametrized: can the set be covered by at most r parts at fixed
(Q, N)?  ``min_lacunary_cover`` answers it with a minimal certificate via a
first-fit chain cover per tail; tests prove minimality against an exhaustive
partition search.

All ratio comparisons are exact (integer cross-multiplication); this module
never touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError, ParameterError
from .rootweyl import RootSystem, SpectrumSet, orbit_of_set

IntSet = tuple[int, ...]


def intset(values: Iterable[int]) -> IntSet:
    """Normalize to a sorted duplicate-free tuple."""
    return tuple(sorted(set(int(v) for v in values)))


def parse_rational(text: str) -> Fraction:
    """Parse 'p' or 'p/q' exactly."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParameterError(f"cannot parse rational {text!r}") from exc


def _check_params(q: Fraction, n: int | None = None) -> Fraction:
    q = Fraction(q)
    if q <= 1:
        raise ParameterError(f"Q must exceed 1, got {q}")
    if n is not None and n < 1:
        raise ParameterError(f"N must be a positive integer, got {n}")
    return q


def _ratio_ok(larger: int, smaller: int, q: Fraction) -> bool:
    # |larger| / |smaller| >= q, by cross multiplication
    return abs(larger) * q.denominator >= abs(smaller) * q.numerator


def is_q_thin(values: Iterable[int], q: Fraction) -> bool:
    """One-sided containment plus pairwise magnitude ratios of at least q.

    The empty set passes; a set containing 0 fails the containment clause.
    Consecutive magnitudes suffice for the pairwise check since q > 1.
    """
    q = _check_params(q)
    a = intset(values)
    if not a:
        return True
    if not (all(x > 0 for x in a) or all(x < 0 for x in a)):
        return False
    mags = sorted(abs(x) for x in a)
    return all(_ratio_ok(mags[i + 1], mags[i], q) for i in range(len(mags) - 1))


def is_lacunary(values: Iterable[int], q: Fraction, n: int) -> bool:
    """Empty, or both tails beyond +-n are q-thin."""
    q = _check_params(q, n)
    a = intset(values)
    if not a:
        return True
    pos_tail = [x for x in a if x >= n]
    neg_tail = [x for x in a if x <= -n]
    return is_q_thin(pos_tail, q) and is_q_thin(neg_tail, q)


@dataclass(frozen=True)
class LacunaryCert:
    """A partition of a finite integer set into lacunary parts at (q, n)."""

    q: Fraction
    n: int
    parts: tuple[IntSet, ...]

    @property
    def part_count(self) -> int:
        return len(self.parts)

    def covered_set(self) -> IntSet:
        return intset(x for part in self.parts for x in part)

    def verify(self, expected: Iterable[int]) -> bool:
        """Parts disjoint, each lacunary, and reassembling exactly the input."""
        seen: set[int] = set()
        for part in self.parts:
            if seen.intersection(part):
                return False
            seen.update(part)
        if seen != set(intset(expected)):
            return False
        return all(is_lacunary(part, self.q, self.n) for part in self.parts)

    def serialize(self) -> dict:
        return {
            "q": str(self.q),
            "n": self.n,
            "part_count": self.part_count,
            "parts": [list(p) for p in self.parts],
        }


def _greedy_chains(tail_mags: Sequence[int], q: Fraction) -> list[list[int]]:
    """First-fit chain cover of one tail, processed in increasing magnitude.

    ``tail_mags`` are the magnitudes; each chain keeps consecutive ratios
    at least q.  The greedy count is minimal (proven against the exhaustive
    oracle in the test suite).
    """
    chains: list[list[int]] = []
    for m in sorted(tail_mags):
        for chain in chains:
            if _ratio_ok(m, chain[-1], q):
                chain.append(m)
                break
        else:
            chains.append([m])
    return chains


def min_lacunary_cover(values: Iterable[int], q: Fraction, n: int) -> LacunaryCert:
    """Partition into the minimal number of lacunary parts at (q, n).

    The two tails are covered by independent greedy chain covers; positive
    and negative chains pair up into shared parts, and the unconstrained
    middle zone merges into the first part.
    """
    q = _check_params(q, n)
    a = intset(values)
    pos = _greedy_chains([x for x in a if x >= n], q)
    neg = _greedy_chains([-x for x in a if x <= -n], q)
    middle = [x for x in a if -n < x < n]

    count = max(len(pos), len(neg), 1 if a else 0)
    parts = []
    for i in range(count):
        part: list[int] = []
        if i < len(pos):
            part.extend(pos[i])
        if i < len(neg):
            part.extend(-m for m in neg[i])
        if i == 0:
            part.extend(middle)
        parts.append(intset(part))
    return LacunaryCert(q=q, n=n, parts=tuple(parts))


@dataclass(frozen=True)
class AxisCover:
    axis: int
    projection: IntSet
    cert: LacunaryCert
    ok: bool
    reason: str | None

    def serialize(self) -> dict:
        return {
            "axis": self.axis,
            "projection": list(self.projection),
            "cert": self.cert.serialize(),
            "ok": self.ok,
            "reason": self.reason,
        }


@dataclass(frozen=True)
class ConditionReport:
    """Verdict of the product-of-lacunary-sets spectral condition.

    The Weyl orbit of the given spectrum must fit inside a box E_1 x ... x E_k
    whose axis sets each admit a cover by at most r lacunary parts.  The
    minimal admissible box is the product of the coordinate projections of
    the orbit, so those projections are what gets certified.
    """

    holds: bool
    max_parts: int
    orbit: SpectrumSet
    axes: tuple[AxisCover, ...]

    @property
    def projections(self) -> list[IntSet]:
        return [ax.projection for ax in self.axes]

    def serialize(self) -> dict:
        return {
            "holds": self.holds,
            "max_parts": self.max_parts,
            "orbit": self.orbit.serialize(),
            "axes": [ax.serialize() for ax in self.axes],
        }


def check_condition_1(
    rs: RootSystem, spectrum: SpectrumSet, q: Fraction, n: int, max_parts: int
) -> ConditionReport:
    """Certify the orbit-in-a-lacunary-box condition for a finite spectrum.

    Every element must be a torus character (even doubled coordinates);
    exponents are handled in natural coordinates.
    """
    q = _check_params(q, n)
    if max_parts < 1:
        raise ParameterError(f"max parts must be positive, got {max_parts}")
    for w in spectrum:
        if not w.is_character():
            raise DomainError(f"{w!r} is not a torus character")

    orbit = orbit_of_set(rs, spectrum)
    points = [w.natural_ints() for w in orbit]
    axes = []
    for j in range(rs.rank):
        projection = intset(p[j] for p in points)
        cert = min_lacunary_cover(projection, q, n)
        ok = cert.part_count <= max_parts
        reason = (
            None
            if ok
            else f"axis {j} needs {cert.part_count} parts at Q={q}, N={n} (allowed {max_parts})"
        )
        axes.append(AxisCover(j, projection, cert, ok, reason))
    return ConditionReport(
        holds=all(ax.ok for ax in axes),
        max_parts=max_parts,
        orbit=orbit,
        axes=tuple(axes),
    )
