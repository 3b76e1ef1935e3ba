"""Irreducible characters on the maximal torus via the ratio of alternants.

For a dominant integral highest weight the character restricted to the torus
is the quotient of two alternating sums: the numerator runs over the Weyl
orbit of the strictly dominant shift lambda + rho, the denominator over the
orbit of rho.  Both are computed exactly in doubled integer coordinates, and
the quotient is obtained by exact Laurent division (eliminate the
lexicographically largest exponent at each step), never by evaluating the
ratio numerically.  Division by the denominator is exact for admissible
weights; a nonzero remainder raises ``ConsistencyError``.

The numerator is parametrized so that the trivial weight gives the constant
character: the alternant for highest weight lambda uses the orbit of
lambda + rho.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .errors import ConsistencyError, DomainError
from .rootweyl import RootSystem, Weight, cartan_pairing, is_dominant_integral
from .series import Exponent, TorusSeries


def weyl_numerator(rs: RootSystem, lam: Weight) -> TorusSeries:
    """Alternating sum over the Weyl orbit of lam + rho; coefficients are +-1."""
    check = is_dominant_integral(rs, lam)
    if not check:
        raise DomainError(f"weight is not dominant integral: {check.reason}")
    mu = lam + rs.rho
    terms: dict[Exponent, complex] = {}
    for w in rs.weyl_elements:
        exp = w.apply(mu).coords
        terms[exp] = terms.get(exp, 0j) + w.sign
    return TorusSeries(rs.rank, terms)


def weyl_denominator(rs: RootSystem) -> TorusSeries:
    """Alternating sum over the Weyl orbit of rho."""
    terms: dict[Exponent, complex] = {}
    for w in rs.weyl_elements:
        exp = w.apply(rs.rho).coords
        terms[exp] = terms.get(exp, 0j) + w.sign
    return TorusSeries(rs.rank, terms)


def weyl_denominator_product(rs: RootSystem) -> TorusSeries:
    """Independent product form: prod over positive roots of (e_{a/2} - e_{-a/2}).

    Serves as the cross-check oracle for ``weyl_denominator``; the two must
    agree term by term with integer coefficients.
    """
    out = TorusSeries.constant(rs.rank)
    for alpha in rs.positive_roots:
        half = tuple(c // 2 for c in alpha.coords)
        factor = TorusSeries(
            rs.rank, {half: 1.0, tuple(-x for x in half): -1.0}
        )
        out = out * factor
    return out


def _int_terms(series: TorusSeries) -> dict[Exponent, int]:
    out = {}
    for exp, c in series.terms():
        r = round(c.real)
        if abs(c.real - r) > 1e-9 or abs(c.imag) > 1e-9:
            raise ConsistencyError(f"coefficient {c} at {exp} is not an integer")
        out[exp] = int(r)
    return out


# Cataloged group_id determines the root system, so (group_id, coords) is a
# complete cache key.  Characters are requested repeatedly in grid loops.
_SERIES_CACHE: dict[tuple[str, tuple[int, ...]], TorusSeries] = {}


def character_series(rs: RootSystem, lam: Weight) -> TorusSeries:
    """Exact Laurent quotient numerator / denominator for a dominant weight.

    All exponents of the result are torus characters (even doubled
    coordinates) and all coefficients are positive integers (weight
    multiplicities).
    """
    key = (rs.group_id, lam.coords)
    cached = _SERIES_CACHE.get(key)
    if cached is not None:
        return cached
    numerator = _int_terms(weyl_numerator(rs, lam))
    denominator = _int_terms(weyl_denominator(rs))

    d_lead = max(denominator)
    d_coef = denominator[d_lead]
    quotient: dict[Exponent, int] = {}
    working = dict(numerator)
    max_steps = 4 * weyl_dimension(rs, lam) + 16

    steps = 0
    while working:
        steps += 1
        if steps > max_steps:
            raise ConsistencyError("Laurent division did not terminate; non-exact quotient")
        lead = max(working)
        coef = working[lead]
        if coef % d_coef:
            raise ConsistencyError("leading coefficient not divisible; non-exact quotient")
        q_exp = tuple(a - b for a, b in zip(lead, d_lead))
        q_coef = coef // d_coef
        quotient[q_exp] = quotient.get(q_exp, 0) + q_coef
        for d_exp, dc in denominator.items():
            at = tuple(a + b for a, b in zip(q_exp, d_exp))
            new = working.get(at, 0) - q_coef * dc
            if new:
                working[at] = new
            else:
                working.pop(at, None)

    for exp in quotient:
        if any(x % 2 for x in exp):
            raise ConsistencyError(f"character exponent {exp} is not a torus character")
    series = TorusSeries(rs.rank, {e: complex(c) for e, c in quotient.items() if c})
    _SERIES_CACHE[key] = series
    return series


def character_eval(rs: RootSystem, lam: Weight, t) -> complex:
    """Evaluate the character at a torus point (vector of angles in radians).

    Sums the divided series directly, so singular points of the alternant
    quotient never arise.  At the identity the value is the integer Weyl
    dimension.
    """
    t = np.asarray(t, dtype=float)
    if t.shape != (rs.rank,):
        raise DomainError(f"expected {rs.rank} angles, got shape {t.shape}")
    series = character_series(rs, lam)
    total = 0j
    for exp, c in series.terms():
        phase = sum(d * ang for d, ang in zip(exp, t)) / 2.0
        total += c * complex(math.cos(phase), math.sin(phase))
    return total


def weyl_dimension(rs: RootSystem, lam: Weight) -> int:
    """Dimension by the product formula prod <lam+rho, a> / <rho, a>, exact."""
    check = is_dominant_integral(rs, lam)
    if not check:
        raise DomainError(f"weight is not dominant integral: {check.reason}")
    mu = lam + rs.rho
    dim = Fraction(1)
    for alpha in rs.positive_roots:
        dim *= Fraction(cartan_pairing(rs, mu, alpha), cartan_pairing(rs, rs.rho, alpha))
    if dim.denominator != 1:
        raise ConsistencyError(f"non-integer dimension {dim}")
    return int(dim)


def first_dominant_weights(rs: RootSystem, count: int) -> list[Weight]:
    """A deterministic family of dominant integral weights, graded then lex.

    SU(2): 0, 1, 2, ...  U(n): weakly decreasing nonnegative integer vectors
    ordered by (sum, reverse-lex).  Used by the orthonormality checks.
    """
    out: list[Weight] = []
    if rs.group_id == "su2":
        for n in range(count):
            out.append(Weight((2 * n,)))
        return out
    n = rs.rank
    grade = 0
    while len(out) < count:
        candidates = []
        for part in _weakly_decreasing(grade, n):
            candidates.append(part)
        for part in sorted(candidates, reverse=True):
            out.append(Weight(tuple(2 * x for x in part)))
            if len(out) == count:
                break
        grade += 1
    return out


def _weakly_decreasing(total: int, length: int, cap: int | None = None):
    if length == 0:
        if total == 0:
            yield ()
        return
    top = total if cap is None else min(cap, total)
    for head in range(top, -1, -1):
        if head * length < total:
            break
        for tail in _weakly_decreasing(total - head, length - 1, head):
            yield (head,) + tail


def weyl_integration_gram(
    rs: RootSystem, weights: list[Weight], points_per_axis: int | None = None
) -> np.ndarray:
    """Gram matrix of characters under Weyl-integration quadrature.

    Entry (i, j) is (1/|W|) times the grid mean of
    |Delta|^2 * Theta_i * conj(Theta_j).  Each factor is sampled on the grid
    separately and the samples are multiplied pointwise, so no series
    convolution is involved; on a large enough grid the mean is the exact
    integral and the matrix is the identity for distinct dominant weights.
    """
    from .torus import GridSpec, synthesize_on_grid

    delta = weyl_denominator(rs)
    chars = [character_series(rs, lam) for lam in weights]
    bound = 2 * delta.max_abs_exponent() + 2 * max(c.max_abs_exponent() for c in chars)
    points = points_per_axis if points_per_axis is not None else 2 * bound + 2
    if points <= bound:
        raise DomainError(f"grid needs more than {bound} points per axis, got {points}")
    grid = GridSpec((points,) * rs.rank)

    dvals = np.abs(synthesize_on_grid(delta, grid)) ** 2
    cvals = [synthesize_on_grid(c, grid) for c in chars]
    k = len(weights)
    gram = np.empty((k, k), dtype=complex)
    for i in range(k):
        for j in range(k):
            gram[i, j] = np.mean(dvals * cvals[i] * np.conj(cvals[j]))
    return gram / len(rs.weyl_elements)
