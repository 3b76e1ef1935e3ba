"""Sparse Fourier series on a torus, keyed by doubled-coordinate exponents.

A series maps integer exponent vectors (doubled coordinates, see
``rootweyl``) to complex coefficients.  The term e with doubled exponent d
evaluates to exp(i <d, theta> / 2); even exponents are ordinary torus
characters, odd entries give half-angle phases (these occur in Weyl
denominators of U(n)).

Coefficients with magnitude below ``ZERO_THRESHOLD`` are pruned at
construction.  Character computations use exact small integers, which the
threshold never touches; the threshold matters for quadrature-derived data.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .errors import DomainError

ZERO_THRESHOLD = 1e-12

Exponent = tuple[int, ...]


class TorusSeries:
    """Finite collection of exponent -> coefficient terms of one rank."""

    __slots__ = ("rank", "_terms")

    def __init__(self, rank: int, terms: Mapping[Exponent, complex] | None = None):
        self.rank = int(rank)
        clean: dict[Exponent, complex] = {}
        for exp, coef in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != self.rank:
                raise DomainError(f"exponent {exp} does not have rank {self.rank}")
            c = complex(coef)
            if abs(c) > ZERO_THRESHOLD:
                clean[exp] = c
        self._terms = clean

    @classmethod
    def zero(cls, rank: int) -> "TorusSeries":
        return cls(rank, {})

    @classmethod
    def constant(cls, rank: int, value: complex = 1.0) -> "TorusSeries":
        return cls(rank, {(0,) * rank: value})

    def terms(self) -> list[tuple[Exponent, complex]]:
        """Terms in deterministic (lexicographic) exponent order."""
        return sorted(self._terms.items())

    def coefficient(self, exp: Exponent) -> complex:
        return self._terms.get(tuple(exp), 0j)

    def support(self) -> set[Exponent]:
        return set(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TorusSeries)
            and self.rank == other.rank
            and self._terms == other._terms
        )

    def __hash__(self):
        raise TypeError("TorusSeries is not hashable")

    def __add__(self, other: "TorusSeries") -> "TorusSeries":
        if self.rank != other.rank:
            raise DomainError("rank mismatch")
        out = dict(self._terms)
        for exp, c in other._terms.items():
            out[exp] = out.get(exp, 0j) + c
        return TorusSeries(self.rank, out)

    def __sub__(self, other: "TorusSeries") -> "TorusSeries":
        return self + other.scale(-1)

    def __mul__(self, other: "TorusSeries") -> "TorusSeries":
        """Convolution of exponents; support lies in the Minkowski sum."""
        if self.rank != other.rank:
            raise DomainError("rank mismatch")
        out: dict[Exponent, complex] = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                out[key] = out.get(key, 0j) + ca * cb
        return TorusSeries(self.rank, out)

    def scale(self, factor: complex) -> "TorusSeries":
        return TorusSeries(self.rank, {e: c * factor for e, c in self._terms.items()})

    def conjugate(self) -> "TorusSeries":
        """Complex conjugate series: exponents negate, coefficients conjugate."""
        return TorusSeries(
            self.rank, {tuple(-x for x in e): c.conjugate() for e, c in self._terms.items()}
        )

    def map_exponents(self, fn) -> "TorusSeries":
        """Apply an exponent transform (e.g. a Weyl element action)."""
        out: dict[Exponent, complex] = {}
        for e, c in self._terms.items():
            key = tuple(fn(e))
            out[key] = out.get(key, 0j) + c
        return TorusSeries(self.rank, out)

    def norm2(self) -> float:
        """l2 norm of the coefficient vector."""
        return sum(abs(c) ** 2 for c in self._terms.values()) ** 0.5

    def max_abs_exponent(self) -> int:
        """Largest |doubled coordinate| over all terms and axes (0 for the zero series)."""
        if not self._terms:
            return 0
        return max(abs(x) for e in self._terms for x in e)

    def approx_equal(self, other: "TorusSeries", tol: float = ZERO_THRESHOLD) -> bool:
        if self.rank != other.rank:
            return False
        keys = set(self._terms) | set(other._terms)
        return all(abs(self._terms.get(k, 0j) - other._terms.get(k, 0j)) <= tol for k in keys)

    def to_records(self) -> list[dict]:
        """Serialization: [{"exponent": [doubled ints], "re": .., "im": ..}] in lex order."""
        return [
            {"exponent": list(exp), "re": c.real, "im": c.imag} for exp, c in self.terms()
        ]

    @classmethod
    def from_records(cls, rank: int, records: Iterable[Mapping]) -> "TorusSeries":
        terms: dict[Exponent, complex] = {}
        for rec in records:
            exp = tuple(int(x) for x in rec["exponent"])
            terms[exp] = terms.get(exp, 0j) + complex(rec["re"], rec["im"])
        return cls(rank, terms)

    def __repr__(self) -> str:
        inner = ", ".join(f"{e}: {c:.6g}" for e, c in self.terms()[:6])
        more = " ..." if len(self) > 6 else ""
        return f"TorusSeries(rank={self.rank}, {{{inner}{more}}})"
