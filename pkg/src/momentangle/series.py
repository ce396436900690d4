"""Exact graded arithmetic: truncated integer series and shuffle signs.

All Hilbert/Poincare-style comparisons in the package go through
:class:`TruncatedSeries`.  Coefficients are integers by design: every series
in scope is a graded dimension count, so a fractional or negative value
signals a bug or a failed factorization and is raised, never rounded.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction


class SeriesError(ValueError):
    """Invalid series operation (constant-term or integrality violations)."""


class FactorizationError(SeriesError):
    """A claimed series factorization fails; carries the first bad degree."""

    def __init__(self, degree, message):
        self.degree = degree
        super().__init__(f"degree {degree}: {message}")


@dataclass(frozen=True)
class TruncatedSeries:
    """Integer power series truncated above ``cutoff``."""

    cutoff: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.cutoff + 1:
            raise SeriesError(
                f"expected {self.cutoff + 1} coefficients, got {len(self.coeffs)}"
            )

    @classmethod
    def from_coeffs(cls, coeffs, cutoff=None):
        coeffs = list(coeffs)
        if cutoff is None:
            cutoff = len(coeffs) - 1
        coeffs = coeffs[: cutoff + 1] + [0] * (cutoff - len(coeffs) + 1)
        return cls(cutoff=cutoff, coeffs=tuple(coeffs))

    @classmethod
    def zero(cls, cutoff):
        return cls(cutoff=cutoff, coeffs=(0,) * (cutoff + 1))

    @classmethod
    def one(cls, cutoff):
        return cls.monomial(0, cutoff)

    @classmethod
    def monomial(cls, degree, cutoff, coeff=1):
        coeffs = [0] * (cutoff + 1)
        if 0 <= degree <= cutoff:
            coeffs[degree] = coeff
        return cls(cutoff=cutoff, coeffs=tuple(coeffs))

    def __getitem__(self, degree):
        return self.coeffs[degree]

    def truncate(self, cutoff):
        if cutoff >= self.cutoff:
            return self
        return TruncatedSeries(cutoff=cutoff, coeffs=self.coeffs[: cutoff + 1])

    def _align(self, other):
        cutoff = min(self.cutoff, other.cutoff)
        return self.truncate(cutoff), other.truncate(cutoff), cutoff

    def __add__(self, other):
        a, b, cutoff = self._align(other)
        return TruncatedSeries(
            cutoff=cutoff, coeffs=tuple(x + y for x, y in zip(a.coeffs, b.coeffs))
        )

    def __sub__(self, other):
        a, b, cutoff = self._align(other)
        return TruncatedSeries(
            cutoff=cutoff, coeffs=tuple(x - y for x, y in zip(a.coeffs, b.coeffs))
        )

    def __mul__(self, other):
        a, b, cutoff = self._align(other)
        out = [0] * (cutoff + 1)
        for i, x in enumerate(a.coeffs):
            if x == 0:
                continue
            for j in range(cutoff + 1 - i):
                y = b.coeffs[j]
                if y:
                    out[i + j] += x * y
        return TruncatedSeries(cutoff=cutoff, coeffs=tuple(out))

    def pow(self, exponent):
        result = TruncatedSeries.one(self.cutoff)
        for _ in range(exponent):
            result = result * self
        return result

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)


def geometric_series(g):
    """1/(1-g) truncated at g's cutoff; g must have zero constant term."""
    if g.coeffs[0] != 0:
        raise SeriesError(f"nonzero constant term {g.coeffs[0]} in geometric_series")
    cutoff = g.cutoff
    out = [0] * (cutoff + 1)
    out[0] = 1
    # out[d] = sum_{i>=1} g[i] * out[d-i]
    for d in range(1, cutoff + 1):
        out[d] = sum(g.coeffs[i] * out[d - i] for i in range(1, d + 1))
    return TruncatedSeries(cutoff=cutoff, coeffs=tuple(out))


def series_div_exact(numerator, denominator):
    """numerator / denominator, requiring an integer result.

    Raises :class:`FactorizationError` at the first fractional coefficient.
    """
    a, b, cutoff = numerator._align(denominator)
    if b.coeffs[0] == 0:
        raise SeriesError("division by a series with zero constant term")
    out = []
    for d in range(cutoff + 1):
        acc = Fraction(a.coeffs[d])
        for i in range(1, d + 1):
            if b.coeffs[i]:
                acc -= b.coeffs[i] * out[d - i]
        q = acc / b.coeffs[0]
        out.append(q)
    ints = []
    for d, q in enumerate(out):
        if q.denominator != 1:
            raise FactorizationError(d, f"non-integer quotient coefficient {q}")
        ints.append(int(q))
    return TruncatedSeries(cutoff=cutoff, coeffs=tuple(ints))


def free_gc_series(generators, convention, cutoff):
    """Graded dimension series of a free graded-commutative algebra.

    ``generators`` is an iterable of (degree, multiplicity) pairs.  Under
    ``exterior-on-odd``, odd-degree generators contribute (1+t^d) factors and
    even-degree ones 1/(1-t^d); under ``polynomial-all`` every generator is
    polynomial.
    """
    if convention not in ("exterior-on-odd", "polynomial-all"):
        raise SeriesError(f"unknown convention {convention!r}")
    result = TruncatedSeries.one(cutoff)
    for degree, mult in generators:
        if degree < 1 or mult < 1:
            raise SeriesError(f"bad generator entry ({degree}, {mult})")
        if convention == "exterior-on-odd" and degree % 2 == 1:
            factor = TruncatedSeries.one(cutoff) + TruncatedSeries.monomial(
                degree, cutoff
            )
        else:
            factor = geometric_series(TruncatedSeries.monomial(degree, cutoff))
        result = result * factor.pow(mult)
    return result


def type2_shuffles(I):
    """All splits (J, J') of I into nonempty increasing blocks with J[0] = I[0].

    Exactly 2^(len(I)-1) - 1 pairs, ordered by J lexicographically.
    """
    I = tuple(I)
    if len(I) < 2:
        raise SeriesError(f"need at least two entries, got {I}")
    head, rest = I[0], I[1:]
    pairs = []
    for r in range(0, len(rest)):
        for tail in itertools.combinations(rest, r):
            J = (head,) + tail
            Jset = set(J)
            Jp = tuple(v for v in rest if v not in Jset)
            if Jp:
                pairs.append((J, Jp))
    pairs.sort(key=lambda p: p[0])
    return pairs


def shuffle_sign(I, J, Jp, z_degrees):
    """Koszul sign epsilon in {0,1} of the reordering z_I -> z_J z_J'.

    ``z_degrees`` maps each vertex of I to its symbol degree.  The sign is
    the parity of the transposed pairs (one element of J' moved past one of
    J) whose symbol degrees are both odd.
    """
    I, J, Jp = tuple(I), tuple(J), tuple(Jp)
    if tuple(sorted(J + Jp)) != tuple(sorted(I)) or not J or not Jp or J[0] != I[0]:
        raise SeriesError(f"({J}, {Jp}) is not a type-II shuffle of {I}")
    eps = 0
    for x in J:
        if z_degrees[x] % 2 == 0:
            continue
        for y in Jp:
            if y < x and z_degrees[y] % 2 == 1:
                eps += 1
    return eps % 2
