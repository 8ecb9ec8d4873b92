"""Truncated formal series ``S(x) = sum_k s_k / x^(k+1)``.

A :class:`SeriesPrefix` holds ``s_0, ..., s_{m-1}`` and nothing more; every
operation returns exactly as many coefficients as its inputs determine and
raises :class:`InsufficientDataError` instead of padding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    InconsistentDeckError,
    InsufficientDataError,
    NonSquareError,
    NotInvertibleError,
    RankDeficientError,
)
from .linalg import determinant, solve
from .poly import QQ, ZZ, Poly, Ring, Zmod

Z4 = Zmod(4)
Z2 = Zmod(2)


@dataclass(frozen=True)
class SeriesPrefix:
    coeffs: tuple
    ring: Ring = ZZ

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.ring(c) for c in self.coeffs))

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def take(self, m: int) -> SeriesPrefix:
        if m > len(self.coeffs):
            raise InsufficientDataError(f"requested {m} coefficients, only {len(self.coeffs)} known")
        return SeriesPrefix(self.coeffs[:m], self.ring)

    def reduce(self, modulus: int) -> SeriesPrefix:
        return SeriesPrefix(self.coeffs, Zmod(modulus))

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __mul__(self, other):
        return mul(self, other)


def _same_ring(s: SeriesPrefix, t: SeriesPrefix) -> Ring:
    if s.ring != t.ring:
        raise ValueError(f"ring mismatch: {s.ring} vs {t.ring}")
    return s.ring


def add(s: SeriesPrefix, t: SeriesPrefix) -> SeriesPrefix:
    ring = _same_ring(s, t)
    return SeriesPrefix(tuple(a + b for a, b in zip(s, t)), ring)


def sub(s: SeriesPrefix, t: SeriesPrefix) -> SeriesPrefix:
    ring = _same_ring(s, t)
    return SeriesPrefix(tuple(a - b for a, b in zip(s, t)), ring)


def mul(s: SeriesPrefix, t: SeriesPrefix) -> SeriesPrefix:
    """Product; ``m`` known coefficients of each factor give ``m + 1`` of the product."""
    ring = _same_ring(s, t)
    m = min(len(s), len(t))
    out = [0]
    for k in range(1, m + 1):
        out.append(sum(s[i] * t[k - 1 - i] for i in range(k)))
    return SeriesPrefix(tuple(out), ring)


def sqrt_prefix(u: SeriesPrefix, s0) -> SeriesPrefix:
    """Recover ``m - 1`` coefficients of ``S`` from ``m`` coefficients of ``S^2`` and ``s_0``.

    Over the integers every step divides by ``2 s_0``; a remainder means the
    input is not the square of an integer series.
    """
    ring = u.ring
    m = len(u)
    if m < 2:
        raise InsufficientDataError("need at least two coefficients of S^2")
    if u[0] != 0:
        raise NonSquareError("the first coefficient of a square series is zero")
    if s0 == 0:
        raise ValueError("s_0 must be nonzero")
    s0 = ring(s0)
    if u[1] != s0 * s0:
        raise NonSquareError(f"u_1 = {u[1]} but s_0^2 = {s0 * s0}")
    s = [s0]
    two_s0 = 2 * s0
    for k in range(2, m):
        rest = u[k] - sum(s[i] * s[k - 1 - i] for i in range(1, k - 1))
        try:
            s.append(ring.div(rest, two_s0))
        except NotInvertibleError as exc:
            raise NonSquareError(f"coefficient {k} of S^2 is not compatible with a square") from exc
    return SeriesPrefix(tuple(s), ring)


def deconvolve(u: SeriesPrefix, s: SeriesPrefix) -> SeriesPrefix:
    """``T`` from ``U = S * T`` when ``s_0`` is a unit: ``m + 1`` coefficients of ``U`` give ``m`` of ``T``."""
    ring = _same_ring(u, s)
    m = min(len(u) - 1, len(s))
    if m < 1:
        raise InsufficientDataError("need at least two coefficients of the product")
    if u[0] != 0:
        raise InconsistentDeckError("the first coefficient of a product series is zero")
    inv = ring.inverse(s[0])
    t = []
    for k in range(1, m + 1):
        rest = u[k] - sum(s[i] * t[k - 1 - i] for i in range(1, k))
        t.append(ring(rest * inv))
    return SeriesPrefix(tuple(t), ring)


def mul_mod4(s: SeriesPrefix, t: SeriesPrefix) -> SeriesPrefix:
    return mul(s.reduce(4), t.reduce(4))


def deconvolve_mod4(u: SeriesPrefix, s: SeriesPrefix) -> SeriesPrefix:
    if s[0] % 2 == 0:
        raise NotInvertibleError(f"s_0 = {s[0]} is not invertible modulo 4")
    return deconvolve(u.reduce(4), s.reduce(4))


def square_mod2_to_mod4(s: SeriesPrefix) -> SeriesPrefix:
    """``m + 1`` coefficients of ``S^2 (mod 4)`` from ``m`` coefficients of ``S (mod 2)``.

    Squares and doubles mod 4 only depend on residues mod 2, so convolving
    the 0/1 representatives is enough.
    """
    return mul(SeriesPrefix(tuple(c % 2 for c in s), Z4), SeriesPrefix(tuple(c % 2 for c in s), Z4))


def sqrt_mod4_to_mod2(u: SeriesPrefix) -> SeriesPrefix:
    """Inverse of :func:`square_mod2_to_mod4` for series with ``s_0`` odd."""
    u = u.reduce(4)
    m = len(u) - 1
    if m < 1:
        raise InsufficientDataError("need at least two coefficients of S^2")
    if u[0] != 0:
        raise NonSquareError("the first coefficient of a square series is zero")
    if u[1] != 1:
        raise NonSquareError(f"u_1 = {u[1]} (mod 4) is not the square of an odd number")
    s = [1]
    for k in range(2, m + 1):
        rest = (u[k] - sum(s[i] * s[k - 1 - i] for i in range(1, k - 1))) % 4
        if rest % 2:
            raise NonSquareError(f"coefficient {k} of S^2 (mod 4) is odd where it must be even")
        s.append(rest // 2)
    return SeriesPrefix(tuple(s), Z2)


# polynomial ratios ------------------------------------------------------

def _coeff_source(p, name: str):
    """Coefficient accessor: a Poly is known in full, a sequence only as far as it goes."""
    if isinstance(p, Poly):
        coeffs = p.coeffs

        def get(k):
            return coeffs[k] if k < len(coeffs) else 0
        return get, None
    coeffs = tuple(p)

    def get(k):
        if k >= len(coeffs):
            raise InsufficientDataError(f"{name} is known to {len(coeffs)} coefficients, {k + 1} needed")
        return coeffs[k]
    return get, len(coeffs)


def ratio_prefix(p, q, m: int, ring: Ring = ZZ) -> SeriesPrefix:
    """First ``m`` coefficients of ``p/q`` where ``q`` is monic of degree ``n``.

    ``p`` is read as a polynomial of nominal degree ``n - 1`` and ``q`` from
    its leading coefficient down.  Either may be a full :class:`Poly` or a
    sequence of top coefficients; ``m`` may not exceed what a truncated
    sequence supports.
    """
    a, _ = _coeff_source(p, "numerator")
    b, _ = _coeff_source(q, "denominator")
    if ring(b(0)) != ring(1):
        raise ValueError("denominator must be monic")
    s = []
    for k in range(m):
        s.append(ring(a(k) - sum(b(j) * s[k - j] for j in range(1, k + 1))))
    return SeriesPrefix(tuple(s), ring)


def numerator_from_series(s: SeriesPrefix, q, count: int) -> tuple:
    """Top ``count`` coefficients of ``p = q * S`` (the lower-triangular system, read forwards)."""
    b, _ = _coeff_source(q, "denominator")
    if count > len(s):
        raise InsufficientDataError(f"series known to {len(s)} coefficients, {count} needed")
    ring = s.ring
    return tuple(ring(sum(b(j) * s[k - j] for j in range(k + 1))) for k in range(count))


# Hankel systems ---------------------------------------------------------

def hankel_matrix(s: Sequence, size: int, offset: int = 0) -> list[list]:
    """``size x size`` matrix with entry ``(r, c) = s[offset + size - 1 + r - c]``."""
    return [[s[offset + size - 1 + r - c] for c in range(size)] for r in range(size)]


def hankel_invertible(s: SeriesPrefix | Sequence, size: int) -> bool:
    """Whether ``[s_{l-1} ... s_0; ...; s_{2l-2} ... s_{l-1}]`` is invertible over the fraction field."""
    if size == 0:
        return True
    if len(s) < 2 * size - 1:
        raise InsufficientDataError(f"a {size}x{size} Hankel matrix needs {2 * size - 1} coefficients")
    vals = [Fraction(x) for x in list(s)[:2 * size - 1]]
    return determinant(hankel_matrix(vals, size)) != 0


def hankel_tail_solve(s: SeriesPrefix | Sequence, n: int, known: Sequence) -> tuple:
    """Solve for ``b_t, ..., b_n`` in ``q = x^n + b_1 x^{n-1} + ... + b_n`` with ``q * S`` a polynomial.

    ``known`` is ``(b_1, ..., b_{t-1})``.  The rows are
    ``sum_j s_{n+r-j} b_j = 0`` for every ``r`` the prefix supports (at
    least ``n - t + 1`` of them); rows beyond the square block are checked
    for consistency.  Raises :class:`RankDeficientError` when the square
    block is singular.
    """
    ring = s.ring if isinstance(s, SeriesPrefix) else ZZ
    vals = list(s)
    t = len(known) + 1
    unknown = n - t + 1
    if unknown <= 0:
        return ()
    if len(vals) < 2 * n - t + 1:
        raise InsufficientDataError(f"need {2 * n - t + 1} series coefficients, have {len(vals)}")
    if not hankel_invertible(vals, unknown):
        raise RankDeficientError(f"{unknown}x{unknown} Hankel block is singular", unknown)
    bs = [1] + list(known)
    rows, rhs = [], []
    for r in range(len(vals) - n):
        rows.append([vals[n + r - j] for j in range(t, n + 1)])
        rhs.append(-sum(vals[n + r - j] * bs[j] for j in range(t)))
    x = solve(rows, rhs)
    if ring.exact and not ring.rational:
        if any(v.denominator != 1 for v in x):
            raise InconsistentDeckError("Hankel solution is not integral")
        return tuple(int(v) for v in x)
    return tuple(ring(v) for v in x)


__all__ = [
    "SeriesPrefix", "add", "sub", "mul", "sqrt_prefix", "deconvolve", "mul_mod4", "deconvolve_mod4",
    "square_mod2_to_mod4", "sqrt_mod4_to_mod2", "ratio_prefix", "numerator_from_series",
    "hankel_matrix", "hankel_invertible", "hankel_tail_solve", "QQ", "Z4", "Z2",
]
