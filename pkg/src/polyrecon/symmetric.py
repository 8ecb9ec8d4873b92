"""Power sums of eigenvalues from characteristic polynomial coefficients, with p-adic precision.

Throughout, ``b_k`` are the sign-alternating coefficients
``phi = x^n - b_1 x^{n-1} + b_2 x^{n-2} - ...`` (elementary symmetric
functions of the eigenvalues), with ``b_k = 0`` for ``k > n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Callable, Iterator, Sequence

from .errors import InconsistentDeckError, PrecisionError
from .poly import Poly, Zmod, substitute_neg_shift
from .series import SeriesPrefix, numerator_from_series

Z4 = Zmod(4)


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    @property
    def m(self) -> int:
        return sum(self.parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out

    def r(self, j: int) -> int:
        return self.parts.count(j)


def _parts(m: int, largest: int) -> Iterator[tuple[int, ...]]:
    if m == 0:
        yield ()
        return
    for first in range(min(m, largest), 0, -1):
        for rest in _parts(m - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _partition_tuple(m: int) -> tuple[Partition, ...]:
    return tuple(Partition(p) for p in _parts(m, m))


def partitions(m: int) -> Iterator[Partition]:
    """Partitions of ``m`` in reverse-lexicographic order, largest part first."""
    if m < 1:
        raise ValueError("m must be positive")
    return iter(_partition_tuple(m))


@lru_cache(maxsize=None)
def _terms(m: int) -> tuple[tuple[int, tuple[tuple[int, int], ...]], ...]:
    """``(signed coefficient, ((j, r_j), ...))`` for every partition of ``m``."""
    out = []
    for lam in _partition_tuple(m):
        k = lam.k
        mult = lam.multiplicities
        num = m * factorial(k - 1)
        den = 1
        for r in mult.values():
            den *= factorial(r)
        coef, rem = divmod(num, den)
        assert rem == 0, f"non-integral coefficient for {lam.parts}"
        sign = -1 if (m + k) % 2 else 1
        out.append((sign * coef, tuple(sorted(mult.items()))))
    return tuple(out)


def partition_coefficient(lam: Partition) -> int:
    """``m (k-1)! / prod_j r_j!`` for the partition."""
    num = lam.m * factorial(lam.k - 1)
    den = 1
    for r in lam.multiplicities.values():
        den *= factorial(r)
    return num // den


def trace_from_coeffs(m: int, b: Sequence[int]) -> int:
    """``tr A^m`` as the partition sum over ``lambda |- m`` in ``b_1, b_2, ...``.

    ``b`` lists ``b_1, b_2, ...``; missing entries count as zero.
    """
    if m < 1:
        raise ValueError("m must be positive")
    nb = len(b)
    total = 0
    for coef, mult in _terms(m):
        term = coef
        for j, r in mult:
            if j > nb:
                term = 0
                break
            x = b[j - 1]
            if not x:
                term = 0
                break
            term *= x if r == 1 else x ** r
        total += term
    return total


def valuation(m: int, p: int) -> int | float:
    """``v_p(m)``; ``inf`` for zero."""
    if m == 0:
        return float("inf")
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


@dataclass(frozen=True)
class ResiduePadic:
    """``value`` known modulo ``p ** e``."""

    value: int
    p: int
    e: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p ** self.e)

    @property
    def modulus(self) -> int:
        return self.p ** self.e

    def at(self, e: int) -> int:
        """Residue modulo ``p ** e``; fails if more precision is requested than held."""
        if e > self.e:
            raise PrecisionError(f"value known mod {self.p}^{self.e}, mod {self.p}^{e} requested")
        return self.value % self.p ** e

    def __eq__(self, other):
        if isinstance(other, int):
            return (self.value - other) % self.modulus == 0
        if isinstance(other, ResiduePadic):
            return (self.p, self.e, self.value) == (other.p, other.e, other.value)
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p, self.e))


Residue2adic = ResiduePadic


def traces_mod(b: Sequence[int], p: int, l: int, k: int | None = None) -> list[ResiduePadic]:
    """``tr A^m (mod p^(v_p(m) + l))`` for ``m = 1..k`` from ``b_j (mod p^l)``.

    ``b`` lists ``b_1, ...`` (zero beyond its length); ``k`` defaults to
    ``len(b)``.  The ``b``'s are lifted by their canonical residues.
    """
    mod = p ** l
    lifted = [x % mod for x in b]
    k = len(b) if k is None else k
    out = []
    for m in range(1, k + 1):
        e = valuation(m, p) + l
        out.append(ResiduePadic(trace_from_coeffs(m, lifted), p, e))
    return out


def coeffs_from_traces(traces: Sequence[ResiduePadic | int], p: int, l: int) -> list[int]:
    """``b_1, ..., b_k (mod p^l)`` from ``tr A^m (mod p^(v_p(m) + l))``, ``m = 1..k``."""
    mod = p ** l
    b: list[int] = []
    for m, tr in enumerate(traces, start=1):
        v = valuation(m, p)
        e = v + l
        value = tr.at(e) if isinstance(tr, ResiduePadic) else tr
        rest = trace_from_coeffs(m, b)  # b_m = 0 here
        # the one-part partition contributes (-1)^(m+1) m b_m
        scaled = (value - rest) * (1 if m % 2 else -1) % p ** e
        if scaled % p ** v:
            raise InconsistentDeckError(f"trace {m} is inconsistent with the lower coefficients")
        unit = m // p ** v
        b.append(scaled // p ** v * pow(unit, -1, mod) % mod)
    return b


def gram_walk_mod4(m: int, trace_lookup: Callable[[int], ResiduePadic | int]) -> int:
    """``1^T A^m 1 (mod 4)`` from traces.

    With ``m = 2^t (2s+1)`` the sum
    ``tr A^{2m} + sum_{l=0}^{t} 2^{t-l} tr A^{2^l (2s+1)}`` is ``2^t`` times
    the answer modulo ``2^(t+2)``.  Individual terms may not be divisible
    by their powers of two, only the total is.
    """
    if m < 1:
        raise ValueError("m must be positive")
    t = valuation(m, 2)
    odd = m >> t
    e = t + 2

    def get(k, prec):
        tr = trace_lookup(k)
        return tr.at(prec) if isinstance(tr, ResiduePadic) else tr % 2 ** prec

    total = get(2 * m, e)
    for l in range(t + 1):
        total += 2 ** (t - l) * get(odd << l, l + 2)
    total %= 2 ** e
    if total % 2 ** t:
        raise InconsistentDeckError(f"walk sum for m={m} is not divisible by 2^{t}")
    return total >> t


def walks_mod4_from_b(b: Sequence[int], n: int, count: int) -> SeriesPrefix:
    """``1^T A^k 1 (mod 4)`` for ``k < count`` from ``b (mod 4)``."""
    traces = traces_mod(b, 2, 2, 2 * (count - 1))
    w = [n % 4] + [gram_walk_mod4(k, lambda j: traces[j - 1]) for k in range(1, count)]
    return SeriesPrefix(tuple(w), Z4)


@lru_cache(maxsize=4096)
def _complement_mod4(coeffs: tuple[int, ...]) -> tuple[int, ...]:
    n = len(coeffs) - 1
    phi = Poly(coeffs, Z4)
    w = walks_mod4_from_b(phi.bs, n, n)
    num = numerator_from_series(w, phi, n)
    shifted = Poly((0,) + num, Z4) + phi
    return tuple(substitute_neg_shift(shifted, n).coeffs)


def complement_charpoly_mod4(phi: Poly | Sequence[int]) -> Poly:
    """``phi(complement G) (mod 4)`` from ``phi(G) (mod 4)``."""
    coeffs = phi.coeffs if isinstance(phi, Poly) else tuple(phi)
    coeffs = tuple(int(c) % 4 for c in coeffs)
    if coeffs[0] != 1:
        raise ValueError("polynomial must be monic")
    if len(coeffs) == 1:
        return Poly((1,), Z4)
    return Poly(_complement_mod4(coeffs), Z4)
