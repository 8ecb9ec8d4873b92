"""Walk generating functions and walk matrices.

``w_ii(x) = phi(G - i) / phi(G)`` counts closed walks at ``i``;
``w(x) = ((-1)^n phibar(-x-1) - phi(x)) / phi(x)`` counts all walks; and the
Godsil-McKay identity ``w(G) = w(G - i) + w_i^2 / w_ii`` ties them to the
walks ``w_i`` starting at ``i`` (row ``i`` of the walk matrix).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InsufficientDataError, NonSquareError, InconsistentDeckError
from .graph import Graph, walk_counts
from .linalg import rank_f2, rank_q
from .poly import ZZ, Deck, Poly, Ring, neg_shift_top, substitute_neg_shift
from .series import SeriesPrefix, mul, ratio_prefix, sqrt_prefix, sub


@dataclass(frozen=True)
class WalkMatrix:
    """Columns ``1, A1, ..., A^{n-1} 1``."""

    columns: tuple[tuple[int, ...], ...]
    ring: Ring = ZZ

    @property
    def n(self) -> int:
        return len(self.columns)

    @property
    def rows(self) -> list[tuple[int, ...]]:
        return [tuple(col[i] for col in self.columns) for i in range(self.n)]

    def reduce(self, modulus: int) -> WalkMatrix:
        from .poly import Zmod

        return WalkMatrix(tuple(tuple(x % modulus for x in col) for col in self.columns), Zmod(modulus))

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in col] for col in self.columns]


def walk_matrix(g: Graph) -> WalkMatrix:
    return WalkMatrix(tuple(tuple(c) for c in walk_counts(g, g.n - 1)))


def rank_Q(w: WalkMatrix) -> int:
    return rank_q([list(r) for r in w.rows])


def rank_F2(w: WalkMatrix) -> int:
    return rank_f2(w.columns)


def wii_prefix(card, phi_top, m: int, ring: Ring = ZZ) -> SeriesPrefix:
    """First ``m`` coefficients of the closed-walk series at the vertex whose card is given."""
    if isinstance(card, Poly) and isinstance(phi_top, Poly) and card.degree != phi_top.degree - 1:
        raise ValueError(f"card degree {card.degree} does not match phi degree {phi_top.degree}")
    if isinstance(card, Poly):
        ring = card.ring
    return ratio_prefix(card, phi_top, m, ring)


def walk_numerator(phi, phi_bar, n: int | None = None, ring: Ring = ZZ):
    """``(-1)^n phibar(-x-1) - phi(x)`` as a polynomial of nominal degree ``n - 1``.

    Returns a :class:`Poly` when both inputs are full polynomials, otherwise
    the tuple of top coefficients that the truncated inputs determine.
    """
    if isinstance(phi, Poly) and isinstance(phi_bar, Poly):
        if phi.degree != phi_bar.degree:
            raise ValueError("phi and phi_bar must have the same degree")
        n = phi.degree
        num = substitute_neg_shift(phi_bar, n) - phi
        if num.coeffs[0] != 0:
            raise InconsistentDeckError("phi and phi_bar are not both monic")
        return Poly(num.coeffs[1:] or (0,), phi.ring)
    if n is None:
        n = phi.degree if isinstance(phi, Poly) else phi_bar.degree if isinstance(phi_bar, Poly) else None
    if n is None:
        raise ValueError("n is required for truncated inputs")
    if isinstance(phi, Poly):
        ring = phi.ring
    elif isinstance(phi_bar, Poly):
        ring = phi_bar.ring
    top_bar = phi_bar.coeffs if isinstance(phi_bar, Poly) else tuple(phi_bar)
    top_phi = phi.coeffs if isinstance(phi, Poly) else tuple(phi)
    k = min(len(top_bar), len(top_phi))
    shifted = neg_shift_top(top_bar[:k], n, n, ring)
    if ring(shifted[0] - top_phi[0]) != 0:
        raise InconsistentDeckError("phi and phi_bar are not both monic")
    return tuple(ring(shifted[j] - top_phi[j]) for j in range(1, k))


def total_walks_from_pair(phi, phi_bar, m: int, n: int | None = None, ring: Ring = ZZ) -> SeriesPrefix:
    """First ``m`` coefficients of ``w(x)``: ``1^T A^k 1`` for ``k < m``.

    With ``phi_bar`` known to its top ``s`` coefficients only, at most
    ``s - 1`` coefficients are available.
    """
    if isinstance(phi, Poly):
        ring, n = phi.ring, phi.degree
    num = walk_numerator(phi, phi_bar, n, ring)
    if not isinstance(num, Poly) and m > len(num):
        raise InsufficientDataError(f"truncated inputs determine {len(num)} walk counts, {m} requested")
    return ratio_prefix(num, phi, m, ring)


def wi_squared_prefix(wG: SeriesPrefix, wG_minus_i: SeriesPrefix, wii: SeriesPrefix) -> SeriesPrefix:
    """``(w(G) - w(G - i)) * w_ii``, which equals ``w_i^2``."""
    m = min(len(wG), len(wG_minus_i), len(wii))
    if m == 0:
        raise InsufficientDataError("empty series")
    return mul(sub(wG.take(m), wG_minus_i.take(m)), wii.take(m))


def walk_matrix_from_generalized_deck(d: Deck, pair: tuple[Poly, Poly]) -> WalkMatrix:
    """Walk matrix of any graph with this generalized deck and ``(phi, phibar)`` pair.

    Row ``i`` is read off the square root of ``w_i^2`` and follows card order.
    """
    phi, phi_bar = pair
    n = d.n
    if phi.degree != n:
        raise ValueError("pair degree does not match the deck")
    wG = total_walks_from_pair(phi, phi_bar, n)
    rows = []
    for i in range(n):
        card, co = d.card_poly(i), d.co_card_poly(i)
        wGi = total_walks_from_pair(card, co, n)
        wii = wii_prefix(card, phi, n)
        try:
            wi = sqrt_prefix(wi_squared_prefix(wG, wGi, wii), 1)
        except NonSquareError as exc:
            raise InconsistentDeckError(f"card {i}: {exc}") from exc
        rows.append(tuple(wi))
    return WalkMatrix(tuple(tuple(rows[i][k] for i in range(n)) for k in range(n)))
