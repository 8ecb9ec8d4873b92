"""Reconstruction of ``(phi(G), phi(complement G))`` from (generalized) polynomial decks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .errors import (
    InconsistentDeckError,
    InsufficientDataError,
    NonSquareError,
    NotApplicableError,
    RankDeficientError,
)
from .linalg import rank_q, solve
from .poly import Deck, Poly, integrate_cards, substitute_neg_shift
from .series import (
    SeriesPrefix,
    hankel_invertible,
    hankel_tail_solve,
    numerator_from_series,
    ratio_prefix,
    sqrt_prefix,
)
from .walks import total_walks_from_pair, wi_squared_prefix

SUCCESS = "success"
RANK_TOO_LOW = "rank_too_low"
NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class ReconstructionOutcome:
    status: str
    phi: Poly | None = None
    phi_complement: Poly | None = None
    threshold: int | None = None
    reason: str | None = None

    @classmethod
    def success(cls, phi: Poly, phi_complement: Poly) -> ReconstructionOutcome:
        return cls(SUCCESS, phi, phi_complement)

    @classmethod
    def rank_too_low(cls, threshold: int) -> ReconstructionOutcome:
        return cls(RANK_TOO_LOW, threshold=threshold,
                   reason=f"rank of the walk matrix is below {threshold}")

    @classmethod
    def not_applicable(cls, reason: str) -> ReconstructionOutcome:
        return cls(NOT_APPLICABLE, reason=reason)

    @property
    def ok(self) -> bool:
        return self.status == SUCCESS

    @property
    def pair(self) -> tuple[Poly, Poly]:
        if not self.ok:
            raise ValueError(f"no pair for outcome {self.status}")
        return self.phi, self.phi_complement

    def to_json(self) -> dict:
        out: dict = {"status": self.status}
        if self.phi is not None:
            out["phi"] = self.phi.to_json()
            out["phi_complement"] = self.phi_complement.to_json()
        if self.threshold is not None:
            out["threshold"] = self.threshold
        if self.reason is not None:
            out["reason"] = self.reason
        return out


def complement_from_walks(phi: Poly, w: SeriesPrefix) -> Poly:
    """``phibar`` from ``phi`` and the first ``n`` total walk counts."""
    n = phi.degree
    num = numerator_from_series(w, phi, n)
    if num[0] != n:
        raise InconsistentDeckError(f"w_0 = {num[0]} but the graph has {n} vertices")
    shifted = Poly((0,) + num, phi.ring) + phi
    return substitute_neg_shift(shifted, n)


def _gram_extend(rows: list[SeriesPrefix]) -> SeriesPrefix:
    """``1^T A^k 1 = sum_i (e_i^T A^a 1)(e_i^T A^{k-a} 1)`` for every ``k`` the rows reach."""
    length = len(rows[0])
    out = []
    for k in range(2 * length - 1):
        a = min(k, length - 1)
        out.append(sum(r[a] * r[k - a] for r in rows))
    return SeriesPrefix(tuple(out))


def reconstruct_general(d: Deck, s: int | None = None, t: int | None = None) -> ReconstructionOutcome:
    """Recover the pair from the top ``s`` co-card and top ``t`` card coefficients.

    Requires ``s <= t <= n`` and ``s + t/2 >= n + 2``; the bound is waived
    for a complete generalized deck, where the walk series bootstrap covers
    ``n = 3`` as well.  Returns ``rank_too_low(n + 1 - t)`` when the walk
    matrix has rank below ``n + 1 - t``.
    """
    if not d.generalized:
        raise ValueError("reconstruction needs a generalized deck")
    if d.modulus is not None:
        raise ValueError("reconstruction needs exact integer cards")
    n = d.n
    s = d.s if s is None else s
    t = d.t if t is None else t
    if s > d.s or t > d.t:
        raise InsufficientDataError(f"deck carries s={d.s}, t={d.t}; asked for s={s}, t={t}")
    if not 1 <= s <= t <= n:
        raise ValueError(f"need 1 <= s <= t <= n, got s={s}, t={t}, n={n}")
    full = s == t == n
    if 2 * s + t < 2 * n + 4 and not full:
        raise ValueError(f"s + t/2 >= n + 2 fails for s={s}, t={t}, n={n}")

    cards = [c[:t] for c in d.cards]
    co_cards = [c[:s] for c in d.co_cards]
    phi_top = integrate_cards(cards, n)
    phibar_top = integrate_cards(co_cards, n)

    wG = total_walks_from_pair(phi_top, phibar_top, s - 1, n=n)
    if full:
        wGi = [total_walks_from_pair(Poly(c), Poly(cb), 2 * n + 2) for c, cb in zip(cards, co_cards)]
    else:
        wGi = [total_walks_from_pair(c, cb, s - 1, n=n - 1) for c, cb in zip(cards, co_cards)]
    wii = [ratio_prefix(c, phi_top, t) for c in cards]

    while True:
        m = min(len(wG), len(wGi[0]), len(wii[0]))
        rows = []
        for i in range(n):
            try:
                rows.append(sqrt_prefix(wi_squared_prefix(wG, wGi[i], wii[i]), 1))
            except NonSquareError as exc:
                raise InconsistentDeckError(f"card {i}: {exc}") from exc
        extended = _gram_extend(rows) if m else wG
        if extended.coeffs[:len(wG)] != wG.coeffs[:len(extended)]:
            raise InconsistentDeckError("walk counts from the deck disagree with the Gram identity")
        if len(extended) <= len(wG):
            break
        wG = extended

    need = 2 * n - t + 1
    if len(wG) < need:
        raise InsufficientDataError(f"only {len(wG)} walk counts recovered, {need} needed")
    size = n + 1 - t
    if not hankel_invertible(wG, size):
        return ReconstructionOutcome.rank_too_low(size)
    tail = hankel_tail_solve(wG, n, phi_top[1:t])
    phi = Poly(phi_top[:t] + tail)
    phibar = complement_from_walks(phi, wG)
    if phibar.coeffs[:s] != tuple(phibar_top):
        raise InconsistentDeckError("reconstructed complement disagrees with the co-cards")
    return ReconstructionOutcome.success(phi, phibar)


def full_truncation(n: int) -> int:
    """Co-card coefficients needed when the cards are complete."""
    return min(ceil((n + 4) / 2), n)


def controllable_truncation(n: int) -> int:
    return min(ceil((2 * n + 4) / 3), n)


def reconstruct_full(d: Deck) -> tuple[Poly, Poly]:
    """Pair from complete cards and co-cards truncated to ``ceil((n+4)/2)`` coefficients."""
    if d.n < 3:
        raise ValueError("reconstruction needs n >= 3")
    s = full_truncation(d.n)
    outcome = reconstruct_general(d, s=s, t=d.n)
    if not outcome.ok:
        raise InconsistentDeckError(f"unexpected outcome {outcome.status} with complete cards")
    return outcome.pair


def reconstruct_controllable(d: Deck) -> ReconstructionOutcome:
    """Both families truncated to ``ceil((2n+4)/3)``; succeeds iff rank W >= floor((n-1)/3)."""
    if d.n < 3:
        raise ValueError("reconstruction needs n >= 3")
    k = controllable_truncation(d.n)
    return reconstruct_general(d, s=k, t=k)


# plain decks: C4-free graphs with walk matrix of rank at most 2 ---------

def _plain_basics(d: Deck):
    if d.card_truncation is not None:
        raise InsufficientDataError("complete cards are required")
    if d.modulus is not None:
        raise ValueError("exact integer cards are required")
    n = d.n
    phi_top = integrate_cards(d.cards, n)
    m = -phi_top[2] if n >= 2 else 0
    degrees = [m - (-card[2] if n >= 3 else 0) for card in d.cards]
    return phi_top, degrees


def count_c4_from_deck(d: Deck) -> int:
    """Number of 4-cycles, from ``tr A^4 = 8 q + sum_i d_i (2 d_i - 1)``."""
    if d.n < 5:
        raise NotApplicableError("tr A^4 is only visible in the deck for n >= 5")
    n = d.n
    phi_top, degrees = _plain_basics(d)
    card_sum = Poly(tuple(sum(col) for col in zip(*d.cards)))
    traces = ratio_prefix(card_sum, phi_top, n)
    q, r = divmod(traces[4] - sum(x * (2 * x - 1) for x in degrees), 8)
    if r or q < 0:
        raise InconsistentDeckError(f"4-cycle count {Fraction(traces[4] - sum(x * (2 * x - 1) for x in degrees), 8)} is not a non-negative integer")
    return q


def reconstruct_c4free_lowrank(d: Deck) -> ReconstructionOutcome:
    """Pair from a plain deck when the graph has no 4-cycles and rank W <= 2."""
    n = d.n
    try:
        q = count_c4_from_deck(d)
    except NotApplicableError as exc:
        return ReconstructionOutcome.not_applicable(str(exc))
    if q > 0:
        return ReconstructionOutcome.not_applicable("has C4")
    phi_top, degrees = _plain_basics(d)
    # without 4-cycles, closed 4-walks at i are the 2-walks from i plus d_i(d_i - 1) back-and-forths
    col2 = []
    for i, card in enumerate(d.cards):
        wii = ratio_prefix(card, phi_top, 5)
        col2.append(wii[4] - degrees[i] * (degrees[i] - 1))
    if sum(col2) != sum(x * x for x in degrees):
        raise InconsistentDeckError("two-step walk counts do not sum to the sum of squared degrees")
    ones = [1] * n
    cols = [ones, list(degrees), col2]
    rank = rank_q([list(r) for r in zip(*cols)])
    if rank > 2:
        return ReconstructionOutcome.not_applicable("rank > 2")

    length = 2 * n + 1
    if rank == 1:
        r = degrees[0]
        cols = [[r ** k] * n for k in range(length)]
    else:
        alpha, beta = solve([[a, 1] for a in degrees], col2)
        for k in range(3, length):
            nxt = [alpha * a + beta * b for a, b in zip(cols[k - 1], cols[k - 2])]
            if any(Fraction(x).denominator != 1 for x in nxt):
                raise InconsistentDeckError("walk recurrence produced non-integer counts")
            cols.append([int(x) for x in nxt])
    w = SeriesPrefix(tuple(sum(c) for c in cols))
    try:
        tail = hankel_tail_solve(w, n, phi_top[1:])
    except RankDeficientError as exc:  # w_0 = n is never zero
        raise InconsistentDeckError(str(exc)) from exc
    phi = Poly(phi_top + tail)
    return ReconstructionOutcome.success(phi, complement_from_walks(phi, w))
