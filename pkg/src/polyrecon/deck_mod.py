"""What the plain polynomial deck determines modulo 2 and 4.

The pipeline mirrors the order in which information becomes available:
co-cards mod 4 and closed walks give the first half of the walk series,
vertex-deleted walk data gives walk-matrix rows mod 2, and a mod-2
relation between walk-matrix columns closes the loop.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil

from .errors import InconsistentDeckError, NonSquareError, NotApplicableError
from .graph import Graph
from .linalg import f2_relation, rank_f2
from .poly import Deck, Poly, Zmod, deck, integrate_cards, neg_shift_top, substitute_neg_shift
from .series import (
    SeriesPrefix,
    deconvolve,
    mul,
    numerator_from_series,
    ratio_prefix,
    sqrt_mod4_to_mod2,
    square_mod2_to_mod4,
    sub,
)
from .symmetric import complement_charpoly_mod4, gram_walk_mod4, trace_from_coeffs, valuation
from .walks import total_walks_from_pair

Z2 = Zmod(2)
Z4 = Zmod(4)


@dataclass
class ModDeckData:
    n: int
    phi_top: tuple[int, ...]
    wii: list[SeriesPrefix]
    traces: list[int]
    card_pairs_mod4: list[tuple[Poly, Poly]]
    w_mod4: SeriesPrefix
    rows_mod2: list[SeriesPrefix]
    _walk_cache: dict = field(default_factory=dict, repr=False)

    @property
    def b(self) -> list[int]:
        """``b_1, ..., b_{n-1}`` (exact)."""
        return [(-c if k % 2 else c) for k, c in enumerate(self.phi_top)][1:]

    def columns_mod2(self) -> list[list[int]]:
        """Known columns ``A^k 1 (mod 2)``."""
        length = len(self.rows_mod2[0])
        return [[r[k] for r in self.rows_mod2] for k in range(length)]

    def w_minus(self, i: int, m: int) -> SeriesPrefix:
        key = (i, m)
        if key not in self._walk_cache:
            self._walk_cache[key] = _walks_of_pair_mod4(self.card_pairs_mod4[i], m)
        return self._walk_cache[key]


def _walks_of_pair_mod4(pair: tuple[Poly, Poly], m: int) -> SeriesPrefix:
    card, co = pair
    return total_walks_from_pair(card, co, m)


def rows_from_walks(w_mod4: SeriesPrefix, data: ModDeckData) -> list[SeriesPrefix]:
    """Walk-matrix rows mod 2 from ``w_i^2 = (w - w(G - i)) w_ii (mod 4)``."""
    m = len(w_mod4)
    rows = []
    for i in range(data.n):
        diff = sub(w_mod4, data.w_minus(i, m))
        wii = SeriesPrefix(data.wii[i].coeffs[:m], Z4)
        try:
            rows.append(sqrt_mod4_to_mod2(mul(diff, wii)))
        except NonSquareError as exc:
            raise InconsistentDeckError(f"card {i}: {exc}") from exc
    return rows


def base_mod_data(d: Deck) -> ModDeckData:
    """Everything recoverable before the constant coefficient is known."""
    if d.n < 3:
        raise ValueError("needs n >= 3")
    if d.card_truncation is not None or d.modulus is not None:
        raise ValueError("needs complete integer cards")
    n = d.n
    pairs = []
    for card in d.cards:
        c4 = Poly(card, Z4)
        pairs.append((c4, complement_charpoly_mod4(c4)))
    phi_top = integrate_cards(d.cards, n)
    wii = [ratio_prefix(card, phi_top, n) for card in d.cards]
    traces = [sum(col) for col in zip(*(s.coeffs for s in wii))]
    half = ceil(n / 2)
    w = [n % 4] + [gram_walk_mod4(k, lambda j: traces[j]) for k in range(1, half)]
    data = ModDeckData(n, phi_top, wii, traces, pairs, SeriesPrefix(tuple(w), Z4), [])
    data.rows_mod2 = rows_from_walks(data.w_mod4, data)
    return data


def gram_rows_mod4(rows) -> int:
    """``1^T A^{2k} 1 (mod 4)`` from ``e_i^T A^k 1 (mod 2)``."""
    return sum((x % 2) for x in rows) % 4


def _extend_w(data: ModDeckData, value: int) -> None:
    data.w_mod4 = SeriesPrefix(data.w_mod4.coeffs + (value,), Z4)
    data.rows_mod2 = rows_from_walks(data.w_mod4, data)


def _bn_0mod4(data: ModDeckData) -> int:
    n = data.n
    col = data.columns_mod2()[n // 4]
    _extend_w(data, gram_rows_mod4(col))
    cols = data.columns_mod2()
    b = data.b
    # A^{n/2} 1 + b_2 A^{n/2-1} 1 + ... + b_n 1 = 0 (mod 2), and the 1-column is all ones
    values = set()
    for i in range(n):
        acc = cols[n // 2][i]
        for j in range(1, n // 2):
            acc += b[2 * j - 1] * cols[n // 2 - j][i]
        values.add(acc % 2)
    if len(values) != 1:
        raise InconsistentDeckError("walk-matrix relation is inconsistent across vertices")
    return values.pop()


def _bn_2mod4_odd_coefficient(data: ModDeckData, k: int) -> int:
    """``b_n (mod 2)`` when ``b_k`` is odd for ``k = m' - n``, read from ``tr A^{m'}``."""
    n = data.n
    m = n + k
    half = m // 2
    cols = data.columns_mod2()
    walks = gram_rows_mod4(cols[half // 2])
    t = valuation(half, 2)
    v = t + 1
    # 2^t * 1^T A^half 1 = tr A^m + sum_l 2^{t-l} tr A^{2^l odd} (mod 2^{t+2}), with only tr A^m unknown
    odd = half >> t
    known = sum(2 ** (t - l) * data.traces[odd << l] for l in range(t + 1))
    tr_m = (2 ** t * walks - known) % 2 ** (v + 1)
    b = data.b
    base = trace_from_coeffs(m, b + [0])
    coef = trace_from_coeffs(m, b + [1]) - base
    if valuation(coef, 2) != v:
        raise InconsistentDeckError(f"coefficient of b_n in tr A^{m} has unexpected 2-adic valuation")
    rem = (tr_m - base) % 2 ** (v + 1)
    if rem % 2 ** v:
        raise InconsistentDeckError(f"tr A^{m} is inconsistent with the deck")
    return rem >> v & 1


def _bn_from_column_relation(data: ModDeckData) -> int | None:
    """``b_n (mod 2)`` when the known columns ``A^k 1``, ``k < n/2``, are dependent mod 2.

    The dependency extends to ``A^{n/2} 1`` without using ``b_n``, and the
    walk-matrix relation then isolates ``b_n`` against the all-ones column.
    """
    n = data.n
    half = n // 2
    cols = data.columns_mod2()[:half]
    rel = f2_relation(cols)
    if rel is None:
        return None
    r = len(rel) - 1
    cols = [list(c) for c in cols]
    while len(cols) <= half:
        k = len(cols)
        new = [0] * n
        for j in range(r):
            if rel[j]:
                new = [a ^ s for a, s in zip(new, cols[k - r + j])]
        cols.append(new)
    b = data.b
    values = set()
    for i in range(n):
        acc = cols[half][i]
        for j in range(1, half):
            acc += b[2 * j - 1] * cols[half - j][i]
        values.add(acc % 2)
    if len(values) != 1:
        raise InconsistentDeckError("walk-matrix relation is inconsistent across vertices")
    return values.pop()


@dataclass(frozen=True)
class ConstantMod2:
    value: int
    forced: bool = False

    def to_json(self) -> dict:
        return {"bn_mod2": self.value, "forced_even": self.forced}


def constant_mod2(d: Deck, data: ModDeckData | None = None) -> ConstantMod2:
    """``b_n (mod 2)``; for odd ``n`` it is always even and ``forced`` is set."""
    n = d.n
    if n % 2:
        return ConstantMod2(0, forced=True)
    data = data or base_mod_data(d)
    if n % 4 == 0:
        return ConstantMod2(_bn_0mod4(data))
    b = data.b
    for k in range(2, n - 3, 4):
        if b[k - 1] % 2:
            return ConstantMod2(_bn_2mod4_odd_coefficient(data, k))
    value = _bn_from_column_relation(data)
    if value is None:
        raise NotApplicableError(
            "n = 2 (mod 4), b_k even for k = 2 (mod 4) and A^k 1 (k < n/2) independent mod 2: "
            "b_n (mod 2) is not determined by the available walk data")
    return ConstantMod2(value)


@dataclass(frozen=True)
class Theorem4Output:
    bn_mod2: int
    walk_matrix_mod2: tuple[tuple[int, ...], ...]  # columns
    phibar_top_mod4: tuple[int, ...]
    phibar_const_mod2: int

    def to_json(self) -> dict:
        return {
            "bn_mod2": self.bn_mod2,
            "walk_matrix_mod2": [list(c) for c in self.walk_matrix_mod2],
            "phibar_top_mod4": [str(c) for c in self.phibar_top_mod4],
            "phibar_const_mod2": self.phibar_const_mod2,
        }


@dataclass
class _Mod2State:
    data: ModDeckData
    bn: int
    columns: list[list[int]]
    w_mod4: SeriesPrefix


def _extend_columns(cols: list[list[int]], b: list[int], n: int, count: int) -> list[list[int]]:
    """``A^k 1 (mod 2)`` for ``k < count`` from the relation ``A^k 1 = sum_j b_{2j} A^{k-j} 1``.

    The relation holds for ``k >= ceil(n/2)``; ``b`` lists ``b_1, ..., b_n``.
    """
    cols = [list(c) for c in cols]
    while len(cols) < count:
        k = len(cols)
        new = [0] * n
        for j in range(1, n // 2 + 1):
            if b[2 * j - 1] % 2:
                new = [a ^ s for a, s in zip(new, cols[k - j])]
        cols.append(new)
    return cols


def _state(d: Deck) -> _Mod2State:
    data = base_mod_data(d)
    return _state_for(data, constant_mod2(d, data).value)


def _state_for(data: ModDeckData, bn: int) -> _Mod2State:
    n = data.n
    b = data.b + [bn]
    known = data.columns_mod2()[:ceil(n / 2)]
    cols = _extend_columns(known, b, n, n + 2)
    if cols[:len(data.columns_mod2())] != [list(c) for c in data.columns_mod2()]:
        raise InconsistentDeckError("walk-matrix relation disagrees with recovered columns")
    # w = w(G - i) + w_i^2 / w_ii (mod 4), first n coefficients, the same for every i
    w = None
    for i in range(n):
        row = SeriesPrefix(tuple(c[i] for c in cols[:n]), Z2)
        sq = square_mod2_to_mod4(row)
        wii = SeriesPrefix(data.wii[i].coeffs, Z4)
        cand = deconvolve(sq, wii) + data.w_minus(i, n)
        if w is None:
            w = cand
        elif cand != w:
            raise InconsistentDeckError("walk series disagree between vertices")
    if w.coeffs[:len(data.w_mod4)] != data.w_mod4.coeffs:
        raise InconsistentDeckError("walk series disagree with the earlier prefix")
    return _Mod2State(data, bn, cols, w)


def _phibar_top_mod4(phi_top: tuple, w: SeriesPrefix, n: int) -> tuple:
    phi4 = tuple(c % 4 for c in phi_top)
    num = numerator_from_series(w, phi4, n - 1)
    shifted = tuple((phi4[k] + (num[k - 1] if k else 0)) % 4 for k in range(n))
    return neg_shift_top(shifted, n, n, Z4)


def theorem4(d: Deck) -> Theorem4Output:
    """Constant of ``phi`` and ``phibar`` mod 2, ``W mod 2`` and the top ``n`` coefficients of ``phibar`` mod 4."""
    return _theorem4_from_state(_state(d))


def _theorem4_from_state(st: _Mod2State) -> Theorem4Output:
    data = st.data
    n = data.n
    top = _phibar_top_mod4(data.phi_top, st.w_mod4, n)
    # walks of length >= 1 are even, so w = (n, 0, 0, ...) mod 2
    sign = 1 if n % 2 == 0 else -1
    phi2 = Poly(tuple(c % 2 for c in data.phi_top) + ((sign * st.bn) % 2,), Z2)
    w2 = SeriesPrefix((n % 2,) + (0,) * (n - 1), Z2)
    num = numerator_from_series(w2, phi2, n)
    phibar2 = substitute_neg_shift(Poly((0,) + num, Z2) + phi2, n)
    return Theorem4Output(st.bn, tuple(tuple(c) for c in st.columns[:n]), top, phibar2.coeffs[-1])


@dataclass(frozen=True)
class Theorem5Output:
    const_mod4: int
    phibar_mod4: Poly

    def to_json(self) -> dict:
        return {"const_mod4": self.const_mod4, "phibar_mod4": self.phibar_mod4.to_json()}


def theorem5_applicable(n: int, rank2: int) -> bool:
    return n % 2 == 0 or rank2 < ceil(n / 2)


def theorem5(d: Deck) -> Theorem5Output:
    """Constant of ``phi`` mod 4 and all of ``phibar`` mod 4.

    Raises :class:`NotApplicableError` for odd ``n`` when ``W mod 2`` has
    the maximal rank ``ceil(n/2)``.
    """
    st = _state(d)
    rank2 = rank_f2(st.columns[:d.n])
    if not theorem5_applicable(d.n, rank2):
        raise NotApplicableError(f"n is odd and W has full rank {rank2} over F2")
    return _theorem5_from_state(st)


def _theorem5_from_state(st: _Mod2State) -> Theorem5Output:
    n = st.data.n
    cols = st.columns
    w = st.w_mod4
    if n % 2 == 0:
        wn = gram_rows_mod4(cols[n // 2])
    else:
        half = (n - 1) // 2
        rel = f2_relation(cols[:half + 1])
        if rel is None:
            raise InconsistentDeckError("expected a relation among the first walk-matrix columns")
        shift = half - (len(rel) - 1)
        # v = sum_k rel[k] A^{k + shift} 1 = 0 (mod 2), so sum_k rel[k] 1^T A^{2(k+shift)+1} 1 = 0 (mod 4)
        acc = sum(w[2 * (k + shift) + 1] for k in range(len(rel) - 1) if rel[k])
        wn = -acc % 4
    w = SeriesPrefix(w.coeffs + (wn,), Z4)
    phi_top = tuple(c % 4 for c in st.data.phi_top)
    consts = set()
    for i in range(n):
        row = SeriesPrefix(tuple(c[i] for c in cols[:n + 1]), Z2)
        sq = square_mod2_to_mod4(row)
        wii = deconvolve(sq, sub(w, st.data.w_minus(i, n + 1)))
        if wii.coeffs[:n] != tuple(c % 4 for c in st.data.wii[i].coeffs):
            raise InconsistentDeckError(f"card {i}: closed walks disagree with the deck")
        # phi * w_ii is a polynomial of degree n - 1, so its x^{-1} coefficient vanishes
        consts.add(-sum(phi_top[j] * wii[n - j] for j in range(n)) % 4)
    if len(consts) != 1:
        raise InconsistentDeckError("constant coefficient disagrees between vertices")
    const = consts.pop()
    phi = Poly(phi_top + (const,), Z4)
    num = numerator_from_series(w, phi, n)
    phibar = substitute_neg_shift(Poly((0,) + num, Z4) + phi, n)
    return Theorem5Output(const, phibar)


@dataclass(frozen=True)
class CollisionVerdict:
    kind: str  # "decks differ", "cospectral", "counterexample"
    k: int | None = None

    def to_json(self) -> dict:
        out = {"verdict": self.kind}
        if self.k is not None:
            out["k"] = self.k
        return out


def corollary2_check(g: Graph, h: Graph) -> CollisionVerdict:
    """Compare two graphs with the same polynomial deck.

    For equal decks with different characteristic polynomials the
    difference must be a nonzero even constant ``2k``, with ``k`` even when
    ``n`` is even; violations raise ``AssertionError``.
    """
    if g.n != h.n:
        raise ValueError("graphs must have the same order")
    if g.n < 3:
        raise ValueError("needs n >= 3")
    dg, dh = deck(g), deck(h)
    if dg.fingerprint() != dh.fingerprint():
        return CollisionVerdict("decks differ")
    from .poly import charpoly

    pg, ph = charpoly(g), charpoly(h)
    if pg == ph:
        return CollisionVerdict("cospectral")
    diff = pg - ph
    assert not any(diff.coeffs[:-1]), "equal decks but non-constant difference"
    delta = diff.coeffs[-1]
    assert delta % 2 == 0, f"odd constant difference {delta}"
    k = delta // 2
    assert g.n % 2 or k % 2 == 0, f"k = {k} is odd for even n"
    return CollisionVerdict("counterexample", k)


@dataclass(frozen=True)
class DeckModReport:
    """Everything the plain deck yields mod 2 and mod 4, sharing one pass over the deck."""

    constant: ConstantMod2 | None
    theorem4: Theorem4Output | None
    theorem5: Theorem5Output | None
    reason: str | None = None

    def to_json(self) -> dict:
        if self.theorem4 is None:
            return {"status": "not_applicable", "reason": self.reason}
        out = self.theorem4.to_json()
        out["forced_even"] = self.constant.forced
        out["theorem5"] = self.theorem5.to_json() if self.theorem5 is not None else "not_applicable"
        return out


def deck_mod_report(d: Deck) -> DeckModReport:
    data = base_mod_data(d)
    try:
        const = constant_mod2(d, data)
    except NotApplicableError as exc:
        return DeckModReport(None, None, None, str(exc))
    st = _state_for(data, const.value)
    t4 = _theorem4_from_state(st)
    t5 = None
    if theorem5_applicable(d.n, rank_f2(st.columns[:d.n])):
        t5 = _theorem5_from_state(st)
    return DeckModReport(const, t4, t5)
