"""Coefficient rings, dense polynomials, characteristic polynomials and decks.

Polynomials are stored leading coefficient first, so the "top s coefficients"
of a polynomial are simply ``coeffs[:s]``.  Over ``Z/M`` a polynomial keeps
its nominal degree even when high coefficients reduce to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .errors import InconsistentDeckError, InsufficientDataError, NotInvertibleError
from .graph import Graph, _bits, complement, delete_vertex


@dataclass(frozen=True)
class Ring:
    """Exact integers (default), exact rationals, or integers modulo ``modulus``."""

    modulus: int | None = None
    rational: bool = False

    def __post_init__(self):
        if self.modulus is not None and self.modulus < 2:
            raise ValueError("modulus must be at least 2")
        if self.modulus is not None and self.rational:
            raise ValueError("a ring is either rational or modular, not both")

    def __call__(self, x):
        if self.modulus is not None:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    return x.numerator * self.inverse(x.denominator) % self.modulus
                x = x.numerator
            return int(x) % self.modulus
        if self.rational:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return x.numerator
        return int(x)

    @property
    def exact(self) -> bool:
        return self.modulus is None

    def inverse(self, a):
        if self.modulus is None:
            if a == 0:
                raise NotInvertibleError("division by zero")
            if self.rational:
                return 1 / Fraction(a)
            if a in (1, -1):
                return a
            raise NotInvertibleError(f"{a} is not a unit of the integers")
        try:
            return pow(int(a), -1, self.modulus)
        except ValueError:
            raise NotInvertibleError(f"{a} is not invertible modulo {self.modulus}") from None

    def div(self, a, b):
        """Exact quotient ``a / b``; over the integers the division must be exact."""
        if self.modulus is not None:
            return self(a) * self.inverse(b) % self.modulus
        if self.rational:
            return Fraction(a) / Fraction(b)
        if b == 0:
            raise NotInvertibleError("division by zero")
        q, r = divmod(a, b)
        if r:
            raise NotInvertibleError(f"{a} is not divisible by {b}")
        return q

    def __str__(self):
        if self.modulus is not None:
            return f"Z/{self.modulus}"
        return "QQ" if self.rational else "ZZ"


ZZ = Ring()
QQ = Ring(rational=True)


def Zmod(modulus: int) -> Ring:
    return Ring(modulus=modulus)


@dataclass(frozen=True)
class Poly:
    coeffs: tuple
    ring: Ring = ZZ

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a polynomial needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(self.ring(c) for c in self.coeffs))

    @classmethod
    def monomial(cls, n: int, ring: Ring = ZZ) -> Poly:
        return cls((1,) + (0,) * n, ring)

    @classmethod
    def from_roots(cls, roots: Iterable[int], ring: Ring = ZZ) -> Poly:
        p = cls((1,), ring)
        for r in roots:
            p = p * cls((1, -r), ring)
        return p

    @property
    def degree(self) -> int:
        """Nominal degree (number of coefficients minus one)."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def coeff(self, power: int):
        """Coefficient of ``x**power``."""
        k = self.degree - power
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.ring(0)

    def b(self, k: int):
        """Sign-alternating coefficient: ``p = x^n - b_1 x^{n-1} + b_2 x^{n-2} - ...``."""
        if k > self.degree:
            return self.ring(0)
        return self.ring(-self.coeffs[k] if k % 2 else self.coeffs[k])

    @property
    def bs(self) -> tuple:
        """``(b_1, ..., b_n)``."""
        return tuple(self.b(k) for k in range(1, self.degree + 1))

    def top(self, s: int) -> tuple:
        return self.coeffs[:s]

    def reduce(self, modulus: int) -> Poly:
        return Poly(self.coeffs, Zmod(modulus))

    def lift(self) -> Poly:
        """Canonical integer lift of a modular polynomial."""
        return Poly(self.coeffs, ZZ)

    def _aligned(self, other: Poly):
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
        d = max(len(self.coeffs), len(other.coeffs))
        a = (0,) * (d - len(self.coeffs)) + self.coeffs
        b = (0,) * (d - len(other.coeffs)) + other.coeffs
        return a, b

    def __add__(self, other: Poly) -> Poly:
        a, b = self._aligned(other)
        return Poly(tuple(x + y for x, y in zip(a, b)), self.ring)

    def __sub__(self, other: Poly) -> Poly:
        a, b = self._aligned(other)
        return Poly(tuple(x - y for x, y in zip(a, b)), self.ring)

    def __neg__(self) -> Poly:
        return Poly(tuple(-c for c in self.coeffs), self.ring)

    def __mul__(self, other: Poly) -> Poly:
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(tuple(out), self.ring)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def __str__(self):
        terms = []
        d = self.degree
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            e = d - k
            mono = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
            if mono and c == 1:
                terms.append(f"+ {mono}")
            elif mono and c == -1:
                terms.append(f"- {mono}")
            else:
                sign = "-" if c < 0 else "+"
                terms.append(f"{sign} {abs(c)}{mono}")
        if not terms:
            return "0"
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def charpoly(g: Graph) -> Poly:
    """``det(xI - A)`` by the Faddeev-LeVerrier recurrence in exact integers.

    Each division by ``k`` is exact for integer matrices; the recurrence
    asserts it rather than trusting it.
    """
    n = g.n
    rows = g.rows
    coeffs = [1]
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        am = []
        for i in range(n):
            out = [0] * n
            for j in _bits(rows[i]):
                mj = m[j]
                for col in range(n):
                    out[col] += mj[col]
            am.append(out)
        tr = sum(am[i][i] for i in range(n))
        c, r = divmod(-tr, k)
        if r:
            raise ArithmeticError("Faddeev-LeVerrier produced a non-integer coefficient")
        coeffs.append(c)
        if k < n:
            for i in range(n):
                am[i][i] += c
            m = am
    return Poly(tuple(coeffs))


def derivative(p: Poly) -> Poly:
    d = p.degree
    if d == 0:
        return Poly((0,), p.ring)
    return Poly(tuple(c * (d - k) for k, c in enumerate(p.coeffs[:-1])), p.ring)


def neg_shift_top(top: Sequence, degree: int, parity: int, ring: Ring = ZZ) -> tuple:
    """Top coefficients of ``(-1)^parity * p(-x-1)`` from the same number of top coefficients of ``p``.

    ``p`` has nominal degree ``degree``; coefficient ``i`` of the result
    depends only on coefficients ``0..i`` of ``p``.
    """
    out = []
    for i in range(len(top)):
        acc = 0
        for j in range(i + 1):
            c = top[j]
            if c:
                term = c * comb(degree - j, i - j)
                acc += -term if (parity + degree - j) % 2 else term
        out.append(ring(acc))
    return tuple(out)


def substitute_neg_shift(p: Poly, n: int) -> Poly:
    """``(-1)^n * p(-x-1)``; an involution for fixed ``n``."""
    return Poly(neg_shift_top(p.coeffs, p.degree, n, p.ring), p.ring)


# decks ------------------------------------------------------------------

@dataclass(frozen=True)
class Deck:
    """Polynomial deck of a graph on ``n`` vertices.

    ``cards[i]`` holds the top coefficients of ``phi(G - i)`` (all ``n`` of
    them unless ``card_truncation`` is set).  ``co_cards`` likewise for the
    complement, truncated to ``co_truncation`` coefficients when set.
    """

    n: int
    cards: tuple[tuple, ...]
    co_cards: tuple[tuple, ...] | None = None
    card_truncation: int | None = None
    co_truncation: int | None = None
    modulus: int | None = None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("decks need n >= 2")
        if len(self.cards) != self.n:
            raise ValueError(f"expected {self.n} cards, got {len(self.cards)}")
        want = self.card_truncation or self.n
        for card in self.cards:
            if len(card) != want:
                raise ValueError(f"card has {len(card)} coefficients, expected {want}")
            if self.ring(card[0]) != self.ring(1):
                raise InconsistentDeckError("cards must be monic")
        if self.co_cards is not None:
            if len(self.co_cards) != self.n:
                raise ValueError("co_cards must pair one-to-one with cards")
            want = self.co_truncation or self.n
            for card in self.co_cards:
                if len(card) != want:
                    raise ValueError(f"co-card has {len(card)} coefficients, expected {want}")
                if self.ring(card[0]) != self.ring(1):
                    raise InconsistentDeckError("co-cards must be monic")

    @property
    def ring(self) -> Ring:
        return ZZ if self.modulus is None else Zmod(self.modulus)

    @property
    def generalized(self) -> bool:
        return self.co_cards is not None

    @property
    def t(self) -> int:
        """Number of known top coefficients per card."""
        return self.card_truncation or self.n

    @property
    def s(self) -> int:
        if self.co_cards is None:
            return 0
        return self.co_truncation or self.n

    def card_poly(self, i: int) -> Poly:
        if self.card_truncation is not None:
            raise InsufficientDataError("cards are truncated")
        return Poly(self.cards[i], self.ring)

    def co_card_poly(self, i: int) -> Poly:
        if self.co_cards is None or self.co_truncation is not None:
            raise InsufficientDataError("co-cards are missing or truncated")
        return Poly(self.co_cards[i], self.ring)

    def truncated(self, s: int | None = None, t: int | None = None) -> Deck:
        """Same deck with fewer known coefficients per card family."""
        cards, ct = self.cards, self.card_truncation
        if t is not None and t < self.t:
            cards, ct = tuple(c[:t] for c in cards), t
        co, cot = self.co_cards, self.co_truncation
        if s is not None and co is not None and s < self.s:
            co, cot = tuple(c[:s] for c in co), s
        return Deck(self.n, cards, co, ct, cot, self.modulus)

    def reduce(self, modulus: int) -> Deck:
        r = Zmod(modulus)
        co = None if self.co_cards is None else tuple(tuple(r(c) for c in card) for card in self.co_cards)
        cards = tuple(tuple(r(c) for c in card) for card in self.cards)
        return Deck(self.n, cards, co, self.card_truncation, self.co_truncation, modulus)

    def fingerprint(self) -> tuple:
        """Sorted multiset of cards; equal decks have equal fingerprints."""
        return tuple(sorted(self.cards))

    def to_json(self) -> dict:
        out = {"n": self.n, "cards": [[str(c) for c in card] for card in self.cards]}
        if self.co_cards is not None:
            out["co_cards"] = [[str(c) for c in card] for card in self.co_cards]
        if self.co_truncation is not None:
            out["co_truncation"] = self.co_truncation
        if self.card_truncation is not None:
            out["card_truncation"] = self.card_truncation
        if self.modulus is not None:
            out["modulus"] = self.modulus
        return out

    @classmethod
    def from_json(cls, data: dict) -> Deck:
        try:
            n = int(data["n"])
            cards = tuple(tuple(int(c) for c in card) for card in data["cards"])
            co = data.get("co_cards")
            if co is not None:
                co = tuple(tuple(int(c) for c in card) for card in co)
            return cls(n, cards, co, data.get("card_truncation"), data.get("co_truncation"),
                       data.get("modulus"))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed deck: {exc}") from exc


def deck(g: Graph, generalized: bool = False, truncate_co: int | None = None,
         truncate: int | None = None, modulus: int | None = None) -> Deck:
    """Polynomial deck of ``g`` with cards in vertex order.

    ``truncate_co``/``truncate`` keep only that many top coefficients of the
    co-cards/cards; values at least ``n`` leave the family untouched.
    """
    if g.n < 2:
        raise ValueError("decks need n >= 2")
    n = g.n
    cards = tuple(charpoly(delete_vertex(g, i)).coeffs for i in range(n))
    co = None
    if generalized:
        gbar = complement(g)
        co = tuple(charpoly(delete_vertex(gbar, i)).coeffs for i in range(n))
    ct = truncate if truncate is not None and truncate < n else None
    cot = truncate_co if truncate_co is not None and truncate_co < n and generalized else None
    if ct is not None:
        cards = tuple(c[:ct] for c in cards)
    if cot is not None:
        co = tuple(c[:cot] for c in co)
    d = Deck(n, cards, co, ct, cot)
    return d.reduce(modulus) if modulus is not None else d


def integrate_cards(cards: Sequence[Sequence], n: int, ring: Ring = ZZ) -> tuple:
    """Top coefficients of ``phi`` whose derivative is the sum of the cards.

    With cards known to ``t`` coefficients this yields the top ``t``
    coefficients of ``phi`` (the constant is never determined).
    """
    t = min(len(c) for c in cards)
    sums = [ring(sum(c[j] for c in cards)) for j in range(t)]
    if sums[0] != ring(n):
        raise InconsistentDeckError(f"card sum has leading coefficient {sums[0]}, expected {n}")
    out = [ring(1)]
    for j in range(1, t):
        try:
            out.append(ring.div(sums[j], n - j))
        except NotInvertibleError as exc:
            if ring.exact:
                raise InconsistentDeckError(
                    f"coefficient of x^{n - 1 - j} in the card sum is not divisible by {n - j}") from exc
            raise
    return tuple(out)


def integrate_deck(d: Deck) -> tuple:
    """Top ``t`` coefficients of ``phi(G)`` (``t = n`` for a full deck: all but the constant)."""
    return integrate_cards(d.cards, d.n, d.ring)


def integrate_co_deck(d: Deck) -> tuple:
    if d.co_cards is None:
        raise InsufficientDataError("deck has no co-cards")
    return integrate_cards(d.co_cards, d.n, d.ring)
