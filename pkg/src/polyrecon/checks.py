"""Per-graph invariant checks used by :func:`polyrecon.oracle.verify_sweep`.

Each check takes a graph and returns ``None`` when it holds (or does not
apply to that order) and ``(expected, got)`` otherwise.
"""

from __future__ import annotations

from math import ceil

from .deck_mod import constant_mod2, deck_mod_report, theorem5_applicable
from .errors import NotApplicableError
from .graph import Graph, closed_walk_counts, complement, count_four_cycles, walk_counts, walk_totals
from .poly import charpoly, deck, derivative
from .reconstruct import (
    controllable_truncation,
    count_c4_from_deck,
    full_truncation,
    reconstruct_c4free_lowrank,
    reconstruct_controllable,
    reconstruct_full,
)
from .symmetric import (
    coeffs_from_traces,
    complement_charpoly_mod4,
    gram_walk_mod4,
    trace_from_coeffs,
    traces_mod,
)
from .walks import rank_F2, rank_Q, walk_matrix

CHECKS = {}


def check(name):
    def register(fn):
        CHECKS[name] = fn
        return fn
    return register


def _pair(g: Graph):
    return charpoly(g), charpoly(complement(g))


@check("deck_derivative")
def deck_derivative(g):
    if g.n < 2:
        return None
    d = deck(g)
    total = tuple(sum(col) for col in zip(*d.cards))
    want = derivative(charpoly(g)).coeffs
    return None if total == want else (want, total)


@check("reconstruct_full_roundtrip")
def reconstruct_full_roundtrip(g):
    if g.n < 3:
        return None
    d = deck(g, generalized=True, truncate_co=full_truncation(g.n))
    got = reconstruct_full(d)
    want = _pair(g)
    return None if got == want else (want, got)


@check("controllable_threshold")
def controllable_threshold(g):
    if g.n < 3:
        return None
    k = controllable_truncation(g.n)
    out = reconstruct_controllable(deck(g, generalized=True, truncate=k, truncate_co=k))
    if rank_Q(walk_matrix(g)) >= (g.n - 1) // 3:
        want = ("success", _pair(g))
        got = (out.status, out.pair if out.ok else None)
    else:
        want, got = "rank_too_low", out.status
    return None if got == want else (want, got)


@check("c4_count")
def c4_count(g):
    if g.n < 5:
        return None
    got = count_c4_from_deck(deck(g))
    want = count_four_cycles(g)
    return None if got == want else (want, got)


@check("c4free_lowrank")
def c4free_lowrank(g):
    if g.n < 5:
        return None
    out = reconstruct_c4free_lowrank(deck(g))
    eligible = count_four_cycles(g) == 0 and rank_Q(walk_matrix(g)) <= 2
    if eligible:
        return None if out.ok and out.pair == _pair(g) else (_pair(g), out.to_json())
    return None if out.status == "not_applicable" else ("not_applicable", out.status)


@check("gram_walk_mod4")
def gram_walk(g):
    n = g.n
    _, tr = closed_walk_counts(g, 4 * n)
    w = walk_totals(g, 2 * n)
    for m in range(1, 2 * n + 1):
        got = gram_walk_mod4(m, lambda j: tr[j])
        if got != w[m] % 4:
            return (f"m={m}: {w[m] % 4}", got)
    return None


@check("trace_partition")
def trace_partition(g):
    if g.n > 6:
        return None
    b = charpoly(g).bs
    _, tr = closed_walk_counts(g, 12)
    for m in range(1, 13):
        got = trace_from_coeffs(m, b)
        if got != tr[m]:
            return (f"m={m}: {tr[m]}", got)
    return None


@check("coeff_trace_roundtrip")
def coeff_trace_roundtrip(g):
    if g.n > 7:
        return None
    b = charpoly(g).bs
    for p, l in ((2, 1), (2, 2), (3, 1)):
        want = [x % p ** l for x in b]
        got = coeffs_from_traces(traces_mod(b, p, l), p, l)
        if got != want:
            return (f"p={p}, l={l}: {want}", got)
    return None


@check("theorem6")
def complement_mod4(g):
    got = complement_charpoly_mod4(charpoly(g).reduce(4))
    want = charpoly(complement(g)).reduce(4)
    return None if got == want else (want, got)


@check("constant_mod2")
def constant_parity(g):
    if g.n < 3:
        return None
    want = charpoly(g).b(g.n) % 2
    try:
        got = constant_mod2(deck(g)).value
    except NotApplicableError as exc:
        got = f"not determined: {exc}"
    return None if got == want else (want, got)


@check("deck_mod")
def deck_mod_outputs(g):
    """Mod-2 deck data, mod-4 applicability verdict and mod-4 outputs against direct computation."""
    n = g.n
    if n < 3:
        return None
    phi, phibar = _pair(g)
    w = walk_matrix(g)
    report = deck_mod_report(deck(g))
    if report.theorem4 is None:
        return ("determined", report.reason)
    t4 = report.theorem4
    want4 = (
        phi.b(n) % 2,
        tuple(tuple(x % 2 for x in col) for col in w.columns),
        tuple(c % 4 for c in phibar.coeffs[:n]),
        phibar.coeffs[-1] % 2,
    )
    got4 = (t4.bn_mod2, t4.walk_matrix_mod2, t4.phibar_top_mod4, t4.phibar_const_mod2)
    if got4 != want4:
        return (want4, got4)
    applicable = theorem5_applicable(n, rank_F2(w))
    if applicable != (report.theorem5 is not None):
        return (f"applicable={applicable}", report.theorem5)
    if applicable:
        want5 = (phi.coeffs[-1] % 4, phibar.reduce(4))
        got5 = (report.theorem5.const_mod4, report.theorem5.phibar_mod4)
        if got5 != want5:
            return (want5, got5)
    return None


@check("b1_zero")
def b1_zero(g):
    b1 = charpoly(g).b(1)
    return None if b1 == 0 else (0, b1)


@check("odd_b_even")
def odd_b_even(g):
    phi = charpoly(g)
    odd = [k for k in range(1, g.n + 1, 2) if phi.b(k) % 2]
    return None if not odd else ("even", odd)


@check("walks_even")
def walks_even(g):
    w = walk_totals(g, 2 * g.n)
    odd = [k for k in range(1, len(w)) if w[k] % 2]
    return None if not odd else ("even", odd)


@check("rank_f2_bound")
def rank_f2_bound(g):
    r = rank_F2(walk_matrix(g))
    return None if r <= ceil(g.n / 2) else (f"<= {ceil(g.n / 2)}", r)


@check("column_relation_mod2")
def column_relation_mod2(g):
    """``A^{ceil(n/2)} 1 + b_2 A^{ceil(n/2)-1} 1 + b_4 ... = 0 (mod 2)`` over the even-index ``b``."""
    n = g.n
    phi = charpoly(g)
    top = ceil(n / 2)
    cols = walk_counts(g, top)
    acc = list(cols[top])
    for j in range(1, n // 2 + 1):
        coef = phi.b(2 * j)
        acc = [a + coef * c for a, c in zip(acc, cols[top - j])]
    bad = [i for i, a in enumerate(acc) if a % 2]
    return None if not bad else ("0 mod 2", bad)


STRUCTURAL = ["b1_zero", "odd_b_even", "walks_even", "rank_f2_bound", "column_relation_mod2"]
