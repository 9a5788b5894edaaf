"""Conjugacy search, sliding circuit sets and centralizers.

Conventions: ``conj(g, x) = g x g^-1`` for witnesses, while graph edges and
sliding conjugators follow the Garside habit ``s^-1 x s``.

The sliding circuit set SC(x) is explored from one of its elements by
conjugating with *minimal* simple elements. For each atom ``a`` the minimal
simple ``s >= a`` with ``s^-1 v s`` in SC(v) is found in two stages:

1. close ``a`` upward to the smallest simple keeping inf and sup unchanged
   (membership in the super summit set); the set of such simples is closed
   under meets, and a violated inf condition ``tau^p(s) <= X s`` forces
   ``s <- X^-1 (tau^p(s) v X s)``; the sup condition is the inf condition of
   the inverse;
2. best-first search upward through super-summit-closed simples, by length,
   until one lands in a sliding circuit. Meet-closedness of the
   sliding-circuit conjugators makes the first hit the minimum.

The search in stage 2 is confined below an upper bound: conjugators carried
once around the sliding circuit of ``v`` (transport) eventually cycle, and
the periodic ones conjugate ``v`` into SC(v). The meet of those lying above
the atom is a valid ceiling.
"""

from __future__ import annotations

import heapq
import itertools
from collections import OrderedDict, deque
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Optional

from .braid import BraidWord, exponent_sum, inverse, multiply, permutation_of
from .garside import (
    NormalForm,
    _delta,
    _inv,
    _join,
    _meet,
    _perm_word,
    _tau_k,
    all_simples,
    conjugate_by_simple,
    cyclic_sliding,
    delta_word,
    in_parabolic,
    left_normal_form,
    nf_power,
    nf_product,
    sliding,
)

__all__ = [
    "ResourceCapExceeded",
    "ConjugacyWitness",
    "SlidingCircuitGraph",
    "CentralizerGens",
    "sliding_circuit_set",
    "conjugacy_search",
    "centralizer_gens",
    "constrained_conjugacy_search",
    "coset_search",
    "brute_force_conjugacy",
    "brute_force_sliding_circuit_set",
    "in_sliding_circuit",
    "minimal_simple_elements",
    "cycle_type",
]

DEFAULT_CAP = 10_000
DEFAULT_COSET_BUDGET = 10_000


class ResourceCapExceeded(RuntimeError):
    """A search outgrew its budget; the instance is treated as non-generic."""


@dataclass(frozen=True)
class ConjugacyWitness:
    conjugator: BraidWord
    target_rep: NormalForm


@dataclass
class SlidingCircuitGraph:
    """Vertices of SC(u) joined by minimal simple conjugators.

    ``base_conjugator`` ``C`` satisfies ``C^-1 u C == base`` and
    ``paths[v]`` ``P`` satisfies ``P^-1 base P == v``.
    """

    base: NormalForm
    base_conjugator: BraidWord
    vertices: dict[NormalForm, int] = field(default_factory=dict)
    edges: list[tuple[int, tuple, int]] = field(default_factory=list)
    paths: dict[NormalForm, BraidWord] = field(default_factory=dict)
    tree_edges: set[int] = field(default_factory=set)

    @property
    def n(self) -> int:
        return self.base.n

    def vertex_list(self) -> list[NormalForm]:
        return sorted(self.vertices, key=self.vertices.__getitem__)

    def vertex_set(self) -> frozenset[NormalForm]:
        return frozenset(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class CentralizerGens:
    gens: list[BraidWord]
    generic_form: Optional[tuple[int, BraidWord]] = None
    loop_gens: tuple[BraidWord, ...] = ()


# ---------------------------------------------------------------------------
# helpers


def _word_of(s: tuple) -> BraidWord:
    return BraidWord(len(s), _perm_word(s))


def cycle_type(perm: tuple[int, ...]) -> tuple[int, ...]:
    seen = [False] * len(perm)
    lengths = []
    for i in range(len(perm)):
        if not seen[i]:
            k, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = perm[j] - 1
                k += 1
            lengths.append(k)
    return tuple(sorted(lengths))


def in_sliding_circuit(x: NormalForm, max_steps: int = DEFAULT_CAP) -> bool:
    """True iff iterated cyclic sliding brings ``x`` back to itself."""
    seen = {x}
    cur = x
    for _ in range(max_steps):
        cur, _ = sliding(cur)
        if cur == x:
            return True
        if cur in seen:
            return False
        seen.add(cur)
    raise ResourceCapExceeded("sliding orbit longer than the cap")


def _is_simple_product(s: tuple, c: tuple) -> Optional[tuple]:
    """Permutation of s*c if that product is simple, else None."""
    prod = tuple(c[x] for x in s)
    if _inversions(prod) == _inversions(s) + _inversions(c):
        return prod
    return None


def _inversions(a: tuple) -> int:
    n = len(a)
    return sum(1 for i in range(n) for j in range(i + 1, n) if a[i] > a[j])


class _Conj:
    """Memoized ``s -> s^-1 x s`` for one fixed normal form."""

    __slots__ = ("x", "memo")

    def __init__(self, x: NormalForm):
        self.x = x
        self.memo: dict[tuple, NormalForm] = {}

    def __call__(self, s: tuple) -> NormalForm:
        y = self.memo.get(s)
        if y is None:
            y = self.memo[s] = conjugate_by_simple(self.x, s)
        return y


def _inf_fix(cv: _Conj, s: tuple) -> Optional[tuple]:
    """One forced step towards inf(s^-1 v s) >= inf(v); None when already satisfied."""
    v = cv.x
    n = v.n
    if cv(s).p >= v.p:
        return None
    c = _tau_k(s, v.p)
    for f in itertools.chain(v.factors, (s,)):
        j = _join(c, f)
        finv = _inv(f)
        c = tuple(j[finv[k]] for k in range(n))
    grown = _is_simple_product(s, c)
    if grown is None or grown == s:
        # cannot happen for v in its super summit set
        raise ValueError("input is not in its super summit set")
    return grown


def _sss_closure(cv: _Conj, cvinv: _Conj, s: tuple, memo: Optional[dict] = None) -> tuple:
    """Smallest simple t >= s with t^-1 v t keeping inf and sup of v."""
    if memo is not None:
        t = memo.get(s)
        if t is None:
            t = memo[s] = _sss_closure(cv, cvinv, s)
        return t
    while True:
        changed = False
        for c in (cv, cvinv):
            while True:
                grown = _inf_fix(c, s)
                if grown is None:
                    break
                s = grown
                changed = True
        if not changed:
            return s


def _atoms(n: int) -> list[tuple]:
    out = []
    for i in range(n - 1):
        p = list(range(n))
        p[i], p[i + 1] = p[i + 1], p[i]
        out.append(tuple(p))
    return out


def _sc_conjugator(
    cv: _Conj, cvinv: _Conj, atom: tuple, cap: int, in_sc: dict, closures: dict, bound: tuple
) -> tuple:
    """Minimal simple s >= atom with s^-1 v s in a sliding circuit.

    ``bound`` must itself be such a conjugator with ``atom <= bound``; the
    search then stays below it.
    """
    v = cv.x
    n = v.n
    start = _sss_closure(cv, cvinv, atom, closures)
    heap = [(_inversions(start), start)]
    seen = {start}
    while heap:
        _, s = heapq.heappop(heap)
        if s == bound:
            return s
        w = cv(s)
        if w.p == v.p and w.length == v.length and _in_sc(w, in_sc, cap):
            return s
        sinv = _inv(s)
        for i in range(n - 1):
            x, y = sinv[i], sinv[i + 1]
            # s * sigma_{i+1} must stay simple and below the bound
            if x < y and bound[x] > bound[y]:
                sl = list(s)
                sl[x], sl[y] = i + 1, i
                t = _sss_closure(cv, cvinv, tuple(sl), closures)
                if t not in seen:
                    seen.add(t)
                    heapq.heappush(heap, (_inversions(t), t))
    raise ValueError("bound is not a sliding circuit conjugator above the atom")


def _in_sc(w: NormalForm, memo: dict, cap: int) -> bool:
    hit = memo.get(w)
    if hit is None:
        hit = memo[w] = in_sliding_circuit(w, cap)
    return hit


def _circuit(v: NormalForm) -> list[tuple[NormalForm, tuple]]:
    out = []
    x = v
    while True:
        y, pp = sliding(x)
        out.append((x, pp))
        x = y
        if x == v:
            return out


def _transport(circuit, s: tuple, slides: dict) -> tuple:
    """Carry the conjugator ``s`` once around the sliding circuit of its source."""
    for x, px in circuit:
        y = conjugate_by_simple(x, s)
        r = slides.get(y)
        if r is None:
            r = slides[y] = sliding(y)
        pxinv = _inv(px)
        py = r[1]
        s = tuple(py[s[pxinv[i]]] for i in range(len(s)))
    return s


def _circuit_conjugators(cv: _Conj, cvinv: _Conj, cap: int, in_sc: dict, closures: dict) -> list[tuple]:
    """Some simples s with s^-1 v s in SC(v), found as periodic transports.

    Seeds are the super-summit closures of atoms and coatoms; a non-periodic
    seed is enlarged by joining in its periodic orbit until that stalls.
    """
    v = cv.x
    n = v.n
    circuit = _circuit(v)
    slides: dict = {}
    d = _delta(n)
    seeds = _atoms(n)
    seeds += [tuple(d[j] for j in a) for a in _atoms(n)]
    found: set[tuple] = set()
    for seed in seeds:
        s = _sss_closure(cv, cvinv, seed, closures)
        for _ in range(10):
            orbit_index = {s: 0}
            orbit = [s]
            cur = s
            while True:
                cur = _transport(circuit, cur, slides)
                if cur in orbit_index:
                    break
                orbit_index[cur] = len(orbit)
                orbit.append(cur)
            periodic = orbit[orbit_index[cur]:]
            found.update(periodic)
            grown = s
            for t in periodic:
                grown = _join(grown, t)
            grown = _sss_closure(cv, cvinv, grown, closures)
            if grown == s:
                break
            s = grown
    # transport theory says these all qualify; keep only what checks out
    return [t for t in found if _in_sc(cv(t), in_sc, cap)]


def minimal_simple_elements(
    v: NormalForm, cap: int = DEFAULT_CAP, _in_sc_memo: Optional[dict] = None
) -> list[tuple]:
    """The distinct minimal simple conjugators of ``v`` inside SC(v).

    The conjugators into SC(v) are closed under meets, so the meet of the
    known ones above an atom bounds the minimal one from above.
    """
    if not v.factors:
        return []
    in_sc = {} if _in_sc_memo is None else _in_sc_memo
    cv, cvinv = _Conj(v), _Conj(v.inverse())
    closures: dict[tuple, tuple] = {}
    d = _delta(v.n)
    known = _circuit_conjugators(cv, cvinv, cap, in_sc, closures)
    out = []
    for a in _atoms(v.n):
        bound = d
        for t in known:
            if _meet(a, t) == a:
                bound = _meet(bound, t)
        s = _sc_conjugator(cv, cvinv, a, cap, in_sc, closures, bound)
        if s not in out:
            out.append(s)
            known.append(s)
    # keep only the minimal ones
    return [s for s in out if not any(t != s and _meet(t, s) == t for t in out)]


# ---------------------------------------------------------------------------
# sliding circuit graph


_GRAPH_CACHE: OrderedDict[int, SlidingCircuitGraph] = OrderedDict()
_GRAPH_CACHE_SIZE = 64


def _cached_graph(base: NormalForm, conj: BraidWord) -> Optional[SlidingCircuitGraph]:
    for key, g in _GRAPH_CACHE.items():
        if base in g.vertices:
            _GRAPH_CACHE.move_to_end(key)
            # C^-1 u C = base = P^-1 g.base P, so (C P^-1)^-1 u (C P^-1) = g.base
            return replace(g, base_conjugator=multiply(conj, inverse(g.paths[base])))
    return None


def sliding_circuit_set(u, cap: int = DEFAULT_CAP) -> SlidingCircuitGraph:
    """Explore SC(u) from the circuit reached by iterated cyclic sliding.

    Graphs are memoized per conjugacy class; the returned object shares its
    vertex and edge tables with the cache, so treat it as read-only.
    """
    base, conj = cyclic_sliding(u)
    hit = _cached_graph(base, conj)
    if hit is not None:
        return hit
    g = SlidingCircuitGraph(base=base, base_conjugator=conj)
    g.vertices[base] = 0
    g.paths[base] = BraidWord(base.n, ())
    queue = deque([base])
    in_sc: dict[NormalForm, bool] = {}
    while queue:
        v = queue.popleft()
        for s in minimal_simple_elements(v, cap, in_sc):
            w = conjugate_by_simple(v, s)
            if w not in g.vertices:
                if len(g.vertices) >= cap:
                    raise ResourceCapExceeded(f"sliding circuit set larger than {cap}")
                g.vertices[w] = len(g.vertices)
                g.paths[w] = multiply(g.paths[v], _word_of(s))
                g.tree_edges.add(len(g.edges))
                queue.append(w)
            g.edges.append((g.vertices[v], s, g.vertices[w]))
    _GRAPH_CACHE[id(g)] = g
    while len(_GRAPH_CACHE) > _GRAPH_CACHE_SIZE:
        _GRAPH_CACHE.popitem(last=False)
    return g


def brute_force_sliding_circuit_set(u) -> frozenset[NormalForm]:
    """SC(u) by closing under conjugation with every simple element (small n only)."""
    base, _ = cyclic_sliding(u)
    n = base.n
    found = {base}
    queue = deque([base])
    while queue:
        v = queue.popleft()
        for s in all_simples(n)[1:]:
            w = conjugate_by_simple(v, s)
            if w in found or w.p != v.p or w.length != v.length:
                continue
            if in_sliding_circuit(w):
                found.add(w)
                queue.append(w)
    return frozenset(found)


# ---------------------------------------------------------------------------
# conjugacy search


def _cheap_invariants(x) -> tuple:
    w = x.word() if isinstance(x, NormalForm) else x
    return (exponent_sum(w), cycle_type(permutation_of(w)))


def _witness(src, dst, g: BraidWord) -> ConjugacyWitness:
    target = left_normal_form(dst)
    if nf_product(g, src, inverse(g)) != target:
        raise AssertionError("conjugacy witness failed verification")
    return ConjugacyWitness(conjugator=left_normal_form(g).word(), target_rep=target)


def conjugacy_search(src, dst, cap: int = DEFAULT_CAP) -> Optional[ConjugacyWitness]:
    """Find ``g`` with ``g src g^-1 == dst``; None when the braids are not conjugate."""
    if src.n != dst.n:
        raise ValueError(f"strand mismatch: B{src.n} vs B{dst.n}")
    if _cheap_invariants(src) != _cheap_invariants(dst):
        return None
    base_d, conj_d = cyclic_sliding(dst)
    base_s, _ = cyclic_sliding(src)
    if (base_s.p, base_s.length) != (base_d.p, base_d.length):
        return None
    graph = sliding_circuit_set(src, cap)
    if base_d not in graph.vertices:
        return None
    # base_d = P^-1 C_s^-1 src C_s P and dst = C_d base_d C_d^-1
    path = graph.paths[base_d]
    g = multiply(multiply(conj_d, inverse(path)), inverse(graph.base_conjugator))
    return _witness(src, dst, g)


def brute_force_conjugacy(src, dst, max_len: int) -> Optional[BraidWord]:
    """Search freely reduced words up to ``max_len`` letters for a conjugator."""
    n = src.n
    target = left_normal_form(dst)
    s_nf = left_normal_form(src)
    letters = [i for k in range(1, n) for i in (k, -k)]
    frontier: list[tuple[int, ...]] = [()]
    for _ in range(max_len + 1):
        nxt = []
        for w in frontier:
            g = BraidWord(n, w)
            if left_normal_form(g) * s_nf * left_normal_form(inverse(g)) == target:
                return g
            for x in letters:
                if w and w[-1] == -x:
                    continue
                nxt.append(w + (x,))
        frontier = nxt
    return None


# ---------------------------------------------------------------------------
# centralizers


def _delta_power_centralizer(x: NormalForm) -> list[BraidWord]:
    n = x.n
    if n == 2 or x.p % 2 == 0:
        return [BraidWord(n, (i,)) for i in range(1, n)]
    # centralizer of an odd Delta power: the tau-fixed subgroup
    m = n // 2
    if n % 2 == 0:
        gens = [BraidWord(n, (i, n - i)) for i in range(1, m)] + [BraidWord(n, (m,))]
    else:
        gens = [BraidWord(n, (i, n - i)) for i in range(1, m)] + [BraidWord(n, (m, m + 1, m))]
    return gens + [delta_word(n)]


def _in_delta_w_subgroup(g: NormalForm, e: int, w: NormalForm, bound: int) -> bool:
    """Is g = Delta^(e i) w^j for some integers i, j?"""
    n = g.n
    full = n * (n - 1) // 2
    es_g = exponent_sum(g.word())
    es_w = exponent_sum(w.word())
    winv = w.inverse()
    pos, neg = NormalForm(n, 0, ()), NormalForm(n, 0, ())
    for j in range(bound + 1):
        for sign, h in ((1, pos), (-1, neg)):
            if j == 0 and sign == -1:
                continue
            if (es_g - sign * j * es_w) % (e * full):
                continue
            # g w^-j = Delta^(e i)
            r = g * h.inverse()
            if not r.factors and r.p % e == 0:
                return True
        pos = pos * w
        neg = neg * winv
    return False


def centralizer_gens(u, cap: int = DEFAULT_CAP) -> CentralizerGens:
    """Generators of the centralizer of ``u`` from loops in its sliding circuit graph."""
    x = left_normal_form(u)
    n = x.n
    if not x.factors:
        return CentralizerGens(gens=_delta_power_centralizer(x))
    graph = sliding_circuit_set(x, cap)
    verts = graph.vertex_list()
    raw: list[BraidWord] = []
    seen: set[NormalForm] = set()
    central = delta_word(n, 1 if n == 2 else 2)
    conj = graph.base_conjugator
    conj_inv = inverse(conj)
    for k, (i, s, j) in enumerate(graph.edges):
        if k in graph.tree_edges:
            continue
        loop = multiply(multiply(graph.paths[verts[i]], _word_of(s)), inverse(graph.paths[verts[j]]))
        h = nf_product(conj, loop, conj_inv)
        if not h.factors and h.p == 0:
            continue
        if h not in seen:
            seen.add(h)
            raw.append(h.word())
    if left_normal_form(central) not in seen:
        raw.append(central)
    for g in raw:
        if nf_product(g, x) != nf_product(x, g):
            raise AssertionError("centralizer generator does not commute")
    generic = _generic_form(x, raw)
    if generic is not None:
        e, w = generic
        return CentralizerGens(gens=[delta_word(n, e), w], generic_form=generic, loop_gens=tuple(raw))
    return CentralizerGens(gens=raw, generic_form=None, loop_gens=tuple(raw))


def _generic_form(x: NormalForm, gens: list[BraidWord]) -> Optional[tuple[int, BraidWord]]:
    n = x.n
    dnf = left_normal_form(delta_word(n))
    e = 1 if n == 2 or dnf * x == x * dnf else 2
    reduced = []
    for g in gens:
        h = left_normal_form(g)
        if not h.factors:
            continue
        shift = h.p - (h.p % e)
        reduced.append(NormalForm(n, h.p - shift, h.factors))
    if not reduced:
        return None
    w = min(reduced, key=lambda h: (h.length, abs(h.p), len(h.word()), h.word().letters))
    de = nf_power(dnf, e)
    if de * w != w * de:
        return None
    for g in gens:
        h = left_normal_form(g)
        if not _in_delta_w_subgroup(h, e, w, bound=h.length + h.sup - h.inf + 2):
            return None
    return e, w.word()


# ---------------------------------------------------------------------------
# parabolic-constrained search


def _strip_delta(h: NormalForm, block, src_nf: NormalForm, dst_nf: NormalForm) -> Optional[NormalForm]:
    """Find m with Delta^-m h in the block's parabolic subgroup still conjugating src to dst."""
    for m in range(h.inf, h.sup + 1):
        cand = NormalForm(h.n, -m, ()) * h
        if in_parabolic(cand, block) and cand * src_nf * cand.inverse() == dst_nf:
            return cand
    return None


def coset_search(
    g: NormalForm,
    cent: CentralizerGens,
    src,
    dst,
    block: Iterable[int],
    budget: int = DEFAULT_COSET_BUDGET,
    exponent_bound: Optional[int] = None,
    accept: Optional[Callable[[NormalForm], bool]] = None,
) -> Optional[NormalForm]:
    """Search ``g * <centralizer of src>`` for an element Delta^m a' with a' in the block.

    Generic centralizers {Delta^e, w} are walked along the w-exponent in the
    order 0, -1, +1, -2, ... ; otherwise products of all generators are
    enumerated breadth-first. Returns a' or None. With ``accept`` given, block
    elements it rejects are skipped and the walk goes on.
    """
    block = list(block)
    src_nf, dst_nf = left_normal_form(src), left_normal_form(dst)
    n = g.n

    def strip(h):
        hit = _strip_delta(h, block, src_nf, dst_nf)
        return hit if hit is None or accept is None or accept(hit) else None

    if cent.generic_form is not None:
        _, w = cent.generic_form
        wn = left_normal_form(w)
        winv = wn.inverse()
        bound = exponent_bound if exponent_bound is not None else g.length + 8
        bound = min(bound, budget)
        hit = strip(g)
        if hit is not None:
            return hit
        down, up = g, g
        for _ in range(bound):
            down = down * winv
            hit = strip(down)
            if hit is not None:
                return hit
            up = up * wn
            hit = strip(up)
            if hit is not None:
                return hit
        return None
    steps = []
    for z in cent.gens:
        zn = left_normal_form(z)
        steps += [zn, zn.inverse()]
    seen = {g}
    queue = deque([g])
    while queue:
        h = queue.popleft()
        hit = strip(h)
        if hit is not None:
            return hit
        for z in steps:
            nxt = h * z
            if nxt not in seen:
                if len(seen) >= budget:
                    return None
                seen.add(nxt)
                queue.append(nxt)
    return None


def constrained_conjugacy_search(
    src,
    dst,
    block: Iterable[int],
    cap: int = DEFAULT_CAP,
    coset_budget: int = DEFAULT_COSET_BUDGET,
    exponent_bound: Optional[int] = None,
    accept: Optional[Callable[[NormalForm], bool]] = None,
) -> Optional[ConjugacyWitness]:
    """Find a conjugator ``g`` inside the parabolic subgroup of ``block`` with ``g src g^-1 == dst``.

    ``accept`` further restricts which block conjugators count, as in :func:`coset_search`.
    """
    wit = conjugacy_search(src, dst, cap)
    if wit is None:
        return None
    g = left_normal_form(wit.conjugator)
    block = list(block)
    hit = _strip_delta(g, block, left_normal_form(src), left_normal_form(dst))
    if hit is not None and accept is not None and not accept(hit):
        hit = None
    if hit is None:
        cent = centralizer_gens(src, cap)
        hit = coset_search(g, cent, src, dst, block, coset_budget, exponent_bound, accept)
    if hit is None:
        return None
    return _witness(src, dst, hit.word())
