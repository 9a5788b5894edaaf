"""k-th roots of braids.

The dispatcher in :func:`kth_root` tries, in order:

* cheap obstructions (exponent sum, strand permutation) that prove absence;
* closed forms for periodic inputs, whose roots are conjugates of powers of
  ``delta = s1 s2 ... s_{n-1}`` or ``eps = delta s1``;
* splitting along commuting blocks of generators;
* the sliding circuit set: at every vertex whose infimum and canonical
  length are divisible by ``k`` the first ``l/k`` factors are read off as a
  candidate (exact for rigid vertices), and split vertices recurse;
* a budgeted brute-force search.

Every root is checked with ``nf_power`` before it is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .braid import BraidWord, embed, exponent_sum, inverse, multiply, permutation_of
from .conjugacy import (
    DEFAULT_CAP,
    ResourceCapExceeded,
    centralizer_gens,
    conjugacy_search,
    cycle_type,
    sliding_circuit_set,
)
from .garside import (
    BraidLike,
    NormalForm,
    _tau_k,
    cyclic_sliding,
    decompose,
    delta_word,
    is_rigid,
    left_normal_form,
    nf_power,
    nf_product,
    support_blocks,
    word_product,
)

__all__ = [
    "RootResult",
    "FOUND",
    "NONEXISTENT",
    "GAVE_UP",
    "kth_root",
    "kth_root_rigid",
    "kth_root_periodic",
    "brute_force_root",
    "is_kth_power_permutation",
]

FOUND = "found"
NONEXISTENT = "nonexistent"
GAVE_UP = "gave_up"

DEFAULT_BRUTE_BUDGET = 20_000


@dataclass(frozen=True)
class RootResult:
    """Outcome of a root query.

    ``status`` is ``"found"`` (``root`` is set and verified), ``"nonexistent"``
    (a proof of absence was found) or ``"gave_up"``.
    """

    root: Optional[BraidWord]
    status: str
    method: str = ""

    def __bool__(self) -> bool:
        return self.root is not None


def _check_k(k: int) -> None:
    if k < 2:
        raise ValueError(f"root degree must be at least 2, got {k}")


def _is_root(r: BraidLike, target: NormalForm, k: int) -> bool:
    return nf_power(r, k) == target


def _word(u: BraidLike) -> BraidWord:
    """A word for ``u``; normal forms go through their minimal fraction."""
    if isinstance(u, BraidWord):
        return u
    d = decompose(u)
    return multiply(inverse(d.a1), d.a2)


# ---------------------------------------------------------------------------
# obstructions


def is_kth_power_permutation(perm: tuple[int, ...], k: int) -> bool:
    """Whether a permutation (1-based images) is a k-th power in S_n.

    An m-cycle raised to the k-th power splits into gcd(m, k) cycles of length
    m / gcd(m, k), so the c_L cycles of length L must be a sum of admissible
    block sizes g (g | k with gcd(L g, k) == g).
    """
    counts: dict[int, int] = {}
    for length in cycle_type(perm):
        counts[length] = counts.get(length, 0) + 1
    for length, c in counts.items():
        sizes = [g for g in range(1, k + 1) if k % g == 0 and math.gcd(length * g, k) == g]
        reach = [False] * (c + 1)
        reach[0] = True
        for total in range(1, c + 1):
            reach[total] = any(total >= g and reach[total - g] for g in sizes)
        if not reach[c]:
            return False
    return True


def _obstructed(w: BraidWord, k: int) -> bool:
    return exponent_sum(w) % k != 0 or not is_kth_power_permutation(permutation_of(w), k)


# ---------------------------------------------------------------------------
# rigid and periodic branches


def _read_off(x: NormalForm, k: int) -> Optional[NormalForm]:
    p, l = x.p, x.length
    if p % k or l % k:
        return None
    q = p // k
    head = tuple(_tau_k(f, q * (k - 1)) for f in x.factors[: l // k])
    cand = NormalForm(x.n, q, head)
    return cand if nf_power(cand, k) == x else None


def kth_root_rigid(nf: BraidLike, k: int) -> Optional[BraidWord]:
    """Root of a rigid braid read off from its normal form.

    For rigid ``a = D^q y``, ``a^k = D^(kq) tau^(q(k-1))(y) ... tau^q(y) y``
    is again in normal form, so the first ``l/k`` factors, untwisted, give
    ``y`` back.
    """
    _check_k(k)
    x = left_normal_form(nf)
    if not is_rigid(x):
        raise ValueError("kth_root_rigid needs a rigid braid")
    cand = _read_off(x, k)
    return None if cand is None else cand.word()


def _delta_like(n: int) -> list[tuple[BraidWord, int]]:
    """(generator, exponent sum) for delta, eps and Delta."""
    d = BraidWord(n, tuple(range(1, n)))
    eps = multiply(d, BraidWord(n, (1,)))
    return [(d, n - 1), (eps, n), (delta_word(n), n * (n - 1) // 2)]


def _is_periodic(x: NormalForm) -> bool:
    if not x.factors:
        return True
    n = x.n
    return any(not nf_power(x, m).factors for m in (n, n - 1) if m >= 1)


def kth_root_periodic(nf: BraidLike, k: int, cap: int = DEFAULT_CAP) -> Optional[BraidWord]:
    """Root of a periodic braid, conjugated from a power of delta, eps or Delta."""
    _check_k(k)
    x = left_normal_form(nf)
    if not _is_periodic(x):
        raise ValueError("kth_root_periodic needs a periodic braid")
    w = x.word()
    e = exponent_sum(w)
    if e % k:
        return None
    target_e = e // k
    for gen, ge in _delta_like(x.n):
        if ge == 0 or target_e % ge:
            continue
        cand = gen ** (target_e // ge)
        powered = nf_power(cand, k)
        if powered == x:
            return cand
        wit = conjugacy_search(powered, x, cap)
        if wit is None:
            continue
        root = word_product(wit.conjugator, cand, inverse(wit.conjugator))
        if _is_root(root, x, k):
            return root
    return None


# ---------------------------------------------------------------------------
# splitting


def _letter_blocks(w: BraidWord) -> list[range]:
    gens = sorted(w.generators_used())
    blocks: list[range] = []
    for g in gens:
        if blocks and blocks[-1].stop == g:
            blocks[-1] = range(blocks[-1].start, g + 1)
        else:
            blocks.append(range(g, g + 1))
    return blocks


def _split_root(w: BraidWord, k: int, cap: int, budget: int, depth: int) -> Optional[BraidWord]:
    """Root blockwise when the letters of ``w`` avoid some generator."""
    n = w.n
    blocks = _letter_blocks(w)
    if not blocks or (len(blocks) == 1 and len(blocks[0]) == n - 1):
        return None
    pieces = []
    for b in blocks:
        lo = b.start
        local = BraidWord(len(b) + 1, tuple(x - (lo - 1) if x > 0 else x + (lo - 1) for x in w.letters if abs(x) in b))
        res = _kth_root(local, k, cap, budget, depth + 1)
        if res.root is None:
            return None
        pieces.append(embed(res.root, n, lo - 1))
    return word_product(*pieces) if pieces else BraidWord(n, ())


# ---------------------------------------------------------------------------
# brute force


def _reduced_words(n: int, length: int):
    letters = [x for i in range(1, n) for x in (i, -i)]

    def extend(prefix: tuple, left: int):
        if left == 0:
            yield prefix
            return
        for x in letters:
            if prefix and prefix[-1] == -x:
                continue
            yield from extend(prefix + (x,), left - 1)

    yield from extend((), length)


def brute_force_root(
    u: BraidLike, k: int, max_len: Optional[int] = None, budget: Optional[int] = None
) -> Optional[BraidWord]:
    """Shortest-first search over freely reduced words, one per normal form.

    ``max_len`` defaults to ``ceil(letters(u) / k) + 2``; ``budget`` caps the
    number of distinct candidates tried.
    """
    _check_k(k)
    w = _word(u)
    target = left_normal_form(w)
    if max_len is None:
        max_len = -(-len(w) // k) + 2
    e = exponent_sum(w)
    if e % k:
        return None
    want = e // k
    seen: set[NormalForm] = set()
    tried = 0
    for length in range(max_len + 1):
        if abs(want) > length or (length - want) % 2:
            continue
        for letters in _reduced_words(w.n, length):
            if sum(1 if x > 0 else -1 for x in letters) != want:
                continue
            cand = BraidWord(w.n, letters)
            nf = left_normal_form(cand)
            if nf in seen:
                continue
            seen.add(nf)
            tried += 1
            if budget is not None and tried > budget:
                return None
            if nf_power(nf, k) == target:
                return cand
    return None


# ---------------------------------------------------------------------------
# dispatcher


def kth_root(
    u: BraidLike,
    k: int,
    cap: int = DEFAULT_CAP,
    brute_budget: int = DEFAULT_BRUTE_BUDGET,
    max_len: Optional[int] = None,
) -> RootResult:
    """Find ``a`` with ``a^k == u``.

    The result's ``root`` is verified; ``status`` says whether absence was
    proved or the search gave up. ``cap`` bounds the sliding circuit set and
    ``brute_budget`` the brute-force fallback (``max_len`` as in
    :func:`brute_force_root`).
    """
    _check_k(k)
    return _kth_root(_word(u), k, cap, brute_budget, 0, max_len)


def _kth_root(
    w: BraidWord, k: int, cap: int, budget: int, depth: int, max_len: Optional[int] = None
) -> RootResult:
    n = w.n
    x = left_normal_form(w)
    if n <= 1 or (x.p == 0 and not x.factors):
        return RootResult(BraidWord(n, ()), FOUND, "identity")
    if _obstructed(w, k):
        return RootResult(None, NONEXISTENT, "obstruction")

    if _is_periodic(x):
        try:
            r = kth_root_periodic(x, k, cap)
        except ResourceCapExceeded:
            return RootResult(None, GAVE_UP, "cap")
        # every root of a periodic braid is periodic, hence one of the candidates
        return RootResult(r, FOUND, "periodic") if r is not None else RootResult(None, NONEXISTENT, "periodic")

    r = _split_root(w, k, cap, budget, depth)
    if r is not None and _is_root(r, x, k):
        return RootResult(r, FOUND, "split")

    status_method = "exhausted"
    try:
        r, method = _circuit_root(x, k, cap, budget, depth)
        if r is not None and _is_root(r, x, k):
            return RootResult(r, FOUND, method)
        if method == "centralizer_nonexistent":
            return RootResult(None, NONEXISTENT, "centralizer")
    except ResourceCapExceeded:
        status_method = "cap"

    r = brute_force_root(w, k, max_len=max_len, budget=budget)
    if r is not None:
        return RootResult(r, FOUND, "brute_force")
    return RootResult(None, GAVE_UP, status_method)


def _circuit_root(x: NormalForm, k: int, cap: int, budget: int, depth: int) -> tuple[Optional[BraidWord], str]:
    base, conj = cyclic_sliding(x)
    if is_rigid(base):
        cand = _read_off(base, k)
        if cand is not None:
            return word_product(conj, cand, inverse(conj)), "rigid"
    graph = sliding_circuit_set(x, cap)
    c = graph.base_conjugator
    for v in graph.vertex_list():
        g = multiply(c, graph.paths[v])
        cand = _read_off(v, k)
        if cand is not None:
            return word_product(g, cand, inverse(g)), "circuit"
    for v in graph.vertex_list():
        blocks = support_blocks(v)
        if len(blocks) == 1 and len(blocks[0]) == x.n - 1:
            continue
        r = _split_root(_word(v), k, cap, budget, depth)
        if r is not None:
            g = multiply(c, graph.paths[v])
            return word_product(g, r, inverse(g)), "circuit_split"
    return _centralizer_root(x, k, cap)


def _centralizer_root(x: NormalForm, k: int, cap: int) -> tuple[Optional[BraidWord], str]:
    """Solve a^k = x inside a centralizer of the form <D^e, w>.

    Any root commutes with x. When the centralizer is free abelian on D^e and
    w, writing x = D^(e m) w^b forces a = D^(e m/k) w^(b/k).
    """
    cent = centralizer_gens(x, cap)
    if cent.generic_form is None:
        return None, "exhausted"
    e, w_word = cent.generic_form
    n = x.n
    w = left_normal_form(w_word)
    full = n * (n - 1) // 2
    es_x = exponent_sum(x.word())
    es_w = exponent_sum(w_word)
    bound = 2 * (x.sup - x.inf) + 4
    for b in sorted(range(-bound, bound + 1), key=lambda j: (abs(j), j)):
        if (es_x - b * es_w) % (e * full):
            continue
        rest = x * nf_power(w, -b)
        if rest.factors or rest.p % e:
            continue
        m = rest.p // e
        if b % k or m % k:
            return None, "centralizer_nonexistent"
        cand = nf_product(NormalForm(n, e * m // k, ()), nf_power(w, b // k))
        if nf_power(cand, k) == x:
            return cand.word(), "centralizer"
        return None, "exhausted"
    return None, "exhausted"
