"""Garside structure of the braid group: simple elements and left normal forms.

Simple elements (permutation braids) are stored as 0-based permutation tuples
``perm`` with ``perm[i]`` the bottom position of the strand leaving top
position ``i``. The product of simple braids ``a * b`` (``a`` on top) has
permutation ``b[a[i]]``.

For a simple ``a``:

* ``i`` is a *left descent* (``sigma_{i+1}`` is a prefix of ``a``) iff
  ``a[i] > a[i+1]``;
* ``i`` is a *right descent* (``sigma_{i+1}`` is a suffix of ``a``) iff the
  strands ending at ``i`` and ``i+1`` have crossed.

A pair ``(a, b)`` is left-weighted iff every left descent of ``b`` is a right
descent of ``a``. Normal forms are built incrementally: right multiplication by
a simple element needs one right-to-left sweep of left-weightings, left
multiplication one left-to-right sweep.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .braid import BraidWord, inverse, multiply

__all__ = [
    "SimpleFactor",
    "NormalForm",
    "Decomposition",
    "delta",
    "delta_word",
    "meet_simple",
    "join_simple",
    "left_normal_form",
    "equals",
    "nf_power",
    "nf_product",
    "conjugate",
    "word_product",
    "word_inverse",
    "decompose",
    "fraction_word",
    "in_parabolic",
    "support",
    "support_blocks",
    "tau",
    "cycling",
    "decycling",
    "preferred_prefix",
    "sliding",
    "cyclic_sliding",
    "is_rigid",
    "is_left_weighted",
    "conjugate_by_simple",
    "all_simples",
    "prefixes",
    "parse_normal_form",
]

Perm = tuple  # 0-based permutation tuple


# ---------------------------------------------------------------------------
# permutation-level primitives


@lru_cache(maxsize=None)
def _ident(n: int) -> Perm:
    return tuple(range(n))


@lru_cache(maxsize=None)
def _delta(n: int) -> Perm:
    return tuple(range(n - 1, -1, -1))


@lru_cache(maxsize=None)
def _gen(n: int, i: int) -> Perm:
    p = list(range(n))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def _inv(a: Perm) -> Perm:
    q = [0] * len(a)
    for i, v in enumerate(a):
        q[v] = i
    return tuple(q)


def _mul(a: Perm, b: Perm) -> Perm:
    """Permutation of the braid a*b (not necessarily simple)."""
    return tuple(b[x] for x in a)


@lru_cache(maxsize=1 << 16)
def _tau(a: Perm) -> Perm:
    m = len(a) - 1
    return tuple(m - a[m - i] for i in range(len(a)))


def _tau_k(a: Perm, k: int) -> Perm:
    return _tau(a) if k % 2 else a


@lru_cache(maxsize=1 << 16)
def _rcomp(a: Perm) -> Perm:
    """Right complement a^-1 Delta."""
    m = len(a) - 1
    ainv = _inv(a)
    return tuple(m - ainv[j] for j in range(len(a)))


@lru_cache(maxsize=1 << 16)
def _lcomp(a: Perm) -> Perm:
    """Left complement Delta a^-1."""
    m = len(a) - 1
    ainv = _inv(a)
    return tuple(ainv[m - i] for i in range(len(a)))


def _left_desc(a: Perm) -> list[int]:
    return [i for i in range(len(a) - 1) if a[i] > a[i + 1]]


def _right_desc(a: Perm) -> list[int]:
    ainv = _inv(a)
    return [i for i in range(len(a) - 1) if ainv[i] > ainv[i + 1]]


@lru_cache(maxsize=1 << 18)
def _left_weight(a: Perm, b: Perm) -> tuple[Perm, Perm, bool]:
    """Return ``(a', b', moved)`` with ``a'b' = ab`` and ``(a', b')`` left-weighted.

    Moves generators from the front of ``b`` to the back of ``a`` while that
    keeps ``a`` simple; the result is ``(a (d a ^ b), (d a ^ b)^-1 b)``.
    """
    n = len(a)
    al = list(a)
    ainv = [0] * n
    for i, v in enumerate(al):
        ainv[v] = i
    bl = list(b)
    i = 0
    moved = False
    while i < n - 1:
        if bl[i] > bl[i + 1] and ainv[i] < ainv[i + 1]:
            bl[i], bl[i + 1] = bl[i + 1], bl[i]
            x, y = ainv[i], ainv[i + 1]
            al[x], al[y] = i + 1, i
            ainv[i], ainv[i + 1] = y, x
            moved = True
            i = i - 1 if i else 0
        else:
            i += 1
    if not moved:
        return a, b, False
    return tuple(al), tuple(bl), True


@lru_cache(maxsize=1 << 16)
def _meet(a: Perm, b: Perm) -> Perm:
    """Left gcd of two simple elements."""
    n = len(a)
    al, bl = list(a), list(b)
    m = list(range(n))
    minv = list(range(n))
    i = 0
    while i < n - 1:
        if al[i] > al[i + 1] and bl[i] > bl[i + 1]:
            al[i], al[i + 1] = al[i + 1], al[i]
            bl[i], bl[i + 1] = bl[i + 1], bl[i]
            x, y = minv[i], minv[i + 1]
            m[x], m[y] = i + 1, i
            minv[i], minv[i + 1] = y, x
            i = i - 1 if i else 0
        else:
            i += 1
    return tuple(m)


@lru_cache(maxsize=1 << 16)
def _right_meet(a: Perm, b: Perm) -> Perm:
    """Right gcd (largest common suffix) of two simple elements."""
    n = len(a)
    al, bl = list(a), list(b)
    ainv, binv = _inv_list(al), _inv_list(bl)
    m = list(range(n))
    i = 0
    while i < n - 1:
        if ainv[i] > ainv[i + 1] and binv[i] > binv[i + 1]:
            # a = a' sigma, strip sigma from the right of both
            for lst, inv_ in ((al, ainv), (bl, binv)):
                x, y = inv_[i], inv_[i + 1]
                lst[x], lst[y] = i + 1, i
                inv_[i], inv_[i + 1] = y, x
            # m <- sigma m
            m[i], m[i + 1] = m[i + 1], m[i]
            i = i - 1 if i else 0
        else:
            i += 1
    return tuple(m)


def _inv_list(a: list[int]) -> list[int]:
    q = [0] * len(a)
    for i, v in enumerate(a):
        q[v] = i
    return q


@lru_cache(maxsize=1 << 16)
def _join(a: Perm, b: Perm) -> Perm:
    """Left lcm of two simple elements: Delta (da ^_R db)^-1."""
    return _lcomp(_right_meet(_rcomp(a), _rcomp(b)))


@lru_cache(maxsize=1 << 16)
def _perm_word(a: Perm) -> tuple[int, ...]:
    """Positive word of a simple element (lexicographically smallest prefix first)."""
    al = list(a)
    out = []
    i = 0
    n = len(al)
    while i < n - 1:
        if al[i] > al[i + 1]:
            out.append(i + 1)
            al[i], al[i + 1] = al[i + 1], al[i]
            i = i - 1 if i else 0
        else:
            i += 1
    return tuple(out)


def _perm_support(a: Perm) -> set[int]:
    """Generators (1-based) needed to write the simple element ``a``."""
    out = set()
    hi = -1
    for i in range(len(a) - 1):
        hi = max(hi, a[i])
        if hi > i:
            out.add(i + 1)
    return out


# ---------------------------------------------------------------------------
# public simple-element API


class SimpleFactor(tuple):
    """A permutation braid, stored as its 0-based permutation."""

    @property
    def n(self) -> int:
        return len(self)

    @classmethod
    def from_word(cls, u: BraidWord) -> SimpleFactor:
        a = list(range(u.n))
        ainv = list(range(u.n))
        for x in u.letters:
            i = x - 1
            if x < 0 or ainv[i] > ainv[i + 1]:
                raise ValueError(f"{u} is not a permutation braid")
            p, q = ainv[i], ainv[i + 1]
            a[p], a[q] = i + 1, i
            ainv[i], ainv[i + 1] = q, p
        return cls(a)

    @classmethod
    def identity(cls, n: int) -> SimpleFactor:
        return cls(_ident(n))

    def word(self) -> BraidWord:
        return BraidWord(len(self), _perm_word(tuple(self)))

    def permutation(self) -> tuple[int, ...]:
        """1-based image, matching :func:`braidcrypt.braid.permutation_of`."""
        return tuple(v + 1 for v in self)

    def left_descents(self) -> set[int]:
        return {i + 1 for i in _left_desc(tuple(self))}

    def right_descents(self) -> set[int]:
        return {i + 1 for i in _right_desc(tuple(self))}

    def __repr__(self) -> str:
        return f"SimpleFactor({list(self)})"


def delta(n: int) -> SimpleFactor:
    """The Garside element: the positive half twist on ``n`` strands."""
    if n < 2:
        raise ValueError("Delta needs n >= 2")
    return SimpleFactor(_delta(n))


def delta_word(n: int, power: int = 1) -> BraidWord:
    """Word (sigma_1..sigma_{n-1})(sigma_1..sigma_{n-2})...(sigma_1), raised to ``power``."""
    if n < 2:
        raise ValueError("Delta needs n >= 2")
    w = tuple(i for k in range(n - 1, 0, -1) for i in range(1, k + 1))
    return BraidWord(n, w) ** power


def meet_simple(s: Sequence[int], t: Sequence[int]) -> SimpleFactor:
    if len(s) != len(t):
        raise ValueError("strand mismatch")
    return SimpleFactor(_meet(tuple(s), tuple(t)))


def join_simple(s: Sequence[int], t: Sequence[int]) -> SimpleFactor:
    if len(s) != len(t):
        raise ValueError("strand mismatch")
    return SimpleFactor(_join(tuple(s), tuple(t)))


@lru_cache(maxsize=None)
def all_simples(n: int) -> tuple[Perm, ...]:
    """Every simple element of B_n (n! of them), identity first, Delta last."""
    return tuple(sorted(itertools.permutations(range(n)), key=lambda p: (len(_perm_word(p)), p)))


@lru_cache(maxsize=1 << 14)
def _prefixes(s: Perm) -> tuple[Perm, ...]:
    n = len(s)
    ident = _ident(n)
    seen = {ident: s}
    frontier = [(ident, s)]
    while frontier:
        nxt = []
        for u, rest in frontier:
            uinv = _inv(u)
            for i in _left_desc(rest):
                ul = list(u)
                x, y = uinv[i], uinv[i + 1]
                ul[x], ul[y] = i + 1, i
                u2 = tuple(ul)
                if u2 in seen:
                    continue
                rl = list(rest)
                rl[i], rl[i + 1] = rl[i + 1], rl[i]
                seen[u2] = tuple(rl)
                nxt.append((u2, seen[u2]))
        frontier = nxt
    return tuple(sorted(seen, key=lambda p: (len(_perm_word(p)), p)))


def prefixes(s: Sequence[int]) -> list[SimpleFactor]:
    """All simple prefixes of ``s`` (including 1 and ``s``), shortest first."""
    return [SimpleFactor(p) for p in _prefixes(tuple(s))]


# ---------------------------------------------------------------------------
# normal forms


@dataclass(frozen=True)
class NormalForm:
    """Left normal form Delta^p x_1 ... x_l with left-weighted simple factors."""

    n: int
    p: int
    factors: tuple[Perm, ...] = ()

    @property
    def length(self) -> int:
        """Canonical length l."""
        return len(self.factors)

    @property
    def inf(self) -> int:
        return self.p

    @property
    def sup(self) -> int:
        return self.p + len(self.factors)

    def is_delta_power(self) -> bool:
        return not self.factors

    def simple_factors(self) -> list[SimpleFactor]:
        return [SimpleFactor(f) for f in self.factors]

    def word(self) -> BraidWord:
        letters = list(delta_word(self.n, self.p).letters)
        for f in self.factors:
            letters.extend(_perm_word(f))
        return BraidWord(self.n, tuple(letters))

    def __mul__(self, other: NormalForm) -> NormalForm:
        return _nf_mul(self, other)

    def inverse(self) -> NormalForm:
        return _nf_inv(self)

    def __str__(self) -> str:
        parts = [f"B{self.n}: D^{self.p}"]
        parts += [" ".join(str(x) for x in _perm_word(f)) for f in self.factors]
        return " | ".join(parts)


@dataclass(frozen=True)
class Decomposition:
    """``alpha = a1^-1 * a2`` with both parts positive."""

    a1: BraidWord
    a2: BraidWord


BraidLike = Union[BraidWord, NormalForm]


def _append(factors: list, s: Perm, ident: Perm) -> None:
    factors.append(s)
    j = len(factors) - 1
    while j > 0:
        a, b = factors[j - 1], factors[j]
        a2, b2, moved = _left_weight(a, b)
        if not moved:
            break
        factors[j - 1], factors[j] = a2, b2
        j -= 1
    while factors and factors[-1] == ident:
        factors.pop()


def _prepend(factors: list, s: Perm, ident: Perm) -> None:
    factors.insert(0, s)
    j = 0
    last = len(factors) - 1
    while j < last:
        a, b = factors[j], factors[j + 1]
        a2, b2, moved = _left_weight(a, b)
        if not moved:
            break
        factors[j], factors[j + 1] = a2, b2
        j += 1
    while factors and factors[-1] == ident:
        factors.pop()


def _finish(n: int, p: int, factors: list) -> NormalForm:
    d = _delta(n)
    k = 0
    while k < len(factors) and factors[k] == d:
        k += 1
    return NormalForm(n, p + k, tuple(factors[k:]))


def _normalize(n: int, p: int, seq: Iterable[Perm]) -> NormalForm:
    ident = _ident(n)
    factors: list = []
    for s in seq:
        _append(factors, s, ident)
    return _finish(n, p, factors)


def left_normal_form(u: BraidLike) -> NormalForm:
    """Left normal form of a braid word (quadratic in the word length)."""
    if isinstance(u, NormalForm):
        return u
    n = u.n
    if n == 1:
        return NormalForm(1, 0, ())
    seq = []
    negs = 0
    # sigma_i^-1 = Delta^-1 (Delta sigma_i^-1); each Delta^-1 is pushed to the
    # front, twisting by tau every factor it passes.
    for x in reversed(u.letters):
        f = _gen(n, x) if x > 0 else _lcomp(_gen(n, -x))
        if negs % 2:
            f = _tau(f)
        seq.append(f)
        if x < 0:
            negs += 1
    seq.reverse()
    return _normalize(n, -negs, seq)


def _nf_mul(x: NormalForm, y: NormalForm) -> NormalForm:
    if x.n != y.n:
        raise ValueError(f"strand mismatch: B{x.n} vs B{y.n}")
    n = x.n
    ident = _ident(n)
    left = [_tau_k(f, y.p) for f in x.factors]
    if len(y.factors) <= len(left):
        for f in y.factors:
            _append(left, f, ident)
        return _finish(n, x.p + y.p, left)
    right = list(y.factors)
    for f in reversed(left):
        _prepend(right, f, ident)
    return _finish(n, x.p + y.p, right)


def _nf_inv(x: NormalForm) -> NormalForm:
    n, p, fs = x.n, x.p, x.factors
    l = len(fs)
    seq = [_tau_k(_lcomp(fs[j - 1]), j - 1 + p) for j in range(l, 0, -1)]
    return _normalize(n, -p - l, seq)


def _nf_delta_power(n: int, p: int) -> NormalForm:
    return NormalForm(n, p, ())


def equals(u: BraidLike, v: BraidLike) -> bool:
    if u.n != v.n:
        raise ValueError(f"strand mismatch: B{u.n} vs B{v.n}")
    return left_normal_form(u) == left_normal_form(v)


def nf_power(u: BraidLike, k: int) -> NormalForm:
    x = left_normal_form(u)
    if k < 0:
        x, k = x.inverse(), -k
    result = NormalForm(x.n, 0, ())
    base = x
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def nf_product(*items: BraidLike) -> NormalForm:
    """Normal form of a product of braids/normal forms, left to right."""
    it = iter(items)
    acc = left_normal_form(next(it))
    for x in it:
        acc = acc * left_normal_form(x)
    return acc


def conjugate(g: BraidLike, x: BraidLike) -> NormalForm:
    """Normal form of g x g^-1."""
    gn = left_normal_form(g)
    return gn * left_normal_form(x) * gn.inverse()


def conjugate_by_simple(x: NormalForm, s: Perm) -> NormalForm:
    """Normal form of s^-1 x s for a simple element s."""
    n = x.n
    ident = _ident(n)
    factors = list(x.factors)
    _append(factors, tuple(s), ident)
    # s^-1 Delta^p = Delta^(p-1) tau^p(lcomp(s))
    _prepend(factors, _tau_k(_lcomp(tuple(s)), x.p), ident)
    return _finish(n, x.p - 1, factors)


def tau(u: BraidLike, k: int = 1) -> BraidLike:
    """Conjugation by Delta, sigma_i -> sigma_{n-i}."""
    if isinstance(u, NormalForm):
        return NormalForm(u.n, u.p, tuple(_tau_k(f, k) for f in u.factors))
    if k % 2 == 0:
        return u
    return BraidWord(u.n, tuple((u.n - x) if x > 0 else -(u.n + x) for x in u.letters))


def is_left_weighted(nf: NormalForm) -> bool:
    """Check the normal-form invariants: no trivial/Delta factors, adjacent pairs left-weighted."""
    n = nf.n
    if any(f == _ident(n) or f == _delta(n) for f in nf.factors):
        return False
    return not any(_left_weight(a, b)[2] for a, b in zip(nf.factors, nf.factors[1:]))


def decompose(u: BraidLike) -> Decomposition:
    """Write ``u = a1^-1 a2`` with positive ``a1``, ``a2``."""
    x = left_normal_form(u)
    n, p, fs = x.n, x.p, x.factors
    if p >= 0:
        return Decomposition(BraidWord(n, ()), x.word())
    if len(fs) >= -p:
        head = NormalForm(n, p, fs[:-p])
        tail = NormalForm(n, 0, fs[-p:])
        return Decomposition(head.inverse().word(), tail.word())
    return Decomposition(x.inverse().word(), BraidWord(n, ()))


def _positive_parts(x: NormalForm) -> tuple[NormalForm, NormalForm]:
    n, p, fs = x.n, x.p, x.factors
    if p >= 0:
        return NormalForm(n, 0, ()), x
    if len(fs) >= -p:
        return NormalForm(n, p, fs[:-p]).inverse(), NormalForm(n, 0, fs[-p:])
    return x.inverse(), NormalForm(n, 0, ())


def support(u: BraidLike) -> set[int]:
    """Generators of the smallest standard parabolic subgroup containing ``u``."""
    x = left_normal_form(u)
    if x.n < 2:
        return set()
    out: set[int] = set()
    for part in _positive_parts(x):
        if part.p > 0:
            return set(range(1, x.n))
        for f in part.factors:
            out |= _perm_support(f)
    return out


def support_blocks(u: BraidLike) -> list[range]:
    """Maximal runs of consecutive generators in :func:`support`."""
    gens = sorted(support(u))
    blocks = []
    for g in gens:
        if blocks and blocks[-1].stop == g:
            blocks[-1] = range(blocks[-1].start, g + 1)
        else:
            blocks.append(range(g, g + 1))
    return blocks


def in_parabolic(u: BraidLike, block: Iterable[int]) -> bool:
    """Membership in the subgroup generated by the consecutive generators ``block``."""
    return support(u) <= set(block)


def cycling(nf: BraidLike) -> tuple[NormalForm, BraidWord]:
    """Conjugate by tau^-p(x_1); returns ``(new, g)`` with g^-1 old g = new."""
    x = left_normal_form(nf)
    if not x.factors:
        return x, BraidWord(x.n, ())
    iota = _tau_k(x.factors[0], x.p)
    return conjugate_by_simple(x, iota), BraidWord(x.n, _perm_word(iota))


def decycling(nf: BraidLike) -> tuple[NormalForm, BraidWord]:
    """Conjugate by x_l^-1; returns ``(new, g)`` with g^-1 old g = new."""
    x = left_normal_form(nf)
    if not x.factors:
        return x, BraidWord(x.n, ())
    last = x.factors[-1]
    g = BraidWord(x.n, _perm_word(last)).__invert__()
    new = NormalForm(x.n, x.p, (_tau_k(last, x.p),)) * NormalForm(x.n, 0, x.factors[:-1])
    return new, g


def preferred_prefix(nf: NormalForm) -> Perm:
    """iota(x) ^ d(phi(x)), the conjugator used by cyclic sliding."""
    if not nf.factors:
        return _ident(nf.n)
    return _meet(_tau_k(nf.factors[0], nf.p), _rcomp(nf.factors[-1]))


def sliding(nf: NormalForm) -> tuple[NormalForm, Perm]:
    """One cyclic sliding step; returns the new form and the simple conjugator."""
    pp = preferred_prefix(nf)
    if pp == _ident(nf.n):
        return nf, pp
    return conjugate_by_simple(nf, pp), pp


def cyclic_sliding(u: BraidLike, max_steps: int = 100_000) -> tuple[NormalForm, BraidWord]:
    """Slide until a form repeats; return a sliding-circuit element and the conjugator.

    The returned ``g`` satisfies ``g^-1 u g == rep``.
    """
    x = left_normal_form(u)
    seen = {x: 0}
    trail: list[Perm] = []
    cur = x
    for step in range(1, max_steps + 1):
        nxt, pp = sliding(cur)
        trail.append(pp)
        if nxt in seen:
            stop = seen[nxt]
            letters = [i for s in trail[:stop] for i in _perm_word(s)]
            return nxt, BraidWord(x.n, tuple(letters))
        seen[nxt] = step
        cur = nxt
    raise RuntimeError("cyclic sliding did not close up")


def is_rigid(nf: BraidLike) -> bool:
    x = left_normal_form(nf)
    if not x.factors:
        return False
    first = _tau_k(x.factors[0], x.p)
    return not _left_weight(x.factors[-1], first)[2]


def fraction_word(u: BraidLike) -> BraidWord:
    """The word a1^-1 a2 of the minimal left fraction; usually far shorter than ``nf.word()``."""
    d = decompose(u)
    return BraidWord(d.a2.n, tuple(-x for x in reversed(d.a1.letters)) + d.a2.letters)


def parse_normal_form(text: str) -> NormalForm:
    """Parse ``B<n>: D^<p> | <w1> | ...`` (each ``<wi>`` a positive simple word)."""
    head, *rest = text.split("|")
    head = head.strip()
    if not head.startswith("B") or ":" not in head:
        raise ValueError(f"not a normal form: {text!r}")
    ns, dp = head[1:].split(":", 1)
    n = int(ns)
    dp = dp.strip()
    if not dp.startswith("D^"):
        raise ValueError(f"missing D^<p> in {text!r}")
    p = int(dp[2:])
    factors = []
    for chunk in rest:
        w = BraidWord(n, tuple(int(t) for t in chunk.split()))
        factors.append(tuple(SimpleFactor.from_word(w)))
    nf = NormalForm(n, p, tuple(factors))
    if not is_left_weighted(nf):
        raise ValueError(f"factors are not in left normal form: {text!r}")
    return nf


def _as_word(u: BraidLike) -> BraidWord:
    return u.word() if isinstance(u, NormalForm) else u


def word_product(*items: BraidLike) -> BraidWord:
    """Concatenate braid words / normal forms into a single word."""
    it = iter(items)
    acc = _as_word(next(it))
    for x in it:
        acc = multiply(acc, _as_word(x))
    return acc


def word_inverse(u: BraidLike) -> BraidWord:
    return inverse(_as_word(u))
