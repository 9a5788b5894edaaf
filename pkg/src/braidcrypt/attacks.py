"""Forgers against the schemes in :mod:`braidcrypt.protocols`.

Attacks see public data and observed transcripts only. Every success is
checked against the honest verifier before it is reported.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .braid import BraidWord, delete_strands, embed, inverse, lower_block, random_word
from .conjugacy import (
    DEFAULT_CAP,
    DEFAULT_COSET_BUDGET,
    ConjugacyWitness,
    ResourceCapExceeded,
    centralizer_gens,
    conjugacy_search,
    constrained_conjugacy_search,
    coset_search,
)
from .garside import NormalForm, equals, fraction_word, in_parabolic, left_normal_form, word_product
from .protocols import (
    AS3Keys,
    SigKeys,
    SigPublic,
    Signature,
    as3_run,
    hash_to_bits,
)
from .roots import RootResult, kth_root

__all__ = [
    "AttackReport",
    "RecoveredAS2Secrets",
    "AS2AttackFailed",
    "attack_as1",
    "attack_as2_alg1",
    "attack_as2_alg2",
    "attack_as2_double_coset",
    "attack_as3",
    "as3_impersonate",
    "forge_signature",
    "signature_root",
    "OK",
    "CAP_EXCEEDED",
]

OK = "ok"
CAP_EXCEEDED = "cap_exceeded"


@dataclass(frozen=True)
class AttackReport:
    success: bool
    forgery_verified: bool
    elapsed: float
    resource_status: str = OK
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.forgery_verified and not self.success:
            raise ValueError("a verified forgery implies success")


# ---------------------------------------------------------------------------
# scheme I


def attack_as1(X: BraidWord, n: Optional[int] = None) -> tuple[BraidWord, BraidWord]:
    """Split X in LB*UB by forgetting the upper, then the lower, half of the strands.

    LB and UB braids never mix the two halves, so each half of X is recovered
    letter for letter.
    """
    n = X.n if n is None else n
    half = n // 2
    A = embed(delete_strands(X, range(1, half + 1)), n, 0)
    B = embed(delete_strands(X, range(half + 1, n + 1)), n, half)
    return A, B


# ---------------------------------------------------------------------------
# scheme II


@dataclass(frozen=True)
class RecoveredAS2Secrets:
    a1_hat: BraidWord
    a2_hat: BraidWord
    method: str


class AS2AttackFailed(RuntimeError):
    """No LB pair reproducing X was found within the search bounds."""


def _in_lb(u, n: int) -> bool:
    return in_parabolic(u, lower_block(n))


def _pair_from_a2(a2: BraidWord, X: BraidWord, c: BraidWord) -> BraidWord:
    return fraction_word(word_product(X, inverse(a2), inverse(c)))


def _pair_from_a1(a1: BraidWord, X: BraidWord, c: BraidWord) -> BraidWord:
    return fraction_word(word_product(inverse(c), inverse(a1), X))


def _checked(a1: BraidWord, a2: BraidWord, X: BraidWord, c: BraidWord, method: str) -> RecoveredAS2Secrets:
    n = X.n
    if not (_in_lb(a1, n) and _in_lb(a2, n)):
        raise AssertionError("recovered conjugators are not both in LB")
    if not equals(word_product(a1, c, a2), X):
        raise AssertionError("recovered pair does not reproduce X")
    return RecoveredAS2Secrets(a1, a2, method)


def _two_sided(X: BraidWord, c: BraidWord, search_a2, search_a1, method: str) -> RecoveredAS2Secrets:
    """Recover a2 (and a1 = X a2^-1 c^-1), else a1 (and a2 = c^-1 a1^-1 X).

    Each search receives the predicate that its partner lies in LB, so the
    pair is consistent by construction.
    """
    n = X.n
    errors = []
    capped = None
    for search, partner, a2_first in (
        (search_a2, lambda h: _in_lb(_pair_from_a2(fraction_word(h), X, c), n), True),
        (search_a1, lambda h: _in_lb(_pair_from_a1(fraction_word(h), X, c), n), False),
    ):
        try:
            found = search(partner)
        except ResourceCapExceeded as exc:
            capped = exc
            continue
        except AS2AttackFailed as exc:
            errors.append(str(exc))
            continue
        if a2_first:
            return _checked(_pair_from_a2(found, X, c), found, X, c, method)
        return _checked(found, _pair_from_a1(found, X, c), X, c, method + "/a1")
    if capped is not None:
        raise capped
    raise AS2AttackFailed("; ".join(errors))


def attack_as2_alg1(
    X: BraidWord,
    Y: BraidWord,
    Z: BraidWord,
    c: BraidWord,
    n: Optional[int] = None,
    cap: int = DEFAULT_CAP,
    coset_budget: int = DEFAULT_COSET_BUDGET,
) -> RecoveredAS2Secrets:
    """LB-constrained conjugacy between c^-1 Y and X^-1 Z, else between Y c^-1 and Z X^-1.

    From X^-1 Z = a2^-1 (c^-1 Y) a2 the witness h with h (c^-1 Y) h^-1 = X^-1 Z
    gives a2 = h^-1; from Z X^-1 = a1 (Y c^-1) a1^-1 the witness is a1 itself.
    """
    lb = lower_block(X.n)

    def a2_side(partner):
        src, dst = word_product(inverse(c), Y), word_product(inverse(X), Z)
        # the witness is h = a2^-1, so the partner test runs on its inverse
        wit = constrained_conjugacy_search(src, dst, lb, cap, coset_budget, accept=lambda h: partner(h.inverse()))
        return inverse(_req(wit, "c^-1 Y -> X^-1 Z"))

    def a1_side(partner):
        src, dst = word_product(Y, inverse(c)), word_product(Z, inverse(X))
        return _req(constrained_conjugacy_search(src, dst, lb, cap, coset_budget, accept=partner), "Y c^-1 -> Z X^-1")

    return _two_sided(X, c, a2_side, a1_side, "alg1")


def _req(w: Optional[ConjugacyWitness], what: str) -> BraidWord:
    if w is None:
        raise AS2AttackFailed(f"no LB conjugator for {what}")
    return w.conjugator


def _alg2_search(src, dst, n: int, cap: int, coset_budget: int, bound_extra: int, accept) -> BraidWord:
    """Witness g.src.g^-1 = dst, then walk g <Delta^e, w> for an LB element."""
    wit = conjugacy_search(src, dst, cap)
    if wit is None:
        raise AS2AttackFailed("transcript braids are not conjugate")
    g = left_normal_form(wit.conjugator)
    cent = centralizer_gens(src, cap)
    hit = coset_search(g, cent, src, dst, lower_block(n), coset_budget, g.length + bound_extra, accept)
    if hit is None:
        raise AS2AttackFailed("no LB element in the conjugator coset within the bound")
    return fraction_word(hit)


def attack_as2_alg2(
    X: BraidWord,
    Y: BraidWord,
    Z: BraidWord,
    c: BraidWord,
    n: Optional[int] = None,
    cap: int = DEFAULT_CAP,
    coset_budget: int = DEFAULT_COSET_BUDGET,
    secret_len_hint: int = 8,
) -> RecoveredAS2Secrets:
    """Any conjugator followed by a walk through the centralizer coset.

    ``a2`` conjugates X^-1 Z to c^-1 Y, so every such conjugator is ``a2 z``
    with ``z`` centralizing X^-1 Z; the walk multiplies by powers of the
    centralizer generator ``w`` in both directions. When that fails, ``a1``
    is sought the same way with Y c^-1 and Z X^-1.
    """
    n = X.n if n is None else n

    def a2_side(partner):
        src, dst = word_product(inverse(X), Z), word_product(inverse(c), Y)
        return _alg2_search(src, dst, n, cap, coset_budget, secret_len_hint, partner)

    def a1_side(partner):
        src, dst = word_product(Y, inverse(c)), word_product(Z, inverse(X))
        return _alg2_search(src, dst, n, cap, coset_budget, secret_len_hint, partner)

    return _two_sided(X, c, a2_side, a1_side, "alg2")


def attack_as2_double_coset(
    X: BraidWord, c: BraidWord, n: Optional[int] = None, budget: int = 200_000
) -> RecoveredAS2Secrets:
    """Solve X = a1 c a2 over LB directly, with no transcript.

    Balls around X (as u^-1 X) and around c (as c v) are grown in LB one
    letter at a time, keyed by normal form, until they meet. The cost is the
    size of the LB balls reaching the secrets, so this only works for short
    secrets, which is exactly the regime where the instances stop being
    generic.
    """
    n = X.n if n is None else n
    letters = [left_normal_form(BraidWord(n, (sgn * i,))) for i in lower_block(n) for sgn in (1, -1)]
    one = NormalForm(n, 0, ())
    xnf, cnf = left_normal_form(X), left_normal_form(c)
    # left[u^-1 X] = u, right[c v] = v
    left, right = {xnf: one}, {cnf: one}
    if xnf == cnf:
        return _checked(one.word(), one.word(), X, c, "double_coset")
    fronts = [[xnf], [cnf]]
    while fronts[0] or fronts[1]:
        for side in (0, 1):
            mine, other = (left, right) if side == 0 else (right, left)
            grown = []
            for h in fronts[side]:
                for s in letters:
                    nh = s * h if side == 0 else h * s
                    if nh in mine:
                        continue
                    mine[nh] = mine[h] * s.inverse() if side == 0 else mine[h] * s
                    grown.append(nh)
                    if nh in other:
                        a1, a2 = (left[nh], right[nh])
                        return _checked(fraction_word(a1), fraction_word(a2), X, c, "double_coset")
                    if len(left) + len(right) > budget:
                        raise AS2AttackFailed("double coset search budget exhausted")
            fronts[side] = grown
    raise AS2AttackFailed("double coset search exhausted")


# ---------------------------------------------------------------------------
# scheme III and the signature


def attack_as3(b: BraidWord, n: Optional[int] = None, cap: int = DEFAULT_CAP) -> RootResult:
    """Any square root of the public key answers both challenge branches."""
    return kth_root(b, 2, cap=cap)


def as3_impersonate(
    recovered_a: Optional[BraidWord],
    b: BraidWord,
    rounds: int = 20,
    seed: Union[int, np.random.Generator, None] = None,
) -> AttackReport:
    start = time.perf_counter()
    if recovered_a is None:
        return AttackReport(False, False, time.perf_counter() - start, detail={"reason": "no root"})
    if not equals(word_product(recovered_a, recovered_a), b):
        raise AssertionError("recovered element is not a square root of b")
    fake = AS3Keys(b.n, recovered_a, b, rounds)
    verdicts = as3_run(fake, seed)
    ok = all(verdicts)
    return AttackReport(ok, ok, time.perf_counter() - start, detail={"rounds": len(verdicts), "passed": sum(verdicts)})


def _public(pub: Union[SigPublic, SigKeys]) -> SigPublic:
    return pub.public if isinstance(pub, SigKeys) else pub


def signature_root(public: Union[SigPublic, SigKeys], message: bytes, cap: int = DEFAULT_CAP) -> RootResult:
    """k-th root of prod b_i^h_i; any such root signs the message."""
    pub = _public(public)
    h = hash_to_bits(message, pub.m)
    chosen = [b for b, bit in zip(pub.b, h) if bit]
    v = word_product(*chosen) if chosen else BraidWord(pub.n, ())
    return kth_root(v, pub.k, cap=cap)


def forge_signature(
    public: Union[SigPublic, SigKeys],
    message: bytes,
    seed: Union[int, np.random.Generator, None] = None,
    cap: int = DEFAULT_CAP,
    beta_len: int = 12,
) -> Optional[Signature]:
    """(beta' w beta'^-1, beta') with w^k = prod b_i^h_i and beta' random."""
    pub = _public(public)
    res = signature_root(pub, message, cap)
    if res.root is None:
        return None
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    beta = random_word(pub.n, beta_len, None, rng)
    return Signature(word_product(beta, res.root, inverse(beta)), beta)

