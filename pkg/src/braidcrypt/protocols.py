"""Authentication schemes I-III and the root-based signature.

Each scheme is split into key generation, prover steps and verifier steps.
Randomness comes from ``numpy.random.default_rng(seed)``; every function that
draws takes either an integer seed or a ``numpy.random.Generator``.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .braid import BraidWord, identity, inverse, lower_block, random_word, upper_block
from .garside import equals, in_parabolic, word_product

__all__ = [
    "AS1Keys",
    "AS1Challenge",
    "AS2Keys",
    "AS2Challenge",
    "AS3Keys",
    "SigKeys",
    "SigPublic",
    "Signature",
    "as1_keygen",
    "as1_challenge",
    "as1_make_challenge",
    "as1_respond",
    "as1_verify",
    "as2_keygen",
    "as2g_keygen",
    "as2_challenge",
    "as2_make_challenge",
    "as2_respond",
    "as2_verify",
    "as3_keygen",
    "as3_commit",
    "as3_respond",
    "as3_verify",
    "as3_run",
    "hash_to_bits",
    "sig_keygen",
    "sig_blocks",
    "sig_sign",
    "sig_verify",
]

Seed = Union[int, np.random.Generator, None]


def _rng(seed: Seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _check_rs(r: int, s: int) -> None:
    if r < 2 or s < 2:
        raise ValueError(f"exponents must be >= 2, got r={r}, s={s}")


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


# ---------------------------------------------------------------------------
# Scheme I: X = a^r b^s with a in LB, b in UB


@dataclass(frozen=True)
class AS1Keys:
    n: int
    r: int
    s: int
    a: BraidWord
    b: BraidWord
    X: BraidWord

    @classmethod
    def from_secrets(cls, n: int, r: int, s: int, a: BraidWord, b: BraidWord) -> AS1Keys:
        _check_rs(r, s)
        _require(in_parabolic(a, lower_block(n)), "a must lie in LB_n")
        _require(in_parabolic(b, upper_block(n)), "b must lie in UB_n")
        return cls(n, r, s, a, b, word_product(a ** r, b ** s))


@dataclass(frozen=True)
class AS1Challenge:
    c: BraidWord
    d: BraidWord
    r: int
    s: int
    Y: BraidWord


def as1_keygen(n: int, r: int, s: int, secret_len: int, seed: Seed = None) -> AS1Keys:
    rng = _rng(seed)
    a = random_word(n, secret_len, lower_block(n), rng)
    b = random_word(n, secret_len, upper_block(n), rng)
    return AS1Keys.from_secrets(n, r, s, a, b)


def as1_challenge(n: int, r: int, s: int, length: int, seed: Seed = None) -> AS1Challenge:
    """Verifier's Y = c^r d^s with c in UB and d in LB."""
    _check_rs(r, s)
    rng = _rng(seed)
    c = random_word(n, length, upper_block(n), rng)
    d = random_word(n, length, lower_block(n), rng)
    return AS1Challenge(c, d, r, s, word_product(c ** r, d ** s))


def as1_make_challenge(c: BraidWord, d: BraidWord, r: int, s: int) -> AS1Challenge:
    n = c.n
    _require(in_parabolic(c, upper_block(n)), "c must lie in UB_n")
    _require(in_parabolic(d, lower_block(n)), "d must lie in LB_n")
    return AS1Challenge(c, d, r, s, word_product(c ** r, d ** s))


def as1_respond(keys: AS1Keys, Y: BraidWord) -> BraidWord:
    return word_product(keys.a ** keys.r, Y, keys.b ** keys.s)


def as1_verify(X: BraidWord, challenge: AS1Challenge, Z: BraidWord) -> bool:
    ch = challenge
    return equals(Z, word_product(ch.c ** ch.r, X, ch.d ** ch.s))


# ---------------------------------------------------------------------------
# Scheme II: X = a1 c a2 with a1, a2 in LB (original: a1 = a^r, a2 = a^s)


@dataclass(frozen=True)
class AS2Keys:
    n: int
    c: BraidWord
    X: BraidWord
    a1: BraidWord
    a2: BraidWord
    r: Optional[int] = None
    s: Optional[int] = None
    a: Optional[BraidWord] = None

    @property
    def generalized(self) -> bool:
        return self.a is None

    @classmethod
    def from_secrets(cls, c: BraidWord, a1: BraidWord, a2: BraidWord) -> AS2Keys:
        n = c.n
        for x in (a1, a2):
            _require(in_parabolic(x, lower_block(n)), "secrets must lie in LB_n")
        return cls(n, c, word_product(a1, c, a2), a1, a2)

    @classmethod
    def from_original(cls, c: BraidWord, a: BraidWord, r: int, s: int) -> AS2Keys:
        _check_rs(r, s)
        _require(in_parabolic(a, lower_block(c.n)), "a must lie in LB_n")
        a1, a2 = a ** r, a ** s
        return cls(c.n, c, word_product(a1, c, a2), a1, a2, r, s, a)


@dataclass(frozen=True)
class AS2Challenge:
    """Y = b1 c b2 with b1, b2 in UB (original scheme: b1 = b^r, b2 = b^s)."""

    b1: BraidWord
    b2: BraidWord
    Y: BraidWord
    b: Optional[BraidWord] = None


def as2_keygen(n: int, r: int, s: int, secret_len: int, c_len: int, seed: Seed = None) -> AS2Keys:
    rng = _rng(seed)
    a = random_word(n, secret_len, lower_block(n), rng)
    c = random_word(n, c_len, None, rng)
    return AS2Keys.from_original(c, a, r, s)


def as2g_keygen(n: int, secret_len: int, c_len: int, seed: Seed = None) -> AS2Keys:
    rng = _rng(seed)
    a1 = random_word(n, secret_len, lower_block(n), rng)
    a2 = random_word(n, secret_len, lower_block(n), rng)
    c = random_word(n, c_len, None, rng)
    return AS2Keys.from_secrets(c, a1, a2)


def as2_challenge(
    c: BraidWord, length: int, seed: Seed = None, r: Optional[int] = None, s: Optional[int] = None
) -> AS2Challenge:
    """Random challenge; with ``r`` and ``s`` given, the original b^r c b^s form."""
    n = c.n
    rng = _rng(seed)
    if r is not None or s is not None:
        if r is None or s is None:
            raise ValueError("give both r and s for the original scheme")
        _check_rs(r, s)
        b = random_word(n, length, upper_block(n), rng)
        b1, b2 = b ** r, b ** s
        return AS2Challenge(b1, b2, word_product(b1, c, b2), b)
    b1 = random_word(n, length, upper_block(n), rng)
    b2 = random_word(n, length, upper_block(n), rng)
    return AS2Challenge(b1, b2, word_product(b1, c, b2))


def as2_make_challenge(c: BraidWord, b1: BraidWord, b2: BraidWord) -> AS2Challenge:
    for x in (b1, b2):
        _require(in_parabolic(x, upper_block(c.n)), "challenge braids must lie in UB_n")
    return AS2Challenge(b1, b2, word_product(b1, c, b2))


def as2_respond(keys: AS2Keys, Y: BraidWord) -> BraidWord:
    return word_product(keys.a1, Y, keys.a2)


def as2_verify(X: BraidWord, challenge: AS2Challenge, Z: BraidWord) -> bool:
    return equals(Z, word_product(challenge.b1, X, challenge.b2))


# ---------------------------------------------------------------------------
# Scheme III: b = a^2, commit x = r b r^-1


@dataclass(frozen=True)
class AS3Keys:
    n: int
    a: BraidWord
    b: BraidWord
    k_rounds: int = 20

    @classmethod
    def from_secret(cls, a: BraidWord, k_rounds: int = 20) -> AS3Keys:
        return cls(a.n, a, a ** 2, k_rounds)


def as3_keygen(n: int, secret_len: int, k_rounds: int = 20, seed: Seed = None) -> AS3Keys:
    return AS3Keys.from_secret(random_word(n, secret_len, None, _rng(seed)), k_rounds)


def as3_commit(keys: AS3Keys, seed: Seed = None, r_len: Optional[int] = None) -> tuple[BraidWord, BraidWord]:
    """Prover's commitment ``(x, r)`` with ``x = r b r^-1``; ``r`` stays secret."""
    length = len(keys.a) if r_len is None else r_len
    r = random_word(keys.n, length, None, _rng(seed))
    return word_product(r, keys.b, inverse(r)), r


def as3_respond(keys: AS3Keys, r: BraidWord, eps: int) -> BraidWord:
    if eps == 0:
        return r
    if eps == 1:
        return word_product(r, keys.a, inverse(r))
    raise ValueError(f"challenge bit must be 0 or 1, got {eps}")


def as3_verify(b: BraidWord, x: BraidWord, eps: int, y: BraidWord) -> bool:
    if eps == 0:
        return equals(x, word_product(y, b, inverse(y)))
    if eps == 1:
        return equals(x, word_product(y, y))
    raise ValueError(f"challenge bit must be 0 or 1, got {eps}")


def as3_run(keys: AS3Keys, seed: Seed = None, rounds: Optional[int] = None) -> list[bool]:
    """Run the rounds with random challenge bits; one verdict per round."""
    rng = _rng(seed)
    verdicts = []
    for _ in range(keys.k_rounds if rounds is None else rounds):
        x, r = as3_commit(keys, rng)
        eps = int(rng.integers(0, 2))
        verdicts.append(as3_verify(keys.b, x, eps, as3_respond(keys, r, eps)))
    return verdicts


# ---------------------------------------------------------------------------
# signature: b_i = alpha a_i^k alpha^-1, hash bits select the a_i


@dataclass(frozen=True)
class SigPublic:
    n: int
    m: int
    k: int
    b: tuple[BraidWord, ...]


@dataclass(frozen=True)
class SigKeys:
    n: int
    m: int
    k: int
    a: tuple[BraidWord, ...]
    alpha: BraidWord
    b: tuple[BraidWord, ...]

    @property
    def public(self) -> SigPublic:
        return SigPublic(self.n, self.m, self.k, self.b)

    @classmethod
    def from_secrets(cls, a: Sequence[BraidWord], alpha: BraidWord, k: int) -> SigKeys:
        if k < 2:
            raise ValueError(f"exponent k must be >= 2, got {k}")
        a = tuple(a)
        b = tuple(word_product(alpha, ai ** k, inverse(alpha)) for ai in a)
        return cls(alpha.n, len(a), k, a, alpha, b)


@dataclass(frozen=True)
class Signature:
    u: BraidWord
    gamma: BraidWord


def hash_to_bits(message: bytes, m: int) -> tuple[int, ...]:
    """First ``m`` bits of SHA-256(message), most significant bit first."""
    if m < 1 or m > 256:
        raise ValueError(f"bit count must be in 1..256, got {m}")
    digest = hashlib.sha256(message).digest()
    bits = []
    for byte in digest:
        for shift in range(7, -1, -1):
            bits.append((byte >> shift) & 1)
            if len(bits) == m:
                return tuple(bits)
    return tuple(bits)


def sig_blocks(n: int, m: int) -> list[range]:
    """m generator blocks of equal width separated by one unused generator."""
    if m < 1:
        raise ValueError("need at least one block")
    width = (n - 1 - (m - 1)) // m
    if width < 1:
        raise ValueError(f"B{n} cannot host {m} disjoint commuting blocks")
    return [range(1 + i * (width + 1), 1 + i * (width + 1) + width) for i in range(m)]


def sig_keygen(n: int, m: int, k: int, secret_len: int, seed: Seed = None) -> SigKeys:
    rng = _rng(seed)
    a = [random_word(n, secret_len, blk, rng) for blk in sig_blocks(n, m)]
    alpha = random_word(n, secret_len, None, rng)
    return SigKeys.from_secrets(a, alpha, k)


def _select(parts: Sequence[BraidWord], bits: Sequence[int], n: int) -> BraidWord:
    chosen = [p for p, h in zip(parts, bits) if h]
    return word_product(*chosen) if chosen else identity(n)


def sig_sign(keys: SigKeys, message: bytes, seed: Seed = None, beta_len: Optional[int] = None) -> Signature:
    """gamma = beta alpha^-1, u = beta (prod a_i^h_i) beta^-1 for a random beta."""
    h = hash_to_bits(message, keys.m)
    length = len(keys.alpha) if beta_len is None else beta_len
    beta = random_word(keys.n, length, None, _rng(seed))
    gamma = word_product(beta, inverse(keys.alpha))
    u = word_product(beta, _select(keys.a, h, keys.n), inverse(beta))
    return Signature(u, gamma)


def sig_verify(public: Union[SigPublic, SigKeys], message: bytes, sig: Signature) -> bool:
    h = hash_to_bits(message, public.m)
    v = _select(public.b, h, public.n)
    return equals(sig.u ** public.k, word_product(sig.gamma, v, inverse(sig.gamma)))
