import hashlib

import pytest
from hypothesis import given
from hypothesis import strategies as st

from braidcrypt.braid import BraidWord, identity, inverse, lower_block, upper_block
from braidcrypt.garside import equals, in_parabolic, word_product
from braidcrypt.protocols import (
    AS1Keys,
    AS2Keys,
    AS3Keys,
    SigKeys,
    Signature,
    as1_challenge,
    as1_keygen,
    as1_make_challenge,
    as1_respond,
    as1_verify,
    as2_challenge,
    as2_keygen,
    as2_make_challenge,
    as2_respond,
    as2_verify,
    as2g_keygen,
    as3_commit,
    as3_keygen,
    as3_respond,
    as3_run,
    as3_verify,
    hash_to_bits,
    sig_blocks,
    sig_keygen,
    sig_sign,
    sig_verify,
)

from conftest import braids


def B(n, *letters):
    return BraidWord(n, letters)


def message_with_bits(m, want):
    for i in range(10_000):
        msg = i.to_bytes(4, "big")
        if hash_to_bits(msg, m) == want:
            return msg
    raise AssertionError("no such message")


# --- scheme I ---------------------------------------------------------------


def test_as1_examples():
    assert equals(as1_keygen(8, 2, 2, 0, seed=1).X, identity(8))
    keys = AS1Keys.from_secrets(8, 2, 2, B(8, 1), B(8, 5))
    assert equals(keys.X, B(8, 1, 1, 5, 5))
    ch = as1_make_challenge(B(8, 6), B(8, 2), 2, 2)
    Z = as1_respond(keys, ch.Y)
    assert as1_verify(keys.X, ch, Z)
    assert not as1_verify(keys.X, ch, identity(8))


def test_as1_membership_checked():
    with pytest.raises(ValueError):
        AS1Keys.from_secrets(8, 2, 2, B(8, 5), B(8, 5))
    with pytest.raises(ValueError):
        as1_make_challenge(B(8, 1), B(8, 2), 2, 2)
    with pytest.raises(ValueError):
        as1_keygen(8, 1, 2, 4, seed=0)


@pytest.mark.parametrize("seed", range(10))
def test_as1_keys_invariants(seed):
    keys = as1_keygen(8, 2 + seed % 2, 3 - seed % 2, 10, seed=seed)
    assert in_parabolic(keys.a, lower_block(8)) and in_parabolic(keys.b, upper_block(8))
    assert equals(keys.X, word_product(keys.a ** keys.r, keys.b ** keys.s))


@pytest.mark.parametrize("seed", range(20))
def test_as1_complete(seed):
    keys = as1_keygen(8, 2, 3, 12, seed=seed)
    ch = as1_challenge(8, 2, 3, 12, seed=10_000 + seed)
    assert as1_verify(keys.X, ch, as1_respond(keys, ch.Y))


# --- scheme II --------------------------------------------------------------


def test_as2_original_example():
    keys = AS2Keys.from_original(B(8, 4), B(8, 1), 2, 2)
    ch = as2_make_challenge(B(8, 4), B(8, 5, 5), B(8, 5, 5))
    Z = as2_respond(keys, ch.Y)
    assert as2_verify(keys.X, ch, Z)
    assert not as2_verify(keys.X, ch, word_product(Z, B(8, 1)))


def test_as2_original_is_generalized():
    orig = as2_keygen(8, 2, 3, 6, 10, seed=4)
    gen = AS2Keys.from_secrets(orig.c, orig.a ** 2, orig.a ** 3)
    assert gen.X == orig.X and gen.generalized and not orig.generalized
    ch = as2_challenge(orig.c, 6, seed=5, r=2, s=3)
    assert as2_respond(orig, ch.Y) == as2_respond(gen, ch.Y)


def test_as2_membership_checked():
    with pytest.raises(ValueError):
        AS2Keys.from_secrets(B(8, 4), B(8, 5), identity(8))
    with pytest.raises(ValueError):
        as2_make_challenge(B(8, 4), B(8, 1), identity(8))
    with pytest.raises(ValueError):
        as2_challenge(B(8, 4), 3, seed=0, r=2)


@pytest.mark.parametrize("seed", range(20))
def test_as2_complete(seed):
    keys = as2_keygen(8, 2, 2, 12, 12, seed=seed)
    ch = as2_challenge(keys.c, 12, seed=500 + seed, r=2, s=2)
    assert as2_verify(keys.X, ch, as2_respond(keys, ch.Y))
    gkeys = as2g_keygen(8, 12, 12, seed=seed)
    gch = as2_challenge(gkeys.c, 12, seed=900 + seed)
    assert as2_verify(gkeys.X, gch, as2_respond(gkeys, gch.Y))


@given(braids(n=8, gens=lower_block(8)), braids(n=8, gens=upper_block(8)))
def test_lb_ub_commute(a, b):
    assert equals(word_product(a, b), word_product(b, a))


# --- scheme III -------------------------------------------------------------


def test_as3_examples():
    keys = AS3Keys.from_secret(B(3, 1))
    r = identity(3)
    x = word_product(r, keys.b, inverse(r))
    assert equals(x, B(3, 1, 1))
    y = as3_respond(keys, r, 1)
    assert equals(y, B(3, 1)) and as3_verify(keys.b, x, 1, y)
    assert as3_respond(keys, r, 0) == r and as3_verify(keys.b, x, 0, r)
    with pytest.raises(ValueError):
        as3_respond(keys, r, 2)
    with pytest.raises(ValueError):
        as3_verify(keys.b, x, -1, r)


def test_as3_wrong_answer_rejected():
    keys = as3_keygen(8, 10, seed=2)
    x, r = as3_commit(keys, seed=3)
    assert not as3_verify(keys.b, x, 1, r)


@pytest.mark.parametrize("seed", range(20))
def test_as3_complete(seed):
    keys = as3_keygen(8, 12, k_rounds=20, seed=seed)
    verdicts = as3_run(keys, seed=seed + 1)
    assert len(verdicts) == 20 and all(verdicts)


# --- signature --------------------------------------------------------------


def test_hash_to_bits():
    assert hash_to_bits(b"", 8) == (1, 1, 1, 0, 0, 0, 1, 1)
    assert hashlib.sha256(b"").digest()[0] == 0b11100011
    assert hash_to_bits(b"abc", 5) == hash_to_bits(b"abc", 5)
    assert len(hash_to_bits(b"abc", 1)) == 1
    assert len(hash_to_bits(b"abc", 256)) == 256
    for bad in (0, 257):
        with pytest.raises(ValueError):
            hash_to_bits(b"", bad)


@given(st.binary(max_size=32), st.integers(1, 64), st.integers(1, 64))
def test_hash_prefixes_agree(msg, m1, m2):
    lo, hi = sorted((m1, m2))
    assert hash_to_bits(msg, hi)[:lo] == hash_to_bits(msg, lo)


def test_sig_single_braid_example():
    keys = SigKeys.from_secrets([B(8, 1, 1)], identity(8), 2)
    assert equals(keys.b[0], B(8, 1, 1, 1, 1))
    msg = message_with_bits(1, (1,))
    sig = sig_sign(keys, msg, beta_len=0)
    assert equals(sig.u, B(8, 1, 1))
    assert sig_verify(keys.public, msg, sig)


def test_sig_zero_hash():
    keys = sig_keygen(8, 1, 2, 6, seed=3)
    msg = message_with_bits(1, (0,))
    sig = sig_sign(keys, msg, seed=4)
    assert equals(sig.u, identity(8))
    assert sig_verify(keys.public, msg, sig)


def test_sig_tampered_rejected():
    keys = sig_keygen(8, 3, 2, 8, seed=7)
    msg = message_with_bits(3, (1, 1, 1))
    sig = sig_sign(keys, msg, seed=8)
    assert sig_verify(keys, msg, sig)
    assert not sig_verify(keys, msg, Signature(word_product(sig.u, B(8, 2)), sig.gamma))


def test_sig_blocks():
    assert [list(b) for b in sig_blocks(8, 3)] == [[1], [3], [5]]
    assert [list(b) for b in sig_blocks(8, 2)] == [[1, 2, 3], [5, 6, 7]]
    with pytest.raises(ValueError):
        sig_blocks(4, 3)


@pytest.mark.parametrize("seed", range(6))
def test_sig_keys_invariants(seed):
    keys = sig_keygen(8, 3, 2 + seed % 2, 10, seed=seed)
    for ai in keys.a:
        for aj in keys.a:
            assert equals(word_product(ai, aj), word_product(aj, ai))
    for ai, bi in zip(keys.a, keys.b):
        assert equals(bi, word_product(keys.alpha, ai ** keys.k, inverse(keys.alpha)))
    # (prod a_i)^k == prod a_i^k under commutation
    prod = word_product(*keys.a)
    assert equals(prod ** keys.k, word_product(*(ai ** keys.k for ai in keys.a)))


@pytest.mark.parametrize("seed", range(20))
@pytest.mark.parametrize("k", [2, 3])
def test_sig_complete(seed, k):
    keys = sig_keygen(8, 3, k, 12, seed=seed)
    msg = f"message {seed}".encode()
    assert sig_verify(keys.public, msg, sig_sign(keys, msg, seed=seed + 50))


def test_determinism():
    assert as1_keygen(8, 2, 2, 12, seed=9) == as1_keygen(8, 2, 2, 12, seed=9)
    assert as2g_keygen(8, 8, 12, seed=9) == as2g_keygen(8, 8, 12, seed=9)
    assert as3_keygen(8, 10, seed=9) == as3_keygen(8, 10, seed=9)
    keys = sig_keygen(8, 3, 2, 8, seed=9)
    assert keys == sig_keygen(8, 3, 2, 8, seed=9)
    assert sig_sign(keys, b"m", seed=1) == sig_sign(keys, b"m", seed=1)
