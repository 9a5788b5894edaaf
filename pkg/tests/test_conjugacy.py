import pytest
from hypothesis import given
from hypothesis import strategies as st

from braidcrypt.braid import BraidWord, identity, inverse, lower_block, random_word, upper_block
from braidcrypt.conjugacy import (
    ResourceCapExceeded,
    brute_force_conjugacy,
    brute_force_sliding_circuit_set,
    centralizer_gens,
    conjugacy_search,
    constrained_conjugacy_search,
    sliding_circuit_set,
)
from braidcrypt.garside import (
    SimpleFactor,
    cyclic_sliding,
    delta_word,
    equals,
    in_parabolic,
    is_rigid,
    left_normal_form,
    word_product,
)
from braidcrypt.protocols import as2_challenge, as2_respond, as2g_keygen

from conftest import braids


def B(n, *letters):
    return BraidWord(n, letters)


def commutes(g, u):
    return equals(word_product(g, u), word_product(u, g))


def test_sliding_circuit_examples():
    g = sliding_circuit_set(delta_word(3))
    assert g.vertex_set() == {left_normal_form(delta_word(3))}
    g = sliding_circuit_set(B(3, 1))
    assert g.vertex_set() == {left_normal_form(B(3, 1)), left_normal_form(B(3, 2))}


@pytest.mark.parametrize("seed", range(12))
def test_sliding_circuit_matches_brute_force(seed):
    n = 3 + seed % 3
    u = random_word(n, 6 + seed % 5, None, seed)
    assert sliding_circuit_set(u).vertex_set() == brute_force_sliding_circuit_set(u)


@given(braids(min_n=3, max_n=5, max_len=10), braids(min_n=3, max_n=5, max_len=5))
def test_sliding_circuit_set_is_a_class_invariant(u, h):
    if u.n != h.n:
        return
    v = word_product(h, u, inverse(h))
    assert sliding_circuit_set(u).vertex_set() == sliding_circuit_set(v).vertex_set()


@given(braids(min_n=3, max_n=6, max_len=14))
def test_graph_conventions(u):
    g = sliding_circuit_set(u)
    c = g.base_conjugator
    assert equals(word_product(inverse(c), u, c), g.base.word())
    for v, path in g.paths.items():
        assert equals(word_product(inverse(path), g.base.word(), path), v.word())
    verts = g.vertex_list()
    for i, s, j in g.edges:
        sw = SimpleFactor(s).word()
        assert sw.letters
        assert equals(word_product(inverse(sw), verts[i].word(), sw), verts[j].word())


@pytest.mark.parametrize("seed", range(6))
def test_rigid_vertices_share_inf_and_length(seed):
    for attempt in range(50):
        u = random_word(5, 14, None, 100 * seed + attempt)
        rep, _ = cyclic_sliding(u)
        if is_rigid(rep):
            break
    else:
        pytest.skip("no rigid sample")
    g = sliding_circuit_set(u)
    assert rep in g.vertices
    assert all(is_rigid(v) and (v.p, v.length) == (rep.p, rep.length) for v in g.vertices)


def test_conjugacy_examples():
    w = conjugacy_search(B(3, 1), B(3, 2))
    assert equals(word_product(w.conjugator, B(3, 1), inverse(w.conjugator)), B(3, 2))
    u = B(4, 1, -2, 3)
    w = conjugacy_search(u, u)
    assert commutes(w.conjugator, u)
    assert conjugacy_search(B(3, 1), B(3, 1, 1)) is None


def test_conjugacy_cap():
    u = random_word(8, 30, None, 11)
    with pytest.raises(ResourceCapExceeded):
        sliding_circuit_set(B(8, 1), cap=3)
    assert conjugacy_search(u, u) is not None


@given(braids(min_n=3, max_n=6, max_len=12), braids(min_n=3, max_n=6, max_len=8))
def test_witness_convention(u, g):
    if u.n != g.n:
        return
    v = word_product(g, u, inverse(g))
    w = conjugacy_search(u, v)
    assert w is not None
    assert equals(word_product(w.conjugator, u, inverse(w.conjugator)), v)
    assert w.target_rep == left_normal_form(v)


def test_brute_force_examples():
    g = brute_force_conjugacy(B(3, 1), B(3, 2), 3)
    assert equals(word_product(g, B(3, 1), inverse(g)), B(3, 2))
    assert brute_force_conjugacy(B(3, 1), B(3, 1, 1), 3) is None


def test_centralizer_examples():
    c = centralizer_gens(delta_word(3, 2))
    assert c.generic_form is None
    assert {left_normal_form(g) for g in c.gens} >= {left_normal_form(B(3, 1)), left_normal_form(B(3, 2))}
    c = centralizer_gens(B(3, 1))
    for g in c.gens:
        assert commutes(g, B(3, 1))
        assert in_sigma1_delta2(g)
    assert any(equals(g, B(3, 1)) for g in c.gens)
    assert any(equals(g, delta_word(3, 2)) for g in c.gens)


def in_sigma1_delta2(g):
    """Is g = sigma1^a Delta^(2b)?  The exponent sum a + 6b pins a once b is chosen."""
    es = sum(1 if x > 0 else -1 for x in g.letters)
    for b in range(-4, 5):
        a = es - 6 * b
        nf = left_normal_form(word_product(g, B(3, *([-1] * a if a > 0 else [1] * -a)), delta_word(3, -2 * b)))
        if nf.p == 0 and not nf.factors:
            return True
    return False


def test_sigma1_centralizer_oracle():
    # every short word commuting with sigma1 lies in <sigma1, Delta^2>
    import itertools

    for length in range(5):
        for w in itertools.product((1, -1, 2, -2), repeat=length):
            g = B(3, *w)
            if commutes(g, B(3, 1)):
                assert in_sigma1_delta2(g)


@pytest.mark.parametrize("seed", range(5))
def test_centralizer_generic_for_long_words(seed):
    u = random_word(5, 40, None, 500 + seed)
    c = centralizer_gens(u)
    for g in c.gens:
        assert commutes(g, u)
    assert c.generic_form is not None
    e, w = c.generic_form
    assert e in (1, 2)
    assert commutes(delta_word(5, e), w)


def test_constrained_examples():
    lb = lower_block(8)
    w = constrained_conjugacy_search(B(8, 1), B(8, 1), lb)
    assert w is not None and in_parabolic(w.conjugator, lb)
    assert constrained_conjugacy_search(B(8, 5), B(8, 6), lb) is None


def test_constrained_recovers_as2_conjugator():
    keys = as2g_keygen(8, 4, 10, seed=3)
    ch = as2_challenge(keys.c, 4, seed=4)
    Z = as2_respond(keys, ch.Y)
    src = word_product(inverse(keys.c), ch.Y)
    dst = word_product(inverse(keys.X), Z)
    w = constrained_conjugacy_search(src, dst, lower_block(8))
    assert w is not None
    h = w.conjugator
    assert in_parabolic(h, lower_block(8))
    assert equals(word_product(h, src, inverse(h)), dst)
