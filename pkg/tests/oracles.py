"""Independent reference computations for the tests.

Nothing here uses permutation arithmetic from the library; these work on
words and relations directly.
"""

import itertools

from braidcrypt.braid import BraidWord, inverse, multiply
from braidcrypt.garside import left_normal_form


def relation_moves(word, n):
    """Words reachable from a positive word by one braid-relation rewrite."""
    w = tuple(word)
    out = set()
    for i in range(len(w) - 1):
        a, b = w[i], w[i + 1]
        if abs(a - b) > 1:
            out.add(w[:i] + (b, a) + w[i + 2 :])
    for i in range(len(w) - 2):
        a, b, c = w[i : i + 3]
        if a == c and abs(a - b) == 1:
            out.add(w[:i] + (b, a, b) + w[i + 3 :])
    return out


def positive_word_classes(n, max_len):
    """Partition all positive words of length <= max_len into relation classes."""
    classes = []
    seen = set()
    for length in range(max_len + 1):
        for w in itertools.product(range(1, n), repeat=length):
            if w in seen:
                continue
            cls = {w}
            todo = [w]
            while todo:
                cur = todo.pop()
                for nxt in relation_moves(cur, n):
                    if nxt not in cls:
                        cls.add(nxt)
                        todo.append(nxt)
            seen |= cls
            classes.append(cls)
    return classes


def is_positive(u):
    return left_normal_form(u).p >= 0


def is_prefix(s, t):
    """s <= t in the prefix order: s^-1 t is a positive braid."""
    return is_positive(multiply(inverse(s), t))


def simple_words(n):
    """One positive word per permutation braid, by enumerating reduced words."""
    found = {}
    frontier = [()]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(1, n):
                v = w + (i,)
                perm = compose_letters(n, v)
                if perm in found or inversions(perm) != len(v):
                    continue
                found[perm] = BraidWord(n, v)
                nxt.append(v)
        frontier = nxt
    found[tuple(range(1, n + 1))] = BraidWord(n, ())
    return list(found.values())


def compose_letters(n, letters):
    pos = list(range(1, n + 1))  # pos[strand-1] = current position
    for x in letters:
        i = abs(x)
        for s in range(n):
            if pos[s] == i:
                pos[s] = i + 1
            elif pos[s] == i + 1:
                pos[s] = i
    return tuple(pos)


def inversions(perm):
    return sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])


def bfs_conjugate(src, dst, max_len):
    """Shortest word g (up to max_len letters) with g src g^-1 = dst."""
    n = src.n
    target = left_normal_form(dst)
    letters = [s * i for i in range(1, n) for s in (1, -1)]
    for length in range(max_len + 1):
        for g in itertools.product(letters, repeat=length):
            gw = BraidWord(n, g)
            if left_normal_form(multiply(multiply(gw, src), inverse(gw))) == target:
                return gw
    return None
