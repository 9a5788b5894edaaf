"""A short walk through braid arithmetic.

Two words can spell the same braid; the left normal form decides which.
Conjugates share a sliding circuit set, and that set hands back a witness.

    python demos/01_normal_forms.py
"""

from braidcrypt import (
    BraidWord,
    centralizer_gens,
    conjugacy_search,
    equals,
    format_braid,
    inverse,
    kth_root,
    left_normal_form,
    random_word,
    sliding_circuit_set,
    word_product,
)


def show(label, value):
    print(f"{label:<28} {value}")


# The braid relation makes s1 s2 s1 and s2 s1 s2 the same half twist.
a, b = BraidWord(3, (1, 2, 1)), BraidWord(3, (2, 1, 2))
show("s1 s2 s1 == s2 s1 s2 ?", equals(a, b))
show("its normal form", left_normal_form(a))

# Normal forms absorb cancellations and collect half twists in front.
u = random_word(5, 30, None, 3)
show("random word in B5", format_braid(u))
show("normal form", left_normal_form(u))

# Hide u behind a conjugation and ask for the conjugator back.
g = random_word(5, 6, None, 8)
v = word_product(g, u, inverse(g))
wit = conjugacy_search(u, v)
show("conjugate found", wit is not None)
show("witness checks out", equals(word_product(wit.conjugator, u, inverse(wit.conjugator)), v))
show("sliding circuit size", len(sliding_circuit_set(u).vertices))

# Centralizers are small: generically a power of Delta and one more element.
cent = centralizer_gens(u)
show("centralizer generators", len(cent.gens))
show("generic form (Delta^e, w)", cent.generic_form is not None)

# Roots: square a braid, then recover a square root from the square alone.
alpha = random_word(8, 8, None, 3)
res = kth_root(alpha ** 2, 2)
show("square root status", f"{res.status} via {res.method}")
show("root squares back", equals(res.root ** 2, alpha ** 2))
