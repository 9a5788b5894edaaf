"""Impersonating a prover in each of the three authentication schemes.

The attacker sees only public keys and, for the second scheme, one honest
transcript. Each forged answer goes to the honest verifier.

    python demos/02_breaking_authentication.py
"""

from braidcrypt.attacks import as3_impersonate, attack_as1, attack_as2_alg1, attack_as2_alg2, attack_as3
from braidcrypt.garside import equals, word_product
from braidcrypt.protocols import (
    as1_challenge,
    as1_keygen,
    as1_verify,
    as2_challenge,
    as2_respond,
    as2_verify,
    as2g_keygen,
    as3_keygen,
)

print("scheme I: X = a^r b^s with a, b in commuting halves")
keys = as1_keygen(8, 2, 3, 12, seed=1)
A, B = attack_as1(keys.X)
print("  split by deleting strands; A == a^r:", equals(A, keys.a ** 2), " B == b^s:", equals(B, keys.b ** 3))
ch = as1_challenge(8, 2, 3, 12, seed=2)
print("  forged response accepted:", as1_verify(keys.X, ch, word_product(A, ch.Y, B)))

print("\nscheme II: X = a1 c a2 with a1, a2 in the lower half")
keys = as2g_keygen(8, 8, 12, seed=3)
seen = as2_challenge(keys.c, 8, seed=4)
Z = as2_respond(keys, seen.Y)
for attack in (attack_as2_alg1, attack_as2_alg2):
    rec = attack(keys.X, seen.Y, Z, keys.c)
    fresh = as2_challenge(keys.c, 8, seed=5)
    ok = as2_verify(keys.X, fresh, word_product(rec.a1_hat, fresh.Y, rec.a2_hat))
    exact = equals(rec.a1_hat, keys.a1) and equals(rec.a2_hat, keys.a2)
    print(f"  {rec.method:<10} forged response accepted: {ok}   recovered the very same secrets: {exact}")

print("\nscheme III: b = a^2")
keys = as3_keygen(8, 10, seed=6)
res = attack_as3(keys.b)
print(f"  square root {res.status} ({res.method}); equals the secret: {equals(res.root, keys.a)}")
rep = as3_impersonate(res.root, keys.b, rounds=20, seed=7)
print(f"  impersonation passed {rep.detail['passed']}/{rep.detail['rounds']} rounds")
