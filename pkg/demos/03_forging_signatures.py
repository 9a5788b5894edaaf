"""Signing arbitrary messages with nothing but the public key.

Hash bits pick public braids b_i; their product v is a k-th power, and any
k-th root of v, conjugated by a random braid, is a valid signature.

    python demos/03_forging_signatures.py
"""

from braidcrypt.attacks import forge_signature
from braidcrypt.protocols import hash_to_bits, sig_keygen, sig_sign, sig_verify

keys = sig_keygen(8, 3, 2, 10, seed=11)
public = keys.public

honest = sig_sign(keys, b"genuine", seed=1)
print("honest signature verifies:", sig_verify(public, b"genuine", honest))

for i, text in enumerate(["transfer 100", "transfer 1000000", "revoke all keys"]):
    msg = text.encode()
    sig = forge_signature(public, msg, seed=i)
    bits = "".join(map(str, hash_to_bits(msg, public.m)))
    verdict = "no root found" if sig is None else sig_verify(public, msg, sig)
    print(f"forged {text!r:<20} hash bits {bits}  accepted: {verdict}")
