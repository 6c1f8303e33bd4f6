#!/usr/bin/env python3
"""Walk the checked-in toy key through every failure mode of the original cipher.

Shows the key derivation, a ciphertext that decodes two ways, a ciphertext
whose subset product overflows the modulus, the full completeness audit, and
the public-key-only attack recovering the plaintext.
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from knaplab import akleylek, attacks, keyfile
from knaplab.numtheory import BitVector

PARAMS = pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "toy-original.params"


def main():
    params = keyfile.load_key(PARAMS)
    pub, sec = akleylek.keypair_from_params(
        params.p, params.g, params.x, params.k, params.terms
    )
    print(f"key: p={sec.p} g={sec.g} x={sec.x} k={sec.k} a={sec.a.terms}")
    print(f"     y={sec.y} s={pub.s_value} u={pub.u}")

    m = BitVector.from_string("01001")
    ct = akleylek.encrypt(pub, m)
    print(f"\nencrypt {m} -> C1={ct.c1} C2={ct.c2}")
    print(f"decrypt_d -> {akleylek.decrypt_d(sec, ct)}")
    decodings = akleylek.decrypt_all(sec, ct)
    print(f"decrypt_all -> {[str(x) for x in decodings]}  (ambiguous!)")

    m2 = BitVector.from_string("01111")
    ct2 = akleylek.encrypt(pub, m2)
    d2 = akleylek.decrypt_d(sec, ct2)
    product = 1
    for t, b in zip(sec.a.terms, m2):
        product *= t if b else 1
    print(f"\nencrypt {m2} -> C1={ct2.c1} C2={ct2.c2}")
    print(f"decrypt_d -> {d2}, but the true subset product is {product} > p={sec.p}")
    print(f"decrypt_all -> {[str(x) for x in akleylek.decrypt_all(sec, ct2)]}  (lost!)")

    print("\ncompleteness audit over all 32 messages:")
    audit = akleylek.completeness_audit(sec, pub)
    for prod_, members in audit.collision_groups:
        print(f"  collision {prod_}: {','.join(str(x) for x in members)}")
    print(f"  overflow: {','.join(str(x) for x in audit.overflow_messages)}")
    print(f"  unique fraction: {audit.unique_fraction:.4f}")

    print("\npublic-key-only attack on the first ciphertext:")
    rep = attacks.exhaustive_subset_attack(pub, ct)
    print(
        f"  h={rep.recovered_h} candidates={[str(x) for x in rep.candidates]} "
        f"examined={rep.subsets_examined} bound={rep.predicted_bound:.1f}"
    )


if __name__ == "__main__":
    main()
