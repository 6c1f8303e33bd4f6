"""The original ElGamal-disguised multiplicative-knapsack cipher.

This is the attack target, implemented with its published quirks intact:
encryption is deterministic, ciphertext components are kept as unreduced
integer products, and nothing stops the secret sequence terms from dividing
one another.  The audit and attack modules depend on those quirks, so do
not "fix" them here.

Keys disguise a super-increasing sequence a_1..a_n: the public pairs are
(s, u_i) with s = g^k and u_i = y^k * a_i (mod p), so a legitimate receiver
can strip the y^k mask with x while outsiders face a subset problem.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import prod

from .errors import MalformedCiphertext, ParameterError
from .numtheory import (
    BitVector,
    SafePrimeGroup,
    SuperIncreasingSeq,
    gen_safe_prime,
    gen_superincreasing,
    mod_inv,
    power_index,
)

DEFAULT_EXHAUSTIVE_LIMIT = 20


@dataclass(frozen=True)
class AkleylekPublicKey:
    n: int
    p: int
    s: tuple[int, ...]
    u: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(self.s))
        object.__setattr__(self, "u", tuple(self.u))
        if self.n < 1 or len(self.s) != self.n or len(self.u) != self.n:
            raise ParameterError("component count does not match n")
        if len(set(self.s)) != 1:
            raise ParameterError("all s components must be equal")
        for v in (*self.s, *self.u):
            if not 1 <= v < self.p:
                raise ParameterError("key components must lie in [1, p)")

    @property
    def s_value(self) -> int:
        return self.s[0]

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self.s, self.u))


@dataclass(frozen=True)
class AkleylekSecretKey:
    p: int
    g: int
    y: int
    x: int
    k: int
    a: SuperIncreasingSeq

    def __post_init__(self):
        if not 1 <= self.x <= self.p - 2 or not 1 <= self.k <= self.p - 2:
            raise ParameterError("exponents must lie in [1, p-2]")
        if self.y != pow(self.g, self.x, self.p):
            raise ParameterError("y is not g^x mod p")

    @property
    def n(self) -> int:
        return self.a.n

    @property
    def s_value(self) -> int:
        return pow(self.g, self.k, self.p)


@dataclass(frozen=True)
class AkleylekCiphertext:
    c1: int
    c2: int

    def __post_init__(self):
        if self.c1 < 1 or self.c2 < 1:
            raise MalformedCiphertext("ciphertext components must be positive")


@dataclass(frozen=True)
class AuditReport:
    """Exhaustive census of the 2^n message space for one key pair."""

    n: int
    p: int
    # (product, every message whose selected terms multiply to it), >= 2 members each
    collision_groups: tuple[tuple[int, tuple[BitVector, ...]], ...]
    overflow_messages: tuple[BitVector, ...]
    unique_fraction: float

    @property
    def collision_pairs(self) -> tuple[tuple[BitVector, BitVector], ...]:
        pairs = []
        for _, members in self.collision_groups:
            for i in range(len(members)):
                for j in range(i + 1, len(members)):
                    pairs.append((members[i], members[j]))
        return tuple(pairs)


def keygen(
    n: int,
    modulus_bits: int,
    rng: random.Random,
    *,
    max_step: int = 10,
    enforce_capacity: bool = True,
) -> tuple[AkleylekPublicKey, AkleylekSecretKey]:
    """Fresh key pair over a random safe-prime group.

    With enforce_capacity the modulus is guaranteed to exceed the product of
    all sequence terms, so every subset product survives the final reduction;
    pass False to reproduce the undersized-modulus failure mode on purpose.
    """
    if n < 2:
        raise ParameterError("need n >= 2")
    a = gen_superincreasing(n, rng, max_step=max_step)
    capacity = prod(a.terms)
    if enforce_capacity and capacity.bit_length() >= modulus_bits:
        raise ParameterError(
            f"modulus_bits={modulus_bits} cannot dominate the sequence product "
            f"({capacity.bit_length()} bits); raise modulus_bits or shrink max_step"
        )
    group = gen_safe_prime(modulus_bits, rng)
    if enforce_capacity:
        assert group.p > capacity
    return _assemble(group, rng.randrange(1, group.p - 1), rng.randrange(1, group.p - 1), a)


def keypair_from_params(
    p: int, g: int, x: int, k: int, a_terms
) -> tuple[AkleylekPublicKey, AkleylekSecretKey]:
    """Rebuild the key pair from fixed components (fixture keys, test vectors)."""
    group = SafePrimeGroup(p, (p - 1) // 2, g)
    return _assemble(group, x, k, SuperIncreasingSeq(tuple(a_terms)))


def _assemble(group, x, k, a):
    p, g = group.p, group.g
    y = pow(g, x, p)
    s = pow(g, k, p)
    yk = pow(y, k, p)
    if any(ai % p == 0 for ai in a.terms):
        raise ParameterError("sequence terms must be nonzero mod p")
    u = tuple(yk * ai % p for ai in a.terms)
    pub = AkleylekPublicKey(n=a.n, p=p, s=(s,) * a.n, u=u)
    sec = AkleylekSecretKey(p=p, g=g, y=y, x=x, k=k, a=a)
    return pub, sec


def encrypt(pk: AkleylekPublicKey, m: BitVector) -> AkleylekCiphertext:
    """C = (prod s^m_i, prod u_i^m_i) over the integers, no reduction.

    Deterministic by construction.  The all-zero message is refused: it
    would encrypt to (1, 1) regardless of the key.
    """
    if len(m) != pk.n:
        raise ParameterError(f"message length {len(m)} != n = {pk.n}")
    if m.weight == 0:
        raise ParameterError("all-zero message is not encryptable")
    c1 = prod(si for si, b in zip(pk.s, m) if b)
    c2 = prod(ui for ui, b in zip(pk.u, m) if b)
    return AkleylekCiphertext(c1, c2)


def decrypt_d(sk: AkleylekSecretKey, ct: AkleylekCiphertext) -> int:
    """The masked subset product d = C2 * (C1^x)^(-1) mod p."""
    c1x = pow(ct.c1, sk.x, sk.p)
    if c1x == 0:
        raise MalformedCiphertext("C1 shares a factor with the modulus")
    return ct.c2 * mod_inv(c1x, sk.p) % sk.p


def decrypt_all(
    sk: AkleylekSecretKey,
    ct: AkleylekCiphertext,
    *,
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
) -> tuple[BitVector, ...]:
    """Every message the ciphertext can decode to, in canonical order.

    The unreduced C1 pins the Hamming weight h (it is s^h), so the search
    runs over weight-h subsets of the sequence whose product equals d.  An
    empty result is a decryption failure; two or more results mean the key
    cannot decode this ciphertext uniquely.
    """
    n = sk.n
    if n > exhaustive_limit:
        raise ParameterError(f"n={n} exceeds the exhaustive scan limit {exhaustive_limit}")
    h = power_index(sk.s_value, ct.c1, n)
    if h is None:
        return ()
    try:
        d = decrypt_d(sk, ct)
    except (MalformedCiphertext, ValueError):
        return ()
    if h == 0:
        return (BitVector((0,) * n),) if d == 1 else ()
    terms = sk.a.terms
    found: list[BitVector] = []

    def walk(idx: int, chosen: list[int], partial: int):
        if len(chosen) == h:
            if partial == d:
                found.append(BitVector.from_indices(n, chosen))
            return
        if partial > d or n - idx < h - len(chosen):
            return
        for j in range(idx, n):
            nxt = partial * terms[j]
            if nxt > d:
                break  # terms ascend, so every later branch overshoots too
            chosen.append(j)
            walk(j + 1, chosen, nxt)
            chosen.pop()

    walk(0, [], 1)
    return tuple(sorted(found))


def completeness_audit(
    sk: AkleylekSecretKey,
    pk: AkleylekPublicKey | None = None,
    *,
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
) -> AuditReport:
    """Scan all 2^n messages for colliding subset products and modulus overflow.

    A message decodes uniquely iff its product stays below p and no other
    message of the same weight shares the product (the weight is public via
    C1, so only same-weight collisions are real ambiguities).  Collision
    groups are reported across all weights, since they are what make the
    sequence defective.
    """
    n = sk.n
    if n > exhaustive_limit:
        raise ParameterError(f"n={n} exceeds the exhaustive scan limit {exhaustive_limit}")
    if pk is not None:
        expect = tuple(pow(sk.y, sk.k, sk.p) * ai % sk.p for ai in sk.a.terms)
        if pk.u != expect or pk.s_value != sk.s_value or pk.p != sk.p:
            raise ParameterError("public key does not match the secret key")
    terms = sk.a.terms
    by_product: dict[int, list[BitVector]] = {}
    by_weight_product: dict[tuple[int, int], int] = {}
    overflow: list[BitVector] = []
    entries = []
    for mask in range(1 << n):
        m = BitVector.from_indices(n, [j for j in range(n) if mask >> j & 1])
        product = prod((terms[j] for j in range(n) if mask >> j & 1), start=1)
        entries.append((m, product))
        by_product.setdefault(product, []).append(m)
        key = (m.weight, product)
        by_weight_product[key] = by_weight_product.get(key, 0) + 1
        if product >= sk.p:
            overflow.append(m)
    unique = sum(
        1
        for m, product in entries
        if product < sk.p and by_weight_product[(m.weight, product)] == 1
    )
    groups = tuple(
        (product, tuple(sorted(members)))
        for product, members in sorted(by_product.items())
        if len(members) >= 2
    )
    return AuditReport(
        n=n,
        p=sk.p,
        collision_groups=groups,
        overflow_messages=tuple(sorted(overflow)),
        unique_fraction=unique / (1 << n),
    )
