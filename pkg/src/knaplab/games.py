"""Executable security experiments for both ciphers.

Every experiment is a plain function over an explicit rng: the CCA2
indistinguishability game with a challenge-refusing decryption oracle, two
targeted ciphertext-malleation strategies, a component-mutation fuzzer, and
batch completeness trials.  Results report raw counts; nothing is averaged
away, and every accepted forgery is logged with enough seed material to
replay it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from . import akleylek, modified
from .errors import ParameterError
from .modified import ModifiedCiphertext, ModifiedPublicKey
from .numtheory import BitVector

MUTATION_KINDS = (
    "c1_prime",
    "c1_dprime",
    "c2",
    "c1_prime+c1_dprime",
    "c1_prime+c2",
    "c1_dprime+c2",
)


@dataclass(frozen=True)
class ExperimentResult:
    trials: int
    wins: int
    rejections: int = 0
    findings: tuple = ()

    @property
    def advantage(self) -> float:
        return abs(self.wins / self.trials - 0.5)


@dataclass(frozen=True)
class CompletenessReport:
    trials: int
    unique: int
    ambiguous: int
    failed: int


@dataclass(frozen=True)
class GameScheme:
    """Uniform keygen/encrypt/decrypt surface the experiments run against.

    decrypt returns the message or None; None is the single error symbol,
    so oracles cannot leak which internal check fired.
    """

    name: str
    keygen: Callable
    encrypt: Callable  # (pk, m, rng) -> ciphertext
    decrypt: Callable  # (sk, ciphertext) -> message | None
    sample_message_pair: Callable  # (pk, rng) -> (m0, m1)
    classify_roundtrip: Callable  # (sk, ciphertext, m_true) -> unique|ambiguous|failed


def suggested_modulus_bits(n: int, max_step: int = 10) -> int:
    """Modulus size that always dominates a max_step superincreasing product."""
    import math

    return math.ceil(n * math.log2(max_step)) + n * (n - 1) // 2 + 3


def original_game_scheme(
    n: int = 16, modulus_bits: int | None = None, max_step: int = 10
) -> GameScheme:
    bits = modulus_bits if modulus_bits is not None else suggested_modulus_bits(n, max_step)

    def sample_pair(pk, rng):
        m0 = BitVector.from_int(rng.randrange(1, 1 << n), n)
        while True:
            m1 = BitVector.from_int(rng.randrange(1, 1 << n), n)
            if m1 != m0:
                return m0, m1

    def dec(sk, ct):
        got = akleylek.decrypt_all(sk, ct)
        return got[0] if len(got) == 1 else None

    def classify(sk, ct, m_true):
        got = akleylek.decrypt_all(sk, ct)
        if m_true not in got:
            return "failed"
        return "unique" if len(got) == 1 else "ambiguous"

    return GameScheme(
        name="original",
        keygen=lambda rng: akleylek.keygen(n, bits, rng, max_step=max_step),
        encrypt=lambda pk, m, rng: akleylek.encrypt(pk, m),
        decrypt=dec,
        sample_message_pair=sample_pair,
        classify_roundtrip=classify,
    )


def modified_game_scheme(n: int = 16, prime_bits: int = 8) -> GameScheme:
    def sample_pair(pk, rng):
        m0 = rng.randrange(1, pk.max_message + 1)
        while True:
            m1 = rng.randrange(1, pk.max_message + 1)
            if m1 != m0:
                return m0, m1

    def dec(sk, ct):
        out = modified.decrypt(sk, ct)
        return out.message if out.accepted else None

    def classify(sk, ct, m_true):
        out = modified.decrypt(sk, ct)
        return "unique" if out.accepted and out.message == m_true else "failed"

    return GameScheme(
        name="modified",
        keygen=lambda rng: modified.keygen(n, prime_bits, rng),
        encrypt=modified.encrypt,
        decrypt=dec,
        sample_message_pair=sample_pair,
        classify_roundtrip=classify,
    )


class DecryptionOracle:
    """Decryption oracle that refuses the challenge ciphertext.

    Refused queries return the same None as rejected ones; the refusal
    counter exists only for the harness's own bookkeeping.
    """

    def __init__(self, decrypt_fn, sk):
        self._decrypt = decrypt_fn
        self._sk = sk
        self._challenge = None
        self.queries = 0
        self.refused = 0
        self.rejections = 0

    def set_challenge(self, ct) -> None:
        self._challenge = ct

    def query(self, ct):
        self.queries += 1
        if self._challenge is not None and ct == self._challenge:
            self.refused += 1
            return None
        assert ct != self._challenge  # the decryptor below never sees the challenge
        out = self._decrypt(self._sk, ct)
        if out is None:
            self.rejections += 1
        return out


@dataclass(frozen=True)
class Adversary:
    """Two-stage strategy: pick a message pair, then guess which one was encrypted."""

    name: str
    choose: Callable  # (pk, oracle, rng) -> (m0, m1, state)
    guess: Callable  # (pk, challenge, state, oracle, rng) -> 0 | 1


def distinguisher_adversary(scheme: GameScheme) -> Adversary:
    """Re-encrypts m0 and compares against the challenge ciphertext."""

    def choose(pk, oracle, rng):
        m0, m1 = scheme.sample_message_pair(pk, rng)
        return m0, m1, (m0, m1)

    def guess(pk, challenge, state, oracle, rng):
        m0, _ = state
        return 0 if scheme.encrypt(pk, m0, rng) == challenge else 1

    return Adversary(name="deterministic-distinguisher", choose=choose, guess=guess)


def random_guess_adversary(scheme: GameScheme) -> Adversary:
    def choose(pk, oracle, rng):
        m0, m1 = scheme.sample_message_pair(pk, rng)
        return m0, m1, None

    def guess(pk, challenge, state, oracle, rng):
        return rng.getrandbits(1)

    return Adversary(name="random-guess", choose=choose, guess=guess)


def run_ind_cca2(
    scheme: GameScheme, adversary: Adversary, trials: int, rng: random.Random
) -> ExperimentResult:
    """Per trial: fresh keys, adversary picks (m0, m1), challenger encrypts m_b,
    adversary guesses b with oracle access to everything except the challenge."""
    if trials < 1:
        raise ParameterError("need at least one trial")
    wins = 0
    rejections = 0
    for _ in range(trials):
        pk, sk = scheme.keygen(rng)
        oracle = DecryptionOracle(scheme.decrypt, sk)
        m0, m1, state = adversary.choose(pk, oracle, rng)
        b = rng.getrandbits(1)
        challenge = scheme.encrypt(pk, (m0, m1)[b], rng)
        oracle.set_challenge(challenge)
        b_guess = adversary.guess(pk, challenge, state, oracle, rng)
        if b_guess == b:
            wins += 1
        rejections += oracle.rejections
    return ExperimentResult(trials=trials, wins=wins, rejections=rejections)


def malleation_case1(
    challenge: ModifiedCiphertext, pk: ModifiedPublicKey, rng: random.Random
) -> ModifiedCiphertext:
    """Keep C1, substitute a random C2 (never the challenge's own)."""
    while True:
        c2 = rng.randrange(1, pk.p)
        if c2 != challenge.c2:
            return ModifiedCiphertext(challenge.c1_prime, challenge.c1_dprime, c2)


def malleation_case2(
    challenge: ModifiedCiphertext,
    pk: ModifiedPublicKey,
    rng: random.Random,
    *,
    force_weight: int | None = None,
) -> ModifiedCiphertext:
    """Keep C2, substitute the C1 of a fresh honest encryption under new randomness.

    force_weight pins the fresh randomness to a chosen Hamming weight, which
    lets the harness stage the worst case where both randomness values weigh
    the same.
    """
    n = pk.n
    while True:
        if force_weight is None:
            r = BitVector.from_int(rng.randrange(2, 1 << n), n)
        else:
            if not 1 <= force_weight <= n:
                raise ParameterError("force_weight out of range")
            r = BitVector.from_indices(n, rng.sample(range(n), force_weight))
            if r.as_int < 2:
                continue
        fresh = modified.encrypt_with_randomness(pk, 1, r)
        if (fresh.c1_prime, fresh.c1_dprime) != (challenge.c1_prime, challenge.c1_dprime):
            return ModifiedCiphertext(fresh.c1_prime, fresh.c1_dprime, challenge.c2)


@dataclass(frozen=True)
class MalleationFinding:
    trial: int
    seed: int
    query: tuple[int, int, int]
    decrypted: int


def run_malleation_trials(
    strategy: str,
    trials: int,
    rng: random.Random,
    *,
    n: int = 16,
    prime_bits: int = 8,
    force_weight_match: bool = False,
) -> ExperimentResult:
    """Fresh keys and challenge per trial; apply the strategy; query the oracle.

    wins counts queries the oracle answered with a message (accepted
    forgeries); rejections counts the ones it answered with the error
    symbol.  Every acceptance is recorded with its per-trial seed.
    """
    if strategy not in ("case1", "case2"):
        raise ParameterError(f"unknown strategy {strategy!r}")
    wins = 0
    rejections = 0
    findings: list[MalleationFinding] = []
    for t in range(trials):
        seed = rng.getrandbits(64)
        trial_rng = random.Random(seed)
        pk, sk = modified.keygen(n, prime_bits, trial_rng)
        m = trial_rng.randrange(1, pk.max_message + 1)
        r = BitVector.from_int(trial_rng.randrange(2, 1 << n), n)
        challenge = modified.encrypt_with_randomness(pk, m, r)
        oracle = DecryptionOracle(
            lambda sk_, ct_: (lambda o: o.message if o.accepted else None)(
                modified.decrypt(sk_, ct_)
            ),
            sk,
        )
        oracle.set_challenge(challenge)
        if strategy == "case1":
            query = malleation_case1(challenge, pk, trial_rng)
        else:
            query = malleation_case2(
                challenge,
                pk,
                trial_rng,
                force_weight=r.weight if force_weight_match else None,
            )
        answer = oracle.query(query)
        if answer is None:
            rejections += 1
        else:
            wins += 1
            findings.append(
                MalleationFinding(
                    trial=t,
                    seed=seed,
                    query=(query.c1_prime, query.c1_dprime, query.c2),
                    decrypted=answer,
                )
            )
    return ExperimentResult(
        trials=trials, wins=wins, rejections=rejections, findings=tuple(findings)
    )


@dataclass(frozen=True)
class MutationFinding:
    index: int
    kind: str
    keypair_seed: int
    message: int
    mutated: tuple[int, int, int]
    decrypted: int


@dataclass(frozen=True)
class FuzzReport:
    mutations: int
    rejections: int
    acceptances: int
    by_kind: tuple[tuple[str, int, int], ...]  # (kind, tried, accepted)
    findings: tuple[MutationFinding, ...]
    findings_truncated: bool


def mutate_ciphertext(
    ct: ModifiedCiphertext, kind: str, rng: random.Random, p: int
) -> ModifiedCiphertext:
    """Replace the named component(s) with fresh random residues (never equal)."""
    if kind not in MUTATION_KINDS:
        raise ParameterError(f"unknown mutation kind {kind!r}")
    parts = {"c1_prime": ct.c1_prime, "c1_dprime": ct.c1_dprime, "c2": ct.c2}
    for name in kind.split("+"):
        old = parts[name]
        while True:
            fresh = rng.randrange(1, p)
            if fresh != old:
                parts[name] = fresh
                break
    return ModifiedCiphertext(parts["c1_prime"], parts["c1_dprime"], parts["c2"])


def mutation_fuzzer(
    mutations: int,
    rng: random.Random,
    *,
    n: int = 16,
    prime_bits: int = 8,
    keypairs: int = 20,
    kinds: tuple[str, ...] = MUTATION_KINDS,
    max_findings: int = 25,
) -> FuzzReport:
    """Round-robin single and pairwise component mutations against fresh challenges.

    Key pairs are drawn once and rotated to amortize generation; each
    mutation gets a fresh message and challenge.  Acceptances are findings,
    recorded (up to max_findings) with the key seed and concrete values
    needed to replay them.
    """
    if mutations < 1:
        raise ParameterError("need at least one mutation")
    pool = []
    for _ in range(keypairs):
        seed = rng.getrandbits(64)
        pk, sk = modified.keygen(n, prime_bits, random.Random(seed))
        pool.append((seed, pk, sk))
    rejections = 0
    tried = {kind: 0 for kind in kinds}
    accepted = {kind: 0 for kind in kinds}
    findings: list[MutationFinding] = []
    truncated = False
    for i in range(mutations):
        seed, pk, sk = pool[i % len(pool)]
        kind = kinds[i % len(kinds)]
        m = rng.randrange(1, pk.max_message + 1)
        challenge = modified.encrypt(pk, m, rng)
        query = mutate_ciphertext(challenge, kind, rng, pk.p)
        out = modified.decrypt(sk, query)
        tried[kind] += 1
        if out.accepted:
            accepted[kind] += 1
            if len(findings) < max_findings:
                findings.append(
                    MutationFinding(
                        index=i,
                        kind=kind,
                        keypair_seed=seed,
                        message=m,
                        mutated=(query.c1_prime, query.c1_dprime, query.c2),
                        decrypted=out.message,
                    )
                )
            else:
                truncated = True
        else:
            rejections += 1
    total_accepted = sum(accepted.values())
    return FuzzReport(
        mutations=mutations,
        rejections=rejections,
        acceptances=total_accepted,
        by_kind=tuple((kind, tried[kind], accepted[kind]) for kind in kinds),
        findings=tuple(findings),
        findings_truncated=truncated,
    )


def run_completeness_trials(
    scheme: GameScheme, trials: int, rng: random.Random
) -> CompletenessReport:
    """Fresh keys and message per trial; encrypt, decrypt, classify the outcome."""
    if trials < 1:
        raise ParameterError("need at least one trial")
    counts = {"unique": 0, "ambiguous": 0, "failed": 0}
    for _ in range(trials):
        pk, sk = scheme.keygen(rng)
        if scheme.name == "original":
            m = BitVector.from_int(rng.randrange(1, 1 << pk.n), pk.n)
        else:
            m = rng.randrange(1, pk.max_message + 1)
        ct = scheme.encrypt(pk, m, rng)
        counts[scheme.classify_roundtrip(sk, ct, m)] += 1
    return CompletenessReport(
        trials=trials,
        unique=counts["unique"],
        ambiguous=counts["ambiguous"],
        failed=counts["failed"],
    )


def completeness_census(pk, sk) -> CompletenessReport:
    """Classify every nonzero message of an original-scheme key pair."""
    n = pk.n
    if n > akleylek.DEFAULT_EXHAUSTIVE_LIMIT:
        raise ParameterError(f"n={n} message space is too large to census")
    counts = {"unique": 0, "ambiguous": 0, "failed": 0}
    for value in range(1, 1 << n):
        m = BitVector.from_int(value, n)
        got = akleylek.decrypt_all(sk, akleylek.encrypt(pk, m))
        if m not in got:
            counts["failed"] += 1
        elif len(got) == 1:
            counts["unique"] += 1
        else:
            counts["ambiguous"] += 1
    return CompletenessReport(
        trials=(1 << n) - 1,
        unique=counts["unique"],
        ambiguous=counts["ambiguous"],
        failed=counts["failed"],
    )
