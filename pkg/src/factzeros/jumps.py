"""Where the trailing-zero count increases, and by how much.

For a prime base the count steps exactly at multiples of p, by the p-adic
valuation of the new point.  For a prime power p**r the step is read off the
euclidean decomposition of the prime count; for a composite base the step is
the difference of z_base across the point.  jump_stream enumerates composite
jumps without scanning every n: a jump needs some prime-power part of the
base to jump, so candidates are exactly the multiples of the base's primes.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterator

from .arithmetic import _check_prime, trailing_max_digits, valuation
from .zcount import BaseSpec, _check_n, z_base, z_prime


@dataclass(frozen=True)
class ZDecomposition:
    """z_prime(p, n) split as alpha * modulus + beta with 0 <= beta < modulus."""

    alpha: int
    beta: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {self.modulus}")
        if self.alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")
        if not 0 <= self.beta < self.modulus:
            raise ValueError(f"beta must lie in [0, {self.modulus}), got {self.beta}")

    @property
    def value(self) -> int:
        return self.alpha * self.modulus + self.beta


@dataclass(frozen=True)
class JumpRecord:
    """A point n+1 where z_base increases, with per-part and total amplitudes."""

    location: int
    per_component: dict[tuple[int, int], int]
    composite_amplitude: int


def digit_sum_delta(p: int, n: int) -> int:
    """digit_sum(n+1, p) - digit_sum(n, p), from the carry run length alone."""
    _check_prime(p)
    _check_n(n)
    return 1 - (p - 1) * trailing_max_digits(n, p)


def jump_amplitude_prime(p: int, n: int) -> int:
    """z_prime(p, n+1) - z_prime(p, n), which is the valuation of n+1 in p."""
    _check_prime(p)
    _check_n(n)
    return valuation(p, n + 1)


def decompose_z(p: int, r: int, n: int) -> ZDecomposition:
    """Euclidean division of z_prime(p, n) by r."""
    if r < 1:
        raise ValueError(f"modulus must be >= 1, got {r}")
    alpha, beta = divmod(z_prime(p, n), r)
    return ZDecomposition(alpha, beta, r)


def is_stationary_prime_power(p: int, r: int, n: int) -> bool:
    """Whether the base p**r count stays flat from n to n+1.

    Flat exactly when the valuation m of n+1 satisfies m < r - beta, beta
    being the residue of the prime count mod r.
    """
    if r < 2:
        raise ValueError(f"exponent must be >= 2, got {r}")
    m = valuation(p, n + 1)
    return m < r - decompose_z(p, r, n).beta


def jump_amplitude_prime_power(p: int, r: int, n: int) -> int:
    """Step of the base p**r count at n+1: floor((m + beta) / r)."""
    if r < 2:
        raise ValueError(f"exponent must be >= 2, got {r}")
    m = valuation(p, n + 1)
    return (m + decompose_z(p, r, n).beta) // r


def _component_amplitude(p: int, r: int, n: int) -> int:
    # same as jump_amplitude_prime_power but r = 1 allowed (beta is then 0)
    m = valuation(p, n + 1)
    if r == 1:
        return m
    return (m + z_prime(p, n) % r) // r


def jump_amplitude_base(b: "int | BaseSpec", n: int) -> int:
    """z_base(b, n+1) - z_base(b, n), evaluated at both ends.

    No min-of-amplitudes shortcut: the binding part may change across the
    jump.
    """
    spec = BaseSpec.of(b)
    _check_n(n)
    return z_base(spec, n + 1) - z_base(spec, n)


def _candidates(primes: tuple[int, ...], n_lo: int, n_hi: int) -> Iterator[int]:
    """Multiples of any of the given primes in (n_lo, n_hi], ascending, deduped."""
    runs = [range(n_lo + p - n_lo % p, n_hi + 1, p) for p in primes]
    if len(runs) == 1:
        yield from runs[0]
        return
    last = None
    for c in heapq.merge(*runs):
        if c != last:
            yield c
            last = c


def jump_stream(b: "int | BaseSpec", n_lo: int, n_hi: int) -> Iterator[JumpRecord]:
    """All jumps of z_base located in (n_lo, n_hi], in increasing order.

    Candidates are generated only at multiples of the base's primes; the
    count is constant between candidates, so a running value avoids
    re-evaluating the lower end of each step.
    """
    spec = BaseSpec.of(b)
    if n_lo > n_hi:
        raise ValueError(f"empty range bounds reversed: {n_lo} > {n_hi}")
    prev = z_base(spec, n_lo)
    for loc in _candidates(spec.factorization.primes, n_lo, n_hi):
        cur = z_base(spec, loc)
        if cur > prev:
            per = {
                (p, r): _component_amplitude(p, r, loc - 1)
                for p, r in spec.factorization.factors
            }
            yield JumpRecord(loc, per, cur - prev)
        prev = cur
