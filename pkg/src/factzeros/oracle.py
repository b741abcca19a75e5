"""Ground truth by brute force: build n! as a big integer and divide.

Nothing here knows the closed forms.  The factorial is an exact product, the
trailing-zero count is obtained by exact division by the base, and the
digit-conversion counter exists purely as a second opinion on the division
counter.  This module is the referee the fast formulas are checked against,
so it stays deliberately naive about everything except raw division speed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache


class CapacityError(ValueError):
    """Requested n exceeds the configured factorial bound."""


@dataclass(frozen=True)
class OracleConfig:
    """Bound on how large an n! the oracle will materialize."""

    n_max: int = 2000

    def __post_init__(self) -> None:
        if self.n_max < 1:
            raise ValueError(f"n_max must be >= 1, got {self.n_max}")


DEFAULT_CONFIG = OracleConfig()


@lru_cache(maxsize=64)
def _factorial(n: int) -> int:
    return math.factorial(n)


def _count_divisions(b: int, x: int) -> int:
    """Largest e with b**e dividing x, by exact division only.

    Divides out b, b**2, b**4, ... while possible, then retries the smaller
    powers; this is the plain division loop with batched steps, never a
    formula.
    """
    e = 0
    stack: list[tuple[int, int]] = []
    pw, k = b, 1
    while True:
        q, r = divmod(x, pw)
        if r:
            break
        x = q
        e += k
        stack.append((pw, k))
        pw, k = pw * pw, 2 * k
    while stack:
        pw, k = stack.pop()
        q, r = divmod(x, pw)
        if r == 0:
            x = q
            e += k
    return e


def _check_args(b: int, n: int, config: OracleConfig) -> None:
    if b < 2:
        raise ValueError(f"base must be >= 2, got {b}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n > config.n_max:
        raise CapacityError(f"n={n} exceeds the configured bound {config.n_max}")


def factorial_trailing_zeros(b: int, n: int, config: OracleConfig = DEFAULT_CONFIG) -> int:
    """Trailing zeros of n! in base b, from the factorial itself."""
    _check_args(b, n, config)
    return _count_divisions(b, _factorial(n))


def trailing_zero_digits(b: int, n: int, config: OracleConfig = DEFAULT_CONFIG) -> int:
    """Same count by full digit conversion of n!: the spot-check path."""
    _check_args(b, n, config)
    x = _factorial(n)
    ds = []
    while x:
        x, d = divmod(x, b)
        ds.append(d)
    zeros = 0
    for d in ds:  # little-endian, so the leading run is the trailing zeros
        if d:
            break
        zeros += 1
    return zeros


def image_scan(
    b: int,
    n_max: int,
    *,
    use_factorial: bool = False,
    config: OracleConfig = DEFAULT_CONFIG,
) -> set[int]:
    """Set of trailing-zero counts attained by 0!, 1!, ..., n_max!.

    By default the closed form does the per-n work (fast); with
    use_factorial=True every point goes through the big-integer product,
    subject to the capacity bound.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    if use_factorial:
        _check_args(b, n_max, config)
        values = set()
        f = 1
        for n in range(n_max + 1):
            if n:
                f *= n
            values.add(_count_divisions(b, f))
        return values
    from .zcount import z_base

    return {z_base(b, n) for n in range(n_max + 1)}
