"""Which trailing-zero counts actually occur, which never do, and how densely.

The count for a fixed base is non-decreasing in n but skips values, so its
image has gaps.  Membership of a target z is decided by inverting the count
with a gallop-plus-bisect search (monotonicity is all that is needed);
gap enumeration walks the jump stream and records skipped values; the
family generators produce parametric integers that provably land inside a
single jump and therefore never occur.  Density counts image members up to
N by two routes that share no counting logic, and refuses to answer unless
they agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arithmetic import _check_prime, is_prime
from .jumps import jump_stream
from .zcount import BaseSpec, _check_n, z_base, z_prime


class PreconditionError(ValueError):
    """An arithmetic precondition of a family does not hold for these parameters."""


@dataclass(frozen=True)
class MembershipResult:
    """Outcome of asking whether z occurs as a trailing-zero count.

    Members carry the minimal witness n; non-members carry the bracketing
    point (n_star, value below, value above) with value_below < z <
    value_above.
    """

    z: int
    member: bool
    witness: int | None = None
    bracket: tuple[int, int, int] | None = None

    def __post_init__(self) -> None:
        if self.member:
            if self.witness is None or self.bracket is not None:
                raise ValueError("a member carries a witness and no bracket")
        else:
            if self.witness is not None or self.bracket is None:
                raise ValueError("a non-member carries a bracket and no witness")
            _, below, above = self.bracket
            if not below < self.z < above:
                raise ValueError(f"bracket {self.bracket} does not straddle {self.z}")


@dataclass(frozen=True)
class DensityReport:
    """Exact image count in [0, N] next to the closed-form prediction for it.

    a_paper_formula is None unless N + 1 is a power of p.  The two exact
    counting routes must have agreed for this report to exist.
    """

    p: int
    N: int
    a_exact: int
    a_paper_formula: int | None
    ratio: Fraction

    @property
    def divergence(self) -> bool:
        return self.a_paper_formula is not None and self.a_paper_formula != self.a_exact


def min_arg_reaching(b: "int | BaseSpec", z: int) -> int:
    """Minimal n with z_base(b, n) >= z: gallop to bracket, then bisect."""
    spec = BaseSpec.of(b)
    _check_n(z)
    if z == 0:
        return 0
    hi = 1
    while z_base(spec, hi) < z:
        hi *= 2
    lo = hi // 2  # z_base(lo) < z, by the gallop exit condition
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if z_base(spec, mid) >= z:
            hi = mid
        else:
            lo = mid
    return hi


def in_image(b: "int | BaseSpec", z: int) -> MembershipResult:
    """Decide whether z occurs as a trailing-zero count in base b."""
    spec = BaseSpec.of(b)
    n_star = min_arg_reaching(spec, z)
    reached = z_base(spec, n_star)
    if reached == z:
        return MembershipResult(z, True, witness=n_star)
    return MembershipResult(z, False, bracket=(n_star, z_base(spec, n_star - 1), reached))


def gaps_by_membership(b: "int | BaseSpec", z_max: int) -> list[int]:
    """Gaps up to z_max by querying every z individually (the slow route)."""
    spec = BaseSpec.of(b)
    return [z for z in range(z_max + 1) if not in_image(spec, z).member]


def gaps_up_to(b: "int | BaseSpec", z_max: int, *, cross_check: bool = False) -> list[int]:
    """All z <= z_max never attained in base b, by walking the jump stream.

    Each jump from value v to v+a skips v+1 .. v+a-1; collecting those while
    the running value is below z_max yields every gap.  cross_check=True
    re-derives the list through per-z membership and raises on any mismatch.
    """
    spec = BaseSpec.of(b)
    _check_n(z_max)
    gaps: list[int] = []
    if z_max > 0:
        prev = 0
        for rec in jump_stream(spec, 0, min_arg_reaching(spec, z_max)):
            after = prev + rec.composite_amplitude
            gaps.extend(range(prev + 1, min(after - 1, z_max) + 1))
            prev = after
            if prev >= z_max:
                break
    if cross_check and gaps != gaps_by_membership(spec, z_max):
        raise RuntimeError(f"gap walk disagrees with membership scan for base {spec.base}")
    return gaps


# ---------------------------------------------------------------------------
# families of non-attained values


def _verified(base: int, values: list[int], verify: bool) -> list[int]:
    if verify:
        for v in values:
            if in_image(base, v).member:
                raise RuntimeError(f"{v} is attained in base {base}; family is wrong")
    return values


def family_prop3a(p: int, n: int, *, verify: bool = False) -> list[int]:
    """The n-1 values (p**n - k*p + k - 1)/(p - 1), k = 1..n-1; none occur, base p.

    These sit directly below the count attained at p**n, inside its jump of
    amplitude n.  The k = 1, n = 2 instance says p itself never occurs.
    """
    _check_prime(p)
    if n <= 1:
        raise ValueError(f"need n > 1, got {n}")
    vals = [(p**n - k * p + k - 1) // (p - 1) for k in range(1, n)]
    return _verified(p, vals, verify)


def family_prop3b(p: int, n: int, k: int, *, verify: bool = False) -> list[int]:
    """The n-1 values ((p**k - 1)/(p - 1)) * p**n - k - h, h = 1..n-1; base p."""
    _check_prime(p)
    if n <= 1:
        raise ValueError(f"need n > 1, got {n}")
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    top = (p**k - 1) // (p - 1) * p**n
    vals = [top - k - h for h in range(1, n)]
    return _verified(p, vals, verify)


def _repunit(p: int, length: int) -> int:
    # 1 + p + ... + p**(length-1)
    return (p**length - 1) // (p - 1)


def family_prop7(p: int, r: int, k: int, *, verify: bool = False) -> list[int]:
    """The k-1 values S/r - h, h = 1..k-1, where S = 1 + p + ... + p**(kr-1).

    Requires r to divide S; the values fall inside the amplitude-k jump of
    the base p**r count at p**(kr).
    """
    _check_prime(p)
    if r < 2:
        raise ValueError(f"need r >= 2, got {r}")
    if k <= 1:
        raise ValueError(f"need k > 1, got {k}")
    s = _repunit(p, k * r)
    if s % r:
        raise PreconditionError(f"r={r} does not divide the power sum {s}")
    top = s // r
    vals = [top - h for h in range(1, k)]
    return _verified(p**r, vals, verify)


def family_cor2(p: int, k: int, *, verify: bool = False) -> list[int]:
    """Squared odd prime base: the r = 2 case of family_prop7.

    The power sum has an even number of odd terms, so the divisibility
    requirement holds automatically.
    """
    if p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    return family_prop7(p, 2, k, verify=verify)


def family_cor3(q: int, *, as_printed: bool = False, verify: bool = False) -> list[int]:
    """Base 2**q for odd prime q: values (2**(q(q-1)) - 1)/q - h, h = 1..q-2.

    Fermat's little theorem supplies the divisibility, so this is
    family_prop7(2, q, q-1).  as_printed=True instead returns the variant
    2**(q(q-1)) - 1 - h without the division; those values are exposed for
    reference only and cannot be combined with verify.
    """
    if q == 2 or not is_prime(q):
        raise ValueError(f"q must be an odd prime, got {q}")
    if as_printed:
        if verify:
            raise ValueError("as-printed values are unverified; combine with verify is not supported")
        top = 2 ** (q * (q - 1)) - 1
        return [top - h for h in range(1, q - 1)]
    return family_prop7(2, q, q - 1, verify=verify)


def family_prop8(p: int, r: int, l: int, k: int, *, verify: bool = False) -> list[int]:
    """The k-1 values (l/r) * (1 + p + ... + p**(kr-1)) - h, h = 1..k-1; base p**r.

    Requires l < p and r | l; the values fall inside the amplitude-k jump at
    l * p**(kr).
    """
    _check_prime(p)
    if r < 2:
        raise ValueError(f"need r >= 2, got {r}")
    if k <= 1:
        raise ValueError(f"need k > 1, got {k}")
    if l < 1:
        raise ValueError(f"need l >= 1, got {l}")
    if l >= p:
        raise PreconditionError(f"l={l} must be below p={p}")
    if l % r:
        raise PreconditionError(f"r={r} does not divide l={l}")
    top = (l // r) * _repunit(p, k * r)
    vals = [top - h for h in range(1, k)]
    return _verified(p**r, vals, verify)


# ---------------------------------------------------------------------------
# image density

# Above these sizes the counting loops switch to numpy chunks; the chunked
# paths replicate the scalar walks exactly and are tested against them.
_SCALAR_SCAN_LIMIT = 1 << 17
_SCALAR_WALK_LIMIT = 1 << 15
_CHUNK = 1 << 21


def density_paper_formula(p: int, k: int) -> int:
    """Closed-form predicted count for N = p**k - 1, reported for comparison."""
    _check_prime(p)
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    return p**k - (p - 1) * k * (k - 1) // 2


def _power_index(p: int, N: int) -> int | None:
    m = N + 1
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    return k if m == 1 and k >= 1 else None


def density_exact(p: int, N: int) -> DensityReport:
    """Exact count of attained values in [0, N] for a prime base.

    Counts twice, by jump-walk subtraction and by direct value scan, and
    raises if the routes ever disagree.
    """
    _check_prime(p)
    if N < 1:
        raise ValueError(f"need N >= 1, got {N}")
    a_walk = _count_by_jump_walk(p, N)
    a_scan = _count_by_value_scan(p, N)
    if a_walk != a_scan:
        raise RuntimeError(
            f"density counts disagree for p={p}, N={N}: walk {a_walk}, scan {a_scan}"
        )
    k = _power_index(p, N)
    formula = density_paper_formula(p, k) if k is not None else None
    return DensityReport(p, N, a_walk, formula, Fraction(a_walk, N))


def _count_by_jump_walk(p: int, N: int) -> int:
    """Image members <= N as N + 1 minus the values skipped by jumps."""
    spec = BaseSpec.of(p)
    bound = min_arg_reaching(spec, N)
    if bound // p <= _SCALAR_WALK_LIMIT:
        skipped = 0
        prev = 0
        for rec in jump_stream(spec, 0, bound):
            after = prev + rec.composite_amplitude
            top = min(after - 1, N)
            if top > prev:
                skipped += top - prev
            prev = after
            if prev >= N:
                break
        return N + 1 - skipped
    return _count_by_jump_walk_np(p, N, bound)


def _count_by_jump_walk_np(p: int, N: int, bound: int) -> int:
    # same walk, chunked: locations are the multiples of p, amplitudes their
    # valuations, and the running value is the cumulative amplitude sum
    skipped = 0
    prev = 0
    lo = p
    while True:
        arr = np.arange(lo, min(lo + _CHUNK * p, bound + p), p, dtype=np.int64)
        amp = np.ones(arr.shape, dtype=np.int64)
        m = arr // p
        idx = np.flatnonzero(m % p == 0)
        while idx.size:
            m[idx] //= p
            amp[idx] += 1
            idx = idx[m[idx] % p == 0]
        cum = np.cumsum(amp) + prev
        last = int(cum[-1])
        if last < N:
            skipped += last - prev - len(arr)
            prev = last
            lo = int(arr[-1]) + p
            continue
        i = int(np.searchsorted(cum, N, side="left"))
        before = int(cum[i - 1]) if i else prev
        skipped += (before - prev) - i
        top = min(int(cum[i]) - 1, N)
        if top > before:
            skipped += top - before
        return N + 1 - skipped


def _count_by_value_scan(p: int, N: int) -> int:
    """Image members <= N by evaluating the count at every n and deduplicating."""
    spec = BaseSpec.of(p)
    stop = min_arg_reaching(spec, N + 1)
    if stop <= _SCALAR_SCAN_LIMIT:
        count = 0
        last = -1
        for n in range(stop + 1):
            v = z_prime(p, n)
            if v > N:
                break
            if v != last:
                count += 1
                last = v
        return count
    return _count_by_value_scan_np(p, N, stop)


def _count_by_value_scan_np(p: int, N: int, stop: int) -> int:
    dtype = np.int32 if stop < 2**31 - 1 else np.int64
    count = 0
    last = -1
    lo = 0
    while lo <= stop:
        arr = np.arange(lo, min(lo + _CHUNK, stop + 1), dtype=dtype)
        s = arr % p
        m = arr // p
        while m.any():
            s += m % p
            m //= p
        v = (arr - s) // (p - 1)
        cut = int(np.searchsorted(v, N, side="right"))
        vv = v[:cut]
        if vv.size:
            if int(vv[0]) != last:
                count += 1
            count += int(np.count_nonzero(vv[1:] > vv[:-1]))
            last = int(vv[-1])
        if cut < v.size:
            break
        lo += _CHUNK
    return count
