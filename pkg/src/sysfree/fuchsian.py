"""Exact arithmetic in the Fuchsian group derived from the quaternion algebra
of signature (-1, p), together with its principal congruence subgroups.

An element is stored as an integer 4-tuple (a, b, c, d) standing for the
2x2 matrix

    [ a + b*sqrt(p)   -c + d*sqrt(p) ]
    [ c + d*sqrt(p)    a - b*sqrt(p) ]

taken modulo +-identity.  The determinant condition is

    a^2 - p*b^2 + c^2 - p*d^2 = 1,

kept exactly over the integers.  Hyperbolic elements (|a| > 1) translate
along a closed geodesic of length 2*arccosh(|a|) on the quotient surface,
so trace searches double as systole certificates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import NoCertificateError, NonHyperbolicError

# Default base orbifold Euler characteristic; calibrated so that
# genus_estimate(residue_group_order(p=3, N=2), chi0) is a positive integer.
DEFAULT_CHI0 = Fraction(-1, 4)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FuchsianParams:
    """Arithmetic datum: the prime p, required to satisfy p = 3 (mod 4)."""

    p: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.p % 4 != 3:
            raise ValueError(f"p must be congruent to 3 mod 4, got {self.p}")


@dataclass(frozen=True)
class CongruenceLevel:
    """Level N >= 2 of a principal congruence subgroup."""

    N: int

    def __post_init__(self) -> None:
        if self.N < 2:
            raise ValueError(f"congruence level must be >= 2, got {self.N}")


def _level(N: int | CongruenceLevel) -> int:
    if isinstance(N, CongruenceLevel):
        return N.N
    return CongruenceLevel(int(N)).N


@dataclass(frozen=True, order=True)
class GroupElement:
    """Canonical representative mod +-I: a > 0, or a = 0 and the first
    nonzero coordinate among (b, c, d) positive."""

    a: int
    b: int
    c: int
    d: int
    p: int

    def __post_init__(self) -> None:
        det = self.a * self.a - self.p * self.b * self.b \
            + self.c * self.c - self.p * self.d * self.d
        if det != 1:
            raise ValueError(
                f"determinant condition violated: ({self.a},{self.b},{self.c},{self.d})"
                f" has a^2-pb^2+c^2-pd^2 = {det}")
        if self._needs_flip():
            for name in ("a", "b", "c", "d"):
                object.__setattr__(self, name, -getattr(self, name))

    def _needs_flip(self) -> bool:
        if self.a != 0:
            return self.a < 0
        for x in (self.b, self.c, self.d):
            if x != 0:
                return x < 0
        return False

    @property
    def abs_trace(self) -> int:
        return abs(2 * self.a)

    def tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)


def identity(p: int) -> GroupElement:
    return GroupElement(1, 0, 0, 0, p)


def multiply(e1: GroupElement, e2: GroupElement) -> GroupElement:
    """Group law: product of the underlying matrices over Z[sqrt(p)]."""
    if e1.p != e2.p:
        raise ValueError(f"mismatched p: {e1.p} vs {e2.p}")
    p = e1.p
    a1, b1, c1, d1 = e1.tuple()
    a2, b2, c2, d2 = e2.tuple()
    return GroupElement(
        a1 * a2 + p * b1 * b2 - c1 * c2 + p * d1 * d2,
        a1 * b2 + a2 * b1 - c1 * d2 + c2 * d1,
        a1 * c2 + a2 * c1 + p * (b2 * d1 - b1 * d2),
        a1 * d2 + a2 * d1 + b2 * c1 - b1 * c2,
        p,
    )


def inverse(e: GroupElement) -> GroupElement:
    # adjugate of a determinant-1 matrix
    return GroupElement(e.a, -e.b, -e.c, -e.d, e.p)


def is_in_level(e: GroupElement, N: int | CongruenceLevel) -> bool:
    """Membership in the level-N congruence subgroup, i.e. the matrix is
    congruent to +-I mod N."""
    n = _level(N)
    if e.b % n or e.c % n or e.d % n:
        return False
    return e.a % n == 1 % n or e.a % n == (-1) % n


def translation_length(e: GroupElement) -> float:
    """Geodesic translation length 2*arccosh(|a|) of a hyperbolic element."""
    if abs(e.a) <= 1:
        raise NonHyperbolicError(
            f"|a| = {abs(e.a)} <= 1: element is not hyperbolic")
    return 2.0 * math.acosh(abs(e.a))


@dataclass(frozen=True)
class SpectrumEntry:
    abs_trace: int
    length: float
    witnesses: tuple[GroupElement, ...]

    @property
    def witness_count(self) -> int:
        return len(self.witnesses)


@dataclass(frozen=True)
class LengthSpectrum:
    """Hyperbolic congruence-subgroup elements found within search bounds,
    grouped by |trace| and sorted ascending."""

    p: int
    N: int
    trace_bound: int
    box_bound: int
    entries: tuple[SpectrumEntry, ...]

    def __post_init__(self) -> None:
        traces = [entry.abs_trace for entry in self.entries]
        if traces != sorted(traces) or len(set(traces)) != len(traces):
            raise ValueError("spectrum entries must be sorted by |trace|, no repeats")
        for entry in self.entries:
            if entry.abs_trace <= 2:
                raise ValueError("spectrum admits hyperbolic elements only")
            expected = 2.0 * math.acosh(entry.abs_trace / 2.0)
            if abs(entry.length - expected) > 1e-12:
                raise ValueError(
                    f"length {entry.length} inconsistent with |trace| {entry.abs_trace}")
            if not entry.witnesses:
                raise ValueError("spectrum entry without witnesses")

    def __len__(self) -> int:
        return len(self.entries)

    def validate_witnesses(self) -> None:
        """Deep check: every witness satisfies determinant, congruence and
        trace conditions.  Used at cache-trust boundaries."""
        for entry in self.entries:
            for w in entry.witnesses:
                if w.p != self.p:
                    raise ValueError("witness p mismatch")
                if w.abs_trace != entry.abs_trace:
                    raise ValueError("witness trace mismatch")
                if not is_in_level(w, self.N):
                    raise ValueError(f"witness {w.tuple()} not in level {self.N}")


def _multiples(bound: int, n: int) -> range:
    start = -(bound // n) * n
    return range(start, bound + 1, n)


def enumerate_level_elements(
    params: FuchsianParams,
    N: int | CongruenceLevel,
    trace_bound: int,
    box_bound: int,
) -> LengthSpectrum:
    """Search for hyperbolic level-N elements with |trace| <= trace_bound and
    |b|, |d| <= box_bound.

    For each admissible a the determinant condition is solved for c:
    c^2 = p*b^2 + p*d^2 - a^2 + 1 must be a perfect square divisible by N.
    The search is complete within the box but the box never exhausts the
    group, so an empty result is valid and certified lengths are upper
    bounds only.
    """
    if trace_bound <= 2:
        raise ValueError(f"trace_bound must exceed 2, got {trace_bound}")
    if box_bound < 1:
        raise ValueError(f"box_bound must be >= 1, got {box_bound}")
    p = params.p
    n = _level(N)
    entries = []
    for a in range(2, trace_bound // 2 + 1):
        if a % n != 1 % n and a % n != (-1) % n:
            continue
        witnesses = []
        base = 1 - a * a
        for b in _multiples(box_bound, n):
            pb = p * b * b + base
            for d in _multiples(box_bound, n):
                v = pb + p * d * d
                if v < 0:
                    continue
                c = math.isqrt(v)
                if c * c != v or c % n:
                    continue
                witnesses.append(GroupElement(a, b, c, d, p))
                if c:
                    witnesses.append(GroupElement(a, b, -c, d, p))
        if witnesses:
            entries.append(SpectrumEntry(
                abs_trace=2 * a,
                length=2.0 * math.acosh(float(a)),
                witnesses=tuple(sorted(witnesses)),
            ))
    return LengthSpectrum(p=p, N=n, trace_bound=trace_bound,
                          box_bound=box_bound, entries=tuple(entries))


def systole_certificate(
    params: FuchsianParams,
    N: int | CongruenceLevel,
    trace_bound: int,
    box_bound: int,
) -> tuple[float, GroupElement]:
    """Length of the shortest geodesic found, with one witness.

    This is an upper bound on the quotient surface's systole; it equals the
    systole whenever the true minimizer lies inside the search box.
    """
    spectrum = enumerate_level_elements(params, N, trace_bound, box_bound)
    if not spectrum.entries:
        raise NoCertificateError(
            f"no hyperbolic element of level {_level(N)} found with "
            f"trace_bound={trace_bound}, box_bound={box_bound}")
    first = spectrum.entries[0]
    return first.length, first.witnesses[0]


def residue_group_order(params: FuchsianParams, N: int | CongruenceLevel) -> int:
    """Order of the mod-N residue solution group, modulo +-I.

    Counts tuples (a,b,c,d) in (Z/N)^4 with a^2 - p b^2 + c^2 - p d^2 = 1,
    halving when -I and I differ mod N (all N > 2).
    """
    p = params.p
    n = _level(N)
    sq = [i * i % n for i in range(n)]
    psq = [p * i * i % n for i in range(n)]
    count = 0
    for a, b, c, d in product(range(n), repeat=4):
        if (sq[a] - psq[b] + sq[c] - psq[d]) % n == 1 % n:
            count += 1
    if n > 2:
        assert count % 2 == 0, "solutions must pair up under negation"
        count //= 2
    return count


def genus_estimate(index: int, chi0: float | Fraction = DEFAULT_CHI0):
    """Genus from Euler-characteristic multiplicativity: chi = index * chi0
    and chi = 2 - 2g give g = 1 - index*chi0/2.

    A non-integer value flags a mis-calibrated chi0; it is reported as-is,
    never rounded.
    """
    if index < 1:
        raise ValueError(f"index must be >= 1, got {index}")
    if chi0 >= 0:
        raise ValueError(f"base Euler characteristic must be negative, got {chi0}")
    return 1 - index * chi0 / 2


def diameter_upper_bound(genus: int, c_iso: float, seed_area: float) -> float:
    """Logarithmic diameter bound C_iso * ln(4*pi*(genus-1) / seed_area).

    Solves the isoperimetric growth dA/dt >= A/C_iso from a seed disk until
    the Gauss-Bonnet total area 4*pi*(genus-1) caps it.
    """
    if genus < 2:
        raise ValueError(f"genus must be >= 2, got {genus}")
    if c_iso <= 0:
        raise ValueError(f"c_iso must be positive, got {c_iso}")
    if seed_area <= 0:
        raise ValueError(f"seed_area must be positive, got {seed_area}")
    total = 4.0 * math.pi * (genus - 1)
    if seed_area >= total:
        raise ValueError(
            f"seed_area {seed_area} already exceeds total area {total}")
    return c_iso * math.log(total / seed_area)
