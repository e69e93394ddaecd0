"""Intersection arrays: validation, derived parameters, imprimitivity flags,
and the parametric Johnson / Hamming / crown / cycle families.

All arithmetic here is exact (Python ints and :class:`fractions.Fraction`).
"""

from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import (
    InvalidArray,
    LambdaMuViolation,
    MonotonicityViolation,
    NegativeA,
    NonIntegralSphereSize,
    ParameterOutOfRange,
    ParityViolation,
    ValencyTwo,
)


class SphereOrderWarning(UserWarning):
    """Raised (as a warning) when k_1 > k_2."""


@dataclass(frozen=True)
class IntersectionArray:
    """The sequences (b_0..b_{d-1}; c_1..c_d).

    Construct through :func:`validate` unless the input is known to be valid.
    """

    b: tuple[int, ...]
    c: tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.b)

    @property
    def k(self) -> int:
        return self.b[0]

    def b_at(self, i: int) -> int:
        """b_i with the convention b_d = 0."""
        return self.b[i] if i < self.d else 0

    def c_at(self, i: int) -> int:
        """c_i with the convention c_0 = 0."""
        return self.c[i - 1] if i > 0 else 0

    def a_at(self, i: int) -> int:
        return self.k - self.b_at(i) - self.c_at(i)

    @property
    def a(self) -> tuple[int, ...]:
        return tuple(self.a_at(i) for i in range(self.d + 1))

    def to_dict(self) -> dict:
        return {"d": self.d, "b": list(self.b), "c": list(self.c)}

    @classmethod
    def from_dict(cls, obj: dict) -> "IntersectionArray":
        try:
            d, b, c = obj["d"], obj["b"], obj["c"]
        except (KeyError, TypeError) as exc:
            raise InvalidArray(f"array object needs fields d, b, c: {exc}") from None
        if d != len(b) or d != len(c):
            raise InvalidArray(f"d={d} does not match len(b)={len(b)}, len(c)={len(c)}")
        return validate(b, c)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.b)) + ";" + ",".join(map(str, self.c)) + "}"


@dataclass(frozen=True)
class DerivedParams:
    k: int
    k_i: tuple[int, ...]  # k_0 = 1, ..., k_d
    n: int
    lam: int
    mu: int  # c_2; 0 when d = 1 (no pairs at distance two)
    k_max: int
    a: tuple[int, ...]


def _sphere_sizes(b, c):
    sizes = [Fraction(1)]
    for i in range(1, len(b) + 1):
        sizes.append(sizes[-1] * b[i - 1] / c[i - 1])
    return sizes


def check(b: Sequence[int], c: Sequence[int]) -> list[InvalidArray]:
    """Return every violated constraint (empty list for a valid array)."""
    b, c = list(b), list(c)
    if not b or len(b) != len(c):
        return [InvalidArray(f"b and c must be nonempty and of equal length, got {len(b)} and {len(c)}")]
    if not all(isinstance(x, int) and not isinstance(x, bool) for x in b + c):
        return [InvalidArray("array entries must be integers")]
    d, k = len(b), b[0]
    out: list[InvalidArray] = []

    for i, x in enumerate(b):
        if x < 1:
            out.append(MonotonicityViolation(f"b_{i} = {x} must be at least 1", i))
    if d >= 2 and not b[0] > b[1]:
        out.append(MonotonicityViolation(f"b_0 = {b[0]} must exceed b_1 = {b[1]}", 1))
    for i in range(2, d):
        if b[i] > b[i - 1]:
            out.append(MonotonicityViolation(f"b_{i} = {b[i]} exceeds b_{i-1} = {b[i-1]}", i))
    if c[0] != 1:
        out.append(MonotonicityViolation(f"c_1 = {c[0]} must equal 1", 1))
    for i in range(2, d + 1):
        if c[i - 1] < c[i - 2]:
            out.append(MonotonicityViolation(f"c_{i} = {c[i-1]} is below c_{i-1} = {c[i-2]}", i))
    if c[-1] > k:
        out.append(MonotonicityViolation(f"c_{d} = {c[-1]} exceeds k = {k}", d))
    if any(x < 1 for x in c):
        return out

    for i in range(1, d + 1):
        a_i = k - (b[i] if i < d else 0) - c[i - 1]
        if a_i < 0:
            out.append(NegativeA(f"a_{i} = {a_i} is negative", i))

    sizes = _sphere_sizes(b, c)
    integral = True
    for i in range(1, d + 1):
        if sizes[i].denominator != 1:
            integral = False
            out.append(NonIntegralSphereSize(f"k_{i} = {sizes[i]} is not an integer", i))
    if integral:
        n = sum(sizes)
        for i in range(1, d + 1):
            if (n * sizes[i]) % 2:
                out.append(ParityViolation(f"n*k_{i} = {n}*{sizes[i]} is odd", i))

    if d >= 2:
        lam, mu = k - b[1] - 1, c[1]
        if 2 * lam > k + mu:
            out.append(LambdaMuViolation(f"2*lambda = {2 * lam} exceeds k + mu = {k + mu}", 1))
    return out


def validate(b: Sequence[int], c: Sequence[int]) -> IntersectionArray:
    """Build an :class:`IntersectionArray`, raising on the first violation.

    The raised exception carries the complete list in ``.violations``.
    """
    problems = check(b, c)
    if problems:
        first = problems[0]
        first.violations = problems
        raise first
    arr = IntersectionArray(tuple(int(x) for x in b), tuple(int(x) for x in c))
    if arr.d >= 2 and arr.b[1] < arr.c[1]:
        warnings.warn(f"k_1 > k_2 for {arr}", SphereOrderWarning, stacklevel=2)
    return arr


def derive(array: IntersectionArray) -> DerivedParams:
    b, c, d, k = array.b, array.c, array.d, array.k
    sizes = [int(x) for x in _sphere_sizes(b, c)]
    # k/c_2 > k_2/k_1 >= ... >= k_d/k_{d-1}, compared by cross-multiplication
    ratios = [(k, c[1])] if d >= 2 else []
    ratios += [(sizes[i + 1], sizes[i]) for i in range(1, d)]
    for i, ((p1, q1), (p2, q2)) in enumerate(zip(ratios, ratios[1:])):
        if i == 0 and not p1 * q2 > p2 * q1:
            raise MonotonicityViolation("k/c_2 > k_2/k_1 fails", 1)
        if i > 0 and not p1 * q2 >= p2 * q1:
            raise MonotonicityViolation(f"ratio chain fails at k_{i + 2}/k_{i + 1}", i + 1)
    return DerivedParams(
        k=k,
        k_i=tuple(sizes),
        n=sum(sizes),
        lam=k - b[1] - 1 if d >= 2 else k - 1,
        mu=c[1] if d >= 2 else 0,
        k_max=max(sizes[1:]),
        a=array.a,
    )


@dataclass(frozen=True)
class Imprimitivity:
    bipartite: bool
    antipodal: bool

    @property
    def primitive(self) -> bool:
        return not (self.bipartite or self.antipodal)


def detect_imprimitivity(array: IntersectionArray) -> Imprimitivity:
    """Array-level bipartite / antipodal flags (valency at least three)."""
    if array.k <= 2:
        raise ValencyTwo(f"valency {array.k}: cycles and K_2 are handled as a family")
    d = array.d
    bipartite = all(a == 0 for a in array.a)
    antipodal = d >= 2 and all(
        array.b_at(i) == array.c_at(d - i) for i in range(d + 1) if i != d // 2
    )
    return Imprimitivity(bipartite, antipodal)


# -- families ------------------------------------------------------------------

_KIND_ORDER = {"Johnson": 0, "Hamming": 1, "Crown": 2, "Cycle": 3}
_TAG_RE = re.compile(r"^\s*(Johnson|Hamming|Crown|Cycle)\s*\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)\s*$", re.I)


@dataclass(frozen=True)
class FamilyTag:
    """Johnson(s, d), Hamming(d, s), Crown(m) or Cycle(n)."""

    kind: str
    params: tuple[int, ...]

    def __post_init__(self):
        p = self.params
        ok = {
            "Johnson": lambda: len(p) == 2 and p[1] >= 2 and p[0] >= 2 * p[1],
            "Hamming": lambda: len(p) == 2 and p[0] >= 2 and p[1] >= 2,
            "Crown": lambda: len(p) == 1 and p[0] >= 3,
            "Cycle": lambda: len(p) == 1 and p[0] >= 3,
        }.get(self.kind)
        if ok is None or not ok():
            raise ParameterOutOfRange(f"{self.kind}{p} is outside the defining range")

    @classmethod
    def johnson(cls, s: int, d: int) -> "FamilyTag":
        return cls("Johnson", (s, d))

    @classmethod
    def hamming(cls, d: int, s: int) -> "FamilyTag":
        return cls("Hamming", (d, s))

    @classmethod
    def crown(cls, m: int) -> "FamilyTag":
        return cls("Crown", (m,))

    @classmethod
    def cycle(cls, n: int) -> "FamilyTag":
        return cls("Cycle", (n,))

    @classmethod
    def parse(cls, text: str) -> "FamilyTag":
        m = _TAG_RE.match(text)
        if not m:
            raise ParameterOutOfRange(f"cannot parse family tag {text!r}")
        kind = m.group(1).capitalize()
        params = tuple(int(g) for g in m.groups()[1:] if g is not None)
        return cls(kind, params)

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.params)

    def __str__(self) -> str:
        return f"{self.kind}({','.join(map(str, self.params))})"


def family_array(tag: FamilyTag) -> IntersectionArray:
    if tag.kind == "Johnson":
        s, d = tag.params
        b = [(d - i) * (s - d - i) for i in range(d)]
        c = [i * i for i in range(1, d + 1)]
    elif tag.kind == "Hamming":
        d, s = tag.params
        b = [(d - i) * (s - 1) for i in range(d)]
        c = list(range(1, d + 1))
    elif tag.kind == "Crown":
        (m,) = tag.params
        b, c = [m - 1, m - 2, 1], [1, m - 2, m - 1]
    else:
        (n,) = tag.params
        d = n // 2
        b = [2] + [1] * (d - 1)
        c = [1] * (d - 1) + [2 if n % 2 == 0 else 1]
    return validate(b, c)


def match_family(array: IntersectionArray) -> tuple[FamilyTag, ...]:
    """Every catalog family tag whose array equals ``array``, sorted."""
    d, k = array.d, array.k
    candidates = []
    if k == 2:
        candidates.append(("Cycle", (derive(array).n,)))
    if k % d == 0:
        candidates.append(("Hamming", (d, k // d + 1)))
        candidates.append(("Johnson", (k // d + d, d)))
    if d == 3:
        candidates.append(("Crown", (k + 1,)))
    found = []
    for kind, params in candidates:
        try:
            tag = FamilyTag(kind, params)
        except ParameterOutOfRange:
            continue
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", SphereOrderWarning)
            if family_array(tag) == array:
                found.append(tag)
    return tuple(sorted(found, key=FamilyTag.sort_key))


def diameter_log_bound_holds(array: IntersectionArray) -> bool:
    """d <= 5 log2 n, for valency at least three."""
    return array.d <= 5 * math.log2(derive(array).n)


def enumerate_arrays(max_k: int, max_d: int, max_n: int | None = None) -> Iterator[IntersectionArray]:
    """All arrays passing :func:`check` with k <= max_k and d <= max_d.

    Deterministic order: by k, then d, then lexicographically.
    """
    for k in range(1, max_k + 1):
        for d in range(1, max_d + 1):
            yield from _extend(k, d, max_n, [k], [], Fraction(1), 1)


def _extend(k, d, max_n, b, c, k_prev, n_so_far):
    i = len(c) + 1  # choosing c_i and, if i < d, b_i
    c_lo = c[-1] if c else 1
    c_hi = 1 if i == 1 else k
    for ci in range(c_lo, c_hi + 1):
        k_i = k_prev * b[i - 1] / ci
        if k_i.denominator != 1:
            continue
        n = n_so_far + int(k_i)
        if max_n is not None and n > max_n:
            continue
        if i == d:
            if k - ci < 0:
                continue
            if not check(b, c + [ci]):
                yield IntersectionArray(tuple(b), tuple(c + [ci]))
            continue
        b_hi = b[-1] - 1 if i == 1 else b[-1]
        for bi in range(1, b_hi + 1):
            if k - bi - ci < 0:
                continue
            yield from _extend(k, d, max_n, b + [bi], c + [ci], k_i, n)
