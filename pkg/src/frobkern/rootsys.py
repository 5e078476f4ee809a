"""Classical root-system data for types A-D, parabolic level/shape bookkeeping.

Roots are stored as integer coefficient vectors over the simple basis
``a1, ..., an``.  Relative to a subset ``J`` of simple roots we record for
each positive root outside the Levi its height (total coefficient sum),
its level (coefficient sum over simple roots outside ``J``) and its shape
(the component supported outside ``J``).  The descending central series of
the unipotent radical is then read off level-wise: the ``v``-th stage is
spanned by the roots of level >= v.

The fixed total order on roots compares coefficient vectors from the
highest simple-root index downwards, so alpha < alpha + gamma whenever
gamma is a nonzero non-negative combination (the order respects addition).
For type A this agrees with reading the strictly-upper-triangular matrix
positions column-major.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import ConfigError, DomainError

FAMILIES = ("A", "B", "C", "D")


@dataclass(frozen=True, order=False)
class Root:
    """A root written in the simple basis; coeffs[i] multiplies a(i+1)."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    @property
    def height(self) -> int:
        return sum(self.coeffs)

    def is_positive(self) -> bool:
        return all(c >= 0 for c in self.coeffs) and any(self.coeffs)

    def __add__(self, other: "Root") -> "Root":
        if len(self.coeffs) != len(other.coeffs):
            raise DomainError("cannot add roots of different ranks")
        return Root(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Root") -> "Root":
        if len(self.coeffs) != len(other.coeffs):
            raise DomainError("cannot subtract roots of different ranks")
        return Root(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def sort_key(self) -> tuple[int, ...]:
        # Highest-index coefficient dominates; respects addition on the
        # positive cone.
        return tuple(reversed(self.coeffs))

    def __lt__(self, other: "Root") -> bool:
        return self.sort_key() < other.sort_key()

    def __le__(self, other: "Root") -> bool:
        return self.sort_key() <= other.sort_key()

    def label(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs, start=1):
            if c == 1:
                parts.append(f"a{i}")
            elif c:
                parts.append(f"{c}a{i}")
        return "+".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"Root({self.label()})"


def parse_root(text: str, rank: int) -> Root:
    """Parse either a comma list of coefficients or a label like a1+2a3."""
    text = text.strip()
    if not text:
        raise DomainError("empty root")
    if "," in text or text.lstrip("-").isdigit():
        coeffs = [int(t) for t in text.split(",")]
        if len(coeffs) != rank:
            raise DomainError(f"expected {rank} coefficients, got {len(coeffs)}")
        return Root(tuple(coeffs))
    coeffs = [0] * rank
    for part in text.split("+"):
        part = part.strip()
        head, _, idx = part.partition("a")
        if not idx.isdigit():
            raise DomainError(f"cannot parse root component {part!r}")
        i = int(idx)
        if not 1 <= i <= rank:
            raise DomainError(f"simple root a{i} out of range for rank {rank}")
        coeffs[i - 1] += int(head) if head else 1
    return Root(tuple(coeffs))


def _simple(rank: int, i: int) -> Root:
    coeffs = [0] * rank
    coeffs[i - 1] = 1
    return Root(tuple(coeffs))


def _interval(rank, lo, hi, weight=1):
    """weight * (a_lo + ... + a_hi), empty when lo > hi."""
    coeffs = [0] * rank
    for k in range(lo, hi + 1):
        coeffs[k - 1] = weight
    return Root(tuple(coeffs))


def _positive_roots(family: str, n: int) -> list[Root]:
    roots: list[Root] = []
    if family == "A":
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                roots.append(_interval(n, i, j))
    elif family == "B":
        # e_i - e_j, e_i, e_i + e_j with a_n the short root e_n
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                roots.append(_interval(n, i, j - 1))
        for i in range(1, n + 1):
            roots.append(_interval(n, i, n))
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                roots.append(_interval(n, i, j - 1) + _interval(n, j, n, 2))
    elif family == "C":
        # a_n the long root 2e_n
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                roots.append(_interval(n, i, j - 1))
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                roots.append(
                    _interval(n, i, j - 1) + _interval(n, j, n - 1, 2) + _simple(n, n)
                )
        for i in range(1, n + 1):
            roots.append(_interval(n, i, n - 1, 2) + _simple(n, n))
    elif family == "D":
        # a_n the fork node e_{n-1} + e_n
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                roots.append(_interval(n, i, j - 1))
        for i in range(1, n):
            roots.append(_interval(n, i, n - 2) + _simple(n, n))
        for i in range(1, n - 1):
            for j in range(i + 1, n):
                roots.append(
                    _interval(n, i, j - 1)
                    + _interval(n, j, n - 2, 2)
                    + _simple(n, n - 1)
                    + _simple(n, n)
                )
    else:  # pragma: no cover - guarded by build_root_system
        raise ConfigError(f"unknown family {family!r}")
    return sorted(set(roots), key=Root.sort_key)


def classical_positive_count(family: str, n: int) -> int:
    if family == "A":
        return n * (n + 1) // 2
    if family in ("B", "C"):
        return n * n
    return n * n - n  # D


@dataclass(frozen=True)
class RootSystemData:
    family: str
    rank: int
    simple_roots: tuple[str, ...]
    positive_roots: tuple[Root, ...]

    def __post_init__(self):
        expected = classical_positive_count(self.family, self.rank)
        if len(self.positive_roots) != expected:
            raise ConfigError(
                f"{self.family}{self.rank}: got {len(self.positive_roots)} "
                f"positive roots, expected {expected}"
            )
        for beta in self.positive_roots:
            if not beta.is_positive():
                raise ConfigError(f"non-positive root {beta} in table")

    def simple_index(self, label: str) -> int:
        try:
            return self.simple_roots.index(label)
        except ValueError:
            raise ConfigError(f"unknown simple root {label!r}") from None

    def contains(self, beta: Root) -> bool:
        return beta in set(self.positive_roots)


def build_root_system(family: str, rank: int) -> RootSystemData:
    """Positive-root table for a classical family, in the fixed order."""
    family = family.upper()
    if family not in FAMILIES:
        raise ConfigError(f"family {family!r} not supported (use A, B, C or D)")
    min_rank = {"A": 1, "B": 2, "C": 2, "D": 3}[family]
    if rank < min_rank:
        raise ConfigError(f"{family}{rank} is not a valid classical type here")
    labels = tuple(f"a{i}" for i in range(1, rank + 1))
    return RootSystemData(family, rank, labels, tuple(_positive_roots(family, rank)))


@dataclass(frozen=True)
class ParabolicContext:
    """A root system together with a choice J of simple roots (the Levi)."""

    system: RootSystemData
    J: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "J", frozenset(self.J))
        for label in self.J:
            self.system.simple_index(label)

    @property
    def rank(self) -> int:
        return self.system.rank

    def _outside_mask(self) -> tuple[bool, ...]:
        return tuple(lab not in self.J for lab in self.system.simple_roots)

    def level(self, beta: Root) -> int:
        mask = self._outside_mask()
        return sum(c for c, out in zip(beta.coeffs, mask) if out)

    def shape(self, beta: Root) -> Root:
        mask = self._outside_mask()
        return Root(tuple(c if out else 0 for c, out in zip(beta.coeffs, mask)))

    def radical_roots(self) -> tuple[Root, ...]:
        """Roots of the unipotent radical: positive roots of level >= 1."""
        return tuple(b for b in self.system.positive_roots if self.level(b) >= 1)

    def max_level(self) -> int:
        levels = [self.level(b) for b in self.radical_roots()]
        return max(levels) if levels else 0


@dataclass(frozen=True)
class LevelClass:
    height: int
    level: int
    shape: Root

    def __post_init__(self):
        if self.level > self.height:
            raise DomainError("level cannot exceed height")


def classify_root(beta: Root, ctx: ParabolicContext) -> LevelClass:
    """Height/level/shape of a radical root relative to ctx.J."""
    if not ctx.system.contains(beta):
        raise DomainError(f"{beta} is not a positive root of {ctx.system.family}{ctx.rank}")
    level = ctx.level(beta)
    if level == 0:
        raise DomainError(f"{beta} lies in the Levi subsystem for J={sorted(ctx.J)}")
    return LevelClass(height=beta.height, level=level, shape=ctx.shape(beta))


def gamma_roots(ctx: ParabolicContext, v: int) -> tuple[Root, ...]:
    """Roots of level >= v, in the fixed order (the v-th central-series stage)."""
    if v < 1:
        raise DomainError("central series stage v must be >= 1")
    return tuple(
        sorted((b for b in ctx.radical_roots() if ctx.level(b) >= v), key=Root.sort_key)
    )


def roots_of_level(ctx: ParabolicContext, v: int) -> tuple[Root, ...]:
    return tuple(b for b in gamma_roots(ctx, v) if ctx.level(b) == v)


def summand_pairs(
    beta: Root, ctx: ParabolicContext, min_level: int = 1
) -> list[tuple[Root, Root]]:
    """All ordered pairs alpha < alpha' of radical roots with alpha+alpha' = beta.

    Both members must have level >= min_level (use min_level=i when working
    inside the i-th stage of the central series).  Pairs are returned sorted
    and duplicate-free; a root never decomposes as alpha+alpha in a reduced
    system, so the strict order loses nothing.
    """
    if not ctx.system.contains(beta):
        raise DomainError(f"{beta} is not a positive root")
    radical = {r for r in ctx.radical_roots() if ctx.level(r) >= min_level}
    pairs = []
    for alpha in radical:
        rest = beta - alpha
        if rest.is_positive() and rest in radical and alpha < rest:
            pairs.append((alpha, rest))
    pairs.sort(key=lambda ab: (ab[0].sort_key(), ab[1].sort_key()))
    return pairs


@dataclass(frozen=True)
class PairingReport:
    """Outcome of the level-2 decomposition-count scan for one context."""

    family: str
    rank: int
    J: tuple[str, ...]
    p: int
    ok: bool
    per_root: tuple[tuple[Root, int, bool], ...]  # (root, #pairs, ok)
    witnesses: tuple[tuple[Root, tuple[Root, ...]], ...]

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "rank": self.rank,
            "J": list(self.J),
            "p": self.p,
            "ok": self.ok,
            "per_root": [
                {"root": r.label(), "pairs": n, "ok": ok} for r, n, ok in self.per_root
            ],
            "witnesses": [
                {"root": r.label(), "roots": [w.label() for w in ws]}
                for r, ws in self.witnesses
            ],
        }


def check_pairing_hypothesis(ctx: ParabolicContext, p: int) -> PairingReport:
    """Scan level-2 roots for p disjoint two-term decompositions.

    Distinct decompositions of the same root are automatically disjoint
    (alpha + alpha' = alpha + alpha'' forces alpha' = alpha''), so 2p
    distinct level-1 roots pairing to beta exist exactly when beta has at
    least p decompositions into level-1 summands.  On failure the first p
    decompositions are flattened into the witness tuple.
    """
    if p < 3 or p % 2 == 0:
        raise DomainError("p must be an odd prime >= 3")
    per_root = []
    witnesses = []
    for beta in roots_of_level(ctx, 2):
        pairs = [
            (a, b)
            for a, b in summand_pairs(beta, ctx)
            if ctx.level(a) == 1 and ctx.level(b) == 1
        ]
        ok = len(pairs) < p
        per_root.append((beta, len(pairs), ok))
        if not ok:
            flat = tuple(itertools.chain.from_iterable(pairs[:p]))
            witnesses.append((beta, flat))
    return PairingReport(
        family=ctx.system.family,
        rank=ctx.rank,
        J=tuple(sorted(ctx.J)),
        p=p,
        ok=all(ok for _, _, ok in per_root),
        per_root=tuple(per_root),
        witnesses=tuple(witnesses),
    )


def context(family: str, rank: int, J: frozenset[str] | set[str] | tuple = ()) -> ParabolicContext:
    return ParabolicContext(build_root_system(family, rank), frozenset(J))


def type_a_matrix_position(beta: Root) -> tuple[int, int]:
    """Interpret a type-A root a_i+...+a_{j-1} as the matrix position (i, j)."""
    support = [k for k, c in enumerate(beta.coeffs, start=1) if c]
    if not support or any(beta.coeffs[k - 1] != 1 for k in support):
        raise DomainError(f"{beta} is not a type-A positive root")
    i, j = support[0], support[-1] + 1
    if support != list(range(i, j)):
        raise DomainError(f"{beta} is not an interval root")
    return i, j
