"""Point-counting evidence for the commuting-nilpotent varieties.

Systems are stored with signed integer coefficients so the same equations
can be counted over fields of different characteristics; a presentation is
materialised per characteristic on demand.  Everything here is exhaustive
enumeration: dimensions are bracketed by log_q of exact counts over two
primes rather than computed symbolically, and component decompositions are
checked by inclusion-exclusion over unions of relation systems.

The component systems attached to sub-diagrams follow the pattern of the
worked four-strand case: coordinates on removed nodes vanish, coordinates
inside a retained segment are pairwise proportional.  The sub-diagram
indexing of components is conjectural, so reports carry residuals and
never hard-fail on a mismatch.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetError, ConfigError, DomainError
from .grmodel import ModelContext, model_context, vr_coordinate_algebra
from .polyalg import GF, IdealPresentation, count_points, plain_ring

#: assignments enumerated per count (5^10 fits, 5^11 does not)
DEFAULT_COUNT_BUDGET = 10_000_000
#: solution rows materialised when listing points for the Frobenius check
DEFAULT_POINT_LIST_BUDGET = 600_000

SignedTerm = tuple[int, tuple[tuple[str, int], ...]]


@dataclass(frozen=True)
class VarietySystem:
    """A polynomial system with integer coefficients over named variables."""

    label: str
    variables: tuple[str, ...]
    relations: tuple[tuple[SignedTerm, ...], ...]
    free_rank: int = 0  # affine factor split off the ambient quotient variety
    claimed_dim: int | None = None

    def presentation(self, char: int) -> IdealPresentation:
        ring = plain_ring(char, self.variables, label=self.label)
        polys = []
        for rel in self.relations:
            poly = ring.zero()
            for coeff, exps in rel:
                poly = poly + ring.monomial(dict(exps), coeff)
            polys.append(poly)
        return IdealPresentation(ring, polys)

    def union(self, other: "VarietySystem", label: str | None = None) -> "VarietySystem":
        if self.variables != other.variables:
            raise DomainError("systems over different variable sets")
        merged = list(self.relations)
        for rel in other.relations:
            if rel not in merged:
                merged.append(rel)
        return VarietySystem(
            label or f"{self.label} & {other.label}",
            self.variables,
            tuple(merged),
            free_rank=self.free_rank,
        )

    def count(self, q: int, max_assignments: int | None = None) -> int:
        budget = DEFAULT_COUNT_BUDGET if max_assignments is None else max_assignments
        char = GF._factor(q)[0]
        return count_points(self.presentation(char), q, max_assignments=budget)


def _minor(a: str, b: str, l1: int, l2: int) -> tuple[SignedTerm, ...]:
    """X_a(l1) X_b(l2) - X_a(l2) X_b(l1) as signed terms."""

    def v(name, twist):
        return f"X[{name}]({twist})"

    return (
        (1, ((v(a, l1), 1), (v(b, l2), 1))),
        (-1, ((v(a, l2), 1), (v(b, l1), 1))),
    )


def _chain_variables(N: int, r: int) -> tuple[str, ...]:
    return tuple(f"X[a{s}]({l})" for l in range(r) for s in range(1, N))


def y_variety_system(N: int, r: int) -> VarietySystem:
    """Level-1 coordinates of the stage-3 quotient with consecutive minors."""
    if N < 3 or r < 1:
        raise ConfigError("need N >= 3 and r >= 1")
    relations = []
    for s in range(1, N - 1):
        for l1 in range(r):
            for l2 in range(l1 + 1, r):
                relations.append(_minor(f"a{s}", f"a{s+1}", l1, l2))
    return VarietySystem(
        label=f"Y_{r}(U{N}/G3)",
        variables=_chain_variables(N, r),
        relations=tuple(relations),
        free_rank=(N - 2) * r,
        claimed_dim=None,
    )


def x_variety_system(N: int, r: int, p_ref: int = 3) -> VarietySystem:
    """Full stage-3 quotient system, taken from the coordinate algebra.

    The construction runs through the model-side coordinate presentation
    (over a reference characteristic) and lifts coefficients to signed
    integers; the level-2 coordinates appear in no relation so the system
    splits off an affine factor of rank (N-2) r.
    """
    ctx = model_context("A", N - 1, i=1, stage=3, r=r, p=max(p_ref, 3))
    coord = vr_coordinate_algebra(ctx)
    half = ctx.p // 2
    relations = []
    for rel in coord.relations:
        terms = []
        for exps, coeff in sorted(rel.terms.items()):
            lifted = coeff if coeff <= half else coeff - ctx.p
            named = tuple(
                (coord.ring.variables[i].name, e) for i, e in enumerate(exps) if e
            )
            terms.append((lifted, named))
        relations.append(tuple(terms))
    return VarietySystem(
        label=f"X_{r}(U{N}/G3)",
        variables=tuple(v.name for v in coord.ring.variables),
        relations=tuple(relations),
        free_rank=(N - 2) * r,
    )


def u3_y_closed_form(q: int, r: int) -> int:
    """Pairs of proportional r-vectors: 1 + (q+1)(q^r - 1)."""
    return 1 + (q + 1) * (q**r - 1)


def dim_estimate(count: int, q: int) -> float:
    if count <= 0:
        return float("-inf")
    return math.log(count) / math.log(q)


def solution_rows(
    system: VarietySystem, q: int, max_rows: int | None = None
) -> np.ndarray:
    """All F_q solutions as rows of variable values (index encoding)."""
    budget = DEFAULT_POINT_LIST_BUDGET if max_rows is None else max_rows
    n = len(system.variables)
    total = q**n
    if total > budget:
        raise BudgetError(f"{q}^{n} assignments exceed the point-list budget {budget}")
    char = GF._factor(q)[0]
    pres = system.presentation(char)
    gf = GF(q, char=char)
    idx = np.arange(total, dtype=np.int64)
    cols = []
    work = idx.copy()
    for _ in range(n):
        cols.append((work % q).astype(np.int32))
        work //= q
    alive = np.ones(total, dtype=bool)
    for rel in pres.relations:
        acc = np.zeros(total, dtype=np.int32)
        for exps, coeff in rel.terms.items():
            term = np.full(total, coeff % char, dtype=np.int32)
            for i, e in enumerate(exps):
                if e:
                    term = gf.mul_vec(term, gf.pow_vec(cols[i], e))
            acc = gf.add_vec(acc, term)
        alive &= acc == 0
    return np.stack([c[alive] for c in cols], axis=1)


def frobenius_injectivity_evidence(system: VarietySystem, q: int) -> dict:
    """Apply coordinatewise p-th powers to every F_q point and re-check.

    Evidence only: the map is checked to land back in the solution set and
    to be injective on the finite point set.
    """
    char = GF._factor(q)[0]
    rows = solution_rows(system, q)
    gf = GF(q, char=char)
    image = gf.pow_vec(rows, char)
    original = {tuple(map(int, row)) for row in rows}
    image_tuples = [tuple(map(int, row)) for row in image]
    closed = all(t in original for t in image_tuples)
    injective = len(set(image_tuples)) == len(image_tuples)
    return {
        "system": system.label,
        "q": q,
        "points": int(rows.shape[0]),
        "image_in_solution_set": bool(closed),
        "injective_on_points": bool(injective),
        "evidence_only": True,
    }


# -- sub-diagram component combinatorics ---------------------------------------


@dataclass(frozen=True)
class Subdiagram:
    """A retained-node subset of the type-A path on N-1 nodes."""

    N: int
    nodes: frozenset[int]

    def segments(self) -> tuple[tuple[int, int], ...]:
        out = []
        run: list[int] = []
        for s in range(1, self.N):
            if s in self.nodes:
                run.append(s)
            elif run:
                out.append((run[0], run[-1]))
                run = []
        if run:
            out.append((run[0], run[-1]))
        return tuple(out)

    @property
    def components(self) -> int:
        return len(self.segments())

    def predicted_dim(self, r: int) -> int:
        return len(self.nodes) + (r - 1) * self.components

    def label(self) -> str:
        if not self.nodes:
            return "empty"
        return "|".join(
            f"a{lo}" if lo == hi else f"a{lo}-a{hi}" for lo, hi in self.segments()
        )


@dataclass(frozen=True)
class SubdiagramFamily:
    N: int
    r: int
    members: tuple[Subdiagram, ...]

    def predicted_dims(self) -> dict[str, int]:
        return {d.label(): d.predicted_dim(self.r) for d in self.members}

    def max_predicted_dim(self) -> int:
        return max(d.predicted_dim(self.r) for d in self.members)


def subdiagram_components(N: int, r: int) -> SubdiagramFamily:
    """Recursive family: remove a node only if it splits off a new component."""
    if N < 3:
        raise ConfigError("need N >= 3")
    full = Subdiagram(N, frozenset(range(1, N)))
    found = {full.nodes}
    queue = [full]
    while queue:
        diagram = queue.pop()
        for node in sorted(diagram.nodes):
            smaller = Subdiagram(N, diagram.nodes - {node})
            if smaller.components == diagram.components + 1:
                if smaller.nodes not in found:
                    found.add(smaller.nodes)
                    queue.append(smaller)
    members = sorted(
        (Subdiagram(N, nodes) for nodes in found),
        key=lambda d: (-len(d.nodes), sorted(d.nodes)),
    )
    return SubdiagramFamily(N, r, tuple(members))


def component_system(N: int, r: int, diagram: Subdiagram) -> VarietySystem:
    """Removed coordinates vanish; retained segments are pairwise proportional."""
    variables = _chain_variables(N, r)
    relations = []
    removed = [s for s in range(1, N) if s not in diagram.nodes]
    for s in removed:
        for l in range(r):
            relations.append(((1, ((f"X[a{s}]({l})", 1),)),))
    for lo, hi in diagram.segments():
        for s in range(lo, hi + 1):
            for t in range(s + 1, hi + 1):
                for l1 in range(r):
                    for l2 in range(l1 + 1, r):
                        relations.append(_minor(f"a{s}", f"a{t}", l1, l2))
    return VarietySystem(
        label=f"V[{diagram.label()}]",
        variables=variables,
        relations=tuple(relations),
        claimed_dim=diagram.predicted_dim(r),
    )


def component_candidates_U4(r: int) -> dict[str, VarietySystem]:
    """The two four-strand components and their intersection system."""
    family = subdiagram_components(4, r)
    by_label = {d.label(): d for d in family.members}
    v2 = component_system(4, r, by_label["a1-a3"])  # full diagram: all minors
    v1 = component_system(4, r, by_label["a1|a3"])  # middle node removed
    return {
        "V1": VarietySystem("V1", v1.variables, v1.relations, claimed_dim=2 * r),
        "V2": VarietySystem("V2", v2.variables, v2.relations, claimed_dim=r + 2),
        "V1&V2": v1.union(v2, label="V1&V2"),
    }


# -- reports ---------------------------------------------------------------------


@dataclass
class ComponentReport:
    """Inclusion-exclusion evidence for a conjectural component decomposition."""

    N: int
    r: int
    q_list: tuple[int, ...]
    family: SubdiagramFamily
    y_counts: dict[int, int] = field(default_factory=dict)
    component_counts: dict[str, dict[int, int]] = field(default_factory=dict)
    subset_counts: dict[tuple[str, ...], dict[int, int]] = field(default_factory=dict)
    residuals: dict[int, int] = field(default_factory=dict)
    dim_window: float = 0.5

    def dim_estimates(self) -> dict[str, dict[int, float]]:
        out: dict[str, dict[int, float]] = {"Y": {}}
        for q, c in self.y_counts.items():
            out["Y"][q] = dim_estimate(c, q)
        for label, counts in self.component_counts.items():
            out[label] = {q: dim_estimate(c, q) for q, c in counts.items()}
        return out

    def max_dim_matches(self) -> dict[int, bool]:
        best = self.family.max_predicted_dim()
        return {
            q: abs(dim_estimate(c, q) - best) <= self.dim_window
            for q, c in self.y_counts.items()
        }

    def component_dim_matches(self) -> dict[str, dict[int, bool]]:
        out = {}
        dims = self.family.predicted_dims()
        for label, counts in self.component_counts.items():
            out[label] = {
                q: abs(dim_estimate(c, q) - dims[label]) <= self.dim_window
                for q, c in counts.items()
            }
        return out

    def to_json_dict(self) -> dict:
        return {
            "schema_version": 1,
            "N": self.N,
            "r": self.r,
            "q_list": list(self.q_list),
            "conjectural": True,
            "members": [
                {
                    "label": d.label(),
                    "nodes": sorted(d.nodes),
                    "components": d.components,
                    "predicted_dim": d.predicted_dim(self.r),
                }
                for d in self.family.members
            ],
            "y_counts": {str(q): c for q, c in self.y_counts.items()},
            "component_counts": {
                label: {str(q): c for q, c in counts.items()}
                for label, counts in self.component_counts.items()
            },
            "subset_counts": {
                "&".join(key): {str(q): c for q, c in counts.items()}
                for key, counts in self.subset_counts.items()
            },
            "residuals": {str(q): v for q, v in self.residuals.items()},
            "dim_estimates": {
                label: {str(q): est for q, est in per.items()}
                for label, per in self.dim_estimates().items()
            },
            "max_dim_matches": {str(q): v for q, v in self.max_dim_matches().items()},
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["system", "q", "count"])
        for q in self.q_list:
            writer.writerow(["Y", q, self.y_counts[q]])
        for label, counts in sorted(self.component_counts.items()):
            for q in self.q_list:
                writer.writerow([label, q, counts[q]])
        for key, counts in sorted(self.subset_counts.items()):
            for q in self.q_list:
                writer.writerow(["&".join(key), q, counts[q]])
        for q in self.q_list:
            writer.writerow(["residual", q, self.residuals[q]])
        return buf.getvalue()


def conjecture_check(
    N: int,
    r: int,
    q_list=(3,),
    max_assignments: int | None = None,
) -> ComponentReport:
    """Count the quotient variety and its predicted components exhaustively.

    Inclusion-exclusion runs over all non-empty subsets of the predicted
    family (intersections are unions of the relation systems).  A zero
    residual means the predicted components cover every rational point with
    the right multiplicities; a nonzero residual is reported, not raised.
    """
    family = subdiagram_components(N, r)
    y_system = y_variety_system(N, r)
    systems = {d.label(): component_system(N, r, d) for d in family.members}
    report = ComponentReport(N=N, r=r, q_list=tuple(q_list), family=family)
    labels = [d.label() for d in family.members]
    for q in q_list:
        report.y_counts[q] = y_system.count(q, max_assignments)
    for label, system in systems.items():
        report.component_counts[label] = {
            q: system.count(q, max_assignments) for q in q_list
        }
    for size in range(2, len(labels) + 1):
        for combo in itertools.combinations(labels, size):
            merged = systems[combo[0]]
            for other in combo[1:]:
                merged = merged.union(systems[other])
            report.subset_counts[combo] = {
                q: merged.count(q, max_assignments) for q in q_list
            }
    for q in q_list:
        total = 0
        for size in range(1, len(labels) + 1):
            sign = (-1) ** (size + 1)
            for combo in itertools.combinations(labels, size):
                if size == 1:
                    c = report.component_counts[combo[0]][q]
                else:
                    c = report.subset_counts[combo][q]
                total += sign * c
        report.residuals[q] = report.y_counts[q] - total
    return report
