"""The acceptance suite as callable checks.

Each criterion is a function returning a CriterionResult with a pass flag,
measured values and its wall time; the CLI aggregates them for verify-all
and the test suite asserts them one by one.  Criteria 7b and 10b carry
recorded expected values that the exhaustive computation contradicts (see
the notes in each docstring); they are evaluated faithfully and report the
honest outcome instead of being adjusted to pass.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field

from . import commvar, grmodel, polyalg, rootsys, specseq
from .errors import FrobkernError
from .rootsys import Root


@dataclass
class CriterionResult:
    key: str
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    elapsed_s: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.key}: {self.name} ({self.elapsed_s:.2f}s)"

    def to_json_dict(self) -> dict:
        return {
            "key": self.key,
            "name": self.name,
            "passed": self.passed,
            "details": self.details,
            "elapsed_s": round(self.elapsed_s, 3),
        }


def _timed(key, name, fn) -> CriterionResult:
    start = time.perf_counter()
    try:
        passed, details = fn()
    except FrobkernError as exc:
        passed, details = False, {"error": f"{type(exc).__name__}: {exc}"}
    elapsed = time.perf_counter() - start
    return CriterionResult(key, name, passed, details, elapsed)


def criterion_1_theta_degree() -> CriterionResult:
    """Degree formula with enumerated cross-check for (3,2), (3,3), (5,2)."""

    def run():
        expected = {(3, 2): 9, (3, 3): 243, (5, 2): 25}
        measured = {}
        ok = True
        for (p, r), want in expected.items():
            t0 = time.perf_counter()
            got = grmodel.theta_degree_U3(r, p, cross_check=True)
            dt = time.perf_counter() - t0
            measured[f"p={p},r={r}"] = {"value": got, "seconds": round(dt, 3)}
            ok &= got == want and dt < 10.0
        return ok, measured

    return _timed("1", "theta degree formula and basis-count cross-check", run)


def criterion_2_u3_counts() -> CriterionResult:
    """|V_r(U3)(F_q)| = (1+(q+1)(q^r-1)) q^r for r <= 3, q in {3,5}."""

    def run():
        start = time.perf_counter()
        details = {}
        ok = True
        for r in (1, 2, 3):
            system = commvar.x_variety_system(3, r)
            for q in (3, 5):
                count = system.count(q)
                want = commvar.u3_y_closed_form(q, r) * q**r
                est = commvar.dim_estimate(count, q)
                good = count == want and abs(est - (2 * r + 1)) <= 0.5
                details[f"r={r},q={q}"] = {
                    "count": count,
                    "expected": want,
                    "dim_estimate": round(est, 3),
                    "dim_claimed": 2 * r + 1,
                    "ok": good,
                }
                ok &= good
        total = time.perf_counter() - start
        details["seconds_total"] = round(total, 3)
        return ok and total < 30.0, details

    return _timed("2", "V_r(U3) point counts and dimension bracketing", run)


def criterion_3_u4_components() -> CriterionResult:
    """Inclusion-exclusion residual 0 for the four-strand component pair."""

    def run():
        systems = commvar.component_candidates_U4(2)
        y = commvar.y_variety_system(4, 2)
        details = {}
        ok = True
        for q in (3, 5):
            counts = {label: s.count(q) for label, s in systems.items()}
            total = y.count(q)
            residual = total - (counts["V1"] + counts["V2"] - counts["V1&V2"])
            dims_ok = (
                abs(commvar.dim_estimate(counts["V1"], q) - 4) <= 0.5
                and abs(commvar.dim_estimate(counts["V2"], q) - 4) <= 0.5
            )
            details[f"q={q}"] = {
                "Y": total,
                **counts,
                "residual": residual,
                "dims_ok": dims_ok,
            }
            ok &= residual == 0 and dims_ok
        return ok, details

    return _timed("3", "U4/Gamma_3 component counts and residual", run)


def criterion_4_subdiagrams() -> CriterionResult:
    """Known families for N=3,4; the N=5 report completes within budget."""

    def run():
        details = {}
        fam3 = commvar.subdiagram_components(3, 2)
        fam4 = commvar.subdiagram_components(4, 2)
        ok = len(fam3.members) == 1 and len(fam4.members) == 2
        for r in (2, 3):
            dims = commvar.subdiagram_components(4, r).predicted_dims()
            ok &= sorted(dims.values()) == sorted([r + 2, 2 * r])
            details[f"N=4,r={r}"] = dims
        report = commvar.conjecture_check(5, 2, q_list=(3,))
        details["N=5,r=2,q=3"] = {
            "y_count": report.y_counts[3],
            "residual": report.residuals[3],
            "members": len(report.family.members),
        }
        ok &= len(report.family.members) == 3 and 3 in report.residuals
        return ok, details

    return _timed("4", "sub-diagram families and the N=5 evidence report", run)


def criterion_5_relation_power() -> CriterionResult:
    """theta maps every coordinate relation onto a power of a model relation."""

    def run():
        details = {}
        ok = True
        for p, r in [(3, 2), (3, 3), (5, 2)]:
            ctx = grmodel.model_context("A", 2, i=1, stage=3, r=r, p=p)
            theta = grmodel.theta_substitution(ctx)  # raises on failure
            identities = grmodel.theta_power_identities(ctx, theta)
            details[f"p={p},r={r}"] = {
                "relations_checked": len(identities),
                "powers": sorted(i.power for i in identities),
                "failures": 0,
            }
        return ok, details

    return _timed("5", "exact relation-power identities under theta", run)


def criterion_6_spectral_suite() -> CriterionResult:
    """Kudo compatibility, truncation pattern, permanent-cycle agreement."""

    def run():
        details = {}
        kudo_checked = 0
        for rank in (2, 3):
            for r in (2, 3):
                ctx = grmodel.model_context("A", rank, i=1, stage=3, r=r, p=3)
                page = specseq.lhs_page(ctx)
                for beta in page.fiber_roots:
                    for twist in range(r):
                        lhs = specseq.steenrod_apply(
                            page, "bP0", specseq.d2_on_y(page, beta, twist)
                        )
                        if lhs != specseq.transgression_power(page, beta, twist, 0):
                            return False, {"kudo_failure": (rank, r, beta.label(), twist)}
                        kudo_checked += 1
        details["kudo_instances"] = kudo_checked

        truncation_checked = 0
        for r in (1, 2, 3):
            ctx = grmodel.model_context("A", 2, i=1, stage=3, r=r, p=3)
            page = specseq.lhs_page(ctx)
            beta = page.fiber_roots[0]
            for twist, j in itertools.product(range(4), range(4)):
                value = specseq.transgression_power(page, beta, twist, j)
                if value.is_zero() != (twist + 1 + j >= r):
                    return False, {"truncation_failure": (r, twist, j)}
                truncation_checked += 1
        details["truncation_instances"] = truncation_checked

        ctx = grmodel.model_context("A", 2, i=1, stage=3, r=2, p=3)
        page = specseq.lhs_page(ctx)
        beta = page.fiber_roots[0]
        agree = 0
        for n0 in range(10):
            for n1 in range(10 - n0):  # degree 2(n0+n1) <= 2 p^2
                mono = {}
                if n0:
                    mono[(beta, 0)] = n0
                if n1:
                    mono[(beta, 1)] = n1
                criterion = specseq.permanent_cycle_monomial(mono, r=2, p=3)
                scan = specseq.first_nonvanishing_differential(page, mono)
                if criterion != (scan is None):
                    return False, {"permanent_cycle_mismatch": (n0, n1)}
                agree += 1
        details["permanent_cycle_monomials"] = agree
        return True, details

    return _timed("6", "spectral-sequence formula suite", run)


def criterion_7a_uniqueness_counts() -> CriterionResult:
    """Surviving count 1 for U3 at (3,2), (5,2) and U4/Gamma_3 at (5,2)."""

    def run():
        details = {}
        ok = True
        cases = [("A", 2, 3, 2, [Root((1, 1))]), ("A", 2, 5, 2, [Root((1, 1))])]
        cases.append(("A", 3, 5, 2, [Root((1, 1, 0)), Root((0, 1, 1))]))
        for family, rank, p, r, betas in cases:
            ctx = grmodel.model_context(family, rank, i=1, stage=3, r=r, p=p)
            for beta in betas:
                report = specseq.uniqueness_witness(ctx, beta)
                key = f"{family}{rank},p={p},r={r},beta={beta.label()}"
                details[key] = {
                    "surviving": report.surviving_count,
                    "monomials": len(report.monomials),
                }
                ok &= report.surviving_count == 1
        return ok, details

    return _timed("7a", "weight-space uniqueness searches", run)


def criterion_7b_raw_enumeration_literal() -> CriterionResult:
    """Recorded claim: the degree-6 weight-(9,9) enumeration has 2 monomials.

    The exhaustive enumeration over the first-page summand structure yields
    four: besides the pure power and the pair wedge there are two cross
    terms trading a level-2 polynomial factor for a level-1 one times a
    wedge on the level-2 root.  The check is evaluated as recorded and is
    expected to fail; the honest monomial list is attached.
    """

    def run():
        roots = [Root((1, 0)), Root((0, 1)), Root((1, 1))]
        out = specseq.aj_E1_enumerate(roots, r=2, p=3, total_degree=6, target_weight=(9, 9))
        names = sorted(m.name for m in out)
        return len(out) == 2, {"recorded_expected": 2, "found": len(out), "monomials": names}

    return _timed("7b", "raw first-page enumeration literal (known discrepancy)", run)


def criterion_8_hilbert() -> CriterionResult:
    """Frozen graded dimensions and the tensor-splitting convolution."""

    def run():
        ctx = grmodel.model_context("A", 2, i=1, stage=3, r=2, p=3)
        sbar = grmodel.build_Sbar(ctx)
        q_model = grmodel.build_Q(ctx)
        top = grmodel.top_free_factor(ctx)
        dims = {d: sbar.graded_dimension(d) for d in (2, 4, 6, 8)}
        ok = dims == {2: 5, 4: 15, 6: 36, 8: 74}
        convolution = {}
        for d in range(11):
            conv = sum(
                q_model.graded_dimension(a) * polyalg.graded_dimension(top, d - a)
                for a in range(d + 1)
            )
            direct = sbar.graded_dimension(d)
            convolution[d] = {"direct": direct, "convolved": conv}
            ok &= direct == conv
        return ok, {"dims": dims, "convolution": convolution}

    return _timed("8", "graded dimensions and splitting convolution", run)


def criterion_9_stabilisation(seed: int = 0) -> CriterionResult:
    """Image membership failures plus 100 random multiplicativity pairs."""

    def run():
        details = {}
        ok = True
        rng = random.Random(seed)
        for family, rank in [("A", 2), ("A", 3)]:
            ctx = grmodel.model_context(family, rank, i=1, stage=3, r=2, p=3)
            model = grmodel.build_Sbar(ctx)
            misses = 0
            for s in (1, 2):
                for name in model.top_generators():
                    if model.ring.descriptor(name).degree < 3**s:
                        if grmodel.in_bracket_image(model, model.ring.var(name), s):
                            return False, {"unexpected_membership": (family, rank, name, s)}
                        misses += 1
            bracket = grmodel.bracket_p(model)
            gens = [model.ring.var(v.name) for v in model.ring.variables]
            pairs = 0
            for _ in range(100):
                f = model.ring.one() * rng.randint(1, 2)
                g = model.ring.zero()
                for _ in range(2):
                    f = f * rng.choice(gens) ** rng.randint(0, 2)
                    g = g + rng.choice(gens) ** rng.randint(0, 2) * rng.randint(1, 2)
                if bracket.apply(f * g) != bracket.apply(f) * bracket.apply(g):
                    return False, {"multiplicativity_failure": (family, rank)}
                pairs += 1
            details[f"{family}{rank}"] = {
                "membership_failures_verified": misses,
                "random_pairs": pairs,
            }
        return ok, details

    return _timed("9", "stabilisation collapse and bracket multiplicativity", run)


def criterion_10a_pairing_scan() -> CriterionResult:
    """The full scan over A_n (n <= 6), all J, p in {3,5} finishes quickly."""

    def run():
        start = time.perf_counter()
        contexts = 0
        failures = []
        for n in range(1, 7):
            labels = [f"a{i}" for i in range(1, n + 1)]
            for size in range(n + 1):
                for J in itertools.combinations(labels, size):
                    ctx = rootsys.context("A", n, frozenset(J))
                    for p in (3, 5):
                        report = rootsys.check_pairing_hypothesis(ctx, p)
                        contexts += 1
                        if not report.ok:
                            failures.append(
                                {
                                    "rank": n,
                                    "J": sorted(J),
                                    "p": p,
                                    "roots": [
                                        {"root": r.label(), "pairs": c}
                                        for r, c, ok in report.per_root
                                        if not ok
                                    ],
                                }
                            )
        elapsed = time.perf_counter() - start
        return elapsed < 60.0, {
            "contexts_scanned": contexts,
            "violations": len(failures),
            "seconds": round(elapsed, 3),
            "witnesses": failures[:5],
        }

    return _timed("10a", "pairing-hypothesis scan completes in time", run)


def criterion_10b_pairing_all_true() -> CriterionResult:
    """Recorded claim: the scan returns true for every J (it does not).

    A level-2 root can carry p or more disjoint two-term decompositions
    once the Levi swallows the interior of a long chain; the smallest case
    is rank 4 with J = {a2, a3} at p = 3, where a1+a2+a3+a4 splits three
    ways.  The check is evaluated as recorded and reports the witnesses.
    """

    def run():
        failures = []
        for n in range(1, 7):
            labels = [f"a{i}" for i in range(1, n + 1)]
            for size in range(n + 1):
                for J in itertools.combinations(labels, size):
                    ctx = rootsys.context("A", n, frozenset(J))
                    for p in (3, 5):
                        report = rootsys.check_pairing_hypothesis(ctx, p)
                        if not report.ok:
                            failures.append(
                                {"rank": n, "J": sorted(J), "p": p}
                            )
        return not failures, {
            "violating_contexts": len(failures),
            "first_witnesses": failures[:4],
        }

    return _timed("10b", "pairing hypothesis for all J (known discrepancy)", run)


ALL_CRITERIA = [
    criterion_1_theta_degree,
    criterion_2_u3_counts,
    criterion_3_u4_components,
    criterion_4_subdiagrams,
    criterion_5_relation_power,
    criterion_6_spectral_suite,
    criterion_7a_uniqueness_counts,
    criterion_7b_raw_enumeration_literal,
    criterion_8_hilbert,
    criterion_9_stabilisation,
    criterion_10a_pairing_scan,
    criterion_10b_pairing_all_true,
]

#: criteria whose recorded expected values contradict the exhaustive
#: computation; they are reported honestly and left failing by design
KNOWN_DISCREPANCIES = {"7b", "10b"}


def verify_all(seed: int = 0) -> list[CriterionResult]:
    results = []
    for fn in ALL_CRITERIA:
        if fn is criterion_9_stabilisation:
            results.append(criterion_9_stabilisation(seed))
        else:
            results.append(fn())
    return results
