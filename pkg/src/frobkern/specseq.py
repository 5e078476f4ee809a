"""Symbolic spectral-sequence fragment for central-series extensions.

For the extension of the quotient at stage m by its top layer (level
v = m-1) we model the second page as a tensor of truncated-polynomial-
times-exterior pages, one per root: classes ``x[beta](l)`` (degree 2,
weight p^{l+1} beta) and ``y[beta](l)`` (degree 1, weight p^l beta) with
twists 0 <= l < r.  Differentials are evaluated on designated classes
only; pages above the second are never materialised.

Encoded differential rules, each a sum over the two-term decompositions
alpha + alpha' = beta of the fiber root:

* the second-page value on y_beta^{(l)} is the sum of y_alpha^{(l)} wedge
  y_{alpha'}^{(l)};
* the page-(2p^j+1) value on (x_beta^{(l)})^{p^j} is
  (x_alpha^{(l)})^{p^j} y_{alpha'}^{(l+1+j)} - (x_{alpha'}^{(l)})^{p^j}
  y_alpha^{(l+1+j)}, which vanishes exactly when l+1+j >= r.

The Steenrod fragment is the one these values generate through the Cartan
formula: P^0 shifts twists, the Bockstein composite bP^0 sends y to x, and
P^{p^j} sends a p^j-th power of a degree-2 class to its p-th power.  Any
operation outside {P^0, P^{p^j}, bP^0, bP^{p^j}} raises.

The file also carries the weight-space enumerator for the first page of
the filtration-by-powers-of-the-augmentation-ideal spectral sequence,
with the 1-dimensionality search used to pin down lifted classes.  No
Steenrod operation is ever applied to that enumerator's data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, UnsupportedOperationError
from .grmodel import ModelContext
from .polyalg import Poly, PolyRing, VariableDescriptor
from .rootsys import Root, check_pairing_hypothesis, summand_pairs


@dataclass(frozen=True)
class GaPresentation:
    """Truncated additive-group page for one root: height-r x/y generators."""

    root: Root
    r: int
    p: int

    def ring(self) -> PolyRing:
        return _page_ring(self.p, self.r, (self.root,), ())


def _page_ring(p: int, r: int, base_roots, fiber_roots) -> PolyRing:
    variables = []
    for twist in range(r):
        for root in (*base_roots, *fiber_roots):
            variables.append(
                VariableDescriptor(
                    f"x[{root.label()}]({twist})",
                    "even",
                    2,
                    tuple(p ** (twist + 1) * c for c in root.coeffs),
                )
            )
    for twist in range(r):
        for root in (*base_roots, *fiber_roots):
            variables.append(
                VariableDescriptor(
                    f"y[{root.label()}]({twist})",
                    "odd",
                    1,
                    tuple(p**twist * c for c in root.coeffs),
                )
            )
    return PolyRing(p, variables)


class ExtensionPage:
    """Second page of the central extension at the top level of a context."""

    def __init__(self, ctx: ModelContext):
        if ctx.top_level < max(ctx.i, 2) and ctx.i == 1:
            raise DomainError("the extension needs a fiber level >= 2")
        self.ctx = ctx
        pctx = ctx.parabolic()
        self.fiber_roots = ctx.roots_of_level(ctx.top_level)
        self.base_roots = tuple(
            root for v in range(ctx.i, ctx.top_level) for root in ctx.roots_of_level(v)
        )
        self.ring = _page_ring(ctx.p, ctx.r, self.base_roots, self.fiber_roots)
        self._pctx = pctx
        self._fiber = set(self.fiber_roots)
        self._meta = {}
        for name in self.ring.index:
            kind, rest = name[0], name[2:]
            label, _, twist = rest.rpartition("](")
            self._meta[name] = (kind, label, int(twist[:-1]))

    # -- generator access ------------------------------------------------------

    def x(self, root: Root, twist: int) -> Poly:
        return self.ring.var(f"x[{root.label()}]({twist})")

    def y(self, root: Root, twist: int) -> Poly:
        return self.ring.var(f"y[{root.label()}]({twist})")

    def is_fiber(self, root: Root) -> bool:
        return root in self._fiber

    def pairs(self, beta: Root):
        return summand_pairs(beta, self._pctx, min_level=self.ctx.i)

    def monomial_bidegree(self, exps) -> tuple[int, int]:
        """(base degree, fiber degree) of one monomial."""
        a = b = 0
        for i, e in enumerate(exps):
            if not e:
                continue
            name = self.ring.variables[i].name
            kind, label, _ = self._meta[name]
            deg = e * (2 if kind == "x" else 1)
            if Root(tuple(self.ring.variables[i].weight)) is None:  # pragma: no cover
                pass
            if label in {r.label() for r in self._fiber}:
                b += deg
            else:
                a += deg
        return a, b

    def __repr__(self):
        return f"ExtensionPage({self.ctx.label()})"


def lhs_page(ctx: ModelContext) -> ExtensionPage:
    return ExtensionPage(ctx)


# -- differentials ---------------------------------------------------------------


def d2_on_y(page: ExtensionPage, beta: Root, twist: int) -> Poly:
    """Second-page value on the degree-1 fiber class at the given twist."""
    ctx = page.ctx
    if not page.is_fiber(beta):
        raise DomainError(f"{beta.label()} is not a fiber root of this page")
    if not 0 <= twist < ctx.r:
        raise DomainError(f"twist {twist} outside [0, {ctx.r})")
    out = page.ring.zero()
    for alpha, alpha2 in page.pairs(beta):
        out = out + page.y(alpha, twist) * page.y(alpha2, twist)
    return out


def transgression_power(page: ExtensionPage, beta: Root, twist: int, j: int) -> Poly:
    """Page-(2p^j+1) value on (x_beta^{(twist)})^{p^j}; zero iff twist+1+j >= r."""
    ctx = page.ctx
    if twist < 0 or j < 0:
        raise DomainError("twist and j must be non-negative")
    if not page.is_fiber(beta):
        raise DomainError(f"{beta.label()} is not a fiber root of this page")
    if twist + 1 + j >= ctx.r:
        return page.ring.zero()
    q = ctx.p**j
    out = page.ring.zero()
    for alpha, alpha2 in page.pairs(beta):
        out = out + page.x(alpha, twist) ** q * page.y(alpha2, twist + 1 + j)
        out = out - page.x(alpha2, twist) ** q * page.y(alpha, twist + 1 + j)
    return out


def page_derivation(page: ExtensionPage, values: dict, f: Poly) -> Poly:
    """Extend generator values to a Koszul-signed derivation and apply it.

    ``values`` maps variable names to their differential; unnamed
    generators are sent to zero.  Ring multiplication supplies all signs,
    so only the Leibniz split sign appears explicitly.
    """
    ring = page.ring

    def d_mono(exps) -> Poly:
        first = next((i for i, e in enumerate(exps) if e), None)
        if first is None:
            return ring.zero()
        e = exps[first]
        name = ring.variables[first].name
        g = ring.var(name)
        rest = list(exps)
        rest[first] = 0
        rest_poly = Poly(ring, {tuple(rest): 1})
        dg = values.get(name, ring.zero())
        if dg.is_zero():
            da = ring.zero()
        elif ring.variables[first].parity == "odd":
            da = dg
        else:
            da = dg * g ** (e - 1) * e
        parity = (e * ring.variables[first].degree) % 2
        out = da * rest_poly
        tail = d_mono(tuple(rest))
        if not tail.is_zero():
            out = out + (g**e) * tail * (-1 if parity else 1)
        return out

    out = ring.zero()
    for exps, c in f.terms.items():
        out = out + d_mono(exps) * c
    return out


def d2(page: ExtensionPage, f: Poly) -> Poly:
    """The second-page differential as a derivation (zero on x classes)."""
    values = {
        f"y[{beta.label()}]({twist})": d2_on_y(page, beta, twist)
        for beta in page.fiber_roots
        for twist in range(page.ctx.r)
    }
    return page_derivation(page, values, f)


def first_nonvanishing_differential(page: ExtensionPage, monomial: dict):
    """Scan pages 2p^j+1 for the first nonzero value on a fiber monomial.

    ``monomial`` maps (root, twist) to the exponent of x_root^{(twist)}.
    On page 2p^j+1 the surviving factors with p-adic valuation exactly j
    contribute via the transgression of their p^j-th-power chunk; factors
    of lower valuation died on earlier pages only if their transgressions
    were truncated to zero, in which case they stay zero forever.
    Returns (j, value) or None when every page vanishes.
    """
    ctx = page.ctx
    p, r = ctx.p, ctx.r
    for (beta, twist), n in monomial.items():
        if not page.is_fiber(beta):
            raise DomainError("monomial must live in the fiber polynomial part")
        if n < 0 or not 0 <= twist < r:
            raise DomainError("bad exponent data")
    for j in range(0, max(r - 1, 0)):
        total = page.ring.zero()
        q = p**j
        for (beta, twist), n in monomial.items():
            if n % q or (n // q) % p == 0:
                continue
            value = transgression_power(page, beta, twist, j)
            if value.is_zero():
                continue
            rest = page.ring.one()
            for (b2, t2), n2 in monomial.items():
                e = n2 - q if (b2, t2) == (beta, twist) else n2
                if e:
                    rest = rest * page.x(b2, t2) ** e
            total = total + rest * value * ((n // q) % p)
        if not total.is_zero():
            return j, total
    return None


def permanent_cycle_monomial(monomial: dict, r: int, p: int) -> bool:
    """Divisibility criterion: every exponent n_l divisible by p^{r-l-1}."""
    for (_, twist), n in monomial.items():
        if not 0 <= twist < r:
            raise DomainError(f"twist {twist} outside [0, {r})")
        if n % p ** (r - twist - 1):
            return False
    return True


# -- Steenrod fragment --------------------------------------------------------------


def _parse_op(op) -> tuple[bool, int]:
    if isinstance(op, tuple):
        bock, n = op
    elif isinstance(op, str):
        text = op.strip()
        bock = text.startswith("b")
        if bock:
            text = text[1:]
        if not text.startswith("P"):
            raise UnsupportedOperationError(f"cannot parse operation {op!r}")
        n = int(text[1:])
    else:
        raise UnsupportedOperationError(f"cannot parse operation {op!r}")
    return bool(bock), int(n)


def _is_supported(n: int, p: int) -> bool:
    if n == 0:
        return True
    while n % p == 0:
        n //= p
    return n == 1


def steenrod_apply(page: ExtensionPage, op, f: Poly) -> Poly:
    """Apply P^0, P^{p^j}, bP^0 or bP^{p^j} to a page class.

    Generator rules: P^0 shifts every twist up by one (truncating at r);
    bP^0 sends y^{(l)} to x^{(l)} and kills the polynomial part; on a
    power of a degree-2 class, P^s picks s factors to raise to p-th powers
    and twist-shifts the rest, with the binomial coefficient mod p.  The
    Cartan formula then extends the rules to arbitrary classes.  Operations
    P^n with n neither zero nor a p-power are outside the encoded fragment.
    """
    bock, n = _parse_op(op)
    ctx = page.ctx
    if f.ring != page.ring:
        raise DomainError("class does not live on this page")
    if not _is_supported(n, ctx.p):
        raise UnsupportedOperationError(
            f"P^{n} is outside the encoded fragment at p={ctx.p}"
        )
    ring = page.ring
    r = ctx.r

    def on_power(bock_flag: bool, s: int, index: int, e: int) -> Poly:
        var = ring.variables[index]
        kind, label, twist = page._meta[var.name]
        if kind == "y":
            if s != 0:
                return ring.zero()
            if bock_flag:
                return ring.var(f"x[{label}]({twist})")
            if twist + 1 >= r:
                return ring.zero()
            return ring.var(f"y[{label}]({twist + 1})")
        if bock_flag:
            return ring.zero()
        if s > e:
            return ring.zero()
        c = math.comb(e, s) % ctx.p
        if c == 0:
            return ring.zero()
        if e - s > 0 and twist + 1 >= r:
            return ring.zero()
        out = ring.const(c)
        if s:
            out = out * ring.var(var.name) ** (ctx.p * s)
        if e - s:
            out = out * ring.var(f"x[{label}]({twist + 1})") ** (e - s)
        return out

    def cartan(bock_flag: bool, budget: int, factors) -> Poly:
        if not factors:
            if budget == 0 and not bock_flag:
                return ring.one()
            return ring.zero()
        (index, e), rest = factors[0], factors[1:]
        parity = (e * ring.variables[index].degree) % 2
        out = ring.zero()
        for s in range(budget + 1):
            plain = on_power(False, s, index, e)
            if bock_flag:
                left = on_power(True, s, index, e)
                if not left.is_zero():
                    out = out + left * cartan(False, budget - s, rest)
                if not plain.is_zero():
                    tail = cartan(True, budget - s, rest)
                    if not tail.is_zero():
                        out = out + plain * tail * (-1 if parity else 1)
            elif not plain.is_zero():
                out = out + plain * cartan(False, budget - s, rest)
        return out

    out = ring.zero()
    for exps, c in f.terms.items():
        factors = tuple((i, e) for i, e in enumerate(exps) if e)
        out = out + cartan(bock, n, factors) * c
    return out


# -- first-page weight enumerator ---------------------------------------------------


@dataclass(frozen=True)
class AJGenerator:
    """One generator of the filtration first page: block n, kind x or y.

    The x-kind at block n has degree 2, weight p^n root and filtration
    index p^n per exponent; the y-kind has degree 1, weight p^{n-1} root
    and filtration index p^{n-1}.
    """

    kind: str
    root: Root
    block: int
    p: int

    @property
    def degree(self) -> int:
        return 2 if self.kind == "x" else 1

    def weight(self) -> tuple[int, ...]:
        scale = self.p**self.block if self.kind == "x" else self.p ** (self.block - 1)
        return tuple(scale * c for c in self.root.coeffs)

    @property
    def filtration(self) -> int:
        return self.p**self.block if self.kind == "x" else self.p ** (self.block - 1)

    @property
    def name(self) -> str:
        return f"{self.kind}[{self.root.label()}]{{{self.block}}}"


@dataclass(frozen=True)
class AJMonomial:
    factors: tuple[tuple[AJGenerator, int], ...]

    @property
    def degree(self) -> int:
        return sum(g.degree * e for g, e in self.factors)

    def weight(self) -> tuple[int, ...]:
        if not self.factors:
            return ()
        acc = [0] * len(self.factors[0][0].root.coeffs)
        for g, e in self.factors:
            for k, w in enumerate(g.weight()):
                acc[k] += e * w
        return tuple(acc)

    @property
    def filtration(self) -> int:
        return sum(g.filtration * e for g, e in self.factors)

    def block_profile(self) -> tuple[dict, dict]:
        """({n: a_n}, {n: b_n}): symmetric and exterior exponents per block."""
        a: dict[int, int] = {}
        b: dict[int, int] = {}
        for g, e in self.factors:
            target = a if g.kind == "x" else b
            target[g.block] = target.get(g.block, 0) + e
        return a, b

    @property
    def name(self) -> str:
        bits = []
        for g, e in self.factors:
            bits.append(g.name if e == 1 else f"{g.name}^{e}")
        return "*".join(bits) if bits else "1"

    def block_y_roots(self, block: int) -> tuple[Root, ...]:
        return tuple(g.root for g, _ in self.factors if g.kind == "y" and g.block == block)


def aj_summand_index(mono: AJMonomial) -> dict:
    a, b = mono.block_profile()
    return {
        "a": dict(sorted(a.items())),
        "b": dict(sorted(b.items())),
        "filtration": mono.filtration,
        "degree": mono.degree,
    }


def aj_E1_enumerate(
    roots,
    r: int,
    p: int,
    total_degree: int,
    target_weight: tuple[int, ...],
    max_monomials: int = 200_000,
):
    """All first-page monomials of the given degree and T-weight.

    Generators: for each block 1 <= n <= r and each root, a degree-2
    polynomial class of weight p^n root and a degree-1 exterior class of
    weight p^{n-1} root.  Weights are non-negative and non-zero, so the
    search prunes on coordinate overshoot.
    """
    from .errors import BudgetError

    roots = tuple(roots)
    target_weight = tuple(target_weight)
    if any(w < 0 for w in target_weight):
        return []
    gens = []
    for block in range(1, r + 1):
        for root in roots:
            gens.append(AJGenerator("x", root, block, p))
            gens.append(AJGenerator("y", root, block, p))
    out: list[AJMonomial] = []

    def overshoot(weight) -> bool:
        return any(w > t for w, t in zip(weight, target_weight))

    def rec(pos: int, degree_left: int, weight: tuple, chosen):
        if len(out) > max_monomials:
            raise BudgetError("first-page enumeration exceeded the budget")
        if degree_left == 0:
            if weight == target_weight:
                out.append(AJMonomial(tuple(chosen)))
            return
        if pos == len(gens):
            return
        g = gens[pos]
        max_e = degree_left // g.degree
        if g.kind == "y":
            max_e = min(max_e, 1)
        gw = g.weight()
        for e in range(max_e + 1):
            w = tuple(a + e * b for a, b in zip(weight, gw))
            if e and overshoot(w):
                break
            rec(pos + 1, degree_left - e * g.degree, w, chosen + [(g, e)] if e else chosen)

    rec(0, total_degree, (0,) * len(target_weight), [])
    out.sort(key=lambda m: m.name)
    return out


@dataclass(frozen=True)
class UniquenessReport:
    """Outcome of the weight-space search pinning down a lifted class.

    The classification follows the first-differential pattern of the
    source argument: a block-2 wedge factor on a decomposable root is not
    a cycle, and a block-2 wedge pair assembling to a root of the algebra
    is hit by the partner that contracts the pair.  Both tests are
    heuristic (no differential is actually inverted), so the raw monomial
    list is always included for auditing.
    """

    beta: Root
    r: int
    p: int
    degree: int
    weight: tuple[int, ...]
    monomials: tuple[AJMonomial, ...]
    paired: tuple[tuple[AJMonomial, str], ...]
    survivors: tuple[AJMonomial, ...]
    heuristic: bool = True

    @property
    def surviving_count(self) -> int:
        return len(self.survivors)

    def to_json_dict(self) -> dict:
        return {
            "beta": self.beta.label(),
            "r": self.r,
            "p": self.p,
            "degree": self.degree,
            "weight": list(self.weight),
            "monomials": [
                {"name": m.name, **aj_summand_index(m)} for m in self.monomials
            ],
            "paired": [{"name": m.name, "reason": why} for m, why in self.paired],
            "survivors": [m.name for m in self.survivors],
            "surviving_count": self.surviving_count,
            "classification": "heuristic",
        }


def uniqueness_witness(ctx: ModelContext, beta: Root, strict: bool = True) -> UniquenessReport:
    """Search the (2p^{r-1}, p^r beta) weight space of the quotient's first page.

    Requires the decomposition-count hypothesis for the context (every
    level-2 root has fewer than p two-term splittings); monomials that the
    first differential implicates are then classified away and the rest is
    reported.
    """
    pctx = ctx.parabolic()
    if strict:
        report = check_pairing_hypothesis(pctx, ctx.p)
        if not report.ok:
            raise DomainError(
                "pairing hypothesis fails for this context; "
                "the uniqueness search is not justified"
            )
    if pctx.level(beta) != ctx.top_level:
        raise DomainError("the search targets roots of the extension's top level")
    r, p = ctx.r, ctx.p
    roots = tuple(root for v in ctx.levels() for root in ctx.roots_of_level(v))
    root_set = set(roots)
    decomposable = {
        root for root in roots if summand_pairs(root, pctx, min_level=ctx.i)
    }
    degree = 2 * p ** (r - 1)
    weight = tuple(p**r * c for c in beta.coeffs)
    monomials = tuple(aj_E1_enumerate(roots, r, p, degree, weight))

    def classify(mono: AJMonomial) -> str | None:
        wedge = mono.block_y_roots(2)
        for root in wedge:
            if root in decomposable:
                return f"wedge factor on the decomposable root {root.label()}"
        for a in wedge:
            for b in wedge:
                if a < b and a + b in root_set:
                    return f"wedge pair {a.label()}, {b.label()} assembling to a root"
        return None

    paired = []
    survivors = []
    for mono in monomials:
        why = classify(mono)
        if why is None:
            survivors.append(mono)
        else:
            paired.append((mono, why))
    return UniquenessReport(
        beta=beta,
        r=r,
        p=p,
        degree=degree,
        weight=weight,
        monomials=monomials,
        paired=tuple(paired),
        survivors=tuple(survivors),
    )
