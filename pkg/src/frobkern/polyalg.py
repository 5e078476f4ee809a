"""Graded-commutative polynomial arithmetic over F_p, Groebner bases,
dimension counting and exhaustive F_q point counting.

A ring holds even (polynomial) and odd (exterior) variables; monomials are
dense exponent tuples in a fixed variable order, odd exponents never exceed
one, and products pick up the Koszul sign from transposing odd factors.
Ideal machinery (Buchberger, normal forms, standard-monomial counting) is
restricted to the even subring, which is all the model ideals need.

Point counting works over any F_q with q a power of the ring characteristic;
extension fields are realised through precomputed add/mul tables so that the
numpy evaluation path is a plain table gather.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetError, ConfigError, DomainError, UnsupportedOperationError

EVEN = "even"
ODD = "odd"

#: assignments enumerated by count_points before giving up (about 5^10)
DEFAULT_POINT_BUDGET = 10_000_000


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class VariableDescriptor:
    """One generator: name, parity, cohomological degree and T-weight."""

    name: str
    parity: str = EVEN
    degree: int = 0
    weight: tuple[int, ...] = ()

    def __post_init__(self):
        if self.parity not in (EVEN, ODD):
            raise ConfigError(f"parity must be 'even' or 'odd', got {self.parity!r}")
        if self.parity == ODD and self.degree % 2 == 0:
            raise ConfigError(f"odd variable {self.name} needs odd degree")
        if self.parity == EVEN and self.degree % 2 == 1:
            raise ConfigError(f"even variable {self.name} needs even degree")
        object.__setattr__(self, "weight", tuple(int(w) for w in self.weight))


class PolyRing:
    """F_p polynomial-exterior ring on an ordered variable list."""

    def __init__(self, p: int, variables, label: str = ""):
        if not is_prime(p) or p == 2:
            raise ConfigError(f"p must be an odd prime, got {p}")
        variables = tuple(variables)
        names = [v.name for v in variables]
        if len(set(names)) != len(names):
            raise ConfigError("duplicate variable names")
        wlens = {len(v.weight) for v in variables}
        if len(wlens) > 1:
            raise ConfigError("all variables must share the weight-vector length")
        self.p = p
        self.variables = variables
        self.label = label
        self.index = {v.name: i for i, v in enumerate(variables)}
        self._odd = tuple(i for i, v in enumerate(variables) if v.parity == ODD)
        self._degrees = tuple(v.degree for v in variables)
        self._weights = tuple(v.weight for v in variables)
        self.weight_len = wlens.pop() if wlens else 0

    # -- basic structure ---------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyRing)
            and self.p == other.p
            and self.variables == other.variables
        )

    def __hash__(self):
        return hash((self.p, self.variables))

    def __repr__(self):
        tag = self.label or ",".join(v.name for v in self.variables[:4])
        return f"PolyRing(F{self.p}; {tag}{'...' if self.nvars > 4 else ''})"

    def descriptor(self, name: str) -> VariableDescriptor:
        return self.variables[self.index[name]]

    # -- element constructors ----------------------------------------------

    def zero(self) -> "Poly":
        return Poly(self, {})

    def const(self, c: int) -> "Poly":
        c %= self.p
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def one(self) -> "Poly":
        return self.const(1)

    def var(self, name: str) -> "Poly":
        if name not in self.index:
            raise DomainError(f"no variable {name!r} in {self!r}")
        return self.monomial({name: 1})

    def monomial(self, exps: dict, coeff: int = 1) -> "Poly":
        e = [0] * self.nvars
        for name, k in exps.items():
            if name not in self.index:
                raise DomainError(f"no variable {name!r} in {self!r}")
            if k < 0:
                raise DomainError("exponents must be non-negative")
            i = self.index[name]
            if i in self._odd and k >= 2:
                raise DomainError(f"exterior variable {name} cannot carry exponent {k}")
            e[i] = k
        coeff %= self.p
        return Poly(self, {tuple(e): coeff} if coeff else {})

    def from_terms(self, terms) -> "Poly":
        out = self.zero()
        for coeff, exps in terms:
            out = out + self.monomial(exps, coeff)
        return out

    # -- monomial helpers ----------------------------------------------------

    def monomial_degree(self, exps) -> int:
        return sum(e * d for e, d in zip(exps, self._degrees))

    def monomial_weight(self, exps) -> tuple[int, ...]:
        w = [0] * self.weight_len
        for e, wt in zip(exps, self._weights):
            if e:
                for k in range(self.weight_len):
                    w[k] += e * wt[k]
        return tuple(w)

    def order_key(self, exps):
        """Degrevlex on raw exponents; max(key) is the leading monomial."""
        return (sum(exps), tuple(-x for x in reversed(exps)))

    def mul_monomials(self, e1, e2):
        """(sign, exps) for the graded product, or None if it vanishes."""
        o1 = [i for i in self._odd if e1[i]]
        o2 = [i for i in self._odd if e2[i]]
        if o1 and o2:
            s2 = set(o2)
            if any(i in s2 for i in o1):
                return None
            inv = sum(1 for i in o1 for j in o2 if i > j)
            sign = -1 if inv % 2 else 1
        else:
            sign = 1
        return sign, tuple(a + b for a, b in zip(e1, e2))

    def monomial_str(self, exps) -> str:
        parts = []
        for i, e in enumerate(exps):
            if e == 1:
                parts.append(self.variables[i].name)
            elif e:
                parts.append(f"{self.variables[i].name}^{e}")
        return "*".join(parts) if parts else "1"


class Poly:
    """Immutable element of a PolyRing in canonical form."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = {e: c % ring.p for e, c in terms.items() if c % ring.p}

    # -- ring operations -----------------------------------------------------

    def _check(self, other: "Poly"):
        if self.ring != other.ring:
            raise DomainError("operands live in different rings")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Poly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> "Poly":
        return Poly(self.ring, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        ring = self.ring
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                prod = ring.mul_monomials(e1, e2)
                if prod is None:
                    continue
                sign, e = prod
                terms[e] = terms.get(e, 0) + sign * c1 * c2
        return Poly(ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative powers are not defined")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        return isinstance(other, Poly) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- structure queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def monomials(self):
        return sorted(self.terms, key=self.ring.order_key, reverse=True)

    def leading(self):
        """(exps, coeff) of the degrevlex-leading term."""
        if not self.terms:
            raise DomainError("zero polynomial has no leading term")
        e = max(self.terms, key=self.ring.order_key)
        return e, self.terms[e]

    def monic(self) -> "Poly":
        _, c = self.leading()
        return self.scale(pow(c, -1, self.ring.p))

    def homogeneous_degree(self):
        """The common cohomological degree of all terms; None if mixed."""
        degs = {self.ring.monomial_degree(e) for e in self.terms}
        if not degs:
            return 0
        return degs.pop() if len(degs) == 1 else None

    def uniform_weight(self):
        """The common T-weight of all terms, or None if mixed."""
        ws = {self.ring.monomial_weight(e) for e in self.terms}
        if not ws:
            return (0,) * self.ring.weight_len
        w = ws.pop()
        return w if not ws else None

    def is_even(self) -> bool:
        odd = set(self.ring._odd)
        return all(all(e[i] == 0 for i in odd) for e in self.terms)

    def to_json_dict(self) -> dict:
        out = []
        for e in self.monomials():
            exps = {
                self.ring.variables[i].name: k for i, k in enumerate(e) if k
            }
            out.append({"c": self.terms[e], "e": exps})
        return {"terms": out}

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in self.monomials():
            c = self.terms[e]
            m = self.ring.monomial_str(e)
            if m == "1":
                bits.append(str(c))
            elif c == 1:
                bits.append(m)
            else:
                bits.append(f"{c}*{m}")
        return " + ".join(bits)


class IdealPresentation:
    """Ambient ring plus a relation list.

    When ``require_homogeneous`` is set (the model builders do this), every
    relation must be homogeneous in cohomological degree and a T-weight
    eigenvector.  Rings whose variables all sit in degree zero pass the check
    vacuously, which is how the generic Groebner examples are phrased.
    """

    def __init__(self, ring: PolyRing, relations, require_homogeneous: bool = False):
        self.ring = ring
        self.relations = tuple(r for r in relations if not r.is_zero())
        for r in self.relations:
            if r.ring != ring:
                raise DomainError("relation from a different ring")
        if require_homogeneous:
            for r in self.relations:
                if r.homogeneous_degree() is None:
                    raise DomainError(f"relation {r} is not degree-homogeneous")
                if r.uniform_weight() is None:
                    raise DomainError(f"relation {r} is not a T-weight eigenvector")
        self._gb = None

    def groebner(self) -> "GroebnerBasis":
        if self._gb is None:
            self._gb = buchberger(self)
        return self._gb


@dataclass(frozen=True)
class GroebnerBasis:
    ring: PolyRing
    order: str
    basis: tuple[Poly, ...]


def _divides(e1, e2) -> bool:
    return all(a <= b for a, b in zip(e1, e2))


def _quotient(e1, e2):
    return tuple(a - b for a, b in zip(e1, e2))


def _even_only(ring: PolyRing, polys) -> None:
    for f in polys:
        if not f.is_even():
            raise UnsupportedOperationError(
                "Groebner machinery only covers the even subring"
            )


def normal_form(f: Poly, G) -> Poly:
    """Remainder of f under division by the polynomials of G.

    A zero remainder certifies ideal membership for any divisor set; the
    remainder is unique (and the map idempotent) once G is a reduced
    Groebner basis.
    """
    basis = G.basis if isinstance(G, GroebnerBasis) else tuple(G)
    ring = f.ring
    _even_only(ring, [f])
    _even_only(ring, basis)
    if not basis:
        return f
    lead = [(g.leading()[0], g.leading()[1], g) for g in basis if not g.is_zero()]
    remainder = ring.zero()
    work = f
    while not work.is_zero():
        e, c = work.leading()
        hit = None
        for le, lc, g in lead:
            if _divides(le, e):
                hit = (le, lc, g)
                break
        if hit is None:
            t = Poly(ring, {e: c})
            remainder = remainder + t
            work = work - t
        else:
            le, lc, g = hit
            factor = Poly(ring, {_quotient(e, le): c * pow(lc, -1, ring.p)})
            work = work - factor * g
    return remainder


def _s_poly(f: Poly, g: Poly) -> Poly:
    ring = f.ring
    ef, cf = f.leading()
    eg, cg = g.leading()
    lcm = tuple(max(a, b) for a, b in zip(ef, eg))
    uf = Poly(ring, {_quotient(lcm, ef): pow(cf, -1, ring.p)})
    ug = Poly(ring, {_quotient(lcm, eg): pow(cg, -1, ring.p)})
    return uf * f - ug * g


def buchberger(ideal) -> GroebnerBasis:
    """Reduced Groebner basis (degrevlex) of an even-subring ideal."""
    if isinstance(ideal, IdealPresentation):
        ring, relations = ideal.ring, ideal.relations
    else:
        relations = tuple(ideal)
        if not relations:
            raise DomainError("cannot infer ring from an empty relation list")
        ring = relations[0].ring
    _even_only(ring, relations)
    G = [r.monic() for r in relations if not r.is_zero()]
    pairs = [(i, j) for i in range(len(G)) for j in range(i + 1, len(G))]
    while pairs:
        i, j = pairs.pop(0)
        ei, _ = G[i].leading()
        ej, _ = G[j].leading()
        # product criterion: coprime leading monomials reduce to zero
        if all(a == 0 or b == 0 for a, b in zip(ei, ej)):
            continue
        h = normal_form(_s_poly(G[i], G[j]), G)
        if not h.is_zero():
            G.append(h.monic())
            pairs.extend((k, len(G) - 1) for k in range(len(G) - 1))
    # minimalise: drop elements whose lead is divisible by another lead
    minimal: list[Poly] = []
    for g in sorted(G, key=lambda g: g.ring.order_key(g.leading()[0])):
        eg = g.leading()[0]
        if not any(_divides(h.leading()[0], eg) for h in minimal):
            minimal.append(g)
    # inter-reduce tails
    reduced = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1 :]
        reduced.append(normal_form(g, others).monic() if others else g)
    reduced.sort(key=lambda g: ring.order_key(g.leading()[0]))
    return GroebnerBasis(ring=ring, order="degrevlex", basis=tuple(reduced))


# -- graded dimension --------------------------------------------------------


def _even_monomials_of_degree(ring: PolyRing, degree: int):
    """Yield exponent tuples over the even variables with given coh degree."""
    even = [i for i in range(ring.nvars) if i not in ring._odd]
    if any(ring._degrees[i] <= 0 for i in even):
        raise DomainError("dimension counting needs positive variable degrees")

    def rec(pos, remaining, acc):
        if remaining == 0:
            e = [0] * ring.nvars
            for i, k in acc:
                e[i] = k
            yield tuple(e)
            return
        if pos == len(even):
            return
        i = even[pos]
        d = ring._degrees[i]
        for k in range(remaining // d + 1):
            yield from rec(pos + 1, remaining - k * d, acc + [(i, k)] if k else acc)

    yield from rec(0, degree, [])


def graded_dimension(
    presentation: IdealPresentation,
    degree: int,
    weight: tuple[int, ...] | None = None,
    degree_bound: int | None = None,
) -> int:
    """F_p-dimension of the (degree[, weight]) component of ambient/ideal.

    Exhaustive: standard even monomials (those not divisible by a Groebner
    leading term) convolved with the exterior wedges.
    """
    ring = presentation.ring
    bound = degree_bound if degree_bound is not None else 2 * ring.p * ring.p + 2
    if degree > bound:
        raise BudgetError(
            f"degree {degree} exceeds the enumeration bound {bound}; "
            "pass degree_bound explicitly to extend it"
        )
    if degree < 0:
        return 0
    gb = presentation.groebner()
    leads = [g.leading()[0] for g in gb.basis]
    odd = list(ring._odd)
    if weight is not None:
        weight = tuple(weight)
        if len(weight) != ring.weight_len:
            raise DomainError("weight vector has the wrong length")

    wedges = []
    for rset in range(len(odd) + 1):
        for subset in itertools.combinations(odd, rset):
            d = sum(ring._degrees[i] for i in subset)
            if d <= degree:
                wedges.append((d, subset))

    count = 0
    for wedge_deg, subset in wedges:
        target = degree - wedge_deg
        for e in _even_monomials_of_degree(ring, target):
            if any(_divides(le, e) for le in leads):
                continue
            if weight is not None:
                full = list(e)
                for i in subset:
                    full[i] = 1
                if ring.monomial_weight(tuple(full)) != weight:
                    continue
            count += 1
    return count


# -- finite fields and point counting ----------------------------------------


def _poly_mul_mod(a, b, modulus, p):
    """Multiply F_p[t] digit vectors and reduce by the monic ``modulus``."""
    k = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for i in range(len(prod) - 1, k - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j in range(k):
                prod[i - k + j] = (prod[i - k + j] - c * modulus[j]) % p
    return prod[:k]


def _find_irreducible(p: int, k: int) -> list[int]:
    """Coefficients [c0..ck] (ck = 1) of an irreducible degree-k poly over F_p."""

    def divides(d, f):
        # trial division f / d over F_p, both coefficient lists, d monic
        rem = list(f)
        while len(rem) >= len(d) and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) < len(d):
                break
            c = rem[-1]
            shift = len(rem) - len(d)
            for i, dc in enumerate(d):
                rem[shift + i] = (rem[shift + i] - c * dc) % p
        return not any(rem)

    lower: list[list[int]] = []
    for deg in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            lower.append(list(tail) + [1])
    for tail in itertools.product(range(p), repeat=k):
        f = list(tail) + [1]
        if f[0] == 0:
            continue
        if not any(divides(d, f) for d in lower):
            return f
    raise ConfigError(f"no irreducible polynomial of degree {k} over F_{p}")


class GF:
    """F_q with q = p^k, elements indexed 0..q-1 by base-p digit vectors.

    Index c < p is the constant c, so F_p-coefficients embed as themselves.
    Arithmetic is table-driven; the tables double as numpy gather targets.
    """

    def __init__(self, q: int, char: int | None = None):
        p, k = self._factor(q)
        if char is not None and p != char:
            raise ConfigError(f"q = {q} is not a power of the characteristic {char}")
        self.q, self.p, self.k = q, p, k
        if k == 1:
            idx = np.arange(q, dtype=np.int64)
            self.add_table = ((idx[:, None] + idx[None, :]) % q).astype(np.int32)
            self.mul_table = ((idx[:, None] * idx[None, :]) % q).astype(np.int32)
        else:
            modulus = _find_irreducible(p, k)
            digits = [self._digits(i) for i in range(q)]
            add = np.zeros((q, q), dtype=np.int32)
            mul = np.zeros((q, q), dtype=np.int32)
            for a in range(q):
                for b in range(q):
                    add[a, b] = self._index(
                        [(x + y) % p for x, y in zip(digits[a], digits[b])]
                    )
                    mul[a, b] = self._index(
                        _poly_mul_mod(digits[a], digits[b], modulus, p)
                    )
            self.add_table, self.mul_table = add, mul

    @staticmethod
    def _factor(q: int) -> tuple[int, int]:
        if q < 2:
            raise ConfigError("q must be at least 2")
        for p in range(2, q + 1):
            if q % p == 0:
                k = 0
                m = q
                while m % p == 0:
                    m //= p
                    k += 1
                if m != 1:
                    raise ConfigError(f"q = {q} is not a prime power")
                return p, k
        raise ConfigError(f"q = {q} is not a prime power")

    def _digits(self, i: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(i % self.p)
            i //= self.p
        return out

    def _index(self, digits) -> int:
        out = 0
        for d in reversed(list(digits)):
            out = out * self.p + d
        return out

    def add_vec(self, a, b):
        return self.add_table[a, b]

    def mul_vec(self, a, b):
        return self.mul_table[a, b]

    def pow_vec(self, a, e: int):
        result = np.zeros_like(a) + 1  # index 1 is the unit
        base = a
        while e:
            if e & 1:
                result = self.mul_table[result, base]
            base = self.mul_table[base, base]
            e >>= 1
        return result


def count_points(
    system: IdealPresentation,
    q: int,
    max_assignments: int | None = None,
    chunk: int = 1 << 16,
) -> int:
    """Number of F_q solutions of an even polynomial system, by enumeration."""
    ring = system.ring
    if ring._odd:
        raise UnsupportedOperationError("point counting needs an even-variable ring")
    gf = GF(q, char=ring.p)
    n = ring.nvars
    total = q**n
    budget = DEFAULT_POINT_BUDGET if max_assignments is None else max_assignments
    if total > budget:
        raise BudgetError(
            f"{q}^{n} = {total} assignments exceed the enumeration budget {budget}"
        )
    rels = [list(r.terms.items()) for r in system.relations]
    count = 0
    for start in range(0, total, chunk):
        m = min(chunk, total - start)
        idx = np.arange(start, start + m, dtype=np.int64)
        cols = []
        for _ in range(n):
            cols.append((idx % q).astype(np.int32))
            idx //= q
        alive = np.ones(m, dtype=bool)
        for rel in rels:
            if not alive.any():
                break
            sub = [c[alive] for c in cols]
            acc = np.zeros(int(alive.sum()), dtype=np.int32)
            for exps, coeff in rel:
                term = np.full(acc.shape, coeff % ring.p, dtype=np.int32)
                for i, e in enumerate(exps):
                    if e:
                        term = gf.mul_vec(term, gf.pow_vec(sub[i], e))
                acc = gf.add_vec(acc, term)
            alive[alive.copy()] = acc == 0
        count += int(alive.sum())
    return count


def plain_ring(p: int, names, label: str = "") -> PolyRing:
    """Even degree-0 variables with no weights: the generic Groebner setting."""
    return PolyRing(p, [VariableDescriptor(n) for n in names], label=label)
