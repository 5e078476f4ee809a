import itertools

import pytest

from frobkern.errors import DomainError, UnsupportedOperationError
from frobkern.grmodel import model_context
from frobkern.polyalg import Poly
from frobkern.rootsys import Root, summand_pairs
from frobkern.specseq import (
    GaPresentation,
    aj_E1_enumerate,
    aj_summand_index,
    d2,
    d2_on_y,
    first_nonvanishing_differential,
    lhs_page,
    permanent_cycle_monomial,
    steenrod_apply,
    transgression_power,
    uniqueness_witness,
)

A1, A2, A12 = Root((1, 0)), Root((0, 1)), Root((1, 1))
B1, B2, B3 = Root((1, 0, 0)), Root((0, 1, 0)), Root((0, 0, 1))
B12, B23 = Root((1, 1, 0)), Root((0, 1, 1))


def u3_page(r=2, p=3):
    return lhs_page(model_context("A", 2, i=1, stage=3, r=r, p=p))


def u4_page(r=2, p=3):
    return lhs_page(model_context("A", 3, i=1, stage=3, r=r, p=p))


class TestGaPresentation:
    def test_truncation_and_weights(self):
        ga = GaPresentation(A12, r=2, p=3)
        ring = ga.ring()
        names = {v.name for v in ring.variables}
        assert names == {
            "x[a1+a2](0)", "x[a1+a2](1)", "y[a1+a2](0)", "y[a1+a2](1)",
        }
        by = {v.name: v for v in ring.variables}
        assert by["y[a1+a2](0)"].weight == (1, 1)
        assert by["y[a1+a2](1)"].weight == (3, 3)
        assert by["x[a1+a2](0)"].weight == (3, 3)
        assert by["x[a1+a2](1)"].weight == (9, 9)


class TestD2:
    def test_u3_twist0(self):
        page = u3_page()
        assert d2_on_y(page, A12, 0) == page.y(A1, 0) * page.y(A2, 0)

    def test_u4_beta23_twist1(self):
        page = u4_page()
        assert d2_on_y(page, B23, 1) == page.y(B2, 1) * page.y(B3, 1)

    def test_no_pairs_gives_zero(self):
        # inside Gamma_2 the level-2 fiber roots have no admissible pairs
        page = lhs_page(model_context("A", 3, i=2, stage=3, r=2, p=3))
        assert d2_on_y(page, B12, 0).is_zero()

    def test_base_root_rejected(self):
        with pytest.raises(DomainError):
            d2_on_y(u3_page(), A1, 0)

    def test_bidegree(self):
        page = u3_page()
        value = d2_on_y(page, A12, 0)
        (exps,) = value.terms
        assert page.monomial_bidegree(exps) == (2, 0)
        (y_exps,) = page.y(A12, 0).terms
        assert page.monomial_bidegree(y_exps) == (0, 1)


class TestTransgression:
    def test_u3_base_case(self):
        page = u3_page()
        expected = page.x(A1, 0) * page.y(A2, 1) - page.x(A2, 0) * page.y(A1, 1)
        assert transgression_power(page, A12, 0, 0) == expected

    def test_truncated(self):
        assert transgression_power(u3_page(), A12, 1, 0).is_zero()

    def test_j1_r3(self):
        page = u3_page(r=3)
        expected = (
            page.x(A1, 0) ** 3 * page.y(A2, 2) - page.x(A2, 0) ** 3 * page.y(A1, 2)
        )
        assert transgression_power(page, A12, 0, 1) == expected

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_zero_iff_truncated(self, r):
        page = u3_page(r=r)
        for twist, j in itertools.product(range(4), range(4)):
            value = transgression_power(page, A12, twist, j)
            assert value.is_zero() == (twist + 1 + j >= r)

    def test_weight_preservation(self):
        page = u3_page(r=3)
        for twist, j in [(0, 0), (0, 1), (1, 0), (1, 1), (2, 0)]:
            value = transgression_power(page, A12, twist, j)
            if value.is_zero():
                continue
            scale = 3 ** (twist + 1 + j)
            assert value.uniform_weight() == (scale, scale)
            assert d2_on_y(page, A12, twist).uniform_weight() == (3**twist, 3**twist)


class TestDerivation:
    def test_leibniz_on_random_pairs(self):
        import random

        page = u3_page()
        rng = random.Random(11)
        gens = [page.ring.var(v.name) for v in page.ring.variables]

        def random_monomial():
            f = page.ring.one()
            for _ in range(rng.randint(1, 3)):
                f = f * rng.choice(gens)
                if f.is_zero():
                    return random_monomial()
            return f

        for _ in range(40):
            f, g = random_monomial(), random_monomial()
            if (f * g).is_zero():
                continue
            df = d2(page, f)
            dg = d2(page, g)
            sign = -1 if f.homogeneous_degree() % 2 else 1
            assert d2(page, f * g) == df * g + (f * dg) * sign

    def test_d2_squared_zero_low_fiber_degree(self):
        page = u3_page()
        candidates = [
            page.y(A12, 0) * page.y(A12, 1),
            page.y(A12, 0) * page.x(A1, 0),
            page.y(A12, 1),
            page.y(A12, 0) * page.y(A12, 1) * page.x(A2, 1),
        ]
        for f in candidates:
            assert d2(page, d2(page, f)).is_zero()

    def test_d2_vanishes_on_fiber_x(self):
        page = u3_page()
        assert d2(page, page.x(A12, 0) ** 2).is_zero()


class TestSteenrod:
    def test_bockstein_on_wedge_is_cartan_display(self):
        page = u3_page()
        value = steenrod_apply(page, "bP0", page.y(A1, 0) * page.y(A2, 0))
        expected = page.x(A1, 0) * page.y(A2, 1) - page.x(A2, 0) * page.y(A1, 1)
        assert value == expected

    def test_power_rule(self):
        page = u3_page(r=2)
        value = steenrod_apply(page, "P3", page.x(A12, 0) ** 3)
        assert value == page.x(A12, 0) ** 9

    def test_truncated_bockstein(self):
        page = u3_page(r=2)
        assert steenrod_apply(page, "bP0", page.y(A12, 1)) == page.x(A12, 1)
        # on a wedge at the top twist both Cartan terms hit truncated classes
        top = page.y(A1, 1) * page.y(A2, 1)
        assert steenrod_apply(page, "bP0", top).is_zero()

    def test_p0_is_ring_map(self):
        page = u3_page(r=3)
        f = page.x(A1, 0) + page.y(A2, 0) * page.y(A1, 1)
        g = page.x(A2, 1) ** 2
        assert steenrod_apply(page, "P0", f * g) == steenrod_apply(
            page, "P0", f
        ) * steenrod_apply(page, "P0", g)

    def test_kudo_compatibility(self):
        for page in (u3_page(r=2), u3_page(r=3), u4_page(r=2)):
            for beta in page.fiber_roots:
                for twist in range(page.ctx.r):
                    lhs = steenrod_apply(page, "bP0", d2_on_y(page, beta, twist))
                    assert lhs == transgression_power(page, beta, twist, 0)

    def test_kudo_chain_via_power_operations(self):
        page = u3_page(r=3)
        for twist, j in [(0, 0), (0, 1), (1, 0)]:
            prev = transgression_power(page, A12, twist, j)
            nxt = steenrod_apply(page, f"P{3**j}", prev)
            assert nxt == transgression_power(page, A12, twist, j + 1)

    def test_bockstein_of_transgression_is_relation_value(self):
        page = u3_page(r=3)
        p = 3
        for twist, j in [(0, 0), (1, 0), (0, 1)]:
            value = steenrod_apply(
                page, f"bP{p**j}", transgression_power(page, A12, twist, j)
            )
            if twist + 1 + j >= page.ctx.r:
                assert value.is_zero()
                continue
            expected = page.x(A1, twist) ** (p ** (j + 1)) * page.x(
                A2, twist + 1 + j
            ) - page.x(A2, twist) ** (p ** (j + 1)) * page.x(A1, twist + 1 + j)
            assert value == expected

    def test_weight_scaling(self):
        page = u3_page(r=3)
        f = page.y(A1, 0) * page.y(A2, 0)
        value = steenrod_apply(page, "bP0", f)
        assert value.uniform_weight() == tuple(3 * w for w in f.uniform_weight())

    def test_unsupported_operation(self):
        page = u3_page()
        with pytest.raises(UnsupportedOperationError):
            steenrod_apply(page, "P2", page.x(A1, 0))
        with pytest.raises(UnsupportedOperationError):
            steenrod_apply(page, "Q1", page.x(A1, 0))


class TestPermanentCycles:
    def test_examples(self):
        assert permanent_cycle_monomial({(A12, 1): 1}, r=2, p=3)
        assert not permanent_cycle_monomial({(A12, 0): 1}, r=2, p=3)
        assert not permanent_cycle_monomial({(A12, 0): 1, (A12, 1): 1}, r=2, p=3)
        assert permanent_cycle_monomial({(A12, 0): 3, (A12, 1): 5}, r=2, p=3)

    def test_agreement_with_differential_scan(self):
        page = u3_page(r=2, p=3)
        # all fiber monomials of degree <= 2 p^2 = 18
        for n0 in range(10):
            for n1 in range(10 - n0):
                mono = {}
                if n0:
                    mono[(A12, 0)] = n0
                if n1:
                    mono[(A12, 1)] = n1
                criterion = permanent_cycle_monomial(mono, r=2, p=3)
                scan = first_nonvanishing_differential(page, mono)
                assert criterion == (scan is None), (n0, n1)

    def test_scan_page_index(self):
        page = u3_page(r=3, p=3)
        j, value = first_nonvanishing_differential(page, {(A12, 0): 3})
        assert j == 1 and not value.is_zero()
        j, value = first_nonvanishing_differential(page, {(A12, 0): 1})
        assert j == 0

    def test_cross_root_no_cancellation(self):
        page = u4_page(r=2, p=3)
        scan = first_nonvanishing_differential(page, {(B12, 0): 1, (B23, 0): 1})
        assert scan is not None and scan[0] == 0


class TestAJEnumeration:
    def test_degree_zero(self):
        out = aj_E1_enumerate([A1, A2, A12], r=2, p=3, total_degree=0, target_weight=(0, 0))
        assert len(out) == 1 and out[0].name == "1"

    def test_negative_weight(self):
        out = aj_E1_enumerate([A1, A2, A12], r=2, p=3, total_degree=2, target_weight=(-1, 0))
        assert out == []

    def test_u3_key_weight_space(self):
        # hand enumeration over the block profile (a_1, b_2): (3, 0) gives the
        # pure power; (2, 2) gives the pair wedge and the two cross terms that
        # trade one x[a1+a2] for x[a_i] * y[a_j] * y[a1+a2]; nothing else fits
        # the degree-6, weight-(9,9) budget
        out = aj_E1_enumerate(
            [A1, A2, A12], r=2, p=3, total_degree=6, target_weight=(9, 9)
        )
        names = {m.name for m in out}
        assert names == {
            "x[a1+a2]{1}^3",
            "x[a1+a2]{1}^2*y[a1]{2}*y[a2]{2}",
            "x[a1]{1}*x[a1+a2]{1}*y[a2]{2}*y[a1+a2]{2}",
            "x[a2]{1}*x[a1+a2]{1}*y[a1]{2}*y[a1+a2]{2}",
        }

    def test_summand_index_consistency(self):
        out = aj_E1_enumerate(
            [A1, A2, A12], r=2, p=3, total_degree=6, target_weight=(9, 9)
        )
        for mono in out:
            idx = aj_summand_index(mono)
            a, b = idx["a"], idx["b"]
            assert idx["filtration"] == sum(3**n * e for n, e in a.items()) + sum(
                3 ** (n - 1) * e for n, e in b.items()
            )
            assert idx["degree"] == sum(2 * e for e in a.values()) + sum(b.values())


class TestUniqueness:
    def test_u3_p3_r2(self):
        ctx = model_context("A", 2, i=1, stage=3, r=2, p=3)
        report = uniqueness_witness(ctx, A12)
        assert report.surviving_count == 1
        assert report.survivors[0].name == "x[a1+a2]{1}^3"
        assert len(report.monomials) == 4
        reasons = {m.name: why for m, why in report.paired}
        assert "assembling to a root" in reasons["x[a1+a2]{1}^2*y[a1]{2}*y[a2]{2}"]
        assert (
            "decomposable root"
            in reasons["x[a1]{1}*x[a1+a2]{1}*y[a2]{2}*y[a1+a2]{2}"]
        )

    def test_u3_r1(self):
        ctx = model_context("A", 2, i=1, stage=3, r=1, p=3)
        report = uniqueness_witness(ctx, A12)
        assert report.surviving_count == 1
        assert report.monomials == report.survivors

    def test_u3_p5(self):
        ctx = model_context("A", 2, i=1, stage=3, r=2, p=5)
        assert uniqueness_witness(ctx, A12).surviving_count == 1

    def test_u4_mod_g3_p5(self):
        ctx = model_context("A", 3, i=1, stage=3, r=2, p=5)
        for beta in (B12, B23):
            assert uniqueness_witness(ctx, beta).surviving_count == 1

    def test_precondition_enforced(self):
        ctx = model_context("A", 4, J={"a2", "a3"}, i=1, stage=3, r=2, p=3)
        with pytest.raises(DomainError):
            uniqueness_witness(ctx, Root((1, 1, 1, 1)))

    def test_wrong_level_rejected(self):
        ctx = model_context("A", 2, i=1, stage=3, r=2, p=3)
        with pytest.raises(DomainError):
            uniqueness_witness(ctx, A1)

    def test_json_payload(self):
        ctx = model_context("A", 2, i=1, stage=3, r=2, p=3)
        doc = uniqueness_witness(ctx, A12).to_json_dict()
        assert doc["surviving_count"] == 1
        assert doc["classification"] == "heuristic"
        assert len(doc["monomials"]) == 4
        assert all(entry["reason"] for entry in doc["paired"])
