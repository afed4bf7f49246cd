"""Lattice layer: degree, duality, theta cohomology, enumeration, reduction."""

import math
import random
from fractions import Fraction

import pytest

from latzeta.errors import EnumerationOverflow, SingularBasis
from latzeta.lattice import (
    CohomologyReport,
    Lattice,
    covolume,
    degree,
    direct_sum,
    dual,
    hnf_basis,
    minkowski_point,
    riemann_roch,
    scale,
    short_vectors,
    theta_h0,
    theta_h1,
)
from latzeta.numerics import NumericsConfig

# direct summation oracles (independent of the package enumeration)
H0_Z1 = 0.08290152003105464          # log(1 + 2 sum e^{-pi n^2})
H0_2Z = 6.974660389446011e-06        # log(1 + 2e^{-4pi} + 2e^{-16pi} + ...)
THETA_HEX = 1.2597886341224682       # brute force over the box [-25,25]^2

Z1 = Lattice.from_basis([[1]])
Z2 = Lattice.from_basis([[1, 0], [0, 1]])
Z3 = Lattice.from_basis([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
HEX = Lattice.from_gram([[1, Fraction(1, 2)], [Fraction(1, 2), 1]])


def random_lattice(rng, rank, span=3):
    while True:
        rows = [[Fraction(rng.randint(-span, span)) for _ in range(rank)] for _ in range(rank)]
        try:
            return Lattice.from_basis(rows)
        except (SingularBasis, ValueError):
            continue


class TestDegree:
    def test_identity(self):
        for L in (Z1, Z2, Z3):
            assert covolume(L) == 1.0
            assert degree(L) == 0.0

    def test_rank1_scale(self):
        assert abs(degree(Lattice.from_basis([[2]])) + math.log(2)) < 1e-15

    def test_matches_exact_determinant(self):
        L = Lattice.from_basis([[Fraction(3, 2), 1], [0, Fraction(4, 5)]])
        assert abs(covolume(L) - 6 / 5) < 1e-15

    def test_singular_rejected(self):
        with pytest.raises(SingularBasis):
            Lattice.from_basis([[1, 2], [2, 4]])
        with pytest.raises(SingularBasis):
            Lattice.from_gram([[1, 2], [2, 1]])  # indefinite


class TestDual:
    def test_self_dual(self):
        assert hnf_basis(dual(Z2)) == hnf_basis(Z2)

    def test_involution_and_degree_flip(self):
        rng = random.Random(11)
        for _ in range(20):
            L = random_lattice(rng, rng.choice([1, 2, 3]))
            D = dual(L)
            assert abs(degree(D) + degree(L)) < 1e-12
            assert hnf_basis(dual(D)) == hnf_basis(L)

    def test_gram_only_involution(self):
        D = dual(HEX)
        assert dual(D).gram == HEX.gram

    def test_covolume_reciprocal(self):
        L = Lattice.from_basis([[2, 1], [0, 3]])
        assert abs(covolume(dual(L)) - 1 / 6) < 1e-15


class TestTheta:
    def test_rank1_values(self):
        assert abs(theta_h0(Z1) - H0_Z1) < 1e-12
        assert abs(theta_h0(scale(Z1, 2)) - H0_2Z) < 1e-14

    def test_hexagonal_gram(self):
        assert abs(theta_h0(HEX) - math.log(THETA_HEX)) < 1e-12

    def test_direct_sum_additive(self):
        lhs = theta_h0(direct_sum(Z1, scale(Z1, 2)))
        assert abs(lhs - (theta_h0(Z1) + theta_h0(scale(Z1, 2)))) < 1e-12

    def test_h1_is_dual_h0(self):
        rng = random.Random(5)
        for _ in range(5):
            L = random_lattice(rng, 2)
            assert theta_h1(L) == theta_h0(dual(L))

    def test_monotone_under_scaling(self):
        prev = theta_h0(Z2)
        for t in (Fraction(5, 4), Fraction(3, 2), 2, 3):
            cur = theta_h0(scale(Z2, t))
            assert cur < prev
            prev = cur

    def test_nonnegative(self):
        assert theta_h0(scale(Z1, 50)) >= 0.0

    def test_budget_overflow(self):
        tiny = NumericsConfig(vector_budget=10)
        with pytest.raises(EnumerationOverflow):
            theta_h0(scale(Z2, Fraction(1, 20)), tiny)


class TestRiemannRoch:
    def test_identity_exact(self):
        for L in (Z1, Z2, Z3):
            rep = riemann_roch(L)
            assert isinstance(rep, CohomologyReport)
            assert abs(rep.rr_defect) < 1e-12

    def test_scaled_rank1(self):
        assert abs(riemann_roch(scale(Z1, 3)).rr_defect) < 1e-9

    def test_random_rank3(self):
        rng = random.Random(23)
        for _ in range(10):
            L = random_lattice(rng, 3)
            assert abs(riemann_roch(L).rr_defect) < 1e-9


class TestShortVectors:
    def test_z2_bound1(self):
        assert short_vectors(Z2, 1) == [(1, 0), (0, 1)]

    def test_z2_bound2_order(self):
        assert short_vectors(Z2, 2) == [(1, 0), (0, 1), (1, 1), (1, -1)]

    def test_hexagonal_minimal_classes(self):
        assert len(short_vectors(HEX, 1)) == 3

    def test_exact_boundary(self):
        # norm exactly on the bound is included, just above is not
        L = Lattice.from_gram([[Fraction(9, 4)]])
        assert short_vectors(L, Fraction(9, 4)) == [(1,)]
        assert short_vectors(L, Fraction(9, 4) - Fraction(1, 10**9)) == []

    def test_matches_box_bruteforce(self):
        rng = random.Random(31)
        for _ in range(10):
            L = random_lattice(rng, rng.choice([2, 3]), span=2)
            bound = Fraction(rng.randint(2, 8))
            got = set(short_vectors(L, bound))
            want = set()
            r = L.rank
            span = 12
            coords = range(-span, span + 1)
            import itertools

            for x in itertools.product(coords, repeat=r):
                if not any(x):
                    continue
                q = sum(L.gram[i][j] * x[i] * x[j] for i in range(r) for j in range(r))
                if q <= bound:
                    v = x
                    for comp in v:
                        if comp:
                            if comp < 0:
                                v = tuple(-c for c in v)
                            break
                    want.add(v)
            assert got == want


class TestMinkowski:
    def test_z2(self):
        z, t = minkowski_point(Z2)
        assert (z.x, z.y, t) == (0.0, 1.0, 1.0)

    def test_hexagonal_tie(self):
        z, t = minkowski_point(HEX)
        assert abs(z.x - 0.5) < 1e-15
        assert abs(z.y - math.sqrt(3) / 2) < 1e-15

    def test_domain_and_lambda1(self):
        rng = random.Random(47)
        for _ in range(40):
            L = random_lattice(rng, 2)
            z, t = minkowski_point(L)
            assert abs(z.x) <= 0.5 + 1e-15
            assert z.x * z.x + z.y * z.y >= 1 - 1e-12
            assert z.x >= 0.0
            bound = min(L.gram[0][0], L.gram[1][1])
            lam1_sq = min(
                sum(L.gram[i][j] * v[i] * v[j] for i in range(2) for j in range(2))
                for v in short_vectors(L, bound)
            )
            lam1 = math.sqrt(float(lam1_sq)) / t
            assert abs(lam1 - z.y ** -0.5) < 1e-10

    def test_rank_guard(self):
        with pytest.raises(ValueError):
            minkowski_point(Z3)


class TestJson:
    def test_basis_round_trip(self):
        L = Lattice.from_basis([[Fraction(3, 2), 1], [0, Fraction(4, 5)]])
        assert Lattice.from_json(L.to_json()) == L

    def test_gram_round_trip(self):
        assert Lattice.from_json(HEX.to_json()) == HEX

    def test_rationals_as_strings(self):
        j = HEX.to_json()
        assert j["gram"][0][1] == "1/2"

    def test_bad_payload(self):
        with pytest.raises(ValueError):
            Lattice.from_json({"rank": 2})
        with pytest.raises(ValueError):
            Lattice.from_json({"rank": 3, "basis": [["1", "0"], ["0", "1"]]})
