"""Exact-arithmetic tests for the parabolic-bundle tensor calculus."""

from fractions import Fraction
from itertools import product

import pytest

from latzeta.errors import AmbiguousDecomposition, NoDecomposition
from latzeta.tannaka import (
    BRANCHING,
    POINTS,
    ParabolicBundle,
    decompose,
    direct_sum,
    fusion_table,
    par_degree,
    s3_library,
    tensor,
)
from oracles import S3_FUSION, S3_RANKS

LIB = s3_library()
NAME_MAP = {"s11": "triv", "s12": "sgn", "s21": "std"}

ZERO = Fraction(0)
HALF = Fraction(1, 2)


def line(deg, w_inf=ZERO, w_one=ZERO, w_zero=ZERO):
    return ParabolicBundle(
        1, [deg], {"inf": [w_inf], "one": [w_one], "zero": [w_zero]}
    )


class TestBundle:
    def test_validation(self):
        with pytest.raises(ValueError):
            ParabolicBundle(0, [], {p: [] for p in POINTS})
        with pytest.raises(ValueError):
            ParabolicBundle(2, [0], {p: [ZERO, ZERO] for p in POINTS})
        with pytest.raises(ValueError):
            ParabolicBundle(1, [0], {"inf": [ZERO], "one": [ZERO]})
        with pytest.raises(ValueError):
            line(0, w_one=Fraction(1))  # weights live in [0, 1)
        with pytest.raises(ValueError):
            line(0, w_one=Fraction(1, 5))  # denominator incompatible with 2

    def test_branching_exponents(self):
        assert BRANCHING == {"inf": 3, "one": 2, "zero": 2}
        line(0, w_inf=Fraction(2, 3))  # allowed at the order-3 point
        with pytest.raises(ValueError):
            line(0, w_zero=Fraction(2, 3))

    def test_weights_are_canonically_sorted(self):
        third = Fraction(1, 3)
        a = ParabolicBundle(
            2, [0, -1], {"inf": [ZERO, third], "one": [HALF, ZERO], "zero": [ZERO, ZERO]}
        )
        b = ParabolicBundle(
            2, [-1, 0], {"inf": [third, ZERO], "one": [ZERO, HALF], "zero": [ZERO, ZERO]}
        )
        assert a == b
        assert hash(a) == hash(b)

    def test_json_round_trip(self):
        for b in LIB.values():
            assert ParabolicBundle.from_json(b.to_json()) == b
        payload = LIB["s21"].to_json()
        assert payload["weights"]["inf"] == ["2/3", "1/3"]

    def test_json_rejects_bad_payloads(self):
        with pytest.raises(ValueError):
            ParabolicBundle.from_json({"rank": 1})
        with pytest.raises(ValueError):
            ParabolicBundle.from_json(
                {"rank": 1, "degrees": [0], "weights": {"inf": ["x"], "one": ["0"], "zero": ["0"]}}
            )
        with pytest.raises(ValueError):
            ParabolicBundle.from_json([1, 2])


class TestLibrary:
    def test_ranks_match_irreducible_dimensions(self):
        assert {n: b.rank for n, b in LIB.items()} == {
            "s11": S3_RANKS["triv"],
            "s12": S3_RANKS["sgn"],
            "s21": S3_RANKS["std"],
        }

    def test_all_members_have_parabolic_degree_zero(self):
        for b in LIB.values():
            assert par_degree(b) == 0

    def test_members_pairwise_distinct(self):
        names = list(LIB)
        for i, a in enumerate(names):
            for b in names[i + 1 :]:
                assert LIB[a] != LIB[b]


class TestParDegree:
    def test_examples(self):
        assert par_degree(line(-1, ZERO, HALF, HALF)) == 0
        assert par_degree(LIB["s21"]) == -2 + Fraction(2, 3) + Fraction(1, 3) + HALF + HALF

    def test_nonzero(self):
        assert par_degree(line(3, Fraction(1, 3))) == Fraction(10, 3)


class TestTensor:
    def test_unit_object(self):
        for b in LIB.values():
            assert tensor(LIB["s11"], b) == b
            assert tensor(b, LIB["s11"]) == b

    def test_sgn_squares_to_unit_exactly(self):
        assert tensor(LIB["s12"], LIB["s12"]) == LIB["s11"]

    def test_reduction_keeps_weights_in_range(self):
        big = tensor(LIB["s21"], LIB["s21"])
        for p in POINTS:
            assert all(0 <= w < 1 for w in big.weights[p])

    def test_commutative(self):
        for a, b in product(LIB.values(), repeat=2):
            assert tensor(a, b) == tensor(b, a)

    def test_reduction_order_is_immaterial(self):
        # reductions at distinct points only touch the shared degree, so
        # replaying them in reverse point order gives the same bundle
        for a, b in product(LIB.values(), repeat=2):
            degrees = []
            weights = {p: [] for p in POINTS}
            for i in range(a.rank):
                for j in range(b.rank):
                    d = a.degrees[i] + b.degrees[j]
                    for p in reversed(POINTS):
                        w = a.weights[p][i] + b.weights[p][j]
                        while w >= 1:
                            w -= 1
                            d += 1
                        weights[p].append(w)
                    degrees.append(d)
            assert ParabolicBundle(a.rank * b.rank, degrees, weights) == tensor(a, b)

    def test_par_degree_is_bilinear(self):
        for a, b in product(LIB.values(), repeat=2):
            assert par_degree(tensor(a, b)) == 0
        a = line(2, Fraction(1, 3))
        b = ParabolicBundle(
            2, [1, -3], {"inf": [ZERO, ZERO], "one": [HALF, HALF], "zero": [ZERO, ZERO]}
        )
        assert par_degree(tensor(a, b)) == (
            b.rank * par_degree(a) + a.rank * par_degree(b)
        )


class TestDecompose:
    def test_fusion_identities(self):
        assert decompose(tensor(LIB["s12"], LIB["s12"])) == ("s11",)
        assert decompose(tensor(LIB["s12"], LIB["s21"])) == ("s21",)
        assert decompose(tensor(LIB["s21"], LIB["s21"])) == ("s11", "s12", "s21")

    def test_rank_two_product_matches_direct_sum_data(self):
        got = tensor(LIB["s21"], LIB["s21"])
        want = direct_sum(direct_sum(LIB["s21"], LIB["s12"]), LIB["s11"])
        assert got.rank == want.rank
        assert sum(got.degrees) == sum(want.degrees)
        assert got.weights == want.weights

    def test_no_decomposition(self):
        with pytest.raises(NoDecomposition):
            decompose(line(-5))

    def test_ambiguity_is_reported(self):
        twin = {"a": LIB["s11"], "b": line(0)}
        with pytest.raises(AmbiguousDecomposition):
            decompose(LIB["s11"], twin)

    def test_ambiguity_never_fires_on_library_products(self):
        for a, b in product(LIB.values(), repeat=2):
            decompose(tensor(a, b))
        for a, b, c in product(LIB.values(), repeat=3):
            decompose(tensor(tensor(a, b), c))

    def test_associativity_spot_check(self):
        for a, b, c in product(LIB.values(), repeat=3):
            left = decompose(tensor(tensor(a, b), c))
            right = decompose(tensor(a, tensor(b, c)))
            assert left == right


class TestFusion:
    def test_table_matches_character_ring(self):
        table = fusion_table()
        assert len(table) == 9
        for (a, b), names in table.items():
            want = S3_FUSION[(NAME_MAP[a], NAME_MAP[b])]
            assert sorted(NAME_MAP[n] for n in names) == sorted(want)
