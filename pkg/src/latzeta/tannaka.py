"""Exact tensor calculus of parabolic bundles on the projective line.

A bundle carries a splitting type (one integer degree per line-bundle
summand) and, for each of the three marked points (infinity, 1, 0), a
multiset of rational weights in [0, 1).  The filtration's pairing of
summands with weights is deliberately not tracked: products and
decompositions only ever compare total degree and per-point weight
multisets, which is the level the fusion computations live on.

Tensor products form all summand pairs, add degrees and weights, then
reduce each pair independently: every per-point weight that reaches 1 is
lowered by 1 and the pair's degree raised by 1.  Reduction can leave a
different splitting type than a hand-balanced direct sum of library
members, so decomposition matches on total degree, never on the
splitting multiset itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product

from .errors import AmbiguousDecomposition, NoDecomposition

__all__ = [
    "POINTS",
    "BRANCHING",
    "ParabolicBundle",
    "s3_library",
    "par_degree",
    "tensor",
    "direct_sum",
    "decompose",
    "fusion_table",
]

POINTS = ("inf", "one", "zero")
BRANCHING = {"inf": 3, "one": 2, "zero": 2}


def _sorted_weights(ws) -> tuple[Fraction, ...]:
    return tuple(sorted((Fraction(w) for w in ws), reverse=True))


@dataclass(frozen=True)
class ParabolicBundle:
    """Splitting type plus per-point weight multisets (order-insensitive)."""

    rank: int
    degrees: tuple[int, ...]
    weights: dict[str, tuple[Fraction, ...]]

    def __init__(self, rank, degrees, weights):
        rank = int(rank)
        if rank < 1:
            raise ValueError("rank must be a positive integer")
        degrees = tuple(int(d) for d in degrees)
        if len(degrees) != rank:
            raise ValueError("need exactly one degree per summand")
        table = {}
        for point in POINTS:
            if point not in weights:
                raise ValueError(f"missing weights for point {point!r}")
            ws = _sorted_weights(weights[point])
            if len(ws) != rank:
                raise ValueError(f"need exactly {rank} weights at {point!r}")
            for w in ws:
                if not (0 <= w < 1):
                    raise ValueError("weights must lie in [0, 1)")
                if (w * BRANCHING[point]).denominator != 1:
                    raise ValueError(
                        f"weight {w} at {point!r} is not compatible with "
                        f"branching exponent {BRANCHING[point]}"
                    )
            table[point] = ws
        if set(weights) - set(POINTS):
            raise ValueError(f"unknown marked points {set(weights) - set(POINTS)}")
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "degrees", tuple(sorted(degrees, reverse=True)))
        object.__setattr__(self, "weights", table)

    def __eq__(self, other):
        if not isinstance(other, ParabolicBundle):
            return NotImplemented
        return (
            self.rank == other.rank
            and self.degrees == other.degrees
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.rank, self.degrees, tuple(self.weights[p] for p in POINTS)))

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "degrees": list(self.degrees),
            "weights": {
                p: [str(w) for w in self.weights[p]] for p in POINTS
            },
        }

    @classmethod
    def from_json(cls, data) -> "ParabolicBundle":
        if not isinstance(data, dict):
            raise ValueError("bundle payload must be an object")
        missing = {"rank", "degrees", "weights"} - set(data)
        if missing:
            raise ValueError(f"bundle payload missing fields {sorted(missing)}")
        if not isinstance(data["weights"], dict):
            raise ValueError("weights must map point names to weight lists")
        try:
            weights = {
                p: [Fraction(w) for w in ws] for p, ws in data["weights"].items()
            }
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise ValueError(f"bad weight entry: {exc}") from None
        return cls(data["rank"], data["degrees"], weights)


def s3_library() -> dict[str, ParabolicBundle]:
    """The three generators whose fusion realizes the order-6 symmetric group."""
    zero = Fraction(0)
    half = Fraction(1, 2)
    return {
        "s11": ParabolicBundle(1, [0], {"inf": [zero], "one": [zero], "zero": [zero]}),
        "s12": ParabolicBundle(1, [-1], {"inf": [zero], "one": [half], "zero": [half]}),
        "s21": ParabolicBundle(
            2,
            [-1, -1],
            {
                "inf": [Fraction(2, 3), Fraction(1, 3)],
                "one": [half, zero],
                "zero": [half, zero],
            },
        ),
    }


def par_degree(bundle: ParabolicBundle) -> Fraction:
    """Ordinary degree plus the sum of all parabolic weights, exact."""
    total = Fraction(sum(bundle.degrees))
    for point in POINTS:
        total += sum(bundle.weights[point])
    return total


def tensor(b1: ParabolicBundle, b2: ParabolicBundle) -> ParabolicBundle:
    """All summand pairs, degrees and weights added, weights reduced mod 1.

    Each unit subtracted from a pair's weight at some point raises that
    pair's degree by 1, so par_degree adds across the factors slotwise.
    """
    degrees = []
    weights: dict[str, list[Fraction]] = {p: [] for p in POINTS}
    for i, j in product(range(b1.rank), range(b2.rank)):
        d = b1.degrees[i] + b2.degrees[j]
        for point in POINTS:
            w = b1.weights[point][i] + b2.weights[point][j]
            while w >= 1:
                w -= 1
                d += 1
            weights[point].append(w)
        degrees.append(d)
    return ParabolicBundle(b1.rank * b2.rank, degrees, weights)


def direct_sum(b1: ParabolicBundle, b2: ParabolicBundle) -> ParabolicBundle:
    return ParabolicBundle(
        b1.rank + b2.rank,
        b1.degrees + b2.degrees,
        {p: b1.weights[p] + b2.weights[p] for p in POINTS},
    )


def _matching_key(bundle: ParabolicBundle):
    return (
        bundle.rank,
        sum(bundle.degrees),
        tuple(bundle.weights[p] for p in POINTS),
    )


def decompose(
    bundle: ParabolicBundle, library: dict[str, ParabolicBundle] | None = None
) -> tuple[str, ...]:
    """Unique multiset of library names matching the bundle's data.

    Exhaustive search over name multisets whose ranks sum to rank(bundle);
    a match requires equal total degree and equal per-point weight
    multisets.  Zero matches raise NoDecomposition, two or more raise
    AmbiguousDecomposition with all candidates listed.
    """
    if library is None:
        library = s3_library()
    target = _matching_key(bundle)
    names = sorted(library)
    max_parts = bundle.rank // min(library[n].rank for n in names)
    matches = []
    for size in range(1, max_parts + 1):
        for combo in combinations_with_replacement(names, size):
            if sum(library[n].rank for n in combo) != bundle.rank:
                continue
            acc = library[combo[0]]
            for name in combo[1:]:
                acc = direct_sum(acc, library[name])
            if _matching_key(acc) == target:
                matches.append(combo)
    if not matches:
        raise NoDecomposition(
            f"no multiset from {names} matches rank {bundle.rank}, "
            f"total degree {sum(bundle.degrees)}"
        )
    if len(matches) > 1:
        raise AmbiguousDecomposition(f"multiple matches: {matches}")
    return matches[0]


def fusion_table(
    library: dict[str, ParabolicBundle] | None = None,
) -> dict[tuple[str, str], tuple[str, ...]]:
    """Pairwise tensor-decompose table over the library."""
    if library is None:
        library = s3_library()
    table = {}
    for a in sorted(library):
        for b in sorted(library):
            table[(a, b)] = decompose(tensor(library[a], library[b]), library)
    return table
