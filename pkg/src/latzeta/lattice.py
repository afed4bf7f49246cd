"""Z-lattices in R^r (r <= 4) with exact rational data.

A lattice is carried either by a basis matrix (rows are basis vectors) or by
an exact Gram matrix; the Gram form admits sqrt(3)-style geometry without
leaving Q.  Degree is -log covolume, duality is inverse-transpose (Gram
inverse), and the cohomology counts are log-theta sums

    h0(L) = log sum_{x in L} exp(-pi |x|^2),    h1(L) = h0(dual L),

so h0 - h1 - deg == 0 is exactly Poisson summation and doubles as the
module's global self-test.  Vector enumeration is Fincke-Pohst from a float
Cholesky factor with an exact rational post-filter, so no vector inside the
bound is ever missed or misreported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import EnumerationOverflow, NonConvergence, SingularBasis
from .halfplane import UpperHalfPoint
from .intmat import row_hnf
from .jsonio import frac_to_str, str_to_frac
from .numerics import DEFAULT_CONFIG, NumericsConfig

__all__ = [
    "Lattice",
    "CohomologyReport",
    "covolume",
    "degree",
    "dual",
    "theta_h0",
    "theta_h1",
    "riemann_roch",
    "short_vectors",
    "minkowski_point",
    "scale",
    "direct_sum",
    "hnf_basis",
]

FracMatrix = tuple[tuple[Fraction, ...], ...]


def _as_frac_matrix(rows) -> FracMatrix:
    out = tuple(tuple(Fraction(v) for v in row) for row in rows)
    n = len(out)
    if n == 0 or any(len(row) != n for row in out):
        raise ValueError("matrix must be square and nonempty")
    return out


def _det_frac(m: FracMatrix) -> Fraction:
    # fraction-free not needed at rank <= 4; plain elimination is exact
    n = len(m)
    a = [list(row) for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] * inv
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


def _inv_frac(m: FracMatrix) -> FracMatrix:
    n = len(m)
    a = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularBasis("matrix is singular")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def _mat_mul(a: FracMatrix, b: FracMatrix) -> FracMatrix:
    n, k, m = len(a), len(b), len(b[0])
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)) for i in range(n)
    )


def _transpose(m: FracMatrix) -> FracMatrix:
    return tuple(zip(*m))


def _log_frac(q: Fraction) -> float:
    if q <= 0:
        raise ValueError("log of nonpositive rational")
    return math.log(q.numerator) - math.log(q.denominator)


@dataclass(frozen=True)
class Lattice:
    """Full-rank Z-lattice, rank 1..4, with exact rational Gram matrix.

    Construct via from_basis (rows are basis vectors) or from_gram.  The
    basis is kept when given so duality can return honest coordinates;
    Gram-only lattices stay Gram-only through every operation.
    """

    rank: int
    gram: FracMatrix
    basis: FracMatrix | None = None

    @staticmethod
    def from_basis(rows) -> "Lattice":
        b = _as_frac_matrix(rows)
        r = len(b)
        if not 1 <= r <= 4:
            raise ValueError(f"rank must be in 1..4, got {r}")
        if _det_frac(b) == 0:
            raise SingularBasis("basis rows are linearly dependent")
        g = _mat_mul(b, _transpose(b))
        return Lattice(rank=r, gram=g, basis=b)

    @staticmethod
    def from_gram(rows) -> "Lattice":
        g = _as_frac_matrix(rows)
        r = len(g)
        if not 1 <= r <= 4:
            raise ValueError(f"rank must be in 1..4, got {r}")
        for i in range(r):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        # Sylvester: every leading principal minor positive
        for k in range(1, r + 1):
            minor = _det_frac(tuple(row[:k] for row in g[:k]))
            if minor <= 0:
                raise SingularBasis("Gram matrix is not positive definite")
        return Lattice(rank=r, gram=g)

    @staticmethod
    def from_json(data: dict) -> "Lattice":
        r = data["rank"]
        if "basis" in data:
            rows = [[str_to_frac(v) for v in row] for row in data["basis"]]
            lat = Lattice.from_basis(rows)
        elif "gram" in data:
            rows = [[str_to_frac(v) for v in row] for row in data["gram"]]
            lat = Lattice.from_gram(rows)
        else:
            raise ValueError("lattice JSON needs a 'basis' or 'gram' key")
        if lat.rank != r:
            raise ValueError(f"declared rank {r} does not match matrix size {lat.rank}")
        return lat

    def to_json(self) -> dict:
        if self.basis is not None:
            return {
                "rank": self.rank,
                "basis": [[frac_to_str(v) for v in row] for row in self.basis],
            }
        return {
            "rank": self.rank,
            "gram": [[frac_to_str(v) for v in row] for row in self.gram],
        }

    def gram_det(self) -> Fraction:
        return _det_frac(self.gram)


@dataclass(frozen=True)
class CohomologyReport:
    h0: float
    h1: float
    degree: float
    rr_defect: float


def covolume(L: Lattice) -> float:
    d = L.gram_det()
    if d <= 0:
        raise SingularBasis("Gram determinant must be positive")
    return math.exp(0.5 * _log_frac(d))


def degree(L: Lattice) -> float:
    d = L.gram_det()
    if d <= 0:
        raise SingularBasis("Gram determinant must be positive")
    return -0.5 * _log_frac(d)


def dual(L: Lattice) -> Lattice:
    if L.basis is not None:
        b = _transpose(_inv_frac(L.basis))
        return Lattice.from_basis(b)
    return Lattice.from_gram(_inv_frac(L.gram))


def _enumerate_classes(
    L: Lattice, norm_bound, config: NumericsConfig
) -> list[tuple[tuple[int, ...], Fraction]]:
    """All +-classes of nonzero x with q(x) <= norm_bound, with exact norms.

    Candidates come from a float Cholesky factor with slack; membership is
    settled by the exact rational quadratic form, so float error can only
    cost a handful of wasted candidates, never a wrong answer.
    """
    bound = Fraction(norm_bound)
    if bound <= 0:
        raise ValueError("norm_bound must be positive")
    r = L.rank
    g = np.array([[float(v) for v in row] for row in L.gram], dtype=float)
    try:
        chol = np.linalg.cholesky(g)
    except np.linalg.LinAlgError as exc:
        raise SingularBasis("Gram matrix is numerically singular") from exc
    R = chol.T  # upper triangular, q(x) = |R x|^2
    slack = float(bound) * (1.0 + 1e-9) + 1e-9
    gram = L.gram
    budget = config.vector_budget
    visited = 0
    out: list[tuple[tuple[int, ...], Fraction]] = []

    def exact_norm(x: tuple[int, ...]) -> Fraction:
        acc = Fraction(0)
        for i in range(r):
            if x[i]:
                row = gram[i]
                acc += x[i] * sum(row[j] * x[j] for j in range(r) if x[j])
        return acc

    # recurse from the last coordinate down; top-level sign fixed to kill -x
    def descend(i: int, coords: list[int], remaining: float, center_shift: np.ndarray):
        nonlocal visited
        if i < 0:
            x = tuple(coords[::-1])
            if any(x):
                q = exact_norm(x)
                if q <= bound:
                    # canonical rep: first nonzero coordinate positive
                    for v in x:
                        if v:
                            if v < 0:
                                x = tuple(-c for c in x)
                            break
                    out.append((x, q))
            return
        rii = R[i, i]
        c = -center_shift[i] / rii
        half_width = math.sqrt(max(remaining, 0.0)) / abs(rii)
        lo = math.ceil(c - half_width - 1e-9)
        hi = math.floor(c + half_width + 1e-9)
        if i == r - 1:
            lo = max(lo, 0)  # +-symmetry: leading coordinate nonnegative
        for xi in range(lo, hi + 1):
            visited += 1
            if visited > budget:
                raise EnumerationOverflow(
                    f"vector enumeration exceeded budget {budget}"
                )
            t = rii * xi + center_shift[i]
            rem2 = remaining - t * t
            if rem2 < -1e-9:
                continue
            if i == 0:
                descend(-1, coords + [xi], rem2, center_shift)
            else:
                new_shift = center_shift + xi * R[:, i]
                descend(i - 1, coords + [xi], max(rem2, 0.0), new_shift)

    descend(r - 1, [], slack, np.zeros(r))
    # drop duplicates from the x_r = 0 hyperplane (both orientations hit it)
    seen: set[tuple[int, ...]] = set()
    uniq: list[tuple[tuple[int, ...], Fraction]] = []
    for x, q in out:
        if x not in seen:
            seen.add(x)
            uniq.append((x, q))
    uniq.sort(key=lambda p: (p[1], tuple(-c for c in p[0])))
    return uniq


def short_vectors(
    L: Lattice, norm_bound, config: NumericsConfig = DEFAULT_CONFIG
) -> list[tuple[int, ...]]:
    """Nonzero vectors with squared length <= norm_bound, one per +- pair."""
    return [x for x, _ in _enumerate_classes(L, norm_bound, config)]


def theta_h0(L: Lattice, config: NumericsConfig = DEFAULT_CONFIG) -> float:
    """log sum_{x in L} exp(-pi |x|^2), truncated with a verified tail.

    Enumeration radius starts where a single point's weight drops below
    tolerance and grows until the outermost unit shell contributes under
    abs_tol/10 -- an empirical stand-in for the Gaussian tail bound that
    stays honest for dense (small-covolume) lattices.
    """
    tol = config.abs_tol
    q_max = max(1.0, -math.log(tol) / math.pi)
    for _ in range(64):
        pairs = _enumerate_classes(L, Fraction(q_max + 1.0), config)
        shell = math.fsum(
            2.0 * math.exp(-math.pi * float(q)) for _, q in pairs if float(q) > q_max
        )
        if shell < tol / 10.0:
            total = math.fsum(2.0 * math.exp(-math.pi * float(q)) for _, q in pairs)
            return math.log1p(total)
        q_max += 1.0
    raise NonConvergence("theta shell check failed to stabilize")


def theta_h1(L: Lattice, config: NumericsConfig = DEFAULT_CONFIG) -> float:
    return theta_h0(dual(L), config)


def riemann_roch(L: Lattice, config: NumericsConfig = DEFAULT_CONFIG) -> CohomologyReport:
    h0 = theta_h0(L, config)
    h1 = theta_h1(L, config)
    deg = degree(L)
    return CohomologyReport(h0=h0, h1=h1, degree=deg, rr_defect=h0 - h1 - deg)


def minkowski_point(L: Lattice) -> tuple[UpperHalfPoint, float]:
    """Reduce a rank-2 lattice to its shape point in the fundamental domain.

    Exact Gauss reduction on the Gram matrix; returns (z, t) with z = x + iy,
    |x| <= 1/2, x^2 + y^2 >= 1, and t = det^{1/4} the similarity scale to a
    covolume-1 lattice.  Gram data cannot see orientation, so x >= 0 always
    (ties on the boundary land at +1/2).
    """
    if L.rank != 2:
        raise ValueError("minkowski_point needs a rank-2 lattice")
    a = L.gram[0][0]
    b = L.gram[0][1]
    c = L.gram[1][1]
    for _ in range(10000):
        k = round(Fraction(b, a))
        if k:
            c = c - 2 * k * b + k * k * a
            b = b - k * a
        if c < a:
            a, b, c = c, -b, a
            continue
        if 2 * abs(b) <= a:
            break
    else:
        raise NonConvergence("Gauss reduction did not terminate")
    det = a * c - b * b
    x = float(abs(Fraction(b, a)))
    y = math.exp(0.5 * _log_frac(det) - _log_frac(a))
    t = math.exp(0.25 * _log_frac(det))
    return UpperHalfPoint(x, y), t


def scale(L: Lattice, t) -> Lattice:
    """The lattice t*L (every vector multiplied by t > 0)."""
    t = Fraction(t)
    if t <= 0:
        raise ValueError("scale factor must be positive")
    if L.basis is not None:
        return Lattice.from_basis(tuple(tuple(t * v for v in row) for row in L.basis))
    t2 = t * t
    return Lattice.from_gram(tuple(tuple(t2 * v for v in row) for row in L.gram))


def direct_sum(L1: Lattice, L2: Lattice) -> Lattice:
    """Orthogonal direct sum; theta factorizes so h0 adds."""
    r = L1.rank + L2.rank
    if r > 4:
        raise ValueError("direct sum exceeds the supported rank 4")
    if L1.basis is not None and L2.basis is not None:
        z1 = (Fraction(0),) * L2.rank
        z2 = (Fraction(0),) * L1.rank
        rows = [row + z1 for row in L1.basis] + [z2 + row for row in L2.basis]
        return Lattice.from_basis(rows)
    z1 = (Fraction(0),) * L2.rank
    z2 = (Fraction(0),) * L1.rank
    rows = [row + z1 for row in L1.gram] + [z2 + row for row in L2.gram]
    return Lattice.from_gram(rows)


def hnf_basis(L: Lattice) -> FracMatrix:
    """Canonical basis via scaled-integer Hermite normal form.

    Two basis-backed lattices are equal as subsets of R^r iff this agrees.
    """
    if L.basis is None:
        raise ValueError("hnf_basis needs a basis-backed lattice")
    den = 1
    for row in L.basis:
        for v in row:
            den = den * v.denominator // math.gcd(den, v.denominator)
    m = [[int(v * den) for v in row] for row in L.basis]
    h = row_hnf(m)
    return tuple(tuple(Fraction(v, den) for v in row) for row in h)
