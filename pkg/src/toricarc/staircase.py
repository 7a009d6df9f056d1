"""Staircase triangulation of Delta_n x Delta_{k-1} and its path bijections.

Lattice paths run from (1, k) to (n+1, 1): right moves A_1..A_n and down
moves B_1..B_{k-1}.  The path of phi places the i-th right move at height
phi(i).  Vertices of the associated simplex are the visited grid points
omega_{ij} = e_i + f_j, living on the hyperplane pair sum(alpha) = sum(beta)
inside R^{n+1} x R^k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb

from .exactla import det_bareiss, solve_exact
from .fan import Chart, NonincreasingMap, chart_basis, dual_cone_rays, enumerate_phis
from .lattice import GradingContext


@dataclass(frozen=True)
class LatticePath:
    """Shuffle word over A_1..A_n, B_1..B_{k-1}; letters ("A", i)/("B", j)."""

    n: int
    k: int
    word: tuple

    def __post_init__(self):
        a_seen = [i for kind, i in self.word if kind == "A"]
        b_seen = [j for kind, j in self.word if kind == "B"]
        if a_seen != list(range(1, self.n + 1)) or b_seen != list(range(1, self.k)):
            raise ValueError("word is not a shuffle of A_1..A_n with B_1..B_{k-1}")


def phi_to_path(k: int, phi: NonincreasingMap) -> LatticePath:
    n = phi.n
    word = []
    b_index = 1
    for height in range(k, 0, -1):
        for i in range(1, n + 1):
            if phi[i] == height:
                word.append(("A", i))
        if height > 1:
            word.append(("B", b_index))
            b_index += 1
    return LatticePath(n, k, tuple(word))


def path_to_phi(path: LatticePath) -> NonincreasingMap:
    height = path.k
    values = [0] * path.n
    for kind, idx in path.word:
        if kind == "A":
            values[idx - 1] = height
        else:
            height -= 1
    return NonincreasingMap(tuple(values))


def simplex_of_path(path: LatticePath) -> frozenset:
    """The n+k grid points omega_{ij} visited by the path."""
    i, j = 1, path.k
    points = [(i, j)]
    for kind, _ in path.word:
        if kind == "A":
            i += 1
        else:
            j -= 1
        points.append((i, j))
    assert len(points) == path.n + path.k
    return frozenset(points)


@dataclass(frozen=True)
class SignedInequality:
    """alpha_1+..+alpha_i <= / >= beta_k+..+beta_j, from one word pair."""

    i: int
    j: int  # lower summation bound on the beta side
    sign: str  # "le" when A_i precedes the paired B, else "ge"

    def holds(self, alphas, betas, strict: bool = False) -> bool:
        lhs = sum(alphas[: self.i])
        rhs = sum(betas[self.j - 1 :])
        if strict:
            return lhs < rhs if self.sign == "le" else lhs > rhs
        return lhs <= rhs if self.sign == "le" else lhs >= rhs

    def is_tight(self, alphas, betas) -> bool:
        return sum(alphas[: self.i]) == sum(betas[self.j - 1 :])


def inequality_description(path: LatticePath) -> list:
    """One signed inequality per (A_i, B_j) pair of the shuffle word.

    The pair (A_i, B_j) corresponds to the separating class c_{i, k-j}:
    A_i preceding B_j gives the pairing inequality <., c_{i,k-j}> >= 0,
    which reads alpha_1+..+alpha_i <= beta_k+..+beta_{k-j+1}.
    """
    positions = {letter: pos for pos, letter in enumerate(path.word)}
    out = []
    for i in range(1, path.n + 1):
        for j in range(1, path.k):
            sign = "le" if positions[("A", i)] < positions[("B", j)] else "ge"
            out.append(SignedInequality(i, path.k - j + 1, sign))
    return out


def pairing_with_c(ctx: GradingContext, alphas, betas, i: int, j: int):
    """<(alpha, beta), c_{ij}> = beta_k+..+beta_{j+1} - alpha_1-..-alpha_i."""
    return sum(betas[j:]) - sum(alphas[:i])


# ---------------------------------------------------------------------------
# Exact geometry of one simplex
# ---------------------------------------------------------------------------

def _point_coords(point, n, k):
    """omega_{ij} as a 0/1 vector of length (n+1) + k."""
    i, j = point
    vec = [0] * (n + 1 + k)
    vec[i - 1] = 1
    vec[n + 1 + j - 1] = 1
    return vec


def simplex_volume_is_unimodular(points: frozenset, n: int, k: int) -> bool:
    """Normalized volume 1 test inside the lattice of the hyperplane pair.

    Dropping the alpha_{n+1} and beta_k coordinates identifies that lattice
    with Z^{n+k-1}; the simplex is unimodular iff the difference matrix has
    determinant +-1 there.
    """
    pts = sorted(points)
    vecs = [_point_coords(p, n, k) for p in pts]
    base = vecs[0]
    diffs = [[a - b for a, b in zip(v, base)] for v in vecs[1:]]
    proj = [row[:n] + row[n + 1 : n + 1 + k - 1] for row in diffs]
    if len(proj) != n + k - 1:
        return False
    return det_bareiss(proj) in (1, -1)


def point_in_simplex(points: frozenset, alphas, betas) -> bool:
    """Exact barycentric membership test (closed simplex)."""
    pts = sorted(points)
    n = len(alphas) - 1
    k = len(betas)
    cols = [_point_coords(p, n, k) for p in pts]
    target = [Fraction(a) for a in alphas] + [Fraction(b) for b in betas]
    m = len(pts)
    rows = [[Fraction(cols[c][r]) for c in range(m)] for r in range(n + 1 + k)]
    # Solve the overdetermined system exactly: use the first m independent rows.
    square, rhs, used = [], [], []
    for r in range(n + 1 + k):
        trial = square + [rows[r]]
        if _rank(trial) == len(trial):
            square.append(rows[r])
            rhs.append(target[r])
            used.append(r)
        if len(square) == m:
            break
    sol = solve_exact_frac(square, rhs)
    if sol is None:
        return False
    for r in range(n + 1 + k):
        if sum(rows[r][c] * sol[c] for c in range(m)) != target[r]:
            return False
    return all(s >= 0 for s in sol) and sum(sol) == 1


def _rank(rows) -> int:
    work = [list(r) for r in rows]
    rank = 0
    ncols = len(work[0]) if work else 0
    col = 0
    while rank < len(work) and col < ncols:
        piv = next((r for r in range(rank, len(work)) if work[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        work[rank], work[piv] = work[piv], work[rank]
        scale = work[rank][col]
        work[rank] = [a / scale for a in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col] != 0:
                f = work[r][col]
                work[r] = [a - f * b for a, b in zip(work[r], work[rank])]
        rank += 1
        col += 1
    return rank


def solve_exact_frac(matrix, rhs):
    size = len(rhs)
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    for col in range(size):
        piv = next((r for r in range(col, size) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        scale = aug[col][col]
        aug[col] = [a / scale for a in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][-1] for r in range(size)]


# ---------------------------------------------------------------------------
# Brute-force volume oracle (Ehrhart leading coefficient)
# ---------------------------------------------------------------------------

def _count_dilated_simplex(dim: int, t: int) -> int:
    """Lattice points of t * Delta_dim by exhaustive enumeration."""
    count = 0
    stack = [(0, t)]
    # enumerate weak compositions of t into dim+1 parts without itertools
    def rec(slot: int, remaining: int) -> int:
        if slot == dim:
            return 1
        total = 0
        for v in range(remaining + 1):
            total += rec(slot + 1, remaining - v)
        return total

    return rec(0, t)


def normalized_volume_oracle(n: int, k: int) -> int:
    """Normalized volume of Delta_n x Delta_{k-1} via exact interpolation.

    Counts lattice points of the dilations t*Pi by brute force for
    t = 0..n+k-1, interpolates the Ehrhart polynomial with finite
    differences, and returns (n+k-1)! times the leading coefficient.
    """
    dim = n + k - 1
    counts = [
        _count_dilated_simplex(n, t) * _count_dilated_simplex(k - 1, t)
        for t in range(dim + 1)
    ]
    # Leading coefficient * dim! equals the dim-th finite difference.
    diffs = [Fraction(c) for c in counts]
    for _ in range(dim):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    lead = diffs[0]
    assert lead.denominator == 1
    return int(lead)


# ---------------------------------------------------------------------------
# Sampling + full triangulation check
# ---------------------------------------------------------------------------

def _sample_points(n: int, k: int, count: int):
    """Deterministic rational interior points of Pi with generic coordinates."""
    samples = []
    seed = 0
    while len(samples) < count:
        seed += 1
        q = 997 + seed * 2  # odd denominators, no structure
        raw_a = [((seed * 37 + i * 61) % q) + 1 for i in range(n + 1)]
        raw_b = [((seed * 53 + j * 71) % q) + 1 for j in range(k)]
        ta, tb = sum(raw_a), sum(raw_b)
        alphas = [Fraction(a, ta) for a in raw_a]
        betas = [Fraction(b, tb) for b in raw_b]
        partial_a = {sum(alphas[:i]) for i in range(1, n + 1)}
        partial_b = {sum(betas[j:]) for j in range(1, k)}
        if len(partial_a) == n and len(partial_b) == k - 1 and not partial_a & partial_b:
            samples.append((tuple(alphas), tuple(betas)))
    return samples


def triangulation_check(n: int, k: int, samples: int = 40) -> dict:
    """Full staircase-triangulation report; raises nothing, reports failures."""
    ctx = GradingContext(n, k)
    phis = enumerate_phis(n, k)
    report = {
        "n": n,
        "k": k,
        "simplex_count": len(phis),
        "expected_count": comb(n + k - 1, n),
        "failures": [],
    }
    simplices = {}
    for phi in phis:
        path = phi_to_path(k, phi)
        if path_to_phi(path) != phi:
            report["failures"].append(("roundtrip", phi.values))
        simplex = simplex_of_path(path)
        simplices[phi.values] = simplex
        if not simplex_volume_is_unimodular(simplex, n, k):
            report["failures"].append(("unimodular", phi.values))
        chart = chart_basis(ctx, phi)
        rays = dual_cone_rays(chart)
        ray_points = set()
        for alphas, betas in rays:
            support_a = [i + 1 for i, a in enumerate(alphas) if a != 0]
            support_b = [j + 1 for j, b in enumerate(betas) if b != 0]
            if (
                len(support_a) != 1
                or len(support_b) != 1
                or alphas[support_a[0] - 1] != 1
                or betas[support_b[0] - 1] != 1
            ):
                report["failures"].append(("ray_not_vertex", phi.values))
                break
            ray_points.add((support_a[0], support_b[0]))
        else:
            if ray_points != set(simplex):
                report["failures"].append(("duality", phi.values))
    if report["simplex_count"] != report["expected_count"]:
        report["failures"].append(("count", report["simplex_count"]))
    # coverage: generic points lie in exactly one simplex
    for alphas, betas in _sample_points(n, k, samples):
        containing = [
            values
            for values, simplex in sorted(simplices.items())
            if point_in_simplex(simplex, alphas, betas)
        ]
        if len(containing) != 1:
            report["failures"].append(
                ("coverage", [str(a) for a in alphas], [str(b) for b in betas], containing)
            )
    report["volume_sum"] = len(phis)  # each simplex has normalized volume 1
    report["ok"] = not report["failures"]
    return report
