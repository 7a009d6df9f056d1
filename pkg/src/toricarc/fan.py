"""Charts, dual cones and the special-fiber component model.

The affine charts of the toric family are indexed by nonincreasing maps
phi: [1,n] -> [1,k]; each chart carries an ordered lattice basis S_phi
built from boundary classes.  For n <= 2 the compactified charts extend
the range of phi down to 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from .exactla import det_bareiss, invert_unimodular, solve_exact
from .lattice import GradingContext, LatticeElement


@dataclass(frozen=True)
class NonincreasingMap:
    values: tuple

    def __post_init__(self):
        vals = self.values
        if any(vals[i] < vals[i + 1] for i in range(len(vals) - 1)):
            raise ValueError(f"phi {vals} is not nonincreasing")

    def __getitem__(self, i: int) -> int:
        """phi(i) with 1-based i."""
        return self.values[i - 1]

    @property
    def n(self) -> int:
        return len(self.values)


def enumerate_phis(n: int, k: int, lowest: int = 1) -> list[NonincreasingMap]:
    """All nonincreasing maps [1,n] -> [lowest,k], lexicographically sorted."""
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    out = []
    for combo in combinations_with_replacement(range(lowest, k + 1), n):
        out.append(NonincreasingMap(tuple(sorted(combo, reverse=True))))
    out.sort(key=lambda p: p.values)
    return out


@dataclass
class Chart:
    """An affine chart: phi, the ordered basis S_phi, and coordinate labels."""

    ctx: GradingContext
    phi: NonincreasingMap
    basis: list
    labels: list
    sorts: list  # parallel description of how each generator arose

    def matrix(self):
        """Integer matrix of the H-parts of the basis (rows = generators)."""
        return [list(e.coeffs[1:]) for e in self.basis]


def _label_c(ctx: GradingContext, i: int, j: int, inverse: bool) -> str:
    """Display label for +-c_{ij}, applying the X-boundary conventions."""
    n, k = ctx.n, ctx.k
    suffix = "^-1" if inverse else ""
    if 1 <= j <= k - 1:
        return f"C_{i}_{j}{suffix}"
    if j == k:
        # c_{1k} = -x_1, so +c_{1k} displays as X1^-1 and -c_{1k} as X1.
        return "X1" if inverse else "X1^-1"
    # j == 0: c_{i,0} = x_{i+1} + ... + x_{n+1}.
    factors = [f"X{a}{suffix}" for a in range(i + 1, n + 2)]
    return "*".join(factors)


def chart_basis(ctx: GradingContext, phi: NonincreasingMap) -> Chart:
    """Build S_phi with the stated four sorts of generators.

    Generator order: v's not in the image, then x's, then the -c's, then
    the +c's, each by ascending index.  Values phi(i) = 0 mark compactified
    charts; for those the +c_{i,-1} generator is absent.
    """
    n, k = ctx.n, ctx.k
    if phi.n != n:
        raise ValueError("phi length must equal n")
    if phi[1] > k or phi[n] < 0:
        raise ValueError("phi out of range")
    image = set(phi.values)
    basis, labels, sorts = [], [], []
    for j in range(1, k + 1):
        if j not in image:
            basis.append(ctx.v(j))
            labels.append(f"V{j}")
            sorts.append(("v", j))
    for i in range(1, n):
        if phi[i] == phi[i + 1]:
            basis.append(ctx.x(i + 1))
            labels.append(f"X{i + 1}")
            sorts.append(("x", i + 1))
    for i in range(1, n + 1):
        if i == 1 or phi[i - 1] > phi[i]:
            basis.append(-ctx.c(i, phi[i]))
            labels.append(_label_c(ctx, i, phi[i], inverse=True))
            sorts.append(("c_inv", i, phi[i]))
    for i in range(1, n + 1):
        if phi[i] == 0:
            continue  # compactified chart: no c_{i,-1} generator
        if i == n or phi[i + 1] < phi[i]:
            basis.append(ctx.c(i, phi[i] - 1))
            labels.append(_label_c(ctx, i, phi[i] - 1, inverse=False))
            sorts.append(("c", i, phi[i] - 1))
    chart = Chart(ctx, phi, basis, labels, sorts)
    if len(basis) != n + k:
        raise AssertionError(f"|S_phi| = {len(basis)} != n+k for {phi}")
    return chart


def is_unimodular(chart_or_vectors) -> bool:
    """Determinant +-1 of the H-part coefficient matrix."""
    if isinstance(chart_or_vectors, Chart):
        m = chart_or_vectors.matrix()
    else:
        m = [list(e.coeffs[1:]) for e in chart_or_vectors]
    if len(m) != len(m[0]):
        return False
    return det_bareiss(m) in (1, -1)


def express_nonneg(chart: Chart, e: LatticeElement):
    """Coefficients of e over S_phi if all are nonnegative, else None.

    None is the NotInCone signal.  The chart is unimodular, so the exact
    solve always produces integers.
    """
    m = chart.matrix()
    rhs = list(e.coeffs[1:])
    # solve coeffs @ m = rhs, i.e. m^T x = rhs
    mt = [[m[r][c] for r in range(len(m))] for c in range(len(m[0]))]
    sol = solve_exact(mt, rhs)
    if sol is None:
        raise ValueError("chart matrix is singular")
    coeffs = []
    for val in sol:
        if val.denominator != 1:
            raise AssertionError("non-integer coefficient on a unimodular chart")
        coeffs.append(int(val))
    if any(c < 0 for c in coeffs):
        return None
    return tuple(coeffs)


def dual_cone_rays(chart: Chart) -> list:
    """Dual basis of S_phi in the (alpha, beta)-hyperplane coordinates.

    Each ray is ((alpha_1..alpha_{n+1}), (beta_1..beta_k)) with
    sum(alpha) = sum(beta); the rays pair with S_phi as the identity.
    """
    ctx = chart.ctx
    n, k = ctx.n, ctx.k
    m = chart.matrix()
    inv = invert_unimodular(m)
    rays = []
    for b in range(n + k):
        lam = [inv[r][b] for r in range(n + k)]  # values on (x_1..x_n, v_1..v_k)
        alphas = lam[:n]
        betas = lam[n:]
        alpha_last = sum(betas) - sum(alphas)
        rays.append((tuple(alphas + [alpha_last]), tuple(betas)))
    return rays


# ---------------------------------------------------------------------------
# Special fiber component model (n <= 2)
# ---------------------------------------------------------------------------

AFFINE_PLANE = "AffinePlane"
AFF_X_PROJ = "AffineLinexProj"
PROJ_X_PROJ = "ProjxProj"
BLOWUP = "BlowUp"
AFFINE_LINE = "AffineLine"
PROJ_LINE = "ProjLine"


@dataclass
class ComponentModel:
    index: tuple
    type_tag: str
    equations: list
    compactified: bool = False


@dataclass
class SpecialFiber:
    n: int
    k: int
    compactified: bool
    components: list
    adjacency: dict = field(default_factory=dict)
    boundary: list = field(default_factory=list)

    def component(self, index) -> ComponentModel:
        for comp in self.components:
            if comp.index == index:
                return comp
        raise KeyError(index)

    def counts_by_type(self) -> dict:
        out: dict = {}
        for comp in self.components:
            out[comp.type_tag] = out.get(comp.type_tag, 0) + 1
        return dict(sorted(out.items()))


def _eqs_n1(k: int, i: int) -> list:
    if i == k:
        return [f"V{r}" for r in range(1, k)] + [f"C_1_{k - 1}" if k > 1 else "X2"]
    if i == 0:
        return ["s1(0)"] + [f"V{r}" for r in range(2, k + 1)]
    return (
        [f"V{r}" for r in range(1, i)]
        + [f"s1({i})", f"s2({i})"]
        + [f"V{r}" for r in range(i + 2, k + 1)]
    )


def _eqs_n2(k: int, i: int, j: int) -> list:
    """Complete-intersection equations of the off-diagonal components."""
    vs = lambda lo, hi: [f"V{r}" for r in range(hi, lo - 1, -1)]
    if i == j:
        if i == k:
            return [f"C_2_{k - 1}" if k > 1 else "X3"] + vs(1, k)
        return [f"C_1_{i}^-1"] + vs(1, k)
    if i < k and j > 0:
        if i - j > 1:
            return (
                vs(i + 2, k)
                + [f"f1*s1({i})", f"f1*s2({i})"]
                + vs(j + 2, i - 1)
                + [f"f2*s1({j})", f"f2*s2({j})"]
                + vs(1, j - 1)
            )
        # j == i - 1: the diagonal-adjacent case uses the section s_i
        if i == 1:
            return vs(3, k) + ["f1*s1(1)", "s(1)"]
        return vs(i + 2, k) + [f"f1*s1({i})", f"s({i})", f"f2*s2({i - 1})"] + vs(1, i - 2)
    if i == k:
        if 0 < j < k - 1:
            return (
                [f"C_1_{k - 1}"]
                + vs(j + 2, k - 1)
                + [f"f2*s1({j})", f"f2*s2({j})"]
                + vs(1, j - 1)
            )
        if j == k - 1:
            return [f"s({k})", f"f2*s2({k - 1})"] + vs(1, k - 2)
        return [f"C_1_{k - 1}"] + vs(2, k - 1) + ["f2*s1(0)"]
    # 0 < i < k, j == 0
    if i == 1:
        return vs(3, k) + ["f1*s1(1)", "s(1)"]
    return vs(i + 2, k) + [f"f1*s1({i})", f"f1*s2({i})"] + vs(2, i - 1) + ["f2*s1(0)"]


def special_fiber_model(n: int, k: int, compactified: bool = False) -> SpecialFiber:
    """Component/adjacency model of the special fiber for n <= 2."""
    if n not in (1, 2):
        raise ValueError("special fiber model is only defined for n in {1, 2}")
    if n == 1:
        comps = []
        for i in range(k + 1):
            if i == k:
                tag = AFFINE_LINE
            elif i == 0:
                tag = PROJ_LINE if compactified else AFFINE_LINE
            else:
                tag = PROJ_LINE
            comps.append(ComponentModel((i,), tag, _eqs_n1(k, i), compactified and i == 0))
        adjacency = {f"node_{i}": ((i - 1,), (i,)) for i in range(1, k + 1)}
        return SpecialFiber(n, k, compactified, comps, adjacency)

    comps = []
    for i in range(k, -1, -1):
        for j in range(i, -1, -1):
            corner = (i, j) in ((k, k), (0, 0)) or ((i, j) == (k, 0) and not compactified)
            if corner:
                tag = AFFINE_PLANE
                if compactified and (i, j) == (0, 0):
                    tag = BLOWUP
            elif i == j:
                tag = BLOWUP
            elif (i == k and 0 < j) or (j == 0 and 0 < i < k and not compactified):
                tag = AFF_X_PROJ
            elif j == 0 and 0 < i < k:
                tag = PROJ_X_PROJ
            elif (i, j) == (k, 0):
                tag = AFF_X_PROJ
            else:
                tag = PROJ_X_PROJ
            comps.append(
                ComponentModel((i, j), tag, _eqs_n2(k, i, j), compactified and j == 0)
            )
    adjacency = {}
    for i in range(1, k + 1):
        for j in range(1, i + 1):
            adjacency[f"Lh_{i}_{j}"] = ((i, j - 1), (i, j))
    for i in range(1, k + 1):
        for j in range(1, i + 1):
            adjacency[f"Lv_{i}_{j}"] = ((i, j - 1), (i - 1, j - 1))
    for i in range(1, k + 1):
        adjacency[f"Ld_{i}"] = ((i - 1, i - 1), (i, i))
    for i in range(1, k + 1):
        for j in range(1, i):
            adjacency[f"p_{i}_{j}"] = (f"Lh_{i}_{j}", f"Lv_{i}_{j}")
    fiber = SpecialFiber(n, k, compactified, comps, adjacency)
    if compactified:
        fiber.boundary = (
            [("D'_0", AFFINE_LINE)]
            + [(f"D_{i}", PROJ_LINE) for i in range(k)]
            + [(f"D_{k}", AFFINE_LINE)]
        )
    return fiber


# ---------------------------------------------------------------------------
# Toric projections f_a : Y_{n,k} -> Y_{1,k}
# ---------------------------------------------------------------------------

@dataclass
class MonomialMap:
    """Pullback of coordinates along f_a, as monomial assignments."""

    n: int
    k: int
    a: int
    assignment: dict

    def pullback(self, symbol: str) -> dict:
        return dict(self.assignment[symbol])


def projection_maps(n: int, k: int, a: int) -> MonomialMap:
    """The map f_a with f_a^*V_i = V_i, f_a^*C_i = C_{ai} and X-products."""
    if not 1 <= a <= n:
        raise ValueError("a out of range")
    assignment = {
        "X1": {f"X{i}": 1 for i in range(1, a + 1)},
        "X2": {f"X{i}": 1 for i in range(a + 1, n + 2)},
    }
    for j in range(1, k + 1):
        assignment[f"V{j}"] = {f"V{j}": 1}
    for j in range(1, k):
        assignment[f"C_1_{j}"] = {f"C_{a}_{j}": 1} if n > 1 else {f"C_1_{j}": 1}
    return MonomialMap(n, k, a, assignment)


def symbol_class(ctx: GradingContext, symbol: str) -> LatticeElement:
    """Lattice class of a coordinate symbol like "X2", "V3", "C_1_2"."""
    if symbol.startswith("X"):
        return ctx.x(int(symbol[1:]))
    if symbol.startswith("V"):
        return ctx.v(int(symbol[1:]))
    if symbol.startswith("C_"):
        _, i, j = symbol.split("_")
        return ctx.c(int(i), int(j))
    raise ValueError(f"unknown symbol {symbol!r}")


def monomial_class(ctx: GradingContext, monomial: dict) -> LatticeElement:
    out = ctx.zero()
    for sym, exp in monomial.items():
        out = out + exp * symbol_class(ctx, sym)
    return out
