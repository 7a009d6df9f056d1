"""Exact arithmetic in the universal grading lattice.

The ambient lattice has the fixed basis (l0, x_1, ..., x_n, v_1, ..., v_k);
the class x_{n+1} is always eliminated via

    x_{n+1} = v_1 + ... + v_k - x_1 - ... - x_n,

so every element has a unique canonical coordinate vector.  All named
curve/weight classes (x_i, v_j, u_j, c_{ij}, l0) live here, as do the
B-side degrees (which land in the sublattice  Z*l0 + 2H).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


@dataclass(frozen=True)
class GradingContext:
    """Fixes n (symmetric power) and k (number of v-punctures)."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise ValueError("n and k must be positive")

    @property
    def rank(self) -> int:
        return 1 + self.n + self.k

    # -- index helpers into the coordinate vector ------------------------
    def _x_slot(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise IndexError(f"x index {i} out of range 1..{self.n}")
        return i

    def _v_slot(self, j: int) -> int:
        if not 1 <= j <= self.k:
            raise IndexError(f"v index {j} out of range 1..{self.k}")
        return self.n + j

    # -- named classes ---------------------------------------------------
    def zero(self) -> "LatticeElement":
        return LatticeElement(self, (0,) * self.rank)

    def l0(self) -> "LatticeElement":
        c = [0] * self.rank
        c[0] = 1
        return LatticeElement(self, tuple(c))

    def x(self, i: int) -> "LatticeElement":
        """Boundary class x_i, 1 <= i <= n+1 (x_{n+1} in eliminated form)."""
        if i == self.n + 1:
            e = self.zero()
            for j in range(1, self.k + 1):
                e = e + self.v(j)
            for a in range(1, self.n + 1):
                e = e - self.x(a)
            return e
        c = [0] * self.rank
        c[self._x_slot(i)] = 1
        return LatticeElement(self, tuple(c))

    def v(self, j: int) -> "LatticeElement":
        c = [0] * self.rank
        c[self._v_slot(j)] = 1
        return LatticeElement(self, tuple(c))

    def u(self, j: int) -> "LatticeElement":
        """u_j = l0 - v_j; the convention u_{k+1} = x_1, u_{k+2} = x_2."""
        if j == self.k + 1:
            return self.x(1)
        if j == self.k + 2:
            if self.n < 2:
                raise IndexError("u_{k+2} requires n >= 2")
            return self.x(2)
        return self.l0() - self.v(j)

    def c(self, i: int, j: int) -> "LatticeElement":
        """Separating class c_{ij} = v_k + ... + v_{j+1} - x_1 - ... - x_i.

        Boundary conventions c_{1k} = -x_1 and c_{n,0} = x_{n+1} are the
        j = k and j = 0 instances of the same formula.
        """
        if not 1 <= i <= self.n:
            raise IndexError(f"c first index {i} out of range 1..{self.n}")
        if not 0 <= j <= self.k:
            raise IndexError(f"c second index {j} out of range 0..{self.k}")
        e = self.zero()
        for r in range(j + 1, self.k + 1):
            e = e + self.v(r)
        for a in range(1, i + 1):
            e = e - self.x(a)
        return e

    def from_coeffs(self, coeffs: Sequence[int]) -> "LatticeElement":
        if len(coeffs) != self.rank:
            raise ValueError(f"expected {self.rank} coefficients")
        return LatticeElement(self, tuple(int(c) for c in coeffs))


def curve_class(ctx: GradingContext, name: str) -> "LatticeElement":
    """Resolve a symbolic name ("x1", "v3", "u4", "c_1_2", "l0") to a class."""
    if name == "l0":
        return ctx.l0()
    if name.startswith("c_"):
        parts = name.split("_")
        if len(parts) != 3:
            raise ValueError(f"bad class name {name!r}")
        return ctx.c(int(parts[1]), int(parts[2]))
    kind, idx = name[0], name[1:]
    if kind == "x":
        return ctx.x(int(idx))
    if kind == "v":
        return ctx.v(int(idx))
    if kind == "u":
        return ctx.u(int(idx))
    raise ValueError(f"bad class name {name!r}")


class LatticeElement:
    """Immutable integer vector over the fixed basis (l0, x_*, v_*)."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: GradingContext, coeffs: tuple):
        self.ctx = ctx
        self.coeffs = coeffs

    def __eq__(self, other):
        return (
            isinstance(other, LatticeElement)
            and self.ctx == other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def __add__(self, other: "LatticeElement") -> "LatticeElement":
        assert self.ctx == other.ctx
        return LatticeElement(
            self.ctx, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: "LatticeElement") -> "LatticeElement":
        assert self.ctx == other.ctx
        return LatticeElement(
            self.ctx, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> "LatticeElement":
        return LatticeElement(self.ctx, tuple(-a for a in self.coeffs))

    def __rmul__(self, m: int) -> "LatticeElement":
        return LatticeElement(self.ctx, tuple(m * a for a in self.coeffs))

    def __mul__(self, m: int) -> "LatticeElement":
        return self.__rmul__(m)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)

    @property
    def l0_coeff(self) -> int:
        return self.coeffs[0]

    def x_coeff(self, i: int) -> int:
        return self.coeffs[self.ctx._x_slot(i)]

    def v_coeff(self, j: int) -> int:
        return self.coeffs[self.ctx._v_slot(j)]

    def h_part(self) -> "LatticeElement":
        """The component in H (kill the l0 coordinate)."""
        return LatticeElement(self.ctx, (0,) + self.coeffs[1:])

    def __repr__(self):
        terms = []
        names = ["l0"] + [f"x{i}" for i in range(1, self.ctx.n + 1)] + [
            f"v{j}" for j in range(1, self.ctx.k + 1)
        ]
        for name, a in zip(names, self.coeffs):
            if a == 0:
                continue
            if a == 1:
                terms.append(f"+{name}")
            elif a == -1:
                terms.append(f"-{name}")
            else:
                terms.append(f"{a:+d}{name}")
        return "".join(terms) if terms else "0"


def parity(e: LatticeElement) -> int:
    """Z/2 grading: sends every u_j and x_i to 0 and l0 (hence v_j) to 1."""
    total = e.l0_coeff
    for j in range(1, e.ctx.k + 1):
        total += e.v_coeff(j)
    return total % 2


class CollapseMap:
    """A linear functional given by its values on the basis (l0, x_*, v_*).

    Admissible means it collapses the multigrading to a Z-grading
    compatible with parity: value 1 on l0, even on each x_i, odd on
    each v_j.
    """

    def __init__(self, ctx: GradingContext, l0_val: int, x_vals: Sequence[int], v_vals: Sequence[int]):
        if len(x_vals) != ctx.n or len(v_vals) != ctx.k:
            raise ValueError("value counts must match (n, k)")
        self.ctx = ctx
        self.values = (int(l0_val),) + tuple(int(a) for a in x_vals) + tuple(
            int(b) for b in v_vals
        )

    def is_admissible(self) -> bool:
        if self.values[0] != 1:
            return False
        basis_parities = [1] + [0] * self.ctx.n + [1] * self.ctx.k
        return all(v % 2 == p for v, p in zip(self.values, basis_parities))

    def __call__(self, e: LatticeElement) -> int:
        assert e.ctx == self.ctx
        return sum(v * a for v, a in zip(self.values, e.coeffs))


def computational_collapse(ctx: GradingContext) -> CollapseMap:
    """The collapse f0 with f0(l0)=1, f0(x_i)=f0(u_j)=0, hence f0(v_j)=1."""
    return CollapseMap(ctx, 1, [0] * ctx.n, [1] * ctx.k)


def localization_collapse(ctx: GradingContext) -> CollapseMap:
    """The l0-coefficient functional: U_j have degree 2, X_i and V_j degree 0.

    Not admissible (its value on v_j is even); used only to reproduce the
    integer shift labels of the localization complexes.
    """
    return CollapseMap(ctx, 1, [0] * ctx.n, [0] * ctx.k)


def collapse(f: CollapseMap, e: LatticeElement) -> int:
    if not f.is_admissible():
        raise ValueError("collapse map is not admissible")
    return f(e)


def grading_iso_A_to_B(m: int, h: LatticeElement) -> LatticeElement:
    """The lattice isomorphism sending (m, h) to m*l0 + 2h."""
    if h.l0_coeff != 0:
        raise ValueError("H-part must have zero l0 coefficient")
    return m * h.ctx.l0() + 2 * h

def grading_iso(e: LatticeElement) -> LatticeElement:
    """Apply the A-to-B grading isomorphism to a packed (m, h) element."""
    return grading_iso_A_to_B(e.l0_coeff, e.h_part())


def in_b_lattice(e: LatticeElement) -> bool:
    """Membership in Z*l0 + 2H: all non-l0 coordinates even."""
    return all(a % 2 == 0 for a in e.coeffs[1:])


class GuardFunctional:
    """Nonnegative-on-arrows functional used to bound path enumeration.

    Not a collapse; just an integer dual vector with value 6 on l0, 1 on
    each x_i and 0 on each v_j.  On every quiver arrow degree built in
    this package its value is >= 0, and it is 0 only on the stop-direction
    arrows which can never repeat consecutively.
    """

    def __init__(self, ctx: GradingContext):
        self.ctx = ctx
        self.values = (6,) + (1,) * ctx.n + (0,) * ctx.k

    def __call__(self, e: LatticeElement) -> int:
        return sum(v * a for v, a in zip(self.values, e.coeffs))


class SecondaryGuard:
    """A second arrow-nonnegative functional (k+2 on l0, 0 on x, 1 on v).

    Zero on the x-type loops, so it cannot certify termination alone, but
    as an extra remaining-degree prune it cuts loop-run blowup.
    """

    def __init__(self, ctx: GradingContext):
        self.ctx = ctx
        self.values = (ctx.k + 2,) + (0,) * ctx.n + (1,) * ctx.k

    def __call__(self, e: LatticeElement) -> int:
        return sum(v * a for v, a in zip(self.values, e.coeffs))


def solve_exponents(
    degree: LatticeElement, variables: Iterable[tuple[str, LatticeElement]]
) -> dict | None:
    """Write ``degree`` as a nonnegative integer combination of variable degrees.

    The variable degrees must be linearly independent (true for any subset
    of {2u_1, ..., 2u_k, 2x_1, 2x_2}); returns {name: exponent} or None.
    """
    vars_list = list(variables)
    cols = [d.coeffs for _, d in vars_list]
    target = list(degree.coeffs)
    rank = len(target)
    # Exact rational least-squares-free solve: Gaussian elimination on the
    # (rank x m) system; independence makes the solution unique if it exists.
    m = len(cols)
    aug = [[Fraction(cols[c][r]) for c in range(m)] + [Fraction(target[r])] for r in range(rank)]
    pivots = []
    row = 0
    for col in range(m):
        piv = next((r for r in range(row, rank) if aug[r][col] != 0), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        scale = aug[row][col]
        aug[row] = [a / scale for a in aug[row]]
        for r in range(rank):
            if r != row and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
    sol = [Fraction(0)] * m
    for idx, col in enumerate(pivots):
        sol[col] = aug[idx][-1]
    # Consistency: rows beyond the pivot rows must have zero RHS.
    for r in range(row, rank):
        if aug[r][-1] != 0:
            return None
    check = [sum(sol[c] * cols[c][r] for c in range(m)) for r in range(rank)]
    if check != [Fraction(t) for t in target]:
        return None
    out = {}
    for (name, _), val in zip(vars_list, sol):
        if val.denominator != 1 or val < 0:
            return None
        if val:
            out[name] = int(val)
    return out
