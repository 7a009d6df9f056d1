"""Multigraded quivers with relations and exact per-degree Hom dimensions.

Arrows carry degrees in the universal grading lattice; every relation is
degree-homogeneous, so the graded piece of the relation ideal between two
vertices is spanned by the saturations prefix * relation * suffix of the
matching degree.  Dimensions are computed by exact linear algebra over Q.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactla import RowSpace
from .lattice import (
    GradingContext,
    GuardFunctional,
    LatticeElement,
    SecondaryGuard,
    grading_iso,
)


@dataclass(frozen=True)
class Arrow:
    name: str
    src: object
    tgt: object
    degree: LatticeElement

    def __repr__(self):
        return f"{self.name}[{self.src}->{self.tgt}]"


@dataclass
class Relation:
    """Homogeneous integer combination of parallel paths set to zero.

    Each term is (coeff, word); words are tuples of arrows in application
    order (first applied first).
    """

    terms: list

    @property
    def src(self):
        return self.terms[0][1][0].src

    @property
    def tgt(self):
        return self.terms[0][1][-1].tgt

    def degree(self) -> LatticeElement:
        word = self.terms[0][1]
        deg = word[0].degree
        for a in word[1:]:
            deg = deg + a.degree
        return deg


def word_degree(word) -> LatticeElement:
    deg = word[0].degree
    for a in word[1:]:
        deg = deg + a.degree
    return deg


def word_is_composable(word) -> bool:
    return all(word[i].tgt == word[i + 1].src for i in range(len(word) - 1))


class QuiverPresentation:
    def __init__(self, ctx: GradingContext, vertices, arrows, relations, label=""):
        self.ctx = ctx
        self.label = label
        self.vertices = sorted(vertices, key=repr)
        self.arrows = arrows
        self.relations = relations
        self.guard = GuardFunctional(ctx)
        self.guard2 = SecondaryGuard(ctx)
        self._out: dict = {v: [] for v in self.vertices}
        for a in arrows:
            self._out[a.src].append(a)
        for v in self._out:
            self._out[v].sort(key=lambda a: (a.name, repr(a.tgt)))
        self._out_data = {
            v: [
                (a, a.degree.coeffs, a.degree.l0_coeff, self.guard(a.degree),
                 self.guard2(a.degree))
                for a in self._out[v]
            ]
            for v in self.vertices
        }
        # relations indexed by the first arrow of their leading term, for
        # subword matching inside enumerated paths
        self._rel_by_head: dict = {}
        for rel in relations:
            head = rel.terms[0][1]
            self._rel_by_head.setdefault(head[0], []).append(rel)
        self._path_cache: dict = {}
        self._dim_cache: dict = {}
        self._dist = self._guard_distances()
        self._check()

    def _guard_distances(self) -> dict:
        """Minimal total guard value of a path between each vertex pair."""
        inf = float("inf")
        dist = {(a, b): (0 if a == b else inf) for a in self.vertices for b in self.vertices}
        for arr in self.arrows:
            w = self.guard(arr.degree)
            if w < dist[(arr.src, arr.tgt)]:
                dist[(arr.src, arr.tgt)] = w
        for mid in self.vertices:
            for a in self.vertices:
                for b in self.vertices:
                    via = dist[(a, mid)] + dist[(mid, b)]
                    if via < dist[(a, b)]:
                        dist[(a, b)] = via
        return dist

    def _feasible(self, remaining: LatticeElement) -> bool:
        """Necessary condition for a remaining degree to be a path degree."""
        return (
            remaining.l0_coeff >= 0
            and self.guard(remaining) >= 0
            and self.guard2(remaining) >= 0
        )

    # -- consistency ------------------------------------------------------
    def _check(self):
        for a in self.arrows:
            if self.guard(a.degree) < 0:
                raise AssertionError(f"guard functional negative on {a}")
            if self.guard(a.degree) == 0:
                # zero-progress arrows must never chain
                for b in self._out[a.tgt]:
                    if self.guard(b.degree) == 0:
                        raise AssertionError("consecutive zero-guard arrows")
        for rel in self.relations:
            degs = {word_degree(w).coeffs for _, w in rel.terms}
            ends = {(w[0].src, w[-1].tgt) for _, w in rel.terms}
            if len(degs) != 1 or len(ends) != 1:
                raise AssertionError(f"inhomogeneous relation {rel.terms}")
            for _, w in rel.terms:
                if not word_is_composable(w):
                    raise AssertionError(f"non-composable relation word {w}")

    def arrows_from(self, v):
        return self._out[v]

    # -- path enumeration ---------------------------------------------------
    def paths_exact(self, src, tgt, degree: LatticeElement):
        """All composable words src -> tgt of exactly the given degree.

        Exact-remaining-degree DFS over raw coefficient tuples; dead
        (vertex, remaining) states are memoized so failing subtrees are
        explored once, making the walk output-sensitive.
        """
        key = (src, tgt, degree.coeffs)
        if key in self._path_cache:
            return self._path_cache[key]
        out = []
        dead: set = set()
        rank = self.ctx.rank

        def rec(at, rem, rl0, rg1, rg2, prefix) -> int:
            if rg1 == 0 and at == tgt and rl0 == 0 and rg2 == 0 and not any(rem):
                out.append(prefix)
                return 1
            state = (at, rem)
            if state in dead:
                return 0
            emitted = 0
            for a, acoeffs, al0, ag1, ag2 in self._out_data[at]:
                nl0 = rl0 - al0
                if nl0 < 0:
                    continue
                ng1 = rg1 - ag1
                if ng1 < 0 or self._dist[(a.tgt, tgt)] > ng1:
                    continue
                ng2 = rg2 - ag2
                if ng2 < 0:
                    continue
                nrem = tuple(rem[r] - acoeffs[r] for r in range(rank))
                emitted += rec(a.tgt, nrem, nl0, ng1, ng2, prefix + (a,))
            if emitted == 0:
                dead.add(state)
            return emitted

        g1 = self.guard(degree)
        g2 = self.guard2(degree)
        if degree.l0_coeff >= 0 and g1 >= 0 and g2 >= 0 and self._dist[(src, tgt)] <= g1:
            rec(src, degree.coeffs, degree.l0_coeff, g1, g2, ())
        out.sort(key=lambda w: (len(w), tuple(repr(a) for a in w)))
        self._path_cache[key] = out
        return out

    def path_degrees(self, src, tgt, max_letters: int):
        """Degrees realizable by words of at most max_letters arrows."""
        frontier = {src: {self.ctx.zero().coeffs}}
        seen: set = set(frontier[src]) if src == tgt else set()
        for _ in range(max_letters):
            nxt: dict = {}
            for at, degs in frontier.items():
                for a in self._out[at]:
                    for coeffs in degs:
                        deg = self.ctx.from_coeffs(coeffs) + a.degree
                        nxt.setdefault(a.tgt, set()).add(deg.coeffs)
            frontier = nxt
            seen |= frontier.get(tgt, set())
        return sorted(seen)

    # -- graded dimension ---------------------------------------------------
    def relation_rows(self, src, tgt, degree: LatticeElement, path_index):
        """Saturation vectors of the relation ideal in the given degree.

        Every term of a saturated relation instance is itself a path of
        this degree, so all instances are found by scanning the enumerated
        paths for subword occurrences of leading relation terms and
        substituting the remaining terms.
        """
        rows = []
        seen_rows: set = set()
        paths = sorted(path_index, key=path_index.get)
        npaths = len(path_index)
        for t in paths:
            for pos in range(len(t)):
                for rel in self._rel_by_head.get(t[pos], ()):
                    head = rel.terms[0][1]
                    if t[pos : pos + len(head)] != head:
                        continue
                    p, s = t[:pos], t[pos + len(head) :]
                    vec = [0] * npaths
                    for coeff, w in rel.terms:
                        idx = path_index.get(p + w + s)
                        if idx is None:
                            raise AssertionError("saturation produced unknown path")
                        vec[idx] += coeff
                    key = tuple(vec)
                    if any(vec) and key not in seen_rows:
                        seen_rows.add(key)
                        rows.append(vec)
        return rows

    def hom_dimension(self, v, w, degree: LatticeElement):
        """(dimension, basis of path normal forms) of Hom(v, w) in a degree."""
        key = (v, w, degree.coeffs)
        if key in self._dim_cache:
            return self._dim_cache[key]
        paths = list(self.paths_exact(v, w, degree))
        if not paths:
            self._dim_cache[key] = (0, [])
            return (0, [])
        path_index = {p: i for i, p in enumerate(paths)}
        rows = self.relation_rows(v, w, degree, path_index)
        space = RowSpace(len(paths))
        for row in rows:
            space.add(row)
        basis = []
        probe = RowSpace(len(paths))
        for row in rows:
            probe.add(row)
        for i, p in enumerate(paths):
            vec = [0] * len(paths)
            vec[i] = 1
            if probe.add(vec):
                basis.append(p)
        dim = len(paths) - space.rank
        assert dim == len(basis)
        result = (dim, basis)
        self._dim_cache[key] = result
        return result

    def element_in_ideal(self, terms) -> bool:
        """Is an integer combination of parallel paths zero in the algebra?"""
        if not terms:
            return True
        words = [w for _, w in terms]
        src, tgt = words[0][0].src, words[0][-1].tgt
        deg = word_degree(words[0])
        for _, w in terms:
            if word_degree(w).coeffs != deg.coeffs or w[0].src != src or w[-1].tgt != tgt:
                raise ValueError("terms are not parallel/homogeneous")
        paths = list(self.paths_exact(src, tgt, deg))
        path_index = {p: i for i, p in enumerate(paths)}
        vec = [0] * len(paths)
        for coeff, w in terms:
            vec[path_index[w]] += coeff
        rows = self.relation_rows(src, tgt, deg, path_index)
        space = RowSpace(len(paths))
        for row in rows:
            space.add(row)
        return space.contains(vec)

    def find_arrow(self, name, src):
        for a in self._out[src]:
            if a.name == name:
                return a
        raise KeyError(f"no arrow {name} at {src}")


# ---------------------------------------------------------------------------
# HomTable
# ---------------------------------------------------------------------------

@dataclass
class HomTable:
    source: object
    target: object
    rows: dict = field(default_factory=dict)  # degree coeffs -> (dim, basis labels)

    def dim(self, degree: LatticeElement) -> int:
        entry = self.rows.get(degree.coeffs)
        return entry[0] if entry else 0

    def to_json_dict(self, name_of=str) -> dict:
        return {
            "from": name_of(self.source),
            "to": name_of(self.target),
            "rows": [
                {"degree": list(c), "dim": d}
                for c, (d, _) in sorted(self.rows.items())
                if d
            ],
        }


def collapse_packed(collapse_map, degree: LatticeElement) -> int:
    """Collapse an A-side packed degree: apply the map after the grading iso."""
    return collapse_map(grading_iso(degree))


def dim_table(
    q: QuiverPresentation, v, w, collapse_map, max_degree: int, max_letters: int = 8
) -> HomTable:
    """Table of path-degree rows with collapse value in [0, max_degree].

    Degrees of unbounded collapse-0 towers (loop monomials) make the full
    table infinite; rows are restricted to degrees realizable by words of
    at most max_letters arrows.
    """
    if not collapse_map.is_admissible():
        raise ValueError("collapse map must be admissible")
    table = HomTable(v, w)
    for coeffs in q.path_degrees(v, w, max_letters):
        deg = q.ctx.from_coeffs(coeffs)
        val = collapse_packed(collapse_map, deg)
        if not 0 <= val <= max_degree:
            continue
        dim, basis = q.hom_dimension(v, w, deg)
        if dim:
            table.rows[coeffs] = (
                dim,
                ["*".join(a.name for a in b) or "id" for b in basis],
            )
    return table


# ---------------------------------------------------------------------------
# The arc algebra for n = 1
# ---------------------------------------------------------------------------

def build_A1k(ctx: GradingContext, k: int) -> QuiverPresentation:
    """Line quiver L_0 <-> L_1 <-> ... <-> L_k with an x_1 loop at L_k."""
    if ctx.n != 1 or ctx.k != k:
        raise ValueError("context must have n=1 and matching k")
    vertices = list(range(k + 1))
    arrows = []
    l_arr, r_arr = {}, {}
    for i in range(1, k + 1):
        l_arr[i] = Arrow(f"l{i}", i - 1, i, ctx.l0() + ctx.c(1, i))
        r_arr[i] = Arrow(f"r{i}", i, i - 1, ctx.l0() - ctx.c(1, i - 1))
        arrows += [l_arr[i], r_arr[i]]
    x1 = Arrow("x1", k, k, ctx.x(1))
    arrows.append(x1)
    relations = []
    for i in range(1, k):
        relations.append(Relation([(1, (l_arr[i], l_arr[i + 1]))]))
        relations.append(Relation([(1, (r_arr[i + 1], r_arr[i]))]))
    relations.append(Relation([(1, (l_arr[k], x1))]))
    relations.append(Relation([(1, (x1, r_arr[k]))]))
    return QuiverPresentation(ctx, vertices, arrows, relations, label=f"A(1,{k})")


# ---------------------------------------------------------------------------
# The arc algebra for n = 2
# ---------------------------------------------------------------------------

def a2k_vertices(k: int) -> list:
    """2-subsets of {0..k+1} as sorted pairs (a, b) with a > b."""
    return [(a, b) for a in range(1, k + 2) for b in range(a - 1, -1, -1)]


def _deg_r(ctx: GradingContext, m: int, other: int) -> LatticeElement:
    """Degree of r_m lowering m -> m-1 next to the fixed index ``other``."""
    k = ctx.k
    if m == k + 1:
        return ctx.zero()
    if m > other:
        if m == k:
            return ctx.l0() - ctx.c(1, k - 1)
        return ctx.l0() + ctx.c(1, m) - ctx.c(1, m - 1)
    return ctx.l0() - ctx.c(2, m - 1)


def _deg_u(ctx: GradingContext, r: int) -> LatticeElement:
    """Degree of the loop u_r in packed A-side coordinates (l0-coeff, H)."""
    k = ctx.k
    if r == k + 1:
        return ctx.x(1)
    if r == k + 2:
        return ctx.x(2)
    return 2 * ctx.l0() - ctx.v(r)


def _window(k: int, a: int, b: int) -> list:
    return sorted({b, b + 1, a, a + 1} & set(range(1, k + 3)))


def build_A2k(ctx: GradingContext, k: int) -> QuiverPresentation:
    """The arc algebra on 2-subsets of {0..k+1}.

    Arrows l_m / r_m move one index by one step where the target stays a
    valid 2-subset; loops u_r (and x_1 = u_{k+1}, x_2 = u_{k+2}) exist at a
    vertex exactly when r lies in its index window and no l/r-composite
    realizes them there.  Relations: the consecutive-vanishing and distance
    >= 2 commutation families, centrality of the loop values along every
    arrow (zero outside the window), and primitive-loop commutators.
    """
    if ctx.n != 2 or ctx.k != k:
        raise ValueError("context must have n=2 and matching k")
    vertices = a2k_vertices(k)
    vset = set(vertices)
    arrows = []
    arrow_at: dict = {}

    def norm(pair):
        a, b = pair
        return (a, b) if a > b else (b, a)

    for (a, b) in vertices:
        for m in range(1, k + 2):
            # r_m: lower m to m-1
            if m in (a, b) and (m - 1) not in (a, b) and m - 1 >= 0:
                other = b if m == a else a
                tgt = norm((other, m - 1))
                if tgt in vset:
                    arr = Arrow(f"r{m}", (a, b), tgt, _deg_r(ctx, m, other))
                    arrows.append(arr)
                    arrow_at[(f"r{m}", (a, b))] = arr
            # l_m: raise m-1 to m
            if (m - 1) in (a, b) and m not in (a, b):
                other = b if m - 1 == a else a
                tgt = norm((other, m))
                if tgt in vset:
                    deg = _deg_u(ctx, m) - _deg_r(ctx, m, other)
                    arr = Arrow(f"l{m}", (a, b), tgt, deg)
                    arrows.append(arr)
                    arrow_at[(f"l{m}", (a, b))] = arr

    # loops: primitive where no composite exists
    loop_at: dict = {}
    for (a, b) in vertices:
        for rr in _window(k, a, b):
            primitive = (rr == a == b + 1) or (rr == a + 1 == k + 2)
            if primitive:
                name = {k + 1: "x1", k + 2: "x2"}.get(rr, f"u{rr}")
                arr = Arrow(name, (a, b), (a, b), _deg_u(ctx, rr))
                arrows.append(arr)
                loop_at[(rr, (a, b))] = (arr,)

    def u_word(rr, vtx):
        """Realization of u_rr at a vertex: arrow word or None (acts as 0)."""
        a, b = vtx
        if rr not in _window(k, a, b):
            return None
        if (rr, vtx) in loop_at:
            return loop_at[(rr, vtx)]
        if rr in (a, b):  # descend first
            down = arrow_at[(f"r{rr}", vtx)]
            up = arrow_at[(f"l{rr}", down.tgt)]
            return (down, up)
        up = arrow_at[(f"l{rr}", vtx)]
        down = arrow_at[(f"r{rr}", up.tgt)]
        return (up, down)

    relations = []
    # consecutive vanishing: l_{m+1} l_m = 0 and r_m r_{m+1} = 0
    for (a, b) in vertices:
        for m in range(1, k + 1):
            first = arrow_at.get((f"l{m}", (a, b)))
            if first is not None:
                second = arrow_at.get((f"l{m + 1}", first.tgt))
                if second is not None:
                    relations.append(Relation([(1, (first, second))]))
            first = arrow_at.get((f"r{m + 1}", (a, b)))
            if first is not None:
                second = arrow_at.get((f"r{m}", first.tgt))
                if second is not None:
                    relations.append(Relation([(1, (first, second))]))
    # distance >= 2 commutations
    for (a, b) in vertices:
        for m in range(1, k + 2):
            for m2 in range(m + 2, k + 2):
                for g1 in (f"l{m}", f"r{m}"):
                    for g2 in (f"l{m2}", f"r{m2}"):
                        a1 = arrow_at.get((g1, (a, b)))
                        a2 = arrow_at.get((g2, (a, b)))
                        if a1 is None or a2 is None:
                            continue
                        b2 = arrow_at.get((g2, a1.tgt))
                        b1 = arrow_at.get((g1, a2.tgt))
                        if b2 is None or b1 is None:
                            continue
                        relations.append(
                            Relation([(1, (a1, b2)), (-1, (a2, b1))])
                        )
    # centrality of every u_r value along every l/r arrow
    for arr in [a for a in arrows if a.src != a.tgt]:
        for rr in range(1, k + 3):
            at_src = u_word(rr, arr.src)
            at_tgt = u_word(rr, arr.tgt)
            if at_src is None and at_tgt is None:
                continue
            if at_src is not None and at_tgt is not None:
                relations.append(
                    Relation([(1, at_src + (arr,)), (-1, (arr,) + at_tgt)])
                )
            elif at_src is not None:
                relations.append(Relation([(1, at_src + (arr,))]))
            else:
                relations.append(Relation([(1, (arr,) + at_tgt)]))
    # primitive loops at a common vertex commute
    for (a, b) in vertices:
        prims = [loop_at[key][0] for key in sorted(loop_at) if key[1] == (a, b)]
        for i in range(len(prims)):
            for j in range(i + 1, len(prims)):
                relations.append(
                    Relation(
                        [(1, (prims[i], prims[j])), (-1, (prims[j], prims[i]))]
                    )
                )
    q = QuiverPresentation(ctx, vertices, arrows, relations, label=f"A(2,{k})")
    q.loop_realization = u_word
    return q
