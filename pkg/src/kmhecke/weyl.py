"""Weyl group elements, length combinatorics, orbits and Tits-cone tests.

An element is canonically the integer matrix of its action on Y; the
restriction of that action to the coroot span is faithful, so matrix
equality is group equality.  Alongside the matrix each element carries
one reduced word and the matrix of the *inverse* acting on root
coordinates (the basis of simple roots), which makes descent tests a
sign check on a column: i is a left descent of w iff w^{-1}(alpha_i) is
a negative root.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import linalg
from .errors import (
    BudgetExceeded,
    FaceIsMinimal,
    FaceIsSpherical,
    TitsConeUndecided,
)
from .root_system import (
    AFFINE,
    FINITE,
    INDEFINITE,
    GCM,
    Component,
    ComponentReport,
    Point,
    RootDatum,
    affine_delta,
    classify_components,
)

IN_TITS_CONE = "InTitsCone"
NOT_IN_TITS_CONE = "NotInTitsCone"
UNKNOWN = "Unknown"

DEFAULT_TITS_BUDGET = 1000


class WeylElement:
    """A Weyl group element; equality and hashing go through the Y-matrix."""

    __slots__ = ("datum", "matrix", "word", "qinv", "_hash")

    def __init__(self, datum: RootDatum, matrix, word, qinv):
        self.datum = datum
        self.matrix = matrix
        self.word = word
        self.qinv = qinv  # root-coordinate matrix of the inverse element
        self._hash = hash(matrix)

    @property
    def length(self) -> int:
        return len(self.word)

    def __eq__(self, other):
        return (
            isinstance(other, WeylElement)
            and self.matrix == other.matrix
            and self.datum == other.datum
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if not self.word:
            return "W(e)"
        return "W(" + "*".join(f"r{i + 1}" for i in self.word) + ")"

    def apply(self, v) -> Point:
        return linalg.mat_vec(self.matrix, tuple(v))

    def is_identity(self) -> bool:
        return all(
            self.matrix[r][c] == (1 if r == c else 0)
            for r in range(len(self.matrix))
            for c in range(len(self.matrix))
        )


@lru_cache(maxsize=None)
def _reflection_matrix(datum: RootDatum, i: int):
    co, ro = datum.coroots[i], datum.roots[i]
    m = datum.rank_y
    return tuple(
        tuple((1 if r == c else 0) - co[r] * ro[c] for c in range(m)) for r in range(m)
    )


@lru_cache(maxsize=None)
def _q_reflection_matrix(datum: RootDatum, i: int):
    # action on root coordinates: r_i(alpha_j) = alpha_j - a_{ij} alpha_i
    n = datum.n
    a = datum.gcm.entries
    return tuple(
        tuple((1 if r == c else 0) - (a[i][c] if r == i else 0) for c in range(n))
        for r in range(n)
    )


def reflect(datum: RootDatum, i: int, v) -> Point:
    v = tuple(v)
    return linalg.vec_sub(v, linalg.vec_scale(datum.pairing(i, v), datum.coroots[i]))


def identity(datum: RootDatum) -> WeylElement:
    return WeylElement(
        datum,
        linalg.identity_matrix(datum.rank_y),
        (),
        linalg.identity_matrix(datum.n),
    )


def simple_reflection(datum: RootDatum, i: int) -> WeylElement:
    if not 0 <= i < datum.n:
        raise IndexError(i)
    return WeylElement(datum, _reflection_matrix(datum, i), (i,), _q_reflection_matrix(datum, i))


def _column_nonpositive(mat, col: int) -> bool:
    return all(row[col] <= 0 for row in mat)


def _left_descents_of_qinv(datum: RootDatum, qinv) -> list[int]:
    return [i for i in range(datum.n) if _column_nonpositive(qinv, i)]


def left_descents(w: WeylElement) -> list[int]:
    """Indices i with l(r_i w) = l(w) - 1."""
    return _left_descents_of_qinv(w.datum, w.qinv)


def _strip_word(datum: RootDatum, qinv, limit: int) -> tuple[int, ...]:
    """Recover the canonical reduced word from the inverse root-action matrix.

    Repeatedly strips the smallest left descent; each strip shortens the
    element by one, so `limit` bounds the loop.
    """
    ident = linalg.identity_matrix(datum.n)
    word = []
    cur = qinv
    for _ in range(limit + 1):
        if cur == ident:
            return tuple(word)
        ds = _left_descents_of_qinv(datum, cur)
        if not ds:
            raise AssertionError("non-identity element without left descent")
        i = ds[0]
        word.append(i)
        cur = linalg.mat_mul(cur, _q_reflection_matrix(datum, i))
    raise AssertionError("descent stripping did not terminate within the length bound")


def multiply(a: WeylElement, b: WeylElement) -> WeylElement:
    """Group product with an exact reduced word recomputed by descent stripping."""
    if a.datum != b.datum:
        raise ValueError("elements belong to different root data")
    matrix = linalg.mat_mul(a.matrix, b.matrix)
    qinv = linalg.mat_mul(b.qinv, a.qinv)
    word = _strip_word(a.datum, qinv, a.length + b.length)
    return WeylElement(a.datum, matrix, word, qinv)


def element_from_word(datum: RootDatum, word) -> WeylElement:
    w = identity(datum)
    for i in word:
        w = multiply(w, simple_reflection(datum, i))
    return w


def inverse(w: WeylElement) -> WeylElement:
    return element_from_word(w.datum, tuple(reversed(w.word)))


def _q_matrix_of_word(datum: RootDatum, word):
    m = linalg.identity_matrix(datum.n)
    for i in word:
        m = linalg.mat_mul(m, _q_reflection_matrix(datum, i))
    return m


def bruhat_leq(u: WeylElement, w: WeylElement) -> bool:
    """Bruhat order via the lifting property.

    Peeling the last letter i of (a reduced word of) w: if i is a right
    descent of u then u <= w iff u r_i <= w r_i, otherwise u <= w iff
    u <= w r_i.  The answer is independent of the stored word of w.
    """
    if u.datum != w.datum:
        raise ValueError("elements belong to different root data")
    if u.length > w.length:
        return False
    qu = _q_matrix_of_word(u.datum, u.word)
    remaining = u.length
    for i in reversed(w.word):
        if remaining == 0:
            return True
        if _column_nonpositive(qu, i):
            qu = linalg.mat_mul(qu, _q_reflection_matrix(u.datum, i))
            remaining -= 1
    return remaining == 0


def all_reduced_words(w: WeylElement, cap: int = 10_000) -> set[tuple[int, ...]]:
    """Every reduced word of w, by branching over left descents."""
    datum = w.datum
    ident = linalg.identity_matrix(datum.n)
    out: set[tuple[int, ...]] = set()

    def rec(qinv, prefix):
        if len(out) >= cap:
            raise BudgetExceeded(cap, "reduced word enumeration")
        if qinv == ident:
            out.add(tuple(prefix))
            return
        for i in _left_descents_of_qinv(datum, qinv):
            prefix.append(i)
            rec(linalg.mat_mul(qinv, _q_reflection_matrix(datum, i)), prefix)
            prefix.pop()

    rec(w.qinv, [])
    return out


def bruhat_interval(u: WeylElement) -> set[WeylElement]:
    """The full interval [1, u]: all products of subwords of one reduced word."""
    datum = u.datum
    elems = {identity(datum)}
    for i in u.word:
        r = simple_reflection(datum, i)
        elems |= {multiply(x, r) for x in elems}
    return elems


# --- Tits cone and dominance projections ---

@dataclass(frozen=True)
class DominantReport:
    dominant: Point | None
    minimizer: WeylElement | None
    status: str


def _component_pairings(datum: RootDatum, comp: Component, lam) -> list[int]:
    return [datum.pairing(i, lam) for i in comp.indices]


def dominant_representative(
    datum: RootDatum, lam, budget: int = DEFAULT_TITS_BUDGET
) -> DominantReport:
    """Project lam to the dominant chamber, tracking a minimal-length witness.

    The loop reflects at the smallest i with alpha_i(lam) < 0.  Membership
    in the Tits cone is decided exactly on finite components (always
    inside) and affine components (sign of the invariant form delta);
    indefinite components are semi-decided within `budget` steps.
    """
    lam = tuple(lam)
    report = classify_components(datum)
    decided = True
    for comp in report.components:
        vals = _component_pairings(datum, comp, lam)
        if comp.kind == AFFINE:
            level = linalg.dot(affine_delta(datum, comp), lam)
            if level < 0 or (level == 0 and any(v != 0 for v in vals)):
                return DominantReport(None, None, NOT_IN_TITS_CONE)
        elif comp.kind == INDEFINITE and any(v != 0 for v in vals):
            decided = False

    cur = lam
    applied: list[int] = []
    while True:
        i = next((j for j in range(datum.n) if datum.pairing(j, cur) < 0), None)
        if i is None:
            break
        if not decided and len(applied) >= budget:
            return DominantReport(None, None, UNKNOWN)
        cur = reflect(datum, i, cur)
        applied.append(i)
    minimizer = element_from_word(datum, applied)
    return DominantReport(cur, minimizer, IN_TITS_CONE)


@lru_cache(maxsize=None)
def _cached_status(datum: RootDatum, lam: Point, budget: int) -> str:
    return dominant_representative(datum, lam, budget).status


def tits_cone_status(datum: RootDatum, lam, budget: int = DEFAULT_TITS_BUDGET) -> str:
    return _cached_status(datum, tuple(lam), budget)


def in_y_plus(datum: RootDatum, lam, budget: int = DEFAULT_TITS_BUDGET) -> bool:
    st = tits_cone_status(datum, lam, budget)
    if st == UNKNOWN:
        raise TitsConeUndecided(tuple(lam), budget)
    return st == IN_TITS_CONE


@dataclass(frozen=True)
class OrbitResult:
    points: tuple[Point, ...]
    complete: bool

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)


def orbit_enumerate(
    datum: RootDatum,
    lam,
    max_length: int | None = None,
    max_height_drop: int | None = None,
    max_count: int | None = 100_000,
) -> OrbitResult:
    """Breadth-first orbit of lam under the simple reflections.

    Complete means the walk closed with no cap ever rejecting a point.
    The height cap bounds |h(mu - lam)|, exact because every orbit point
    differs from lam by an integer coroot vector.
    """
    start = tuple(lam)
    seen: dict[Point, int] = {start: 0}  # point -> height offset from start
    frontier = [start]
    depth = 0
    pruned = False
    while frontier:
        if max_length is not None and depth >= max_length:
            for p in frontier:
                if any(reflect(datum, i, p) not in seen for i in range(datum.n)):
                    pruned = True
                    break
            break
        nxt = []
        for p in frontier:
            hp = seen[p]
            for i in range(datum.n):
                step = -datum.pairing(i, p)  # h(r_i p) - h(p)
                q = reflect(datum, i, p)
                if q in seen:
                    continue
                hq = hp + step
                if max_height_drop is not None and abs(hq) > max_height_drop:
                    pruned = True
                    continue
                if max_count is not None and len(seen) >= max_count:
                    pruned = True
                    continue
                seen[q] = hq
                nxt.append(q)
        frontier = nxt
        depth += 1
    return OrbitResult(tuple(sorted(seen)), complete=not pruned)


def orbit_is_finite(datum: RootDatum, lam, budget: int = DEFAULT_TITS_BUDGET) -> bool:
    """Exact finiteness of the full orbit of a Tits-cone point.

    The orbit is finite iff every affine or indefinite component pairs
    trivially with lam, so that only finite-type components move it.
    """
    st = tits_cone_status(datum, lam, budget)
    if st == UNKNOWN:
        raise TitsConeUndecided(tuple(lam), budget)
    if st == NOT_IN_TITS_CONE:
        raise ValueError("orbit_is_finite expects a point of Y+")
    report = classify_components(datum)
    for comp in report.components:
        if comp.kind == FINITE:
            continue
        if any(v != 0 for v in _component_pairings(datum, comp, lam)):
            return False
    return True


# --- parabolic subgroups and the non-sphericity witness ---

@lru_cache(maxsize=None)
def _sub_classification(gcm: GCM, indices: tuple[int, ...]) -> ComponentReport:
    sub = gcm.submatrix(indices)
    from .root_system import build_realization

    return classify_components(build_realization(sub))


def parabolic_is_finite(datum: RootDatum, j: tuple[int, ...]) -> bool:
    """Whether the standard parabolic W_J is a finite group."""
    j = tuple(sorted(j))
    if not j:
        return True
    report = _sub_classification(datum.gcm, j)
    return all(c.kind == FINITE for c in report.components)


def suborbit_is_finite(datum: RootDatum, j: tuple[int, ...], v) -> bool:
    """Exact finiteness of W_J . v for a standard parabolic W_J.

    Finite iff every non-finite component of the sub-matrix on J pairs
    trivially with v; non-finite components act on any point they see
    with infinite orbit (translations in the affine case, unbounded
    hyperbolic drift in the indefinite one).
    """
    j = tuple(sorted(j))
    if not j:
        return True
    report = _sub_classification(datum.gcm, j)
    for comp in report.components:
        if comp.kind == FINITE:
            continue
        if any(datum.pairing(j[k], v) != 0 for k in comp.indices):
            return False
    return True


def parabolic_elements(datum: RootDatum, j: tuple[int, ...], cap: int = 100_000) -> list[WeylElement]:
    """All elements of a finite standard parabolic W_J, by closure."""
    gens = [simple_reflection(datum, i) for i in sorted(set(j))]
    elems = {identity(datum)}
    frontier = list(elems)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = multiply(x, g)
                if y not in elems:
                    if len(elems) >= cap:
                        raise BudgetExceeded(cap, "parabolic subgroup closure")
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(elems, key=lambda w: (w.length, w.word))


def face_point(datum: RootDatum, j_zero, j_pos) -> Point:
    """An integer point u with alpha_i(u) = 0 on J_zero and > 0 on J_pos.

    Solves the linear system exactly (free coordinates zero) and clears
    denominators, so the output is deterministic.
    """
    rows = []
    rhs = []
    for i in sorted(j_zero):
        rows.append(datum.roots[i])
        rhs.append(Fraction(0))
    for i in sorted(j_pos):
        rows.append(datum.roots[i])
        rhs.append(Fraction(1))
    sol = linalg.solve_exact(rows, rhs)
    if sol is None:
        raise AssertionError("face system is always solvable for a free realization")
    lcm = 1
    for f in sol:
        lcm = lcm * f.denominator // gcd(lcm, f.denominator)
    return tuple(int(f * lcm) for f in sol)


def _gcm_graph_path(gcm: GCM, sources, target: int) -> list[int] | None:
    """Shortest path in the nonzero-entry graph from any source to target."""
    from collections import deque

    prev: dict[int, int | None] = {}
    dq = deque()
    for s in sorted(sources):
        prev[s] = None
        dq.append(s)
    while dq:
        x = dq.popleft()
        if x == target:
            path = [x]
            while prev[path[-1]] is not None:
                path.append(prev[path[-1]])
            return list(reversed(path))
        for y in range(gcm.n):
            if y != x and gcm[x, y] != 0 and y not in prev:
                prev[y] = x
                dq.append(y)
    return None


def infinite_orbit_witness(
    datum: RootDatum,
    j_zero,
    j_pos=None,
    u: Point | None = None,
) -> WeylElement:
    """An element w such that W_{J_zero} . (w . u) is infinite.

    The face data is: alpha_i = 0 on J_zero, alpha_i > 0 on J_pos, with u
    an interior point.  Requires the parabolic on J_zero to be infinite
    and J_pos nonempty.  The construction: pick k whose coroot has
    infinite W_{J_zero}-orbit (preferring k in J_pos, which makes the
    connecting path trivial), walk a nonzero-pairing chain along a graph
    path from J_pos to k, and correct by r_k if the image still has
    finite orbit.
    """
    j_zero = tuple(sorted(set(j_zero)))
    if j_pos is None:
        j_pos = tuple(i for i in range(datum.n) if i not in j_zero)
    j_pos = tuple(sorted(set(j_pos)))
    if set(j_zero) & set(j_pos):
        raise ValueError("J_zero and J_pos must be disjoint")
    if parabolic_is_finite(datum, j_zero):
        raise FaceIsSpherical(j_zero)
    if not j_pos:
        raise FaceIsMinimal()
    if len(_graph_components_of(datum.gcm)) != 1:
        raise ValueError("matrix must be indecomposable; apply per component")
    if u is None:
        u = face_point(datum, j_zero, j_pos)

    k = next(
        (
            i
            for i in list(j_pos) + [i for i in range(datum.n) if i not in j_pos]
            if not suborbit_is_finite(datum, j_zero, datum.coroots[i])
        ),
        None,
    )
    if k is None:
        raise AssertionError("an infinite coroot orbit exists when W_J is infinite")
    path = _gcm_graph_path(datum.gcm, j_pos, k)
    if path is None:
        raise AssertionError("the graph of an indecomposable matrix is connected")

    def stage(x):
        # largest m with alpha_{path[m]}(x) != 0; pairings beyond it vanish
        m = None
        for idx in range(len(path)):
            if datum.pairing(path[idx], x) != 0:
                m = idx
        return m

    x = tuple(u)
    w = identity(datum)
    m = stage(x)
    assert m is not None
    while m < len(path) - 1:
        i = path[m]
        x = reflect(datum, i, x)
        w = multiply(simple_reflection(datum, i), w)
        m = stage(x)
    assert datum.pairing(k, x) != 0
    if suborbit_is_finite(datum, j_zero, x):
        w = multiply(simple_reflection(datum, k), w)
        x = reflect(datum, k, x)
    if suborbit_is_finite(datum, j_zero, x):
        raise AssertionError("one of the two candidates must have infinite orbit")
    return w


def _graph_components_of(gcm: GCM):
    from .root_system import _graph_components

    return _graph_components(gcm)


# --- JSON ---

def weyl_to_json(w: WeylElement) -> dict:
    return {"word": list(w.word), "matrix": [list(r) for r in w.matrix]}


def weyl_from_json(datum: RootDatum, data: dict) -> WeylElement:
    w = element_from_word(datum, data["word"])
    if "matrix" in data:
        given = tuple(tuple(int(x) for x in row) for row in data["matrix"])
        if given != w.matrix:
            raise ValueError("matrix does not match the word")
    return w
