"""Generalized Cartan matrices, free realizations and lattice arithmetic.

A root datum here is a matrix `A` together with a concrete integer lattice
`Y` (= Z^rank_y), simple coroots as vectors in Y and simple roots as
integer linear forms on Y, pairing to `A`.  The default realization has
dimension 2n - rank(A): coroots are the first n standard basis vectors,
and the roots are the columns of `A` extended by a primitive basis of
ker(A) so that they become linearly independent.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from . import linalg
from .errors import (
    AsymmetricZero,
    DependentCoroots,
    DependentRoots,
    DiagonalNotTwo,
    PairingMismatch,
    PositiveOffDiagonal,
    ZeroForm,
)

Point = tuple[int, ...]

FINITE = "Finite"
AFFINE = "Affine"
INDEFINITE = "Indefinite"


@dataclass(frozen=True)
class GCM:
    """A generalized Cartan matrix; construct through :func:`validate_gcm`."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(self.entries))

    def __hash__(self):
        return self._hash

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries[ij[0]][ij[1]]

    def submatrix(self, indices: tuple[int, ...]) -> "GCM":
        return GCM(tuple(tuple(self.entries[i][j] for j in indices) for i in indices))


def validate_gcm(matrix) -> GCM:
    """Check the three Cartan axioms and wrap the matrix.

    >>> validate_gcm([[2]]).n
    1
    """
    rows = tuple(tuple(int(x) for x in row) for row in matrix)
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("matrix must be square")
    for i in range(n):
        if rows[i][i] != 2:
            raise DiagonalNotTwo(i)
    for i in range(n):
        for j in range(n):
            if i != j and rows[i][j] > 0:
                raise PositiveOffDiagonal(i, j)
            if (rows[i][j] == 0) != (rows[j][i] == 0):
                raise AsymmetricZero(i, j)
    return GCM(rows)


@dataclass(frozen=True)
class RootDatum:
    """A GCM with a free realization on Y = Z^rank_y.

    `coroots[i]` is a vector in Y, `roots[i]` an integer linear form on Y
    (stored by its coordinates on the dual basis), and
    roots[j] . coroots[i] == gcm[i][j].
    """

    gcm: GCM
    rank_y: int
    coroots: tuple[Point, ...]
    roots: tuple[Point, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "_hash", hash((self.gcm, self.rank_y, self.coroots, self.roots))
        )

    def __hash__(self):
        return self._hash

    @property
    def n(self) -> int:
        return self.gcm.n

    def pairing(self, i: int, v) -> int:
        """alpha_i(v) for v in Y."""
        return linalg.dot(self.roots[i], v)

    def zero(self) -> Point:
        return (0,) * self.rank_y


def build_realization(gcm: GCM, custom: tuple[int, tuple, tuple] | None = None) -> RootDatum:
    """Construct a root datum for `gcm`.

    Without `custom`, builds the 2n - rank(A) dimensional realization:
    coroots are standard basis vectors, roots are the columns of A
    followed by extra coordinates given by a primitive integer basis of
    ker(A) (so each affine component sees one extra direction and every
    root stays a primitive-friendly integer form).  With
    ``custom = (rank_y, coroots, roots)`` the given data is validated.
    """
    n = gcm.n
    if custom is not None:
        rank_y, coroots, roots = custom
        coroots = tuple(tuple(int(x) for x in v) for v in coroots)
        roots = tuple(tuple(int(x) for x in v) for v in roots)
        if linalg.rank(list(roots)) < n:
            raise DependentRoots()
        if linalg.rank(list(coroots)) < n:
            raise DependentCoroots()
        for i in range(n):
            for j in range(n):
                if linalg.dot(roots[j], coroots[i]) != gcm[i, j]:
                    raise PairingMismatch(i, j)
        return RootDatum(gcm, rank_y, coroots, roots)

    kernel = linalg.kernel_basis_int(gcm.entries)
    extra = len(kernel)
    rank_y = n + extra
    coroots = tuple(
        tuple(1 if k == i else 0 for k in range(rank_y)) for i in range(n)
    )
    roots = tuple(
        tuple(gcm[i, j] for i in range(n)) + tuple(kernel[m][j] for m in range(extra))
        for j in range(n)
    )
    return RootDatum(gcm, rank_y, coroots, roots)


@dataclass(frozen=True)
class CorootVector:
    """Integer coordinates on the simple-coroot basis."""

    coords: Point

    @property
    def height(self) -> int:
        return sum(self.coords)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coords)


@lru_cache(maxsize=None)
def _coroot_rows(datum: RootDatum) -> tuple[tuple[int, ...], ...]:
    # matrix whose columns are the coroots, stored row-wise for the solver
    return tuple(
        tuple(datum.coroots[i][r] for i in range(datum.n)) for r in range(datum.rank_y)
    )


def q_coords(datum: RootDatum, v) -> CorootVector | None:
    """Coordinates of `v` on the coroot basis, if `v` lies in the integer span."""
    sol = linalg.integer_solution(_coroot_rows(datum), tuple(v))
    if sol is None:
        return None
    return CorootVector(sol)


def dominance_leq(datum: RootDatum, x, y) -> bool:
    """x <= y in dominance order: y - x is a nonnegative integer coroot sum."""
    q = q_coords(datum, linalg.vec_sub(tuple(y), tuple(x)))
    return q is not None and q.is_nonnegative()


def height_between(datum: RootDatum, lo, hi) -> int | None:
    """Height of hi - lo when lo <= hi in dominance order, else None."""
    q = q_coords(datum, linalg.vec_sub(tuple(hi), tuple(lo)))
    if q is None or not q.is_nonnegative():
        return None
    return q.height


@dataclass(frozen=True)
class Component:
    indices: tuple[int, ...]
    kind: str
    # primitive positive right-kernel vector of the component's sub-GCM,
    # indexed by `indices`; None unless kind == Affine.  Its root combination
    # is the invariant linear form delta, its transpose analogue below spans
    # the component's inessential directions inside the coroot span.
    delta_coeffs: tuple[int, ...] | None
    coroot_kernel: tuple[int, ...] | None


@dataclass(frozen=True)
class ComponentReport:
    components: tuple[Component, ...]

    def component_of(self, i: int) -> Component:
        for comp in self.components:
            if i in comp.indices:
                return comp
        raise IndexError(i)

    @property
    def kinds(self) -> tuple[str, ...]:
        return tuple(c.kind for c in self.components)


def _graph_components(gcm: GCM) -> list[tuple[int, ...]]:
    n = gcm.n
    seen: set[int] = set()
    comps = []
    for start in range(n):
        if start in seen:
            continue
        stack, block = [start], set()
        while stack:
            i = stack.pop()
            if i in block:
                continue
            block.add(i)
            for j in range(n):
                if j != i and gcm[i, j] != 0 and j not in block:
                    stack.append(j)
        seen |= block
        comps.append(tuple(sorted(block)))
    return comps


@lru_cache(maxsize=None)
def classify_components(datum: RootDatum) -> ComponentReport:
    """Partition I into connected blocks and decide the type trichotomy.

    Finite iff some u > 0 has A u > 0, Affine iff (not Finite and) some
    u > 0 has A u = 0, Indefinite otherwise; decided by exact rational
    Fourier-Motzkin elimination.
    """
    comps = []
    for indices in _graph_components(datum.gcm):
        sub = datum.gcm.submatrix(indices).entries
        if linalg.exists_positive_solution(sub, "pos"):
            kind, delta, cokernel = FINITE, None, None
        elif linalg.exists_positive_solution(sub, "zero"):
            kind = AFFINE
            ker = linalg.kernel_basis_int(sub)
            coker = linalg.kernel_basis_int(tuple(zip(*sub)))
            if len(ker) != 1 or len(coker) != 1:
                raise AssertionError("affine component must have corank one")
            delta = ker[0] if all(c > 0 for c in ker[0]) else tuple(-c for c in ker[0])
            cokernel = coker[0] if all(c > 0 for c in coker[0]) else tuple(-c for c in coker[0])
        else:
            kind, delta, cokernel = INDEFINITE, None, None
        comps.append(Component(indices, kind, delta, cokernel))
    return ComponentReport(tuple(comps))


def affine_delta(datum: RootDatum, comp: Component) -> Point:
    """The invariant linear form of an affine component, as a form on Y."""
    assert comp.kind == AFFINE
    form = [0] * datum.rank_y
    for c, i in zip(comp.delta_coeffs, comp.indices):
        for k in range(datum.rank_y):
            form[k] += c * datum.roots[i][k]
    return tuple(form)


def central_coroot(datum: RootDatum, comp: Component) -> Point:
    """The coroot-span generator of an affine component's inessential part."""
    assert comp.kind == AFFINE
    v = datum.zero()
    for c, i in zip(comp.coroot_kernel, comp.indices):
        v = linalg.vec_add(v, linalg.vec_scale(c, datum.coroots[i]))
    return v


def alpha_image_index(datum: RootDatum, i: int) -> int:
    """The positive generator g of alpha_i(Y) = g Z."""
    g = 0
    for x in datum.roots[i]:
        g = gcd(g, abs(x))
    if g == 0:
        raise ZeroForm(i)
    return g


# --- JSON round trip ---

def datum_to_json(datum: RootDatum) -> dict:
    return {
        "gcm": [list(row) for row in datum.gcm.entries],
        "rank_y": datum.rank_y,
        "coroots": [list(v) for v in datum.coroots],
        "roots": [list(v) for v in datum.roots],
    }


def datum_from_json(data: dict) -> RootDatum:
    gcm = validate_gcm(data["gcm"])
    if ("coroots" in data) != ("roots" in data):
        raise ValueError("custom realizations need both coroots and roots")
    if "coroots" in data:
        rank_y = data.get("rank_y")
        if rank_y is None:
            rank_y = len(data["coroots"][0])
        return build_realization(gcm, (rank_y, data["coroots"], data["roots"]))
    return build_realization(gcm)


if __name__ == "__main__":  # pragma: no cover
    import doctest

    doctest.testmod()
