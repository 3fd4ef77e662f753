"""Exact rational linear algebra on small matrices.

Everything here works over `fractions.Fraction` (or plain ints where
closure under the operation permits); no floating point is used anywhere.
Matrices are immutable tuples of tuples, vectors are tuples, so results
can be hashed and used as dictionary keys.
"""

from __future__ import annotations

import operator
from fractions import Fraction
from math import gcd

Vec = tuple[int, ...]
Mat = tuple[Vec, ...]


def dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(map(operator.add, u, v))


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(map(operator.sub, u, v))


def vec_scale(c: int, u: Vec) -> Vec:
    return tuple(c * a for a in u)


def identity_matrix(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = tuple(zip(*b))
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def mat_vec(a: Mat, v) -> Vec:
    return tuple(dot(row, v) for row in a)


def primitive(v: Vec) -> Vec:
    """Divide out the gcd and normalize the first nonzero entry positive."""
    g = 0
    for a in v:
        g = gcd(g, abs(a))
    if g == 0:
        return v
    w = tuple(a // g for a in v)
    for a in w:
        if a != 0:
            return w if a > 0 else tuple(-b for b in w)
    return w


def _as_fraction_rows(rows) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    m = _as_fraction_rows(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def kernel_basis(rows) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel {x : A x = 0}."""
    if not rows:
        return []
    ncols = len(rows[0])
    m, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, c in enumerate(pivots):
            x[c] = -m[r][f]
        basis.append(tuple(x))
    return basis


def kernel_basis_int(rows) -> list[Vec]:
    """Right-kernel basis scaled to primitive integer vectors."""
    out = []
    for v in kernel_basis(rows):
        lcm = 1
        for x in v:
            lcm = lcm * x.denominator // gcd(lcm, x.denominator)
        out.append(primitive(tuple(int(x * lcm) for x in v)))
    return out


def solve_exact(rows, rhs) -> tuple[Fraction, ...] | None:
    """One solution of A x = rhs over the rationals, or None if inconsistent.

    Free variables are set to zero, so the result is deterministic.
    """
    if not rows:
        return () if all(x == 0 for x in rhs) else None
    ncols = len(rows[0])
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    m, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = m[r][ncols]
    return tuple(x)


def integer_solution(rows, rhs) -> Vec | None:
    """Like solve_exact but returns None unless the solution is integral.

    Only valid as a uniqueness statement when the columns of A are
    linearly independent (the callers guarantee this).
    """
    x = solve_exact(rows, rhs)
    if x is None or any(f.denominator != 1 for f in x):
        return None
    return tuple(int(f) for f in x)


# --- Fourier-Motzkin feasibility for homogeneous strict/weak systems ---

Constraint = tuple[tuple[Fraction, ...], bool]  # (coefficients, strict): c.x > 0 or c.x >= 0


def fm_feasible(constraints: list[tuple[list, bool]]) -> bool:
    """Decide whether a homogeneous system of linear inequalities is feasible.

    Each constraint is (coefficients, strict) meaning sum(c_i x_i) > 0 when
    strict else >= 0.  Variables are eliminated one at a time; since the
    system is homogeneous the only terminal contradictions are of the form
    0 > 0.
    """
    cons: list[Constraint] = [
        (tuple(Fraction(c) for c in coeffs), strict) for coeffs, strict in constraints
    ]
    if not cons:
        return True
    nvars = len(cons[0][0])
    for var in range(nvars):
        pos, neg, rest = [], [], []
        for coeffs, strict in cons:
            c = coeffs[var]
            if c > 0:
                pos.append((coeffs, strict))
            elif c < 0:
                neg.append((coeffs, strict))
            else:
                rest.append((coeffs, strict))
        new = rest
        for pc, ps in pos:
            for nc, ns in neg:
                # eliminate: (-n_var)*p + p_var*n, valid since p_var>0, n_var<0
                a, b = -nc[var], pc[var]
                combo = tuple(a * p + b * q for p, q in zip(pc, nc))
                new.append((combo, ps or ns))
        cons = []
        for coeffs, strict in new:
            if all(c == 0 for c in coeffs):
                if strict:
                    return False  # 0 > 0
                continue
            cons.append((coeffs, strict))
        if not cons:
            return True
    return True


def exists_positive_solution(matrix, mode: str) -> bool:
    """Decide ``exists u > 0 with A u > 0`` (mode 'pos') or ``A u = 0`` (mode 'zero')."""
    n = len(matrix)
    cons: list[tuple[list, bool]] = []
    for i in range(n):
        e = [Fraction(0)] * n
        e[i] = Fraction(1)
        cons.append((e, True))  # u_i > 0
    for row in matrix:
        if mode == "pos":
            cons.append(([Fraction(x) for x in row], True))
        elif mode == "zero":
            cons.append(([Fraction(x) for x in row], False))
            cons.append(([Fraction(-x) for x in row], False))
        else:
            raise ValueError(mode)
    return fm_feasible(cons)
