"""Exact Laurent polynomials in the Hecke parameter classes.

The 2n symbols sigma_i, sigma_i' collapse into classes: sigma_i ~ sigma_i'
when alpha_i takes all integer values on Y, and all four symbols of i and j
merge when a_ij = a_ji = -1 (the generators are then conjugate).  One
canonical variable survives per class; polynomials are sparse integer maps
keyed by exponent vectors, and every variable is invertible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import OddExponent, ZeroSpecialization
from .root_system import RootDatum, alpha_image_index

Exponents = tuple[int, ...]


class LaurentPoly:
    """Sparse Laurent polynomial over Z; instances are never mutated."""

    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars: int, coeffs: dict[Exponents, int] | None = None):
        self.nvars = nvars
        self.coeffs = {e: c for e, c in (coeffs or {}).items() if c != 0}

    # --- constructors ---

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c: int) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: int(c)})

    @classmethod
    def variable(cls, nvars: int, k: int, power: int = 1) -> "LaurentPoly":
        exps = tuple(power if j == k else 0 for j in range(nvars))
        return cls(nvars, {exps: 1})

    @classmethod
    def monomial(cls, exps: Exponents, c: int = 1) -> "LaurentPoly":
        return cls(len(exps), {tuple(exps): int(c)})

    # --- structure ---

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == {(0,) * self.nvars: 1}

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def items_sorted(self):
        return sorted(self.coeffs.items())

    def __eq__(self, other):
        return (
            isinstance(other, LaurentPoly)
            and self.nvars == other.nvars
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    # --- arithmetic ---

    def _check(self, other: "LaurentPoly"):
        if self.nvars != other.nvars:
            raise ValueError("mixing polynomials over different parameter rings")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(self.nvars, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly(self.nvars, {e: c * other for e, c in self.coeffs.items()})
        self._check(other)
        out: dict[Exponents, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials are invertible")
            (e, c), = self.coeffs.items()
            if c not in (1, -1):
                raise ValueError("only unit-coefficient monomials are invertible")
            inv = LaurentPoly(self.nvars, {tuple(-x for x in e): c})
            return inv ** (-k)
        out = LaurentPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly | None":
        """Exact quotient self / other, or None when not divisible.

        Laurent exponents are first shifted to ordinary ones; division then
        runs by lexicographic leading-term elimination, which terminates
        because exponents are bounded below by zero.
        """
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero(self.nvars)
        n = self.nvars
        shift_f = tuple(min(e[k] for e in self.coeffs) for k in range(n))
        shift_g = tuple(min(e[k] for e in other.coeffs) for k in range(n))
        f = {tuple(a - s for a, s in zip(e, shift_f)): c for e, c in self.coeffs.items()}
        g = {tuple(a - s for a, s in zip(e, shift_g)): c for e, c in other.coeffs.items()}
        lt_g = max(g)
        cg = g[lt_g]
        quotient: dict[Exponents, int] = {}
        while f:
            lt_f = max(f)
            diff = tuple(a - b for a, b in zip(lt_f, lt_g))
            if any(d < 0 for d in diff):
                return None
            c, rem = divmod(f[lt_f], cg)
            if rem != 0:
                return None
            quotient[diff] = c
            for e, ce in g.items():
                key = tuple(a + b for a, b in zip(diff, e))
                val = f.get(key, 0) - c * ce
                if val:
                    f[key] = val
                else:
                    f.pop(key, None)
        unshift = tuple(a - b for a, b in zip(shift_f, shift_g))
        return LaurentPoly(
            n, {tuple(a + b for a, b in zip(e, unshift)): c for e, c in quotient.items()}
        )

    # --- evaluation ---

    def eval_sq(self, values) -> int | Fraction:
        """Specialize every squared variable to an integer (q-style values).

        `values[k]` is the value given to the square of variable k, so all
        exponents must be even; negative exponents produce exact fractions.
        """
        values = [int(v) for v in values]
        if len(values) != self.nvars:
            raise ValueError("one value per parameter class required")
        if any(v == 0 for v in values):
            raise ZeroSpecialization()
        total = Fraction(0)
        for e, c in self.coeffs.items():
            if any(x % 2 for x in e):
                raise OddExponent()
            term = Fraction(c)
            for x, v in zip(e, values):
                term *= Fraction(v) ** (x // 2)
            total += term
        return int(total) if total.denominator == 1 else total

    # --- rendering / serialization ---

    def render(self, names) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in self.items_sorted():
            factors = [
                (names[k] if x == 1 else f"{names[k]}^{x}")
                for k, x in enumerate(e)
                if x != 0
            ]
            mono = "·".join(factors)
            if not mono:
                parts.append((c, str(abs(c))))
            elif abs(c) == 1:
                parts.append((c, mono))
            else:
                parts.append((c, f"{abs(c)}·{mono}"))
        out = ""
        for c, text in parts:
            if not out:
                out = ("-" if c < 0 else "") + text
            else:
                out += (" - " if c < 0 else " + ") + text
        return out

    def __repr__(self):
        return f"LaurentPoly({self.render([f's{k + 1}' for k in range(self.nvars)])})"

    def to_json(self):
        return [[list(e), c] for e, c in self.items_sorted()]

    @classmethod
    def from_json(cls, nvars: int, data) -> "LaurentPoly":
        return cls(nvars, {tuple(int(x) for x in e): int(c) for e, c in data})


@dataclass(frozen=True)
class ParamClasses:
    """The partition of {sigma_i, sigma_i'} into identified classes.

    Symbol (i, primed) is stored at slot 2*i + primed; `class_of[slot]`
    is the class index, classes ordered by their smallest slot.
    """

    n: int
    class_of: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.n, self.class_of)))

    def __hash__(self):
        return self._hash

    @property
    def nclasses(self) -> int:
        return max(self.class_of) + 1

    def class_index(self, i: int, primed: bool = False) -> int:
        return self.class_of[2 * i + (1 if primed else 0)]

    def classes(self) -> list[list[tuple[int, bool]]]:
        out: list[list[tuple[int, bool]]] = [[] for _ in range(self.nclasses)]
        for slot, cls in enumerate(self.class_of):
            out[cls].append((slot // 2, bool(slot % 2)))
        return out

    def names(self) -> tuple[str, ...]:
        if self.nclasses == 1:
            return ("σ",)
        out = []
        for c in self.classes():
            i, primed = min(c, key=lambda t: 2 * t[0] + (1 if t[1] else 0))
            out.append(f"σ{i + 1}" + ("'" if primed else ""))
        return tuple(out)

    # --- polynomial factories ---

    def zero(self) -> LaurentPoly:
        return LaurentPoly.zero(self.nclasses)

    def one(self) -> LaurentPoly:
        return LaurentPoly.const(self.nclasses, 1)

    def const(self, c: int) -> LaurentPoly:
        return LaurentPoly.const(self.nclasses, c)

    def sigma(self, i: int, primed: bool = False, power: int = 1) -> LaurentPoly:
        return LaurentPoly.variable(self.nclasses, self.class_index(i, primed), power)

    def sigma_minus_inverse(self, i: int, primed: bool = False) -> LaurentPoly:
        k = self.class_index(i, primed)
        n = self.nclasses
        return LaurentPoly.variable(n, k, 1) - LaurentPoly.variable(n, k, -1)

    def same_class(self, i: int) -> bool:
        return self.class_index(i, False) == self.class_index(i, True)

    def word_monomial(self, word, power: int = 1) -> LaurentPoly:
        """Product of the unprimed class variables along a word, to `power`."""
        exps = [0] * self.nclasses
        for i in word:
            exps[self.class_index(i, False)] += power
        return LaurentPoly.monomial(tuple(exps))


def build_param_ring(datum: RootDatum) -> ParamClasses:
    """Compute the finest symbol partition closed under both identification rules."""
    n = datum.n
    parent = list(range(2 * n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for i in range(n):
        if alpha_image_index(datum, i) == 1:
            union(2 * i, 2 * i + 1)
    a = datum.gcm.entries
    for i in range(n):
        for j in range(i + 1, n):
            if a[i][j] == -1 and a[j][i] == -1:
                union(2 * i, 2 * j)
                union(2 * i, 2 * i + 1)
                union(2 * j, 2 * j + 1)

    roots_sorted = sorted({find(x) for x in range(2 * n)})
    index = {r: k for k, r in enumerate(roots_sorted)}
    return ParamClasses(n, tuple(index[find(x)] for x in range(2 * n)))


@lru_cache(maxsize=None)
def param_ring_for(datum: RootDatum) -> ParamClasses:
    return build_param_ring(datum)
