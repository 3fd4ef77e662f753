"""Truncations of the completed Hecke algebra and its center.

An element of the completion is an infinite series with almost-finite
support: finitely many Weyl components, and Y-support dominated by
finitely many generators.  We never materialize the series; a
TruncatedElement stores exact coefficients on a declared region together
with a support certificate, and every operation certifies, from the
certificates alone, that no coefficient outside the known regions can
reach the requested target before summing what it knows.

The product's finiteness book-keeping needs one genuine strengthening of
the support bounds: when the left factor has Weyl components other than
the identity, the commutation windows pull the right factor's support
toward the target from unboundedly deep orbit points unless the right
certificate also dominates the *dominant representatives* of its support
(the `dominant` flag).  Without that flag such products are refused
rather than silently truncated; there are explicit series for which the
coefficient sums genuinely diverge.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace

from . import linalg
from .coeff_ring import LaurentPoly, ParamClasses
from .errors import CapExceeded, InsufficientSource, NotDominant, TitsConeUndecided
from .hecke_bl import BLElement, mult_bl, r_window
from .root_system import (
    FINITE,
    Point,
    RootDatum,
    classify_components,
    height_between,
    q_coords,
)
from .weyl import (
    IN_TITS_CONE,
    UNKNOWN,
    WeylElement,
    bruhat_interval,
    dominant_representative,
    identity,
    in_y_plus,
    multiply,
    orbit_enumerate,
    orbit_is_finite,
    tits_cone_status,
)

CENTRAL = "Central"
NOT_CENTRAL = "NotCentral"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Region:
    """Where coefficients are known exactly.

    Either a dominance-and-height truncated cone (`generators`, `height`),
    optionally restricted to the Tits cone, or an explicit finite point
    set.  Cones are the shape all the finiteness arguments are phrased in;
    point sets appear as images of shifted or filtered regions.
    """

    generators: tuple[Point, ...] | None = None
    height: int | None = None
    require_tits: bool = True
    points: frozenset[Point] | None = None

    def __post_init__(self):
        if (self.points is None) == (self.generators is None):
            raise ValueError("exactly one of generators/points must be given")
        if self.generators is not None and (self.height is None or self.height < 0):
            raise ValueError("cone regions need a nonnegative height budget")

    @classmethod
    def cone(cls, generators, height: int, require_tits: bool = True) -> "Region":
        return cls(tuple(tuple(g) for g in generators), height, require_tits, None)

    @classmethod
    def explicit(cls, points) -> "Region":
        return cls(None, None, True, frozenset(tuple(p) for p in points))

    def contains(self, datum: RootDatum, lam) -> bool:
        lam = tuple(lam)
        if self.points is not None:
            return lam in self.points
        for g in self.generators:
            d = height_between(datum, lam, g)
            if d is not None and d <= self.height:
                if not self.require_tits or in_y_plus(datum, lam):
                    return True
        return False

    def enumerate(self, datum: RootDatum) -> list[Point]:
        if self.points is not None:
            return sorted(self.points)
        seen: set[Point] = set()
        for g in self.generators:
            for q in _bounded_compositions(datum.n, self.height):
                lam = tuple(g)
                for i, c in enumerate(q):
                    lam = linalg.vec_sub(lam, linalg.vec_scale(c, datum.coroots[i]))
                if lam in seen:
                    continue
                if not self.require_tits or in_y_plus(datum, lam):
                    seen.add(lam)
        return sorted(seen)

    def covers(self, datum: RootDatum, other: "Region") -> bool:
        return all(self.contains(datum, p) for p in other.enumerate(datum))

    def translated(self, mu) -> "Region":
        mu = tuple(mu)
        if self.points is not None:
            return Region.explicit({linalg.vec_add(p, mu) for p in self.points})
        return Region.cone(
            tuple(linalg.vec_add(g, mu) for g in self.generators),
            self.height,
            require_tits=False,
        )

    def to_json(self):
        if self.points is not None:
            return {"points": [list(p) for p in sorted(self.points)]}
        return {
            "gens": [list(g) for g in self.generators],
            "height": self.height,
            "require_tits": self.require_tits,
        }

    @classmethod
    def from_json(cls, data) -> "Region":
        if "points" in data:
            return cls.explicit(tuple(tuple(p) for p in data["points"]))
        return cls.cone(
            tuple(tuple(g) for g in data["gens"]),
            int(data["height"]),
            bool(data.get("require_tits", True)),
        )


def _bounded_compositions(n: int, budget: int):
    """All q in N^n with sum(q) <= budget."""
    if n == 0:
        yield ()
        return
    for first in range(budget + 1):
        for rest in _bounded_compositions(n - 1, budget - first):
            yield (first,) + rest


def region_enumerate(datum: RootDatum, region: Region) -> list[Point]:
    """Complete, sorted listing of a region's points."""
    return region.enumerate(datum)


@dataclass(frozen=True)
class AFCertificate:
    """Global support bounds for an element of the completion.

    Certifies supp_W inside `w_part` and every Y-support point below some
    generator in dominance order.  When `dominant` is set, generators
    additionally bound the dominant representatives of the Y-support;
    that stronger reading is what the product's finiteness engine needs
    on its right-hand factor whenever the left factor has windows.
    """

    generators: tuple[Point, ...]
    w_part: tuple[WeylElement, ...]
    dominant: bool = False

    def allows_y(self, datum: RootDatum, lam) -> bool:
        """Whether a support point at lam is compatible with the bounds.

        The dominant reading also constrains the dominant representative,
        which certifies far more points as zero (whole orbits whose top
        exceeds every generator).
        """
        if self.dominant:
            rep = dominant_representative(datum, lam)
            if rep.status == IN_TITS_CONE:
                return any(
                    height_between(datum, rep.dominant, g) is not None
                    for g in self.generators
                )
        return any(height_between(datum, lam, g) is not None for g in self.generators)

    def to_json(self):
        return {
            "gens": [list(g) for g in self.generators],
            "w_part": [list(w.word) for w in self.w_part],
            "dominant": self.dominant,
        }


class TruncatedElement:
    """Exact coefficients on a region, plus an almost-finite certificate.

    A region of None means the element is finite and the stored dictionary
    *is* the element (every coefficient is known).  `in_bl_bar` marks
    elements of the bimodule completion whose Y-support may leave the Tits
    cone (they arise from translating by non-dominant monomials).
    """

    __slots__ = ("datum", "classes", "region", "coeffs", "certificate", "in_bl_bar")

    def __init__(
        self,
        datum: RootDatum,
        classes: ParamClasses,
        region: Region | None,
        coeffs,
        certificate: AFCertificate,
        in_bl_bar: bool = False,
    ):
        self.datum = datum
        self.classes = classes
        self.region = region
        self.coeffs = {
            (tuple(lam), w): p for (lam, w), p in coeffs.items() if not p.is_zero()
        }
        ws = tuple(
            sorted(
                set(certificate.w_part) | {w for _, w in self.coeffs},
                key=lambda w: (w.length, w.word),
            )
        )
        self.certificate = replace(certificate, w_part=ws)
        self.in_bl_bar = in_bl_bar
        if self.region is not None:
            for lam, w in self.coeffs:
                if not self.region.contains(datum, lam):
                    raise ValueError(f"coefficient at {lam} lies outside the region")

    # --- exactness bookkeeping ---

    def knows(self, lam, w: WeylElement) -> bool:
        """Whether the coefficient at (lam, w) is determined by this truncation."""
        lam = tuple(lam)
        if self.region is None:
            return True
        if w not in self.certificate.w_part:
            return True
        if not self.in_bl_bar and tits_cone_status(self.datum, lam) != IN_TITS_CONE:
            return True
        if not self.certificate.allows_y(self.datum, lam):
            return True
        return self.region.contains(self.datum, lam)

    def coeff(self, lam, w: WeylElement) -> LaurentPoly:
        lam = tuple(lam)
        got = self.coeffs.get((lam, w))
        if got is not None:
            return got
        if not self.knows(lam, w):
            raise InsufficientSource(f"coefficient at ({lam}, {w}) is outside the known region")
        return self.classes.zero()

    def support_w(self) -> tuple[WeylElement, ...]:
        return self.certificate.w_part

    @classmethod
    def from_bl(cls, element: BLElement) -> "TruncatedElement":
        """Wrap a finite element; certificate generators are the dominant reps."""
        gens: set[Point] = set()
        for lam in element.support_y():
            rep = dominant_representative(element.datum, lam)
            if rep.status != IN_TITS_CONE:
                raise ValueError("finite elements of the completion must be supported in Y+")
            gens.add(rep.dominant)
        ws = tuple(sorted(element.support_w(), key=lambda w: (w.length, w.word)))
        if not gens:
            gens = {element.datum.zero()}
        cert = AFCertificate(tuple(sorted(gens)), ws, dominant=True)
        return cls(element.datum, element.classes, None, dict(element.terms), cert)

    def restrict(self, datum_region: Region) -> "TruncatedElement":
        coeffs = {
            (lam, w): p
            for (lam, w), p in self.coeffs.items()
            if datum_region.contains(self.datum, lam)
        }
        return TruncatedElement(
            self.datum, self.classes, datum_region, coeffs, self.certificate, self.in_bl_bar
        )

    def as_bl(self) -> BLElement:
        """The known coefficients as a finite element (only valid when region is None)."""
        if self.region is not None:
            raise ValueError("truncated element is not finite")
        return BLElement(self.datum, self.classes, dict(self.coeffs))

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedElement)
            and self.datum == other.datum
            and self.region == other.region
            and self.coeffs == other.coeffs
        )

    def to_json(self):
        return {
            "region": None if self.region is None else self.region.to_json(),
            "certificate": self.certificate.to_json(),
            "coeffs": [
                {"lambda": list(lam), "word": list(w.word), "coeff": p.to_json()}
                for (lam, w), p in sorted(
                    self.coeffs.items(), key=lambda kv: (kv[0][0], kv[0][1].word)
                )
            ],
            "in_bl_bar": self.in_bl_bar,
        }


def truncated_from_json(datum: RootDatum, classes: ParamClasses, data) -> TruncatedElement:
    from .weyl import element_from_word

    region = None if data.get("region") is None else Region.from_json(data["region"])
    cert_data = data["certificate"]
    cert = AFCertificate(
        tuple(tuple(g) for g in cert_data["gens"]),
        tuple(element_from_word(datum, w) for w in cert_data["w_part"]),
        bool(cert_data.get("dominant", False)),
    )
    coeffs = {}
    for entry in data["coeffs"]:
        key = (tuple(entry["lambda"]), element_from_word(datum, entry["word"]))
        coeffs[key] = LaurentPoly.from_json(classes.nclasses, entry["coeff"])
    return TruncatedElement(
        datum, classes, region, coeffs, cert, bool(data.get("in_bl_bar", False))
    )


# --- the product's certification engine ---

def _dominance_interval(datum: RootDatum, lo: Point, hi: Point) -> list[Point]:
    q = q_coords(datum, linalg.vec_sub(hi, lo))
    if q is None or not q.is_nonnegative():
        return []
    out = []
    for combo in itertools.product(*(range(c + 1) for c in q.coords)):
        x = tuple(lo)
        for i, c in enumerate(combo):
            x = linalg.vec_add(x, linalg.vec_scale(c, datum.coroots[i]))
        out.append(x)
    return out


def _reverse_window(datum: RootDatum, u: WeylElement, nu: Point, kappas, cap: int = 50_000):
    """All mu with nu in R_u(mu), pruned by the dominance bounds `kappas`.

    Sound because every point of every intermediate window (and its
    reflection) is dominated by mu^{++}, hence by some kappa; that turns
    the two unbounded string directions into finite ranges.
    """
    caps = [height_between(datum, nu, k) for k in kappas]
    caps = [c for c in caps if c is not None]
    if not caps:
        return set()
    budget = max(caps)  # max height climb above nu allowed for any chain point

    best_room: dict[tuple[WeylElement, Point], int] = {}
    results: set[Point] = set()

    def rec(v: WeylElement, x: Point, room: int):
        key = (v, x)
        if best_room.get(key, -1) >= room:
            return
        if len(best_room) >= cap:
            raise CapExceeded("reverse window search exceeded its cap")
        best_room[key] = room
        if not v.word:
            results.add(x)
            return
        from .weyl import left_descents, simple_reflection

        for i in left_descents(v):
            rest = multiply(simple_reflection(datum, i), v)
            m = datum.pairing(i, x)
            co = datum.coroots[i]
            # x' = x + j co with x on the segment [x', r_i x'].  Every chain
            # point and its reflection is dominated by some kappa, so the
            # remaining climb `room` caps j above, and the reflection
            # height h(x) - m - j caps it below.
            for j in range(max(0, -m), room + 1):
                xp = linalg.vec_add(x, linalg.vec_scale(j, co))
                rec(rest, xp, room - j)
            for j in range(-m - room, min(0, -m) + 1):
                xp = linalg.vec_add(x, linalg.vec_scale(j, co))
                rec(rest, xp, room - j)

    rec(u, tuple(nu), budget)
    return results


def _certify_targets(
    target_points,
    a: TruncatedElement,
    b: TruncatedElement,
    u_cap: int,
    strict: bool = True,
):
    """Check that every certificate-possible contribution to the targets is known.

    Returns the set of target points that are fully certified; with
    `strict` a failure raises InsufficientSource instead.
    """
    datum = a.datum
    wa = a.certificate.w_part
    wb = b.certificate.w_part
    for u in wa:
        if u.length > u_cap:
            raise CapExceeded(f"left Weyl support length {u.length} exceeds u_cap={u_cap}")
    nontrivial = any(u.length > 0 for u in wa)
    if nontrivial and b.region is not None and not b.certificate.dominant:
        raise InsufficientSource(
            "left factor has nontrivial Weyl support; the right factor's certificate "
            "must carry dominant support bounds for the product to be certifiable"
        )

    good = set()
    for rho in target_points:
        rho = tuple(rho)
        try:
            _certify_single(datum, rho, a, b)
            good.add(rho)
        except InsufficientSource:
            if strict:
                raise
    return good


def _certify_single(datum, rho: Point, a: TruncatedElement, b: TruncatedElement):
    wa = a.certificate.w_part
    if a.region is None and b.region is None:
        return
    if b.region is None:
        # right factor finite: windows forward from its explicit support
        for u in wa:
            for (mu, v) in b.coeffs:
                for nu in r_window(datum, u, mu):
                    lam = linalg.vec_sub(rho, nu)
                    if not a.knows(lam, u):
                        raise InsufficientSource(
                            f"left factor unknown at ({lam}, {u}) needed for target {rho}"
                        )
        return

    def lam_candidates(u):
        if a.region is None:
            # the left support is explicit; only its points can contribute
            return sorted({lam for (lam, uu) in a.coeffs if uu == u})
        out: set[Point] = set()
        for ga in a.certificate.generators:
            for gb in b.certificate.generators:
                lo = linalg.vec_sub(rho, gb)
                out.update(_dominance_interval(datum, lo, ga))
        return sorted(out)

    for u in wa:
        kappas = b.certificate.generators
        for lam in lam_candidates(u):
            nu = linalg.vec_sub(rho, lam)
            if u.length == 0:
                mus = {nu}
            else:
                mus = _reverse_window(datum, u, nu, kappas)
            mus = {
                mu
                for mu in mus
                if b.certificate.allows_y(datum, mu)
                and (b.in_bl_bar or tits_cone_status(datum, mu) == IN_TITS_CONE)
            }
            if not mus:
                continue
            if not a.knows(lam, u):
                raise InsufficientSource(
                    f"left factor unknown at ({lam}, {u}) for target {rho}"
                )
            for mu in mus:
                for v in b.certificate.w_part:
                    if not b.knows(mu, v):
                        raise InsufficientSource(
                            f"right factor unknown at ({mu}, {v}) for target {rho}"
                        )


def _accumulate_product(a: TruncatedElement, b: TruncatedElement):
    """Exact product of the known coefficient dictionaries."""
    xa = BLElement(a.datum, a.classes, dict(a.coeffs))
    xb = BLElement(b.datum, b.classes, dict(b.coeffs))
    return mult_bl(xa, xb)


def _product_certificate(a: TruncatedElement, b: TruncatedElement) -> AFCertificate:
    gens = {
        linalg.vec_add(ga, gb)
        for ga in a.certificate.generators
        for gb in b.certificate.generators
    }
    ws: set[WeylElement] = set()
    for u in a.certificate.w_part:
        interval = bruhat_interval(u)
        for v in b.certificate.w_part:
            ws |= {multiply(x, v) for x in interval}
    return AFCertificate(
        tuple(sorted(gens)),
        tuple(sorted(ws, key=lambda w: (w.length, w.word))),
        dominant=a.certificate.dominant and b.certificate.dominant,
    )


def mult_truncated(
    a: TruncatedElement, b: TruncatedElement, target: Region, u_cap: int = 8
) -> TruncatedElement:
    """Exact coefficients of a * b on the target region.

    Certifies first, from the two certificates, that nothing outside the
    known regions can contribute to any target coefficient, then sums the
    finite product of the known dictionaries and restricts.
    """
    if a.datum != b.datum or a.classes != b.classes:
        raise ValueError("factors live over different data")
    if a.in_bl_bar or b.in_bl_bar:
        raise ValueError("the completed product is defined on Y+-supported elements")
    datum = a.datum
    points = target.enumerate(datum)
    _certify_targets(points, a, b, u_cap)
    full = _accumulate_product(a, b)
    point_set = set(points)
    coeffs = {
        (lam, w): p for (lam, w), p in full.terms.items() if lam in point_set
    }
    return TruncatedElement(
        datum, a.classes, target, coeffs, _product_certificate(a, b)
    )


def compute_source_region(
    datum: RootDatum,
    target: Region,
    cert_a: AFCertificate,
    cert_b: AFCertificate,
    u_cap: int = 8,
) -> tuple[Region, Region]:
    """Regions on which the factors must be exact for the target to be exact.

    Runs the same candidate enumeration as the product engine and wraps
    the needed points in dominance-height cones; monotone in the target.
    """
    for u in cert_a.w_part:
        if u.length > u_cap:
            raise CapExceeded(f"left Weyl support length {u.length} exceeds u_cap={u_cap}")
    nontrivial = any(u.length > 0 for u in cert_a.w_part)
    if nontrivial and not cert_b.dominant:
        raise InsufficientSource(
            "right certificate must carry dominant bounds when the left factor "
            "has nontrivial Weyl support"
        )
    need_a: set[Point] = set()
    need_b: set[Point] = set()
    for rho in target.enumerate(datum):
        for u in cert_a.w_part:
            for ga in cert_a.generators:
                for gb in cert_b.generators:
                    lo = linalg.vec_sub(rho, gb)
                    for lam in _dominance_interval(datum, lo, ga):
                        nu = linalg.vec_sub(rho, lam)
                        if u.length == 0:
                            need_a.add(lam)
                            need_b.add(nu)
                        else:
                            mus = _reverse_window(datum, u, nu, cert_b.generators)
                            mus = {m for m in mus if cert_b.allows_y(datum, m)}
                            if mus:
                                need_a.add(lam)
                                need_b |= mus
    def wrap(points, gens):
        drop = 0
        for p in points:
            ds = [height_between(datum, p, g) for g in gens]
            ds = [d for d in ds if d is not None]
            if ds:
                drop = max(drop, min(ds))
        return Region.cone(gens, drop)

    return wrap(need_a, cert_a.generators), wrap(need_b, cert_b.generators)


# --- the Y-bimodule action ---

def bimodule_act(
    mu, a: TruncatedElement, side: str, target: Region | None = None
) -> TruncatedElement:
    """Translate by a Z-monomial of arbitrary sign.

    On the left the coefficients shift wholesale and the region follows;
    on the right each Weyl component drags a commutation window across mu,
    so exactness survives only where every pulled-back source is known
    (computed pointwise; pass a target to choose the output coordinates).
    """
    mu = tuple(mu)
    datum, classes = a.datum, a.classes
    if side == "left":
        coeffs = {
            (linalg.vec_add(lam, mu), w): p for (lam, w), p in a.coeffs.items()
        }
        region = None if a.region is None else a.region.translated(mu)
        gens = tuple(sorted(linalg.vec_add(g, mu) for g in a.certificate.generators))
        cert = AFCertificate(gens, a.certificate.w_part, a.certificate.dominant)
        leaves = any(
            tits_cone_status(datum, lam) != IN_TITS_CONE for (lam, _) in coeffs
        )
        return TruncatedElement(
            datum, classes, region, coeffs, cert, in_bl_bar=a.in_bl_bar or leaves
        )
    if side != "right":
        raise ValueError("side must be 'left' or 'right'")

    # right action: expand each H_w over its window at mu
    zero = classes.zero()
    out: dict[tuple[Point, WeylElement], LaurentPoly] = {}
    basis_cache: dict[WeylElement, BLElement] = {}
    for (lam, w), c in a.coeffs.items():
        if w not in basis_cache:
            from .hecke_bl import _basis_product

            basis_cache[w] = _basis_product(datum, classes, w, mu, identity(datum))
        for (nu, t), cz in basis_cache[w].terms.items():
            key = (linalg.vec_add(lam, nu), t)
            prod = c * cz
            if not prod.is_zero():
                out[key] = out.get(key, zero) + prod

    gens = tuple(sorted(linalg.vec_add(g, mu) for g in a.certificate.generators))
    ws: set[WeylElement] = set()
    for w in a.certificate.w_part:
        ws |= bruhat_interval(w)
    cert = AFCertificate(
        gens, tuple(sorted(ws, key=lambda x: (x.length, x.word))), a.certificate.dominant
    )

    if a.region is None:
        return TruncatedElement(datum, classes, None, out, cert, in_bl_bar=a.in_bl_bar)

    # keep only output coordinates whose every pulled-back source is known
    if target is not None:
        candidates = set(map(tuple, target.enumerate(datum)))
    else:
        candidates = {lam for (lam, _) in out}
    certified = set()
    for rho in candidates:
        ok = True
        for w in a.certificate.w_part:
            for nu in r_window(datum, w, mu):
                if not a.knows(linalg.vec_sub(rho, nu), w):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            certified.add(rho)
    if target is not None and not certified >= set(map(tuple, target.enumerate(datum))):
        missing = sorted(set(map(tuple, target.enumerate(datum))) - certified)
        raise InsufficientSource(f"right action not exact at {missing[:3]}...")
    region = Region.explicit(certified)
    coeffs = {(lam, w): p for (lam, w), p in out.items() if lam in certified}
    leaves = any(tits_cone_status(datum, lam) != IN_TITS_CONE for (lam, _) in coeffs)
    return TruncatedElement(
        datum, classes, region, coeffs, cert, in_bl_bar=a.in_bl_bar or leaves
    )


# --- orbit sums: the E-basis of the invariant completion ---

@dataclass(frozen=True)
class EFunction:
    """Finitely many dominant weights with coefficients (almost-finite in Y^{++})."""

    datum: RootDatum
    classes: ParamClasses
    coeffs: tuple[tuple[Point, LaurentPoly], ...]

    @classmethod
    def single(cls, datum, classes, lam, coeff: LaurentPoly | None = None) -> "EFunction":
        return cls(datum, classes, ((tuple(lam), coeff or classes.one()),))

    def support(self):
        return [lam for lam, _ in self.coeffs]


def e_function_expand(f: EFunction, target: Region) -> TruncatedElement:
    """Coefficients of sum_lam x_lam E(lam) on the target region.

    E(lam) is the orbit sum of lam; a target point rho picks up x_lam
    exactly when its dominant representative is lam.
    """
    datum, classes = f.datum, f.classes
    table = {}
    for lam, c in f.coeffs:
        rep = dominant_representative(datum, lam)
        if rep.status != IN_TITS_CONE or rep.dominant != tuple(lam):
            raise NotDominant(lam)
        table[tuple(lam)] = c
    e = identity(datum)
    coeffs = {}
    for rho in target.enumerate(datum):
        rep = dominant_representative(datum, rho)
        if rep.status != IN_TITS_CONE:
            raise TitsConeUndecided(rho, 0)
        c = table.get(rep.dominant)
        if c is not None:
            coeffs[(rho, e)] = c
    cert = AFCertificate(tuple(sorted(table)), (e,), dominant=True)
    return TruncatedElement(datum, classes, target, coeffs, cert)


# --- center ---

@dataclass(frozen=True)
class CenterVerdict:
    status: str
    probe: BLElement | None = None
    coordinate: tuple[Point, WeylElement] | None = None
    detail: str = ""


def _probe_elements(a: TruncatedElement, z_probes) -> list[BLElement]:
    datum, classes = a.datum, a.classes
    probes = [BLElement.h_word(datum, classes, [i]) for i in range(datum.n)]
    if z_probes is None:
        z_probes = a.certificate.generators
    for mu in z_probes:
        if in_y_plus(datum, mu):
            probes.append(BLElement.z_monomial(datum, classes, mu))
    return probes


def center_test(
    a: TruncatedElement, z_probes=None, u_cap: int = 8
) -> CenterVerdict:
    """Decide centrality of a truncated element as far as its region allows.

    Any certified coordinate where a probe fails to commute gives
    NotCentral.  Central needs the structural characterization: identity
    Weyl support and orbit-invariant coefficients, with every relevant
    orbit finite and fully determined by the region and certificate.
    Everything else is Inconclusive: a truncation can only ever verify
    centrality up to what it sees.
    """
    datum, classes = a.datum, a.classes
    for p in _probe_elements(a, z_probes):
        tp = TruncatedElement.from_bl(p)
        lhs = _accumulate_product(a, tp)
        rhs = _accumulate_product(tp, a)
        cands = {lam for (lam, _) in lhs.terms} | {lam for (lam, _) in rhs.terms}
        cands |= {lam for (lam, _) in a.coeffs}
        try:
            ok_l = _certify_targets(cands, a, tp, u_cap, strict=False)
            ok_r = _certify_targets(cands, tp, a, u_cap, strict=False)
        except (InsufficientSource, CapExceeded):
            continue
        certified = ok_l & ok_r
        keys = {k for k in set(lhs.terms) | set(rhs.terms) if k[0] in certified}
        for key in sorted(keys, key=lambda k: (k[0], k[1].word)):
            cl = lhs.terms.get(key, classes.zero())
            cr = rhs.terms.get(key, classes.zero())
            if cl != cr:
                return CenterVerdict(
                    NOT_CENTRAL,
                    probe=p,
                    coordinate=key,
                    detail=f"a*x and x*a differ at {key[0]} H_{key[1].word}",
                )

    # structural certification for a Central verdict
    if any(w.word for (_, w) in a.coeffs):
        return CenterVerdict(
            INCONCLUSIVE,
            detail="nontrivial Weyl support in the region but no certified witness",
        )
    if a.region is None:
        points = sorted({lam for (lam, _) in a.coeffs})
    else:
        points = a.region.enumerate(datum)
    e = identity(datum)
    seen_orbits: set[Point] = set()
    for lam in points:
        rep = dominant_representative(datum, lam)
        if rep.status != IN_TITS_CONE:
            continue
        if rep.dominant in seen_orbits:
            continue
        seen_orbits.add(rep.dominant)
        if not orbit_is_finite(datum, rep.dominant):
            if not a.coeff(lam, e).is_zero():
                return CenterVerdict(
                    INCONCLUSIVE,
                    detail=f"orbit of {rep.dominant} is infinite; invariance not checkable",
                )
            continue
        orbit = orbit_enumerate(datum, rep.dominant)
        if not orbit.complete:
            return CenterVerdict(INCONCLUSIVE, detail="orbit enumeration capped")
        values = []
        for mu in orbit:
            if not a.knows(mu, e):
                return CenterVerdict(
                    INCONCLUSIVE,
                    detail=f"orbit of {rep.dominant} leaves the region at {mu}",
                )
            values.append(a.coeff(mu, e))
        if any(v != values[0] for v in values):
            return CenterVerdict(
                INCONCLUSIVE,
                detail=f"coefficients on the orbit of {rep.dominant} differ "
                "but no probe witnessed it on a certified coordinate",
            )
    return CenterVerdict(CENTRAL)


def center_of_H_classify(datum: RootDatum, lam, budget: int = 1000) -> bool:
    """Membership of lam in the lattice part underlying the center of H.

    True iff lam pairs trivially with every non-finite component, i.e. the
    monomial Z^lam lies in the span of the finite-type and inessential
    directions.  This is a lattice-membership statement; in finite type
    the center consists of invariant combinations, not single monomials.
    """
    st = tits_cone_status(datum, lam, budget)
    if st != IN_TITS_CONE:
        if st == UNKNOWN:
            raise TitsConeUndecided(tuple(lam), budget)
        raise ValueError("center classification expects a point of Y+")
    report = classify_components(datum)
    for comp in report.components:
        if comp.kind == FINITE:
            continue
        if any(datum.pairing(i, lam) != 0 for i in comp.indices):
            return False
    return True
