"""Cyclic covers y^p = f(x) marked over x = infinity, and their
Grassmannian points.

The affine curve is smooth (f squarefree); the fiber over infinity is a
single totally ramified point when p does not divide deg f and a free
orbit of p points otherwise, matching the two local models.  Expansions
use the exact parameter x = z1^{-p} (ramified) or x = z^{-1} per branch
(non-ramified), with the y-branch from the principal p-th root; the
model's root of unity is aligned so that the deck transformation
y -> zeta*y acts on expansions exactly as the model's sigma.
"""

from __future__ import annotations

from fractions import Fraction

from .grass import GrassPoint, build_frame, module_closure
from .jets import JetRing
from .scalars import Cyclo, is_prime
from .vseries import (
    INF,
    BaseSeries,
    Model,
    VSeries,
    pth_root_series,
)


def _poly_scale(coeffs, p):
    out = []
    for c in coeffs:
        if isinstance(c, Cyclo):
            out.append(c)
        else:
            out.append(Cyclo.rational(p, Fraction(c)))
    while out and out[-1].is_zero():
        out.pop()
    return out


def _poly_deriv(f, p):
    return _poly_scale([c * k for k, c in enumerate(f)][1:] or [0], p)


def _poly_mod(a, b, p):
    a = list(a)
    inv = b[-1].inverse()
    while len(a) >= len(b) and a:
        c = a[-1] * inv
        for j, bj in enumerate(b):
            a[len(a) - len(b) + j] = a[len(a) - len(b) + j] - c * bj
        while a and a[-1].is_zero():
            a.pop()
    return a


def _is_squarefree(f, p) -> bool:
    a, b = f, _poly_deriv(f, p)
    while b:
        a, b = b, _poly_mod(a, b, p)
    return len(a) == 1


class CurveSpec:
    """The cover y^p = f(x): p prime, f monic squarefree of degree d."""

    __slots__ = ("p", "f", "d", "case")

    def __init__(self, p: int, f_coeffs):
        if not is_prime(p):
            raise ValueError("p must be prime")
        f = _poly_scale(f_coeffs, p)
        if len(f) < 2:
            raise ValueError("f must be non-constant")
        if f[-1] != Cyclo.one(p):
            raise ValueError("f must be monic")
        if not _is_squarefree(f, p):
            raise ValueError("f must be squarefree (smooth affine model)")
        self.p = p
        self.f = f
        self.d = len(f) - 1
        self.case = "R" if self.d % p != 0 else "NR"

    def model(self) -> Model:
        zeta = Cyclo.xi_power(self.p, 1)
        if self.case == "NR":
            return Model(self.p, "NR", zeta)
        a = (-pow(self.d, -1, self.p)) % self.p
        if a == 0:
            a = self.p
        return Model(self.p, "R", Cyclo.xi_power(self.p, a))

    def __repr__(self):
        return "CurveSpec(p=%d, d=%d, %s)" % (self.p, self.d, self.case)


class FunctionRep:
    """Quotient of polynomial expressions sum a_{ab} x^a y^b (b < p)."""

    __slots__ = ("num", "den")

    def __init__(self, num: dict, den: dict | None = None):
        self.num = dict(num)
        self.den = dict(den) if den else {(0, 0): 1}

    @staticmethod
    def x():
        return FunctionRep({(1, 0): 1})

    @staticmethod
    def y():
        return FunctionRep({(0, 1): 1})

    @staticmethod
    def one():
        return FunctionRep({(0, 0): 1})

    def sigma_curve(self, p: int) -> "FunctionRep":
        """Substitute y -> zeta_p * y in numerator and denominator."""
        zeta = Cyclo.xi_power(p, 1)

        def tw(d):
            return {(a, b): _as_cyclo(c, p) * (zeta ** b) for (a, b), c in d.items()}

        return FunctionRep(tw(self.num), tw(self.den))

    @staticmethod
    def from_json(obj) -> "FunctionRep":
        """[[a, b, "coeff"], ...] or {"num": [...], "den": [...]}."""
        if isinstance(obj, dict):
            num = obj.get("num", [])
            den = obj.get("den") or [[0, 0, "1"]]
            return FunctionRep(_terms_from_json(num), _terms_from_json(den))
        return FunctionRep(_terms_from_json(obj))


def _terms_from_json(items):
    out = {}
    for a, b, c in items:
        out[(int(a), int(b))] = Fraction(c)
    return out


def _as_cyclo(c, p):
    if isinstance(c, Cyclo):
        return c
    return Cyclo.rational(p, Fraction(c))


class CurveExpansion:
    """Cached exact expansions of x and y on a window."""

    def __init__(self, curve: CurveSpec, hi: int, ring: JetRing | None = None):
        self.curve = curve
        self.model = curve.model()
        self.ring = ring or JetRing.scalar(curve.p)
        self.hi = hi
        p, d = curve.p, curve.d
        m, R = self.model, self.ring
        if curve.case == "R":
            # x = z1^{-p} exactly; y = z1^{-d} * (z1^{pd} f(z1^{-p}))^{1/p}
            self.x = VSeries.monomial(m, R, 1, -p)
            w = {p * (d - k): R.const(c) for k, c in enumerate(curve.f)}
            base = BaseSeries(R, w, 0, hi + d)
            u = pth_root_series(base, p)
            self.y = VSeries(m, R, [{e - d: c for e, c in u.terms.items()}],
                             -d, hi)
        else:
            self.x = VSeries(m, R, [{-1: R.one()} for _ in range(p)], -1, INF)
            w = {d - k: R.const(c) for k, c in enumerate(curve.f)}
            base = BaseSeries(R, w, 0, hi + d // p)
            u = pth_root_series(base, p)
            zeta = m.xi
            comps = []
            for i in range(1, p + 1):
                scale = zeta ** ((1 - i) % p)
                comps.append({e - d // p: c * scale for e, c in u.terms.items()})
            self.y = VSeries(m, R, comps, -d // p, hi)

    def check_defining_relation(self) -> bool:
        """y^p - f(x) = 0 on the certified window."""
        acc = self.y
        for _ in range(self.curve.p - 1):
            acc = acc * self.y
        fx = VSeries.zero(self.model, self.ring)
        xp = VSeries.one(self.model, self.ring)
        for k, c in enumerate(self.curve.f):
            fx = fx + xp.scale(c)
            xp = xp * self.x
        return (acc - fx).is_zero_certified()

    def monomial(self, a: int, b: int) -> VSeries:
        out = VSeries.one(self.model, self.ring)
        for _ in range(a):
            out = out * self.x
        for _ in range(b):
            out = out * self.y
        return out

    def expand(self, F: FunctionRep) -> VSeries:
        """Expansion of a function along the marked fiber."""
        num = self._combo(F.num)
        den = self._combo(F.den)
        if any(not d for d in den.comps):
            raise ZeroDivisionError("denominator vanishes identically on a branch")
        return num * den.inverse(hi_out=self.hi + _den_val(den))


    def _combo(self, terms) -> VSeries:
        out = VSeries.zero(self.model, self.ring)
        for (a, b), c in sorted(terms.items()):
            out = out + self.monomial(a, b).scale(_as_cyclo(c, self.curve.p))
        return out


def _den_val(den: VSeries):
    vals = [min(d) for d in den.comps if d]
    return -min(vals) if vals else 0


def puiseux_expand(curve: CurveSpec, hi: int, ring: JetRing | None = None) -> CurveExpansion:
    """Exact branch expansions of (x, y) certified below exponent `hi`."""
    exp = CurveExpansion(curve, hi, ring)
    if not exp.check_defining_relation():
        raise AssertionError("defining relation failed on the window")
    return exp


def algebra_point(curve: CurveSpec, depth: int, height: int | None = None,
                  ring: JetRing | None = None) -> GrassPoint:
    """Krichever point of the coordinate ring: echelon frame of the
    expansions of x^a y^b with pole order at most `depth`.

    The monomial basis is multiplicatively closed modulo y^p = f(x), and
    multiplying by x gives the downward ladder that certifies fullness
    below the stored window.  `height` fixes the certified positive reach
    of every stored row (wave families and pairings need headroom there).
    """
    if height is None:
        height = depth + 12
    exp = puiseux_expand(curve, height, ring)
    p, d = curve.p, curve.d
    gens = []
    if curve.case == "R":
        for b in range(p):
            for a in range((depth - d * b) // p + 1):
                if p * a + d * b <= depth:
                    gens.append(exp.monomial(a, b))
    else:
        dp = d // p
        for b in range(p):
            for a in range(depth - dp * b + 1):
                if a + dp * b <= depth:
                    gens.append(exp.monomial(a, b))
    phis = [g.pos_window()[1] for g in gens]
    point = build_frame(exp.model, exp.ring, gens,
                        phi=min(phis),
                        pivots_full_below=True,
                        max_pivot_bound=exp.model.p - 1 if curve.case == "NR" else 0,
                        recipe=lambda dep, hei=None: algebra_point(curve, dep, hei, ring))
    return point


def module_point(curve: CurveSpec, gens, depth: int, height: int | None = None,
                 ring: JetRing | None = None) -> GrassPoint:
    """Krichever point of the coordinate-ring module spanned by `gens`
    (a list of FunctionRep): line-bundle sections via a fractional ideal."""
    if height is None:
        height = depth + 12
    exp = puiseux_expand(curve, height, ring)
    vecs = [exp.expand(F) for F in gens]
    algebra = [exp.x, exp.y]
    floor = exp.model.pos(1, -depth)
    point = module_closure(exp.model, exp.ring, vecs, algebra,
                           phi=min(v.pos_window()[1] for v in vecs),
                           floor=floor, pivots_full_below=True)
    point.max_pivot_bound = max(point.rows) if point.rows else 0
    point.recipe = lambda dep, hei=None: module_point(curve, gens, dep, hei, ring)
    return point


def curve_invariants(curve: CurveSpec, depth: int | None = None) -> dict:
    """Genus, gap orders, case data and the Prym degree bookkeeping."""
    p, d = curve.p, curve.d
    if depth is None:
        depth = (p - 1) * (d - 1) + p + 2
    point = algebra_point(curve, depth)
    chi = point.index_chi()
    genus = 1 - chi
    gbar = 0
    prym_degree = (genus - 1) - (p - 2) * (gbar - 1)
    return {
        "p": p,
        "degree": d,
        "case": curve.case,
        "chi": chi,
        "genus": genus,
        "gaps": point.gap_orders(),
        "quotient_genus": gbar,
        "prym_degree": prym_degree,
        "ramified_at_infinity": curve.case == "R",
        "tangent_expected": genus - gbar,
    }
