"""The algebra V over a jet ring, with windowed Laurent representation.

Two local models of a prime-order orbit are supported:

* ramified:     V = K((z1)), z = z1^p, sigma(z1) = xi*z1;
* non-ramified: V = K((z)) x ... x K((z)) (p factors), sigma the cyclic
  shift of factors.

Every series carries a window [lo, hi): coefficients are exactly zero
below lo, exactly stored in [lo, hi), and unknown at hi and above.  All
operations propagate the largest window on which the result is provably
exact; nothing is ever guessed.

Positions index the K-basis of V: in the ramified case a position is the
z1-exponent; in the non-ramified case the pair (component i, exponent e)
is linearized as n = p*e + (i-1).  In both cases V+ is {n >= 0} and the
class n mod p picks the distinguished-basis coordinate.
"""

from __future__ import annotations

from fractions import Fraction
from math import inf

from .errors import WindowError
from .jets import JetPoly, JetRing
from .scalars import Cyclo, is_prime

RAMIFIED = "R"
NONRAMIFIED = "NR"

INF = inf


def _ceildiv(a: int, b: int) -> int:
    return -((-a) // b)


def _isinf(x) -> bool:
    return x == INF


class Model:
    """Shape of V: the prime p, the case, and the root of unity used by sigma."""

    __slots__ = ("p", "case", "xi", "_xi_pows")

    def __init__(self, p: int, case: str, xi: Cyclo | None = None):
        if not is_prime(p):
            raise ValueError("p must be prime")
        if case not in (RAMIFIED, NONRAMIFIED):
            raise ValueError("case must be 'R' or 'NR'")
        if xi is None:
            xi = Cyclo.xi_power(p, 1)
        if xi ** p != Cyclo.one(p) or xi == Cyclo.one(p):
            raise ValueError("xi must be a primitive p-th root of unity")
        self.p = p
        self.case = case
        self.xi = xi
        self._xi_pows = {0: Cyclo.one(p), 1: xi}

    @property
    def ncomp(self) -> int:
        return 1 if self.case == RAMIFIED else self.p

    def xi_pow(self, k: int) -> Cyclo:
        k %= self.p
        v = self._xi_pows.get(k)
        if v is None:
            v = self.xi ** k
            self._xi_pows[k] = v
        return v

    # positions: total order on the K-basis of V --------------------------

    def pos(self, comp: int, e: int) -> int:
        """Linear position of basis vector (component comp in 1..ncomp, exponent e)."""
        if self.case == RAMIFIED:
            return e
        return self.p * e + (comp - 1)

    def unpos(self, n: int):
        if self.case == RAMIFIED:
            return 1, n
        return n % self.p + 1, n // self.p

    def reflect(self, n: int) -> int:
        """Position paired dually with n under the residue pairing."""
        if self.case == RAMIFIED:
            return -self.p - n
        return -self.p - n + 2 * (n % self.p)

    def pairing_unit(self) -> int:
        """Value of <basis_n, basis_reflect(n)>: p ramified, 1 non-ramified."""
        return self.p if self.case == RAMIFIED else 1

    def pos_window(self, lo: int, hi):
        """Exponent window -> linearized position window."""
        if self.case == RAMIFIED:
            return lo, hi
        return self.p * lo, (INF if _isinf(hi) else self.p * hi)

    def exp_window(self, plo: int, phi):
        if self.case == RAMIFIED:
            return plo, phi
        return plo // self.p, (INF if _isinf(phi) else _ceildiv(phi, self.p))

    def __eq__(self, other):
        return (
            isinstance(other, Model)
            and (self.p, self.case, self.xi) == (other.p, other.case, other.xi)
        )

    def __hash__(self):
        return hash((self.p, self.case, self.xi))

    def __repr__(self):
        return "Model(p=%d, %s)" % (self.p, self.case)


class BaseSeries:
    """Windowed Laurent series in z over a jet ring (an element of K((z)) x R)."""

    __slots__ = ("ring", "lo", "hi", "terms")

    def __init__(self, ring: JetRing, terms: dict, lo: int | None = None, hi=INF):
        terms = {e: c for e, c in terms.items() if not c.is_zero()}
        if lo is None:
            lo = min(terms) if terms else 0
        if terms:
            kmin = min(terms)
            if kmin < lo:
                lo = kmin
            terms = {e: c for e, c in terms.items() if e < hi}
        self.ring = ring
        self.lo = lo
        self.hi = hi
        self.terms = terms

    @staticmethod
    def zero(ring: JetRing) -> "BaseSeries":
        return BaseSeries(ring, {}, 0, INF)

    @staticmethod
    def one(ring: JetRing) -> "BaseSeries":
        return BaseSeries(ring, {0: ring.one()}, 0, INF)

    @staticmethod
    def monomial(ring: JetRing, e: int, coeff) -> "BaseSeries":
        if not isinstance(coeff, JetPoly):
            coeff = ring.const(coeff)
        return BaseSeries(ring, {e: coeff}, e, INF)

    def coeff(self, e: int) -> JetPoly:
        if e >= self.hi:
            raise WindowError("coefficient at z^%d not certified (window hi=%s)" % (e, self.hi))
        return self.terms.get(e, self.ring.zero())

    def is_zero_certified(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, BaseSeries):
            return NotImplemented
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                t.pop(e, None)
            else:
                t[e] = s
        hi = min(self.hi, other.hi)
        return BaseSeries(self.ring, {e: c for e, c in t.items() if e < hi},
                          min(self.lo, other.lo), hi)

    def __neg__(self):
        return BaseSeries(self.ring, {e: -c for e, c in self.terms.items()}, self.lo, self.hi)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclo, JetPoly)):
            c = other if isinstance(other, JetPoly) else self.ring.const(other)
            return BaseSeries(self.ring, {e: a * c for e, a in self.terms.items()},
                              self.lo, self.hi)
        if not isinstance(other, BaseSeries):
            return NotImplemented
        lo = self.lo + other.lo
        hi = min(self.lo + other.hi, other.lo + self.hi)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                if e >= hi:
                    continue
                c = c1 * c2
                s = t.get(e)
                s = c if s is None else s + c
                if s.is_zero():
                    t.pop(e, None)
                else:
                    t[e] = s
        return BaseSeries(self.ring, t, lo, hi)

    __rmul__ = __mul__

    def shift(self, k: int) -> "BaseSeries":
        return BaseSeries(self.ring, {e + k: c for e, c in self.terms.items()},
                          self.lo + k, self.hi if _isinf(self.hi) else self.hi + k)

    def valuation(self):
        return min(self.terms) if self.terms else None

    def inverse(self, hi_out=None) -> "BaseSeries":
        """Inverse of a series with jet-unit leading coefficient.

        The result window is [-n0, hi - 2*n0) for leading exponent n0; an
        exact (hi = inf) input needs an explicit `hi_out` cutoff.
        """
        if not self.terms:
            raise ZeroDivisionError("inverse of (certified) zero series")
        n0 = min(self.terms)
        c0 = self.terms[n0]
        c0_inv = c0.inverse()
        hi = self.hi if _isinf(self.hi) else self.hi - 2 * n0
        if hi_out is not None:
            hi = min(hi, hi_out)
        if _isinf(hi):
            raise WindowError("inverse of an exact series needs an explicit hi_out")
        out = {-n0: c0_inv}
        for m in range(-n0 + 1, hi):
            acc = self.ring.zero()
            for j, fj in self.terms.items():
                if j == n0:
                    continue
                hk = out.get(m + n0 - j)
                if hk is not None:
                    acc = acc + fj * hk
            if not acc.is_zero():
                out[m] = -(c0_inv * acc)
        return BaseSeries(self.ring, out, -n0, hi)

    def to_text(self) -> str:
        body = ";".join("%d:%s" % (e, self.terms[e].to_text()) for e in sorted(self.terms))
        return "[%s,%s) %s" % (self.lo, self.hi, body)

    def __repr__(self):
        return "BaseSeries<%s>" % self.to_text()


def pth_root_series(f: BaseSeries, p: int) -> BaseSeries:
    """Principal p-th root of f = 1 + (positive-exponent tail).

    Solves g^p = f coefficient by coefficient; the root is certified on
    f's own window.
    """
    ring = f.ring
    if f.valuation() != 0 or f.terms.get(0) != ring.one():
        raise ValueError("p-th root needs leading term 1")
    if any(e < 0 for e in f.terms):
        raise ValueError("p-th root needs a positive-exponent tail")
    hi = f.hi
    if _isinf(hi):
        hi = (max(f.terms) if len(f.terms) > 1 else 0) + 1
    g = {0: ring.one()}
    gp = {0: ring.one()}  # g^p, maintained incrementally
    inv_p = Fraction(1, p)
    for e in range(1, hi):
        delta = (f.terms.get(e, ring.zero()) - gp.get(e, ring.zero())) * inv_p
        if delta.is_zero():
            continue
        g[e] = delta
        # update g^p: adding delta*z^e changes g^p by p*delta*z^e*g^(p-1) + ...
        # recompute the affected range directly (windows are small).
        gs = BaseSeries(ring, g, 0, hi)
        acc = BaseSeries.one(ring)
        for _ in range(p):
            acc = acc * gs
        gp = acc.terms
    out_hi = f.hi
    return BaseSeries(ring, g, 0, out_hi)


class VSeries:
    """Windowed element of V (tensor the jet ring).

    `comps` holds one exponent->JetPoly dict in the ramified case and p of
    them in the non-ramified case; the window [lo, hi) is in z1-exponents
    (ramified) or shared z-exponents (non-ramified).
    """

    __slots__ = ("model", "ring", "lo", "hi", "comps")

    def __init__(self, model: Model, ring: JetRing, comps, lo: int | None = None, hi=INF):
        comps = tuple({e: c for e, c in d.items() if not c.is_zero()} for d in comps)
        if len(comps) != model.ncomp:
            raise ValueError("expected %d components" % model.ncomp)
        keys = [e for d in comps for e in d]
        if lo is None:
            lo = min(keys) if keys else 0
        if keys and min(keys) < lo:
            lo = min(keys)
        comps = tuple({e: c for e, c in d.items() if e < hi} for d in comps)
        self.model = model
        self.ring = ring
        self.lo = lo
        self.hi = hi
        self.comps = comps

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(model: Model, ring: JetRing) -> "VSeries":
        return VSeries(model, ring, [{} for _ in range(model.ncomp)], 0, INF)

    @staticmethod
    def one(model: Model, ring: JetRing) -> "VSeries":
        return VSeries(model, ring, [{0: ring.one()} for _ in range(model.ncomp)], 0, INF)

    @staticmethod
    def monomial(model: Model, ring: JetRing, comp: int, e: int, coeff=1) -> "VSeries":
        """coeff * z^e in component comp (ramified: coeff * z1^e)."""
        if not isinstance(coeff, JetPoly):
            coeff = ring.const(coeff)
        comps = [{} for _ in range(model.ncomp)]
        comps[comp - 1] = {e: coeff}
        return VSeries(model, ring, comps, e, INF)

    @staticmethod
    def basis(model: Model, ring: JetRing, n: int, coeff=1) -> "VSeries":
        """Basis vector at linear position n."""
        comp, e = model.unpos(n)
        return VSeries.monomial(model, ring, comp, e, coeff)

    @staticmethod
    def unit_vector(model: Model, ring: JetRing, i: int) -> "VSeries":
        """The idempotent e_i = (0, ..., 1, ..., 0); in V_R this is just 1."""
        if model.case == RAMIFIED:
            return VSeries.one(model, ring)
        return VSeries.monomial(model, ring, i, 0)

    @staticmethod
    def from_positions(model: Model, ring: JetRing, data: dict, plo=None, phi=INF) -> "VSeries":
        """Build from {linear position: coefficient}; window given in positions."""
        comps = [{} for _ in range(model.ncomp)]
        for n, c in data.items():
            if not isinstance(c, JetPoly):
                c = ring.const(c)
            if c.is_zero():
                continue
            comp, e = model.unpos(n)
            comps[comp - 1][e] = comps[comp - 1].get(e, ring.zero()) + c
        exp_lo = None if plo is None else model.exp_window(plo, phi)[0]
        exp_hi = INF if _isinf(phi) else model.exp_window(0 if plo is None else plo, phi)[1]
        return VSeries(model, ring, comps, exp_lo, exp_hi)

    # -- basic views --------------------------------------------------------

    def pos_items(self):
        """Iterate (linear position, coefficient)."""
        for ci, d in enumerate(self.comps):
            for e, c in d.items():
                yield self.model.pos(ci + 1, e), c

    def pos_coeff(self, n: int) -> JetPoly:
        comp, e = self.model.unpos(n)
        return self.comps[comp - 1].get(e, self.ring.zero())

    def pos_window(self):
        return self.model.pos_window(self.lo, self.hi)

    def leading_position(self):
        """Lowest position carrying a nonzero coefficient, or None."""
        ns = [n for n, _ in self.pos_items()]
        return min(ns) if ns else None

    def leading_unit_position(self):
        """Lowest position whose coefficient is a jet unit, or None."""
        ns = [n for n, c in self.pos_items() if c.is_unit()]
        return min(ns) if ns else None

    def support_max(self):
        ns = [n for n, _ in self.pos_items()]
        return max(ns) if ns else None

    def is_zero_certified(self) -> bool:
        return all(not d for d in self.comps)

    def __eq__(self, other):
        if not isinstance(other, VSeries):
            return NotImplemented
        return (
            self.model == other.model
            and self.comps == other.comps
            and (self.lo, self.hi) == (other.lo, other.hi)
        )

    def __hash__(self):
        raise TypeError("VSeries is not hashable")

    def same_data(self, other: "VSeries") -> bool:
        """Equal stored coefficients, windows ignored."""
        return self.comps == other.comps

    # -- ring operations ------------------------------------------------------

    def _check(self, other: "VSeries"):
        if self.model != other.model:
            raise ValueError("mixed models")
        if not self.ring.compatible(other.ring):
            raise ValueError("mixed jet rings")

    def __add__(self, other):
        if not isinstance(other, VSeries):
            return NotImplemented
        self._check(other)
        hi = min(self.hi, other.hi)
        comps = []
        for d1, d2 in zip(self.comps, other.comps):
            t = dict(d1)
            for e, c in d2.items():
                s = t.get(e)
                s = c if s is None else s + c
                if s.is_zero():
                    t.pop(e, None)
                else:
                    t[e] = s
            comps.append({e: c for e, c in t.items() if e < hi})
        return VSeries(self.model, self.ring, comps, min(self.lo, other.lo), hi)

    def __neg__(self):
        return VSeries(self.model, self.ring,
                       [{e: -c for e, c in d.items()} for d in self.comps],
                       self.lo, self.hi)

    def __sub__(self, other):
        if not isinstance(other, VSeries):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "VSeries":
        """Multiply by a scalar or jet element (no z-dependence)."""
        if not isinstance(c, JetPoly):
            c = self.ring.const(c)
        return VSeries(self.model, self.ring,
                       [{e: a * c for e, a in d.items()} for d in self.comps],
                       self.lo, self.hi)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclo, JetPoly)):
            return self.scale(other)
        if not isinstance(other, VSeries):
            return NotImplemented
        self._check(other)
        lo = self.lo + other.lo
        hi = min(self.lo + other.hi, other.lo + self.hi)
        if not _isinf(hi) and hi <= lo:
            raise WindowError(
                "empty result window [%s,%s) in product" % (lo, hi),
                suggest=lo - hi + 1,
            )
        comps = []
        for d1, d2 in zip(self.comps, other.comps):
            t = {}
            for e1, c1 in d1.items():
                for e2, c2 in d2.items():
                    e = e1 + e2
                    if e >= hi:
                        continue
                    c = c1 * c2
                    s = t.get(e)
                    s = c if s is None else s + c
                    if s.is_zero():
                        t.pop(e, None)
                    else:
                        t[e] = s
            comps.append(t)
        return VSeries(self.model, self.ring, comps, lo, hi)

    __rmul__ = __mul__

    def inverse(self, hi_out=None) -> "VSeries":
        """Componentwise inverse; every component needs a jet-unit leading term."""
        outs = []
        win = None
        for d in self.comps:
            b = BaseSeries(self.ring, d, self.lo, self.hi).inverse(hi_out)
            outs.append(b)
            win = (b.lo, b.hi) if win is None else (min(win[0], b.lo), min(win[1], b.hi))
        return VSeries(self.model, self.ring, [b.terms for b in outs], win[0], win[1])

    def truncate(self, hi) -> "VSeries":
        hi = min(self.hi, hi)
        return VSeries(self.model, self.ring,
                       [{e: c for e, c in d.items() if e < hi} for d in self.comps],
                       self.lo, hi)

    def lift(self, ring: JetRing) -> "VSeries":
        return VSeries(self.model, ring,
                       [{e: c.lift(ring) for e, c in d.items()} for d in self.comps],
                       self.lo, self.hi)

    def map_coeffs(self, fn) -> "VSeries":
        return VSeries(self.model, self.ring,
                       [{e: fn(c) for e, c in d.items()} for d in self.comps],
                       self.lo, self.hi)

    # -- the sigma action -------------------------------------------------------

    def sigma(self) -> "VSeries":
        """Apply sigma: coefficient scaling by xi^e (R), cyclic shift (NR)."""
        m = self.model
        if m.case == RAMIFIED:
            d = {e: c * m.xi_pow(e) for e, c in self.comps[0].items()}
            return VSeries(m, self.ring, [d], self.lo, self.hi)
        comps = (self.comps[-1],) + self.comps[:-1]
        return VSeries(m, self.ring, [dict(d) for d in comps], self.lo, self.hi)

    def sigma_power(self, k: int) -> "VSeries":
        out = self
        for _ in range(k % self.model.p):
            out = out.sigma()
        return out

    # -- trace, norm, pairing ------------------------------------------------------

    def trace(self) -> BaseSeries:
        """Trace of the homothety by self, as a series in z."""
        m = self.model
        if m.case == RAMIFIED:
            t = {}
            for e, c in self.comps[0].items():
                if e % m.p == 0:
                    t[e // m.p] = c * m.p
            return BaseSeries(self.ring, t, _ceildiv(self.lo, m.p),
                              INF if _isinf(self.hi) else _ceildiv(self.hi, m.p))
        t = {}
        for d in self.comps:
            for e, c in d.items():
                s = t.get(e)
                s = c if s is None else s + c
                if s.is_zero():
                    t.pop(e, None)
                else:
                    t[e] = s
        return BaseSeries(self.ring, t, self.lo, self.hi)

    def norm(self) -> BaseSeries:
        """Norm: product of the sigma-conjugates, as a series in z."""
        m = self.model
        if m.case == RAMIFIED:
            acc = self
            g = self
            for _ in range(1, m.p):
                g = g.sigma()
                acc = acc * g
            t = {}
            for e, c in acc.comps[0].items():
                if e % m.p != 0:
                    raise AssertionError("norm not supported on z-exponents")
                t[e // m.p] = c
            return BaseSeries(self.ring, t, _ceildiv(acc.lo, m.p),
                              INF if _isinf(acc.hi) else _ceildiv(acc.hi, m.p))
        acc = BaseSeries(self.ring, self.comps[0], self.lo, self.hi)
        for d in self.comps[1:]:
            acc = acc * BaseSeries(self.ring, d, self.lo, self.hi)
        return acc

    def coordinates(self):
        """Coordinates over the distinguished basis, as p series in z.

        Position n contributes to coordinate class n mod p at z-exponent
        n div p (exact in both cases; see the module docstring).
        """
        m = self.model
        plo, phi = self.pos_window()
        out = []
        for k in range(m.p):
            t = {}
            for n, c in self.pos_items():
                if n % m.p == k:
                    t[(n - k) // m.p] = c
            lo_k = _ceildiv(plo - k, m.p)
            hi_k = INF if _isinf(phi) else _ceildiv(phi - k, m.p)
            out.append(BaseSeries(self.ring, t, lo_k, hi_k))
        return out

    def to_text(self) -> str:
        parts = []
        for d in self.comps:
            parts.append(";".join("%d:%s" % (e, d[e].to_text()) for e in sorted(d)))
        return "[%s,%s) " % (self.lo, self.hi) + " | ".join(parts)

    def __repr__(self):
        return "VSeries<%s>" % self.to_text()


def residue_pairing(a: VSeries, b: VSeries) -> JetPoly:
    """res_{z=0} tr(a*b) dz: the z^{-1} coefficient of the trace of a*b."""
    t = (a * b).trace()
    if -1 < t.lo:
        return a.ring.zero()
    if -1 >= t.hi:
        raise WindowError(
            "residue pairing needs the z^-1 trace coefficient; window hi=%s" % (t.hi,),
            suggest=None if _isinf(t.hi) else -t.hi,
        )
    return t.terms.get(-1, a.ring.zero())


def _det(rows) -> BaseSeries:
    """Determinant of a square matrix of BaseSeries, by first-column expansion."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = None
    for i in range(n):
        lead = rows[i][0]
        minor = [r[1:] for j, r in enumerate(rows) if j != i]
        term = lead * _det(minor)
        if i % 2 == 1:
            term = -term
        acc = term if acc is None else acc + term
    return acc


def wedge_residue(us) -> JetPoly:
    """Skew p-form: res_{z=0} of the determinant of coordinate series.

    `us` is a sequence of p VSeries over a common model and ring.
    """
    us = list(us)
    model = us[0].model
    ring = us[0].ring
    if len(us) != model.p:
        raise ValueError("wedge form takes exactly p arguments")
    mat = []
    coords = [u.coordinates() for u in us]
    for k in range(model.p):
        mat.append([coords[l][k] for l in range(model.p)])
    det = _det(mat)
    if -1 < det.lo:
        return ring.zero()
    if -1 >= det.hi:
        raise WindowError(
            "wedge residue needs the z^-1 determinant coefficient; window hi=%s" % (det.hi,),
            suggest=None if _isinf(det.hi) else -det.hi,
        )
    return det.terms.get(-1, ring.zero())


def vseries_exp(v: VSeries) -> VSeries:
    """exp of an element with nilpotent coefficients (finite sum)."""
    out = VSeries.one(v.model, v.ring)
    power = out
    for k in range(1, v.ring.cap + 1):
        power = power * v * Fraction(1, k)
        if power.is_zero_certified() and _isinf(power.hi):
            break
        out = out + power
    return out


def flow_exponential(model: Model, ring: JetRing, coords) -> VSeries:
    """Exponential flow element of the formal jacobian of the cover.

    Ramified: coords maps j >= 1 to a nilpotent jet coefficient and the
    result is exp(sum_j c_j z1^{-j}).  Non-ramified: coords maps (i, j)
    with component i in 1..p, and the exponential acts componentwise.
    """
    comps = [{} for _ in range(model.ncomp)]
    for key, c in coords.items():
        if isinstance(key, tuple):
            i, j = key
        else:
            i, j = 1, key
        if j < 1:
            raise ValueError("flow indices start at 1")
        if not isinstance(c, JetPoly):
            c = ring.const(c)
        if not c.is_nilpotent():
            raise ValueError("flow coefficients must be nilpotent")
        if model.case == RAMIFIED and i != 1:
            raise ValueError("ramified flows have a single component")
        if c.is_zero():
            continue
        comps[i - 1][-j] = comps[i - 1].get(-j, ring.zero()) + c
    arg = VSeries(model, ring, comps, hi=INF)
    return vseries_exp(arg)
