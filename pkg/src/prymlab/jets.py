"""Truncated polynomial rings in flow variables with nilpotent semantics.

A `JetRing` fixes an ordered list of variable names and a total-degree cap
D; every variable is nilpotent of order D+1 by fiat.  `JetPoly` is a sparse
element of that ring with `Cyclo` coefficients.  Exponentials of cap-zero
elements are finite sums, which is what makes every flow action in the
package exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .scalars import Cyclo


class JetRing:
    """Ring K[t_1, ..., t_n] / (total degree > cap), K = Q(xi_p)."""

    __slots__ = ("names", "cap", "p", "index", "blocks")

    def __init__(self, p: int, names=(), cap: int = 0, blocks=None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names: %r" % (names,))
        if cap < 0:
            raise ValueError("cap must be >= 0")
        self.p = p
        self.names = names
        self.cap = cap
        self.index = {n: i for i, n in enumerate(names)}
        self.blocks = dict(blocks or {})

    @staticmethod
    def scalar(p: int) -> "JetRing":
        return JetRing(p, (), 0)

    @staticmethod
    def with_blocks(p: int, block_sizes: dict, cap: int) -> "JetRing":
        """Ring with disjoint variable blocks, e.g. {"t": 4, "s": 4}.

        Block "t" of size 4 contributes variables t1..t4.
        """
        names, blocks = [], {}
        for label, size in block_sizes.items():
            idx = []
            for j in range(1, size + 1):
                idx.append(len(names))
                names.append("%s%d" % (label, j))
            blocks[label] = idx
        return JetRing(p, names, cap, blocks)

    def compatible(self, other: "JetRing") -> bool:
        return self is other or (
            self.p == other.p and self.names == other.names and self.cap == other.cap
        )

    # -- element constructors -------------------------------------------

    def zero(self) -> "JetPoly":
        return JetPoly(self, {})

    def one(self) -> "JetPoly":
        return self.const(Cyclo.one(self.p))

    def const(self, value) -> "JetPoly":
        if isinstance(value, (int, Fraction)):
            value = Cyclo.rational(self.p, value)
        if value.is_zero():
            return JetPoly(self, {})
        return JetPoly(self, {(): value})

    def var(self, name: str, coeff=1) -> "JetPoly":
        if self.cap < 1:
            raise ValueError("cap 0 ring has no non-constant elements")
        i = self.index[name]
        c = coeff if isinstance(coeff, Cyclo) else Cyclo.rational(self.p, coeff)
        if c.is_zero():
            return self.zero()
        return JetPoly(self, {((i, 1),): c})

    def block_vars(self, label: str):
        return [self.names[i] for i in self.blocks[label]]

    def __repr__(self):
        return "JetRing(p=%d, %d vars, cap=%d)" % (self.p, len(self.names), self.cap)


def _mono_mul(m1, m2, cap):
    """Merge two sorted sparse exponent vectors; None when above cap."""
    if not m1:
        return m2
    if not m2:
        return m1
    out = dict(m1)
    for v, e in m2:
        out[v] = out.get(v, 0) + e
    if sum(out.values()) > cap:
        return None
    return tuple(sorted(out.items()))


def _mono_deg(m):
    return sum(e for _, e in m)


class JetPoly:
    """Sparse truncated polynomial; zero coefficients are never stored."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: JetRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- structure -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Cyclo:
        return self.terms.get((), Cyclo.zero(self.ring.p))

    def is_unit(self) -> bool:
        return () in self.terms

    def is_nilpotent(self) -> bool:
        return () not in self.terms

    def coeff(self, mono) -> Cyclo:
        return self.terms.get(tuple(mono), Cyclo.zero(self.ring.p))

    def __eq__(self, other):
        if isinstance(other, JetPoly):
            return self.ring.compatible(other.ring) and self.terms == other.terms
        if isinstance(other, (int, Fraction, Cyclo)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ring), tuple(sorted(self.terms.items(), key=lambda kv: kv[0]))))

    def __bool__(self):
        return bool(self.terms)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, JetPoly):
            if not self.ring.compatible(other.ring):
                raise ValueError("jet rings differ")
            return other
        if isinstance(other, (int, Fraction, Cyclo)):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for m, c in o.terms.items():
            s = t.get(m)
            s = c if s is None else s + c
            if s.is_zero():
                t.pop(m, None)
            else:
                t[m] = s
        return JetPoly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return JetPoly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        cap = self.ring.cap
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = _mono_mul(m1, m2, cap)
                if m is None:
                    continue
                c = c1 * c2
                s = t.get(m)
                s = c if s is None else s + c
                if s.is_zero():
                    t.pop(m, None)
                else:
                    t[m] = s
        return JetPoly(self.ring, t)

    __rmul__ = __mul__

    def inverse(self) -> "JetPoly":
        """Inverse of a unit: geometric series in the nilpotent part."""
        c0 = self.constant_term()
        if c0.is_zero():
            raise ZeroDivisionError("non-unit jet element has no inverse")
        c0_inv = c0.inverse()
        n = JetPoly(self.ring, {m: c * c0_inv for m, c in self.terms.items() if m != ()})
        out = self.ring.one()
        power = self.ring.one()
        sign = -1
        for _ in range(self.ring.cap):
            power = power * n
            if power.is_zero():
                break
            out = out + power * sign
            sign = -sign
        return out * c0_inv

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def exp(self) -> "JetPoly":
        """exp of a nilpotent element: sum a^k / k! up to the cap."""
        if not self.is_nilpotent():
            raise ValueError("exp needs a nilpotent argument (zero constant term)")
        out = self.ring.one()
        power = self.ring.one()
        for k in range(1, self.ring.cap + 1):
            power = power * self
            if power.is_zero():
                break
            out = out + power * Fraction(1, factorial(k))
        return out

    # -- variable maps -----------------------------------------------------

    def map_vars(self, ring: JetRing, mapping) -> "JetPoly":
        """Push through var -> (scalar, var') substitutions into `ring`.

        `mapping` sends a variable index of self.ring to a pair
        (Cyclo scalar, variable index in `ring`); identity when omitted.
        """
        t = {}
        for m, c in self.terms.items():
            scale = c
            out_m = {}
            for v, e in m:
                sc, v2 = mapping.get(v, (None, v))
                if sc is not None:
                    scale = scale * (sc ** e)
                out_m[v2] = out_m.get(v2, 0) + e
            if sum(out_m.values()) > ring.cap or scale.is_zero():
                continue
            key = tuple(sorted(out_m.items()))
            s = t.get(key)
            s = scale if s is None else s + scale
            if s.is_zero():
                t.pop(key, None)
            else:
                t[key] = s
        return JetPoly(ring, t)

    def lift(self, ring: JetRing) -> "JetPoly":
        """Reinterpret in a larger ring; matches variables by name."""
        if ring.compatible(self.ring):
            return JetPoly(ring, dict(self.terms))
        mapping = {}
        for i, n in enumerate(self.ring.names):
            if n not in ring.index:
                raise ValueError("variable %r missing from target ring" % n)
            mapping[i] = (None, ring.index[n])
        return self.map_vars(ring, mapping)

    def truncate(self, cap: int, ring: JetRing | None = None) -> "JetPoly":
        ring = ring or JetRing(self.ring.p, self.ring.names, cap, self.ring.blocks)
        return JetPoly(ring, {m: c for m, c in self.terms.items() if _mono_deg(m) <= cap})

    # -- rendering -----------------------------------------------------------

    def to_text(self) -> str:
        """Multi-index form, e.g. "(1/2)*t1^2*t3 + 2*t2"."""
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda mm: (_mono_deg(mm), mm)):
            c = self.terms[m]
            mono = "*".join(
                "%s^%d" % (self.ring.names[v], e) if e > 1 else self.ring.names[v]
                for v, e in m
            )
            ctext = c.to_text()
            if "+" in ctext or " " in ctext:
                ctext = "(%s)" % ctext
            parts.append(ctext if not mono else "%s*%s" % (ctext, mono))
        return " + ".join(parts)

    def __repr__(self):
        return "JetPoly<%s>" % self.to_text()
