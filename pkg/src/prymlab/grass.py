"""Points of the infinite Grassmannian of V as windowed echelon frames.

A point U is held as a reduced echelon frame over the linearized position
set (see `vseries`): one row per pivot (leading) position, pivot
coefficient 1, no row supported at another row's pivot.  Below the stored
rows a frame carries either an explicit monomial tail (synthetic points:
every position under per-component exponent bounds belongs to U) or a
certificate that all deep positions are pivots (curve points, where deep
rows exist but are not materialized).

Verdicts are certificates: checks either decide within the stored window
or raise `WindowError`; they never guess.
"""

from __future__ import annotations

import itertools

from .errors import FrameError, WindowError
from .jets import JetRing
from .linalg import nullspace, rank_of_vectors
from .scalars import Cyclo
from .vseries import INF, Model, VSeries, _isinf, wedge_residue

_DEEP = -(10 ** 9)


class GrassPoint:
    """Windowed echelon frame for a subspace of V commensurable with V+."""

    def __init__(self, model: Model, ring: JetRing, rows: dict, *, tail=None,
                 phi, pivots_full_below: bool, max_pivot_bound: int, recipe=None):
        self.model = model
        self.ring = ring
        self.rows = dict(rows)
        self.tail = None if tail is None else tuple(tail)
        self.phi = phi
        self.pivots_full_below = pivots_full_below or tail is not None
        self.max_pivot_bound = max_pivot_bound
        self.recipe = recipe
        if self.tail is not None and len(self.tail) != model.ncomp:
            raise ValueError("tail needs one exponent bound per component")

    # ------------------------------------------------------------------ shape

    def pivot_positions(self):
        return sorted(self.rows)

    def stored_floor(self):
        """Lowest position with explicit knowledge (stored row or tail edge)."""
        cands = list(self.rows)
        if self.tail is not None:
            cands.extend(self.model.pos(i + 1, t) for i, t in enumerate(self.tail))
        return min(cands) if cands else None

    def in_tail(self, n: int) -> bool:
        if self.tail is None:
            return False
        comp, e = self.model.unpos(n)
        return e < self.tail[comp - 1]

    def is_pivot(self, n: int) -> bool:
        """Certified pivot test; raises WindowError in the undecided band."""
        if n in self.rows or self.in_tail(n):
            return True
        if n > self.max_pivot_bound:
            return False
        floor = self.stored_floor()
        if floor is None or n < floor:
            if self.pivots_full_below:
                return True
            raise WindowError("pivot status below the stored window is unknown")
        if _isinf(self.phi) or n < self.phi:
            return False
        raise WindowError(
            "pivot status at position %d not certified" % n,
            suggest=n - self.phi + 1,
        )

    def row_at(self, n: int):
        """Stored row, or a materialized tail monomial; None elsewhere."""
        r = self.rows.get(n)
        if r is not None:
            return r
        if self.in_tail(n):
            return VSeries.basis(self.model, self.ring, n)
        return None

    def lifted(self, ring: JetRing) -> "GrassPoint":
        """The same frame over a larger jet ring."""
        if self.ring.compatible(ring):
            return self
        return GrassPoint(self.model, ring,
                          {n: r.lift(ring) for n, r in self.rows.items()},
                          tail=self.tail, phi=self.phi,
                          pivots_full_below=self.pivots_full_below,
                          max_pivot_bound=self.max_pivot_bound, recipe=self.recipe)

    def _aligned(self, v: VSeries):
        """Common-ring view of (frame, vector)."""
        if self.ring.compatible(v.ring):
            return self, v
        try:
            return self, v.lift(self.ring)
        except ValueError:
            return self.lifted(v.ring), v

    def d_full(self) -> int:
        """Largest d such that every position below d is certified a pivot."""
        if not self.pivots_full_below:
            raise WindowError("no full-below certificate for this frame")
        floor = self.stored_floor()
        n = floor if floor is not None else 0
        while True:
            try:
                if not self.is_pivot(n):
                    return n
            except WindowError:
                return n
            n += 1

    def gaps(self):
        """Certified non-pivot positions in [d_full, max_pivot_bound]."""
        if not _isinf(self.phi) and self.phi <= self.max_pivot_bound:
            raise WindowError(
                "window ends before the pivot bound",
                suggest=self.max_pivot_bound - self.phi + 1,
            )
        return [n for n in range(self.d_full(), self.max_pivot_bound + 1)
                if not self.is_pivot(n)]

    def index_chi(self) -> int:
        """Euler characteristic of U -> V/V+: dim(U cap V+) - dim V/(U+V+)."""
        kernel = sum(1 for n in range(0, self.max_pivot_bound + 1) if self.is_pivot(n))
        cogaps = sum(1 for n in range(self.d_full(), 0) if not self.is_pivot(n))
        return kernel - cogaps

    def gap_orders(self):
        """Positive pole-order gaps: -n over negative non-pivot positions."""
        return sorted(-n for n in range(self.d_full(), 0) if not self.is_pivot(n))

    # ------------------------------------------------------------------ reduction

    def reduce(self, v: VSeries):
        """Reduce v against the frame.

        Returns (residual, used, blocked): `used` maps pivot -> coefficient,
        `blocked` lists positions where a non-materialized deep row would be
        needed.  The residual is certified below min(v window, frame window).
        """
        frame, v = self._aligned(v)
        if frame is not self:
            return frame.reduce(v)
        if not _isinf(self.phi):
            v = v.truncate(self.model.exp_window(0, self.phi)[1])
        residual = v
        used = {}
        blocked = set()
        floor = self.stored_floor()
        for _ in range(self.ring.cap + 2):
            changed = False
            for n in sorted(q for q, _ in residual.pos_items()):
                c = residual.pos_coeff(n)
                if c.is_zero():
                    continue
                if self.in_tail(n):
                    residual = residual - VSeries.basis(self.model, self.ring, n, c)
                    changed = True
                    continue
                row = self.rows.get(n)
                if row is not None:
                    residual = residual - row.scale(c)
                    used[n] = used.get(n, self.ring.zero()) + c
                    changed = True
                elif floor is not None and n < floor and self.pivots_full_below:
                    blocked.add(n)
            if not changed:
                break
        return residual, used, blocked

    def membership(self, v: VSeries) -> bool:
        """Certified membership of v within the common window."""
        residual, _, blocked = self.reduce(v)
        bad = [n for n in blocked if not residual.pos_coeff(n).is_zero()]
        if bad:
            raise WindowError(
                "membership needs rows below the stored window (positions %s)"
                % sorted(bad),
                suggest=(self.stored_floor() or 0) - min(bad),
            )
        return residual.is_zero_certified()

    def contains_unit_vector(self, i: int) -> bool:
        return self.membership(VSeries.unit_vector(self.model, self.ring, i))

    # ------------------------------------------------------------------ sigma

    def sigma_point(self) -> "GrassPoint":
        """The point rho(sigma) U."""
        m = self.model
        if m.case == "R":
            # positions are fixed; only the pivot normalization changes
            new_rows = {n: r.sigma().scale(m.xi_pow(-n)) for n, r in self.rows.items()}
            return GrassPoint(m, self.ring, new_rows, tail=self.tail, phi=self.phi,
                              pivots_full_below=self.pivots_full_below,
                              max_pivot_bound=self.max_pivot_bound)
        # NR: the component rotation can reorder positions inside a level
        tail = (self.tail[-1],) + self.tail[:-1] if self.tail is not None else None
        e_top = m.unpos(self.max_pivot_bound)[1]
        return build_frame(m, self.ring, [r.sigma() for r in self.rows.values()],
                           tail=tail, phi=self.phi,
                           pivots_full_below=self.pivots_full_below,
                           max_pivot_bound=m.pos(m.p, e_top))

    def invariance_check(self) -> bool:
        """True when sigma maps the frame into itself (certified)."""
        for n in sorted(self.rows):
            if not self.membership(self.rows[n].sigma()):
                return False
        if self.tail is not None and self.model.case == "NR" and len(set(self.tail)) > 1:
            tmin = min(self.tail)
            for i, t in enumerate(self.tail):
                for e in range(tmin, t):
                    mono = VSeries.monomial(self.model, self.ring, i + 1, e)
                    if not self.membership(mono.sigma()):
                        return False
        return True

    # ------------------------------------------------------------------ pairing dual

    def orthogonal(self) -> "GrassPoint":
        """Annihilator under the residue pairing, as a frame.

        Row for gap g: basis(reflect(g)) - sum_s row_s[g] * basis(reflect(s))
        over stored pivots s < g; reducedness of the frame makes this exact.
        """
        m = self.model
        refl = m.reflect
        if _isinf(self.phi):
            # per-component support tops; everything above is a clean gap
            tops = [self.tail[i] - 1 if self.tail is not None else _DEEP
                    for i in range(m.ncomp)]
            for n in self.rows:
                ci, e = m.unpos(n)
                tops[ci - 1] = max(tops[ci - 1], e)
            for r in self.rows.values():
                for ci, d in enumerate(r.comps):
                    if d:
                        tops[ci] = max(tops[ci], max(d))
            mb = self.max_pivot_bound
            ci, e = m.unpos(max(mb, self.d_full()))
            tops[ci - 1] = max(tops[ci - 1], e)
            gap_hi = max(m.pos(i + 1, t) for i, t in enumerate(tops))
            if m.case == "R":
                tail2 = (-m.p - tops[0],)
            else:
                tail2 = tuple(-1 - tops[i] for i in range(m.ncomp))
            phi2 = INF
        else:
            gap_hi = self.phi - 1
            tail2 = None
            phi2 = refl(self.stored_floor()) + 1
        vectors = []
        pivots = sorted(self.rows)
        d0 = self.d_full()
        for g in range(d0, gap_hi + 1):
            try:
                if self.is_pivot(g):
                    continue
            except WindowError:
                continue
            if tail2 is not None and m.unpos(g)[1] > tops[m.unpos(g)[0] - 1]:
                continue  # clean gap: covered by the dual tail
            data = {refl(g): self.ring.one()}
            # every pivot row can meet the gap g: above it for scalar
            # frames, and below it through nilpotent junk in jet frames
            for s in pivots:
                c = self.rows[s].pos_coeff(g)
                if not c.is_zero():
                    data[refl(s)] = -c
            vectors.append(VSeries.from_positions(m, self.ring, data))
        # dual pivots live on levels where U is not yet full
        if m.case == "R":
            bound = refl(d0)
        else:
            e_d = m.unpos(d0)[1]
            bound = m.pos(m.p, -1 - e_d)
        return build_frame(m, self.ring, vectors, tail=tail2, phi=phi2,
                           pivots_full_below=True, max_pivot_bound=bound)

    # ------------------------------------------------------------------ group action

    def group_act(self, g: VSeries) -> "GrassPoint":
        """The point g.U for an invertible g (unit leading data per component)."""
        m = self.model
        base = self
        if not self.ring.compatible(g.ring):
            try:
                g = g.lift(self.ring)
            except ValueError:
                base = self.lifted(g.ring)
        shifts, reaches = [], []
        for ci in range(m.ncomp):
            d = g.comps[ci]
            units = [e for e, c in d.items() if c.is_unit()]
            if not units:
                raise WindowError(
                    "acting element has no unit leading term in component %d" % (ci + 1))
            a = min(units)
            if not _isinf(g.hi):
                reach = g.hi - 1 - a
            else:
                reach = (max(d) - a) if d else 0
            shifts.append(a)
            reaches.append(max(0, reach))
        vectors = []
        tail2 = None
        if base.tail is not None:
            tail2 = tuple(base.tail[i] + shifts[i] - reaches[i] for i in range(m.ncomp))
            for i in range(m.ncomp):
                for e in range(base.tail[i] - reaches[i], base.tail[i]):
                    vectors.append(VSeries.monomial(m, base.ring, i + 1, e))
        vectors.extend(base.rows[n] for n in sorted(base.rows))
        vectors = [g * v for v in vectors]
        phis = [v.pos_window()[1] for v in vectors]
        phi2 = min(phis) if phis else base.phi
        if m.case == "R":
            new_bound = base.max_pivot_bound + shifts[0]
        else:
            new_bound = base.max_pivot_bound + m.p * max(shifts)
        return build_frame(m, base.ring, vectors, tail=tail2, phi=phi2,
                           pivots_full_below=base.pivots_full_below,
                           max_pivot_bound=new_bound)

    # ------------------------------------------------------------------ forms

    def _wedge_candidates(self):
        """(row, upper z-degree, pivot) for rows and relevant tail monomials.

        A p-tuple can only reach the z^{-1} residue when the sum of the
        rows' maximal coordinate degrees is >= -1; that caps how deep into
        a monomial tail the enumeration must go.
        """
        m = self.model
        out = []
        for n in sorted(self.rows, reverse=True):
            r = self.rows[n]
            sm = r.support_max()
            phi_r = r.pos_window()[1]
            if _isinf(phi_r):
                upper = (sm if sm is not None else n) // m.p
            else:
                upper = (phi_r - 1) // m.p
            out.append((r, upper, n))
        if self.tail is not None:
            top = max([u for _, u, _ in out], default=0)
            need = -1 - (m.p - 1) * max(top, 0)
            for i in range(m.ncomp):
                if m.case == "R":
                    n = self.tail[i] - 1
                    while n // m.p >= need:
                        out.append((VSeries.basis(m, self.ring, n), n // m.p, n))
                        n -= 1
                else:
                    e = self.tail[i] - 1
                    while e >= need:
                        mono = VSeries.monomial(m, self.ring, i + 1, e)
                        out.append((mono, e, m.pos(i + 1, e)))
                        e -= 1
        return out

    def isotropy_check(self):
        """Does the residue of the p-fold wedge vanish on the frame?

        Returns (True, None) or (False, witness positions).  Tuples whose
        residue is not window-certifiable raise WindowError unless a nonzero
        witness settles the verdict first.
        """
        m = self.model
        cands = self._wedge_candidates()
        cands.sort(key=lambda t: t[1], reverse=True)
        pend = []
        witness = None

        def search(start, chosen, upper_sum):
            nonlocal witness
            if witness is not None:
                return
            if len(chosen) == m.p:
                rows = [cands[j][0] for j in chosen]
                try:
                    val = wedge_residue(rows)
                except WindowError:
                    pend.append(tuple(cands[j][2] for j in chosen))
                    return
                if not val.is_zero():
                    witness = tuple(cands[j][2] for j in chosen)
                return
            need = m.p - len(chosen)
            for j in range(start, len(cands) - need + 1):
                if witness is not None:
                    return
                best = upper_sum + sum(cands[j + k][1] for k in range(need))
                if best < -1:
                    break  # candidates sorted by upper: no completion can reach -1
                search(j + 1, chosen + [j], upper_sum + cands[j][1])

        search(0, [], 0)
        if witness is not None:
            return False, witness
        if pend:
            raise WindowError(
                "isotropy: %d candidate tuples not certifiable in window" % len(pend))
        return True, None

    def algebra_point_check(self) -> bool:
        """1 in U and U.U inside U, over window-certifiable row pairs."""
        if not self.membership(VSeries.one(self.model, self.ring)):
            return False
        floor = self.stored_floor()
        pivots = sorted(self.rows)
        p = self.model.p
        for a, b in itertools.combinations_with_replacement(pivots, 2):
            if self.tail is None and floor is not None \
                    and p * (a // p + b // p) < floor:
                continue  # product escapes the stored window
            prod = self.rows[a] * self.rows[b]
            lo_p, hi_p = prod.pos_window()
            if not _isinf(hi_p) and hi_p <= lo_p + 1:
                continue
            if not self.membership(prod):
                return False
        return True

    def connectedness_check(self):
        """Per component: does the idempotent e_i lie in U?"""
        if self.model.case != "NR":
            raise ValueError("connectedness test applies to the non-ramified model")
        return {i: self.contains_unit_vector(i) for i in range(1, self.model.p + 1)}

    # ------------------------------------------------------------------ tangent

    def tangent_orbit_dim(self, depth: int, *, with_flag: bool = False):
        """dim T_1 Pi / (ker d mu_U + T_1 Pibar+), principal parts to `depth`.

        Builds the exact linear system for g supported on exponents
        [-depth, E): tr(g) constant, sigma^k(g) . row in U for all k; the
        dimension is (principal-part space with the trace constraint) minus
        (principal parts of the nullspace).  With `with_flag`, also reports
        agreement with the depth-1 value.
        """
        val = self._tangent_once(depth)
        if not with_flag:
            return val
        prev = self._tangent_once(depth - 1) if depth > 1 else None
        return val, (prev == val)

    def _tangent_once(self, depth: int) -> int:
        m = self.model
        if self.ring.cap != 0:
            raise ValueError("tangent computation expects a scalar frame")
        p = m.p
        if _isinf(self.phi):
            e_hi = depth + 2
        else:
            e_hi = max(depth + 2, m.exp_window(0, self.phi)[1] - 1)
        unknowns = [(i, e) for i in range(1, m.ncomp + 1) for e in range(-depth, e_hi)]
        col = {u: k for k, u in enumerate(unknowns)}
        equations = []
        if m.case == "R":
            for n in range(-depth, e_hi):
                if n != 0 and n % p == 0:
                    equations.append({col[(1, n)]: Cyclo.one(p)})
        else:
            for e in range(-depth, e_hi):
                if e != 0:
                    equations.append({col[(i, e)]: Cyclo.one(p) for i in range(1, p + 1)})
        rows = self._tangent_rows(depth)
        top_pos = m.pos(1, e_hi)
        for k in range(p):
            per_row = {}
            for (i, e), cidx in col.items():
                n = m.pos(i, e)
                for ridx, r in enumerate(rows):
                    if m.case == "R":
                        base = VSeries.basis(m, self.ring, n,
                                             self.ring.const(m.xi_pow(k * n)))
                    else:
                        i2 = (i - 1 + k) % p + 1
                        base = VSeries.monomial(m, self.ring, i2, e)
                    prod = base * r
                    residual, _, blocked = self.reduce(prod)
                    lo_r, hi_r = residual.pos_window()
                    slot = per_row.setdefault(ridx, {"lo": _DEEP, "hi": None, "eqs": {}})
                    if blocked:
                        slot["lo"] = max(slot["lo"], max(blocked) + 1)
                    slot["hi"] = hi_r if slot["hi"] is None else min(slot["hi"], hi_r)
                    for q, c in residual.pos_items():
                        if not c.is_zero():
                            slot["eqs"].setdefault(q, {})[cidx] = c.constant_term()
            for ridx, slot in per_row.items():
                r = rows[ridx]
                valid_hi = min(slot["hi"], top_pos + r.pos_window()[0])
                for q, eq in slot["eqs"].items():
                    if slot["lo"] <= q < valid_hi:
                        equations.append(eq)
        basis = nullspace(equations, len(unknowns), p)
        neg_cols = [kk for kk, (i, e) in enumerate(unknowns) if e < 0]
        if m.case == "R":
            amb = depth - depth // p
        else:
            amb = (p - 1) * depth
        projected = [[vec[kk] for kk in neg_cols] for vec in basis]
        return amb - rank_of_vectors(projected, len(neg_cols), p)

    def _tangent_rows(self, depth: int):
        """Rows usable as constraints: products must stay in the window."""
        m = self.model
        rows = []
        floor = self.stored_floor()
        depth_pos = m.pos(1, -depth) if m.case == "NR" else -depth
        for n in sorted(self.rows):
            r = self.rows[n]
            if self.tail is None and floor is not None:
                if r.pos_window()[0] + depth_pos < floor:
                    continue
            rows.append(r)
        if self.tail is not None:
            for i, t in enumerate(self.tail):
                for e in range(t - depth - 1, t):
                    rows.append(VSeries.monomial(m, self.ring, i + 1, e))
        return rows

    # ------------------------------------------------------------------ misc

    def frame_text(self):
        lines = ["chi=%d d_full=%d pivot_bound=%d" % (
            self.index_chi(), self.d_full(), self.max_pivot_bound)]
        for n in sorted(self.rows):
            lines.append("%d: %s" % (n, self.rows[n].to_text()))
        if self.tail is not None:
            lines.append("tail bounds: %s" % (self.tail,))
        return "\n".join(lines)

    def __repr__(self):
        try:
            chi = self.index_chi()
        except (WindowError, FrameError):
            chi = "?"
        return "GrassPoint(%s, chi=%s, %d rows)" % (self.model, chi, len(self.rows))


# ---------------------------------------------------------------------- builders


def build_frame(model: Model, ring: JetRing, vectors, *, tail=None, phi=INF,
                pivots_full_below=False, max_pivot_bound=None, recipe=None) -> GrassPoint:
    """Reduced echelon frame spanned by `vectors` (plus the tail, if any)."""
    shell = GrassPoint(model, ring, {}, tail=tail, phi=phi,
                       pivots_full_below=False,
                       max_pivot_bound=0 if max_pivot_bound is None else max_pivot_bound)
    for v in vectors:
        if not ring.compatible(v.ring):
            v = v.lift(ring)
        residual, _, _ = shell.reduce(v)
        if residual.is_zero_certified():
            continue
        piv = residual.leading_unit_position()
        if piv is None:
            raise FrameError("generator reduces to a nilpotent-only vector; "
                             "not a frame over this jet ring")
        lead = residual.pos_coeff(piv)
        shell.rows[piv] = residual.scale(lead.inverse())
    _back_reduce(shell)
    if max_pivot_bound is None:
        shell.max_pivot_bound = max(shell.rows) if shell.rows else -1
        if tail is not None:
            shell.max_pivot_bound = max(
                [shell.max_pivot_bound]
                + [model.pos(i + 1, t - 1) for i, t in enumerate(tail)])
    shell.pivots_full_below = pivots_full_below or tail is not None
    shell.recipe = recipe
    return shell


def _back_reduce(frame: GrassPoint):
    """Clear every row at the other rows' pivots; iterate (nilpotent junk)."""
    for _ in range(frame.ring.cap + 2):
        changed = False
        for n in sorted(frame.rows):
            r = frame.rows[n]
            for other in sorted(frame.rows):
                if other == n:
                    continue
                c = r.pos_coeff(other)
                if not c.is_zero():
                    r = r - frame.rows[other].scale(c)
                    changed = True
            if frame.tail is not None:
                for q, c in list(r.pos_items()):
                    if q != n and frame.in_tail(q) and not c.is_zero():
                        r = r - VSeries.basis(frame.model, frame.ring, q, c)
                        changed = True
            frame.rows[n] = r
        if not changed:
            break


def module_closure(model: Model, ring: JetRing, gens, algebra, *, phi, floor,
                   pivots_full_below=False, max_pivot_bound=None) -> GrassPoint:
    """Frame of the module generated by `gens` over products of `algebra`.

    Multiplies by the algebra generators until the pivot set stops growing
    between `floor` and the window top; products diving below the floor
    are dropped (their pivots fall outside the stored range).
    """
    frame = build_frame(model, ring, gens, phi=phi,
                        pivots_full_below=pivots_full_below,
                        max_pivot_bound=max_pivot_bound)
    while True:
        before = set(frame.rows)
        new_vectors = list(frame.rows.values())
        for a in algebra:
            for r in list(frame.rows.values()):
                prod = a * r
                lo_p, hi_p = prod.pos_window()
                if not _isinf(hi_p) and hi_p <= lo_p:
                    continue
                lead = prod.leading_position()
                if lead is None or lead < floor:
                    continue
                new_vectors.append(prod)
        frame = build_frame(model, ring, new_vectors, phi=phi,
                            pivots_full_below=pivots_full_below,
                            max_pivot_bound=max_pivot_bound)
        if set(frame.rows) == before:
            return frame


def v_minus(model: Model, ring: JetRing, shift: int = 0) -> GrassPoint:
    """The subspace of all positions with component exponent below `shift`."""
    tail = tuple(shift for _ in range(model.ncomp))
    return GrassPoint(model, ring, {}, tail=tail, phi=INF,
                      pivots_full_below=True,
                      max_pivot_bound=max(model.pos(i + 1, t - 1)
                                          for i, t in enumerate(tail)))


def u_n_point(model: Model, ring: JetRing, n: int, big_n: int) -> GrassPoint:
    """The witness subspace <z^{-n-1} e_1, e_2, ..., e_p> + z^N V-."""
    if n == 0:
        raise ValueError("the witness family needs n != 0")
    if model.case == "R":
        # e_1 = 1, e_i = z1^{i-1}; z^{-n-1} e_1 = z1^{-p(n+1)}
        gens = [VSeries.monomial(model, ring, 1, -model.p * (n + 1))]
        gens += [VSeries.monomial(model, ring, 1, i - 1) for i in range(2, model.p + 1)]
        tail = (model.p * big_n,)
    else:
        gens = [VSeries.monomial(model, ring, 1, -n - 1)]
        gens += [VSeries.unit_vector(model, ring, i) for i in range(2, model.p + 1)]
        tail = tuple(big_n for _ in range(model.p))
    return build_frame(model, ring, gens, tail=tail)


def lines_point(model: Model, ring: JetRing) -> GrassPoint:
    """p disjoint affine lines: U = K[x]^p = span of e_i x^a (NR model)."""
    if model.case != "NR":
        raise ValueError("the disjoint-lines point lives in the NR model")
    return v_minus(model, ring, shift=1)
