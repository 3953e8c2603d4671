"""Polynomial reduction: the stage that decides integrability.

After Hermite reduction the remainder has squarefree denominator.  Its part
with denominator e is rewritten over a basis V that behaves well at
infinity and then reduced modulo the image of the map

    phi(p) = (1/u^2) * (a*u*p' - a*u'*p + u*p*B)      (rows p in K[x]^n)

which satisfies (1/a) * phi(p)*V = ((p/u) * p*V)' read row-wise, i.e. phi
captures exactly the derivatives of elements with denominator bound u.  The
complement of the image inside K[x]^n is spanned by finitely many
monomials; a reduced remainder is zero iff the integrand was integrable.

u is taken as b times the square part root of Disc(W), which bounds the
denominators any antiderivative of the remainder can have.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algfield import AlgElem, FieldBasis, discriminant, power_basis
from .errors import AlgintError, RankDeficient, SuitabilityFailure
from .hermite import HermiteResult, lazy_hermite_reduce
from .linalg import nullspace, transpose, vec_mat
from .rings import Poly, invert_mod, lcm_many, square_part_root


def _val_inf(rf):
    """Valuation at infinity of a rational function (+inf for zero)."""
    if not rf:
        return 10**9
    return rf.den.degree - rf.num.degree


def infinity_scale(w):
    """Smallest k with w/x^k integral at infinity, returned as (element, k)."""
    cur = w.curve
    xinv = cur.from_x(cur.xfrac.of(cur.xring.one, cur.xring.gen))
    cand = w
    for k in range(0, 256):
        if cand.is_integral_at_infinity():
            return cand, k
        cand = cand * xinv
    raise AlgintError("no power of x makes the element integral at infinity")


@dataclass(frozen=True)
class InfinityBasis:
    """Basis V, integral at infinity, with a*V' = B*V where every entry of
    B has degree below deg a.  a_min and b_min name the minimal such data;
    the decomposition may work with a polynomial multiple of a_min."""

    vb: FieldBasis
    tau: tuple

    @property
    def elements(self):
        return self.vb.elements

    @property
    def a_min(self):
        return self.vb.e

    @property
    def b_min(self):
        return self.vb.mmat


def _max_deg(rows):
    out = -1
    for row in rows:
        for p in row:
            if p:
                out = max(out, p.degree)
    return out


def _suitable_at_inf(vb):
    return _max_deg(vb.mmat) < vb.e.degree


def suitable_at_infinity(curve):
    """Build an InfinityBasis by scaling an integral basis down by powers of
    x and enlarging the local module at infinity until the derivation data
    is suitable there."""
    start = power_basis(curve)
    scaled = []
    taus = []
    for w in start.elements:
        v, k = infinity_scale(w)
        scaled.append(v)
        taus.append(k)
    vb = FieldBasis(curve, scaled)
    for _ in range(64):
        if _suitable_at_inf(vb):
            return InfinityBasis(vb=vb, tau=tuple(taus))
        vb = _repair_at_infinity(vb)
    raise SuitabilityFailure("enlargement at infinity did not stabilize")


def _repair_at_infinity(vb):
    """One certified enlargement of the local module at infinity.

    With k the pole order of the derivation matrix at infinity, candidates
    are x^(3-k)/a * B_i*V (the scaled derivatives of the basis elements)
    and x * c*V for constant vectors c killing the top-degree part of B.
    """
    cur = vb.curve
    a = vb.e
    bmat = vb.mmat
    top = _max_deg(bmat)
    k = 2 + top - a.degree
    xf = cur.xfrac
    x = cur.xring.gen
    candidates = []
    power = xf.of(x) ** (3 - k) if 3 - k >= 0 else xf.one / xf.of(x) ** (k - 3)
    scale = cur.from_x(power / xf.of(a))
    for i in range(cur.n):
        num = cur.zero()
        for j in range(cur.n):
            num = num + cur.from_x(xf.of(bmat[i][j])) * vb.elements[j]
        candidates.append(scale * num)
    field_k = cur.field
    btop = tuple(
        tuple(
            bmat[i][j].coeff(top) if bmat[i][j].degree == top else field_k.zero
            for j in range(cur.n)
        )
        for i in range(cur.n)
    )
    vectors = list(nullspace(transpose(btop), field_k))
    for v in nullspace(btop, field_k):
        if v not in vectors:
            vectors.append(v)
    x_elem = cur.from_x(xf.of(x))
    for c in vectors:
        combo = cur.zero()
        for ci, v in zip(c, vb.elements):
            combo = combo + cur.from_x(xf.coerce(ci)) * v
        candidates.append(x_elem * combo)
    for theta in candidates:
        if not theta or not theta.is_integral_at_infinity():
            continue
        coords = vb.coords_of(theta)
        if all(_val_inf(c) >= 0 for c in coords):
            continue
        return _dvr_enlarge(vb, theta)
    raise SuitabilityFailure("no certified enlargement at infinity")


def _dvr_enlarge(vb, theta):
    """Basis of the module over the local ring at infinity spanned by vb and
    theta, by valuation-minimal pivoting; row operations only ever subtract
    multiples with nonnegative valuation, so the span is preserved."""
    cur = vb.curve
    n = cur.n
    xf = cur.xfrac
    rows = [
        [xf.one if i == j else xf.zero for j in range(n)] for i in range(n)
    ]
    rows.append(list(vb.coords_of(theta)))
    r = 0
    for col in range(n):
        piv = None
        best = None
        for i in range(r, len(rows)):
            v = _val_inf(rows[i][col])
            if rows[i][col] and (best is None or v < best):
                best = v
                piv = i
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                factor = rows[i][col] / rows[r][col]
                rows[i] = [
                    rows[i][j] - factor * rows[r][j] for j in range(n)
                ]
        r += 1
    live = [row for row in rows if any(row)]
    if len(live) != n:
        raise RankDeficient("local module at infinity lost full rank")
    elems = []
    for row in live:
        e = cur.zero()
        for c, v in zip(row, vb.elements):
            e = e + cur.from_x(c) * v
        elems.append(e)
    return FieldBasis(cur, elems)


def compute_u(basis, b):
    """Denominator bound for antiderivatives of remainders over this basis:
    b times the square part root of the basis discriminant."""
    disc = discriminant(basis.elements)
    if not disc.is_polynomial:
        raise AlgintError("discriminant of an integral basis must be polynomial")
    return (square_part_root(disc.as_poly()) * b).monic()


def euclid_split(rem):
    """Split a normalized remainder h = (1/(d*e)) * nums*W into
    (1/d) * r*W + (1/e) * s*W with deg r_i < deg d, via h_i = r_i*e + s_i*d."""
    ring = rem.basis.curve.xring
    d = rem.d
    e = rem.basis.e
    if d.degree == 0:
        return d, (ring.zero,) * len(rem.nums), rem.nums
    einv = invert_mod(e % d, d)
    r = tuple((h * einv) % d for h in rem.nums)
    s = tuple((h - ri * e).exact_div(d) for h, ri in zip(rem.nums, r))
    return d, r, s


@dataclass(frozen=True)
class PhiMap:
    """phi(p) = (1/u^2)(a*u*p' - a*u'*p + u*p*B) on rows p in K[x]^n."""

    u: Poly
    a: Poly
    bmat: tuple

    def apply_tilde(self, row):
        """u^2 * phi(row), always a polynomial row."""
        au = self.a * self.u
        aup = self.a * self.u.derivative()
        pb = vec_mat(row, self.bmat)
        return tuple(
            au * p.derivative() - aup * p + self.u * pb[i]
            for i, p in enumerate(row)
        )

    def unit_image(self, comp, s):
        """u^2 * phi of the monomial row x^s at component comp."""
        ring = self.u.ring
        x_s = ring.monomial(ring.coeff.one, s)
        diag = self.a * self.u * x_s.derivative() - self.a * self.u.derivative() * x_s
        row = [self.u * x_s * self.bmat[comp][j] for j in range(len(self.bmat))]
        row[comp] = row[comp] + diag
        return tuple(row)


@dataclass(frozen=True)
class ComplementSchedule:
    """Build schedule for the image complement; two different schedules must
    stabilize on the same standard monomials."""

    initial_cap: int = 8
    step: int = 4
    hard_cap: int = 600


class ComplementNV:
    """Standard complement of im(phi) inside K[x]^n.

    Generators phi(e_i x^s) are fed in by increasing degree s.  Those
    combinations that are polynomial (tracked modulo u^2) form an echelon
    by leading monomial under the graded order (degree, component); the
    monomials that never become leading terms span the complement.  Each
    echelon row keeps the preimage polynomial row that maps onto it.
    """

    def __init__(self, phi, n, field, schedule=None):
        self.phi = phi
        self.n = n
        self.field = field
        self.ring = phi.u.ring
        self.schedule = schedule or ComplementSchedule()
        self.leads = {}
        self._residue = []
        self._ulen = 2 * phi.u.degree
        self._usq = phi.u * phi.u
        self._built = -1
        self._frozen = None
        self._stable = False

    # -- generator feed

    def _feed(self, s):
        for comp in range(self.n):
            g = self.phi.unit_image(comp, s)
            pre = [self.ring.zero] * self.n
            pre[comp] = self.ring.monomial(self.ring.coeff.one, s)
            self._insert(g, tuple(pre))
        self._built = s

    def _insert(self, g, pre):
        if self._ulen == 0:
            w = tuple(p.exact_div(self._usq) for p in g)
            self._insert_intersection(w, pre)
            return
        res = [p % self._usq for p in g]
        full = list(g)
        preim = list(pre)
        for entry in self._residue:
            piv = entry["pivot"]
            c = res[piv[0]].coeff(piv[1])
            if c != self.field.zero:
                scale = c / entry["res"][piv[0]].coeff(piv[1])
                res = [a - scale * b for a, b in zip(res, entry["res"])]
                full = [a - scale * b for a, b in zip(full, entry["full"])]
                preim = [a - scale * b for a, b in zip(preim, entry["preim"])]
        pivot = None
        for j in range(self.n):
            for k in range(self._ulen):
                if res[j].coeff(k) != self.field.zero:
                    pivot = (j, k)
                    break
            if pivot:
                break
        if pivot is None:
            if any(full):
                w = tuple(p.exact_div(self._usq) for p in full)
                self._insert_intersection(w, tuple(preim))
            return
        self._residue.append(
            {"res": res, "full": full, "preim": preim, "pivot": pivot}
        )

    def _insert_intersection(self, w, pre):
        row = list(w)
        preim = list(pre)
        while True:
            lead = self._lead_monomial(row)
            if lead is None:
                return
            hit = self.leads.get(lead)
            if hit is None:
                break
            c = row[lead[1]].coeff(lead[0])
            row = [a - c * b for a, b in zip(row, hit["row"])]
            preim = [a - c * b for a, b in zip(preim, hit["preim"])]
        k, j = lead
        c = row[j].coeff(k)
        inv = self.field.one / c
        row = [inv * p for p in row]
        preim = [inv * p for p in preim]
        if self._frozen is not None and k <= self._frozen:
            raise AlgintError(
                "complement stabilization violated: new lead at degree "
                f"{k} below frozen bound {self._frozen}"
            )
        self.leads[(k, j)] = {"row": row, "preim": preim}

    def _lead_monomial(self, row):
        best = None
        for j, p in enumerate(row):
            if p:
                cand = (p.degree, j)
                if best is None or cand > best:
                    best = cand
        return best

    # -- stabilization

    def _margin(self):
        return max(self.phi.a.degree, _max_deg(self.phi.bmat), 0) + self._ulen + 1

    def _covered(self, k):
        return all((k, j) in self.leads for j in range(self.n))

    def ensure_stable(self):
        if self._stable:
            return
        margin = self._margin()
        target = max(self.schedule.initial_cap, margin + 1)
        while True:
            while self._built < target:
                self._feed(self._built + 1)
            maxlead = max((k for k, _ in self.leads), default=-1)
            maxstd = -1
            for k in range(maxlead, -1, -1):
                if not self._covered(k):
                    maxstd = k
                    break
            window_ok = maxlead >= maxstd + margin and all(
                self._covered(k) for k in range(maxstd + 1, maxstd + margin + 1)
            )
            if window_ok and target >= maxstd + 2 * margin:
                self._frozen = maxstd
                self._stable = True
                return
            target += self.schedule.step
            if target > self.schedule.hard_cap:
                raise AlgintError("complement build exceeded its hard cap")

    def ensure_cover(self, degree):
        self.ensure_stable()
        margin = self._margin()
        while self._built < degree + margin:
            self._feed(self._built + 1)

    # -- public views

    def standard_monomials(self):
        """Monomials (degree, component) spanning the complement, sorted."""
        self.ensure_stable()
        out = []
        for k in range(self._frozen + 1):
            for j in range(self.n):
                if (k, j) not in self.leads:
                    out.append((k, j))
        return tuple(out)

    @property
    def dim(self):
        return len(self.standard_monomials())

    def reduce(self, row):
        """Split row = u^2*phi-image part + complement part.

        Returns (p1, q2) with row = u^2 * phi(p1) / u^2 ... i.e. as exact
        polynomial rows: row = phi(p1) + q2 where phi(p1) is computed in
        K[x]^n and q2 is supported on standard monomials.
        """
        self.ensure_stable()
        q = list(row)
        p1 = [self.ring.zero] * self.n
        q2 = [self.ring.zero] * self.n
        while True:
            lead = self._lead_monomial(q)
            if lead is None:
                break
            k, j = lead[0], lead[1]
            if k > self._built - self._margin():
                self.ensure_cover(k)
            hit = self.leads.get((k, j))
            c = q[j].coeff(k)
            if hit is None:
                if self._frozen is not None and k > self._frozen:
                    raise AlgintError(
                        f"unreduced monomial x^{k} (component {j}) above the "
                        "stabilized complement"
                    )
                mono = self.ring.monomial(c, k)
                q2[j] = q2[j] + mono
                q[j] = q[j] - mono
                continue
            q = [a - c * b for a, b in zip(q, hit["row"])]
            p1 = [a + c * b for a, b in zip(p1, hit["preim"])]
        return tuple(p1), tuple(q2)


@dataclass(frozen=True)
class AdditiveDecomp:
    """f = g' + (1/d) * p_nums*W + (1/a) * q_nums*V.

    The decomposition is integrable iff both remainder rows vanish, in
    which case g is an antiderivative.
    """

    f: AlgElem
    g: AlgElem
    basis: FieldBasis
    d: Poly
    p_nums: tuple
    inf_basis: InfinityBasis
    a: Poly
    q_nums: tuple
    u: Poly
    p1: tuple
    hermite: HermiteResult

    @property
    def integrable(self):
        return not any(self.p_nums) and not any(self.q_nums)

    def antiderivative(self):
        return self.g if self.integrable else None

    def remainder_element(self):
        cur = self.basis.curve
        xf = cur.xfrac
        d_rf = xf.of(self.d)
        part = self.basis.combine([xf.of(p) / d_rf for p in self.p_nums])
        a_rf = xf.of(self.a)
        vb = self.inf_basis.vb
        part = part + vb.combine([xf.of(q) / a_rf for q in self.q_nums])
        return part


class Decomposer:
    """Caches the infinity basis and the image complements per (u, a)."""

    def __init__(self, curve, schedule=None):
        self.curve = curve
        self.schedule = schedule or ComplementSchedule()
        self._inf = None
        self._complements = {}

    @property
    def inf_basis(self):
        if self._inf is None:
            self._inf = suitable_at_infinity(self.curve)
        return self._inf

    def complement(self, u, a):
        key = (u, a)
        hit = self._complements.get(key)
        if hit is None:
            inf = self.inf_basis
            scale = a.exact_div(inf.a_min)
            bmat = tuple(
                tuple(scale * p for p in row) for row in inf.b_min
            )
            phi = PhiMap(u=u, a=a, bmat=bmat)
            hit = ComplementNV(phi, self.curve.n, self.curve.field, self.schedule)
            self._complements[key] = hit
        return hit

    def decompose(self, f, basis=None, u_mult=None, a_mult=None):
        """Additive decomposition of f.  u_mult and a_mult force the working
        u and a to be multiples of the given polynomials, so several
        decompositions can share one image complement."""
        cur = self.curve
        xf = cur.xfrac
        her = lazy_hermite_reduce(f, basis)
        w_basis = her.basis
        d, r, s = euclid_split(her.remainder)
        inf = self.inf_basis
        vb = inf.vb
        rows = [vb.coords_of(w) for w in w_basis.elements]
        b = lcm_many([c.den for row in rows for c in row])
        cmat = tuple(
            tuple((c * xf.of(b)).as_poly() for c in row) for row in rows
        )
        eb = w_basis.e * b
        a_parts = [inf.a_min, eb]
        if a_mult is not None:
            a_parts.append(a_mult)
        a = lcm_many(a_parts)
        utilde_scale = a.exact_div(eb)
        sc = vec_mat(s, cmat)
        utilde = tuple(utilde_scale * p for p in sc)
        u = compute_u(w_basis, b)
        if u_mult is not None:
            u = lcm_many([u, u_mult])
        comp = self.complement(u, a)
        p1, q2 = comp.reduce(utilde)
        u_rf = xf.of(u)
        g = her.g_part + vb.combine([xf.of(p) / u_rf for p in p1])
        return AdditiveDecomp(
            f=f,
            g=g,
            basis=w_basis,
            d=d,
            p_nums=r,
            inf_basis=inf,
            a=a,
            q_nums=q2,
            u=u,
            p1=p1,
            hermite=her,
        )


def additive_decompose(f, basis=None, schedule=None, decomposer=None):
    """Decompose f = g' + h with h minimal; convenience entry point."""
    dec = decomposer or Decomposer(f.curve, schedule)
    return dec.decompose(f, basis)


def antiderivative(f, basis=None, decomposer=None):
    """Exact antiderivative of f, or None if f is not integrable."""
    return additive_decompose(f, basis=basis, decomposer=decomposer).antiderivative()
