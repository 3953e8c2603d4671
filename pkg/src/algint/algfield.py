"""The algebraic function field A = K(x)[y]/<m> and its bases.

Elements are polynomials in y of degree < n with coefficients in K(x),
reduced against the monic defining polynomial.  The curve caches the
implicit derivatives dy/dx and dy/dt.  Irreducibility of m is assumed, not
checked: any inversion that stumbles over a zero divisor raises
CurveReducible with the discovered factor.

A FieldBasis carries a K(x)-basis W of A together with the derivation data
(e, M) satisfying e*W' = M*W, where e is the monic least common denominator.
Entries of M may have non-integer rational coefficients; that is fine, the
normalization gcd(e, entries of M) = 1 still holds by minimality of e.
"""

from __future__ import annotations

from .errors import (
    CurveReducible,
    DomainError,
    PreconditionError,
    RankDeficient,
    SuitabilityFailure,
)
from .linalg import det, hnf_rows, inverse, mat, solve_mod, vec_mat
from .rings import (
    QT,
    Poly,
    PolyRing,
    ext_gcd,
    gcd,
    is_squarefree,
    lcm_many,
    squarefree_decomposition,
    x_frac_field,
    x_poly_ring,
)


class Curve:
    """Defining data of A = K(x)[y]/<m>, with m monic of y-degree n >= 1."""

    def __init__(self, ypoly, const_field):
        self.field = const_field
        self.xring = x_poly_ring(const_field)
        self.xfrac = x_frac_field(const_field)
        self.yring = PolyRing(self.xfrac, "y")
        if ypoly.ring != self.yring:
            raise DomainError("curve polynomial must live in K(x)[y]")
        if ypoly.degree < 1:
            raise DomainError("curve polynomial must have positive degree in y")
        self.lead = ypoly.lc
        self.m = ypoly.monic()
        self.n = ypoly.degree
        self.m_y = self.m.derivative()
        self._dydx = None
        self._dydt = None

    def __eq__(self, other):
        return self is other or (
            isinstance(other, Curve) and self.field == other.field and self.m == other.m
        )

    def __hash__(self):
        return hash(("Curve", self.m))

    def __repr__(self):
        return f"Curve({self.m})"

    # -- element constructors

    def elem(self, ypoly):
        return AlgElem(self, ypoly % self.m)

    def zero(self):
        return AlgElem(self, self.yring.zero)

    def one(self):
        return AlgElem(self, self.yring.one)

    def gen(self):
        return self.elem(self.yring.gen)

    def from_x(self, rf):
        return AlgElem(self, self.yring.from_coeff(self.xfrac.coerce(rf)))

    def from_coords(self, coords):
        return AlgElem(
            self, self.yring.poly([self.xfrac.coerce(c) for c in coords]) % self.m
        )

    def _inv_ypoly(self, p):
        # inverse of p modulo m; a nontrivial gcd certifies that m factors
        if not p:
            raise DomainError("inversion of zero")
        g, s, _ = ext_gcd(p, self.m)
        if g.degree > 0:
            raise CurveReducible(g)
        return s % self.m

    @property
    def dydx(self):
        if self._dydx is None:
            m_x = Poly(self.yring, tuple(c.derivative() for c in self.m.coeffs))
            if gcd(self.m_y, self.m).degree > 0:
                raise CurveReducible(gcd(self.m_y, self.m))
            self._dydx = (-m_x * self._inv_ypoly(self.m_y)) % self.m
        return self._dydx

    @property
    def dydt(self):
        if self.field != QT:
            raise PreconditionError("t-derivation requires the coefficient field QQ(t)")
        if self._dydt is None:
            m_t = Poly(self.yring, tuple(_dt_ratfunc(c) for c in self.m.coeffs))
            self._dydt = (-m_t * self._inv_ypoly(self.m_y)) % self.m
        return self._dydt


def _dt_ratfunc(c):
    """d/dt on an element of K(t)(x), applied coefficient-wise in x."""
    ring = c.num.ring
    num_t = c.num.map_coeffs(lambda q: q.derivative(), ring)
    den_t = c.den.map_coeffs(lambda q: q.derivative(), ring)
    return c.field.of(num_t * c.den - c.num * den_t, c.den * c.den)


class AlgElem:
    """Element of A, reduced mod m.  Immutable."""

    __slots__ = ("curve", "poly")

    def __init__(self, curve, poly):
        self.curve = curve
        self.poly = poly

    def coords(self):
        """Coefficient vector over the power basis 1, y, ..., y^(n-1)."""
        return tuple(self.poly.coeff(i) for i in range(self.curve.n))

    def __bool__(self):
        return bool(self.poly)

    def __eq__(self, other):
        if isinstance(other, AlgElem):
            return self.curve == other.curve and self.poly == other.poly
        return NotImplemented

    def __hash__(self):
        return hash((self.curve, self.poly))

    def _coerce(self, other):
        if isinstance(other, AlgElem):
            if other.curve == self.curve:
                return other
            return NotImplemented
        try:
            return self.curve.from_x(self.curve.xfrac.coerce(other))
        except DomainError:
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return AlgElem(self.curve, self.poly + other.poly)

    __radd__ = __add__

    def __neg__(self):
        return AlgElem(self.curve, -self.poly)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return AlgElem(self.curve, self.poly - other.poly)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return AlgElem(self.curve, other.poly - self.poly)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return AlgElem(self.curve, (self.poly * other.poly) % self.curve.m)

    __rmul__ = __mul__

    def inv(self):
        return AlgElem(self.curve, self.curve._inv_ypoly(self.poly))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, k):
        if not isinstance(k, int):
            raise DomainError("powers of field elements must be integers")
        if k < 0:
            return self.inv() ** (-k)
        out = self.curve.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def dx(self):
        """The derivation extending d/dx, with dx(y) determined implicitly."""
        cur = self.curve
        coeff_part = Poly(cur.yring, tuple(c.derivative() for c in self.poly.coeffs))
        chain_part = (self.poly.derivative() * cur.dydx) % cur.m
        return AlgElem(cur, coeff_part + chain_part)

    def dt(self):
        cur = self.curve
        chain = cur.dydt  # raises before any coefficient work on a t-free field
        coeff_part = Poly(cur.yring, tuple(_dt_ratfunc(c) for c in self.poly.coeffs))
        chain_part = (self.poly.derivative() * chain) % cur.m
        return AlgElem(cur, coeff_part + chain_part)

    def mult_matrix(self):
        """Matrix of multiplication by self on the power basis (rows = images)."""
        cur = self.curve
        rows = []
        acc = self.poly
        y = cur.yring.gen
        for _ in range(cur.n):
            rows.append(tuple(acc.coeff(i) for i in range(cur.n)))
            acc = (acc * y) % cur.m
        return mat(rows)

    def trace(self):
        mm = self.mult_matrix()
        out = self.curve.xfrac.zero
        for i in range(self.curve.n):
            out = out + mm[i][i]
        return out

    def char_poly(self):
        """Characteristic polynomial of multiplication by self.

        Returned as the coefficient list (c_1, ..., c_n) of
        T^n + c_1 T^(n-1) + ... + c_n, computed by the trace-recursion
        method (exact division by integers, valid in characteristic 0).
        """
        cur = self.curve
        n = cur.n
        F = cur.xfrac
        mm = self.mult_matrix()
        coeffs = []
        mk = mm
        for k in range(1, n + 1):
            tr = F.zero
            for i in range(n):
                tr = tr + mk[i][i]
            ck = -(tr / F.from_int(k))
            coeffs.append(ck)
            if k < n:
                shifted = tuple(
                    tuple(mk[i][j] + (ck if i == j else F.zero) for j in range(n))
                    for i in range(n)
                )
                mk = _mat_mul_field(mm, shifted)
        return tuple(coeffs)

    def norm(self):
        cs = self.char_poly()
        sign = self.curve.xfrac.from_int((-1) ** self.curve.n)
        return sign * cs[-1]

    def is_integral(self):
        return all(c.is_polynomial for c in self.char_poly())

    def is_integral_at_infinity(self):
        # valuation at infinity of p/q is deg q - deg p; integrality needs >= 0
        return all(
            (not c) or c.num.degree <= c.den.degree for c in self.char_poly()
        )

    def __str__(self):
        return str(self.poly)

    def __repr__(self):
        return f"AlgElem({self.poly})"


def _mat_mul_field(a, b):
    n = len(a)
    return tuple(
        tuple(
            _sum_prod(a[i], tuple(b[k][j] for k in range(n))) for j in range(n)
        )
        for i in range(n)
    )


def _sum_prod(u, v):
    acc = u[0] * v[0]
    for x, y in zip(u[1:], v[1:]):
        acc = acc + x * y
    return acc


def discriminant(elements):
    """det(Tr(w_i * w_j)) of a tuple of field elements, in K(x)."""
    xfrac = elements[0].curve.xfrac
    n = len(elements)
    rows = [
        [(elements[i] * elements[j]).trace() for j in range(n)] for i in range(n)
    ]
    return det(mat(rows), xfrac)


class FieldBasis:
    """A K(x)-basis W of A with transition and derivation data.

    trans[i][j] is the coefficient of y^j in w_i; e*W' = M*W with e the
    monic lcm of the denominators of the derivation coefficients.
    """

    def __init__(self, curve, elements):
        if len(elements) != curve.n:
            raise RankDeficient(f"need {curve.n} elements, got {len(elements)}")
        self.curve = curve
        self.elements = tuple(elements)
        xfrac = curve.xfrac
        self.trans = mat(w.coords() for w in self.elements)
        try:
            self.trans_inv = inverse(self.trans, xfrac)
        except RankDeficient:
            raise RankDeficient("proposed basis is K(x)-linearly dependent")
        deriv_rows = [self.coords_of(w.dx()) for w in self.elements]
        self.e = lcm_many([c.den for row in deriv_rows for c in row])
        self.mmat = mat(
            tuple((c * self.e).as_poly() for c in row) for row in deriv_rows
        )
        self.e_squarefree = is_squarefree(self.e)
        self._integral = None

    @property
    def integral_certified(self):
        if self._integral is None:
            self._integral = all(w.is_integral() for w in self.elements)
        return self._integral

    def coords_of(self, f):
        """K(x)-coordinates of f with respect to this basis."""
        return vec_mat(f.coords(), self.trans_inv)

    def member_coords(self, f):
        """Polynomial coordinates if f lies in the K[x]-module, else None."""
        coords = self.coords_of(f)
        if all(c.is_polynomial for c in coords):
            return tuple(c.as_poly() for c in coords)
        return None

    def member(self, f):
        return self.member_coords(f) is not None

    def combine(self, coeffs):
        """Linear combination sum(coeffs[i] * w_i) as a field element."""
        out = self.curve.zero()
        for c, w in zip(coeffs, self.elements):
            out = out + self.curve.from_x(c) * w
        return out

    def enlarge(self, new_elements):
        """Basis of the K[x]-module generated by this basis and new_elements."""
        cur = self.curve
        gens = list(self.elements) + list(new_elements)
        coords = [g.coords() for g in gens]
        den = lcm_many([c.den for row in coords for c in row])
        rows = [
            tuple((c * den).as_poly() for c in row) for row in coords
        ]
        h = hnf_rows(rows, cur.xring)
        if len(h) < cur.n:
            raise RankDeficient("enlarged module does not have full rank")
        den_rf = cur.xfrac.of(den)
        new_elems = [
            cur.from_coords([cur.xfrac.of(p) / den_rf for p in row]) for row in h
        ]
        return FieldBasis(cur, new_elems)

    def module_contains(self, other):
        return all(self.member(w) for w in other.elements)

    def module_equal(self, other):
        return self.module_contains(other) and other.module_contains(self)

    def transition_from(self, other):
        """Polynomial matrix T with other's elements = T * self's elements.

        Requires other's module to be contained in this one's.
        """
        rows = []
        for w in other.elements:
            c = self.member_coords(w)
            if c is None:
                return None
            rows.append(c)
        return mat(rows)

    def __repr__(self):
        return f"FieldBasis({', '.join(str(w) for w in self.elements)})"


def power_basis(curve):
    """The scaled power basis 1, ly, (ly)^2, ... with l the y-leading
    coefficient of the raw curve; all elements are integral."""
    lead = curve.from_x(curve.lead)
    y = curve.gen()
    elems = [curve.one()]
    for _ in range(curve.n - 1):
        elems.append(elems[-1] * lead * y)
    return FieldBasis(curve, elems)


def initial_suitable_basis(curve):
    """A basis of integral elements whose derivation denominator e is
    squarefree, starting from the scaled power basis and enlarging the
    module on demand."""
    basis = power_basis(curve)
    guard = 0
    while not basis.e_squarefree:
        basis = _repair_suitability(basis)
        guard += 1
        if guard > 64:
            raise SuitabilityFailure("enlargement did not reach a squarefree e")
    return basis


def _repair_suitability(basis):
    """One certified module enlargement for a basis with non-squarefree e.

    Candidates, tried in a fixed order: (e/p) * w_i' for each basis element,
    then (1/p) * c * W for kernel vectors c of M mod p, where p runs over the
    repeated factors of e.  Each candidate must pass the integrality oracle
    and lie outside the current module.
    """
    cur = basis.curve
    _, factors = squarefree_decomposition(basis.e)
    repeated = sorted(
        (p for p, mult in factors if mult >= 2), key=lambda p: (p.degree, str(p))
    )
    tried = []
    for p in repeated:
        cofactor = basis.e.exact_div(p)
        candidates = [
            cur.from_x(cur.xfrac.of(cofactor)) * w.dx() for w in basis.elements
        ]
        outcome = solve_mod(
            basis.mmat, (cur.xring.zero,) * cur.n, p, cur.xring
        )
        vectors = list(outcome.kernel)
        for leaf in outcome.leaves:
            for v in leaf.cokernel:
                if v not in vectors:
                    vectors.append(v)
        p_rf = cur.xfrac.of(p)
        for c in vectors:
            combo = basis.combine([cur.xfrac.of(ci) for ci in c])
            candidates.append(combo * cur.from_x(cur.xfrac.one / p_rf))
        for theta in candidates:
            if not theta:
                continue
            if not theta.is_integral():
                tried.append((str(theta), "not integral"))
                continue
            if basis.member(theta):
                tried.append((str(theta), "already in module"))
                continue
            return basis.enlarge([theta])
    raise SuitabilityFailure(f"no certified enlargement; rejected: {tried}")
