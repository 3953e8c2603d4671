"""Exact arithmetic tower: rationals, dense polynomials, rational functions.

Everything is immutable and hashable.  Coefficient domains are always fields
(Fraction, or RatFunc over t), so polynomial divmod is unconditional.  The
fixed rings used by the rest of the package are built once at the bottom of
this module; compare rings with ==, elements carry a reference to their ring.

Degree convention: the zero polynomial has degree -1.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError


class RationalField:
    """The rationals, represented by fractions.Fraction."""

    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def coerce(self, v):
        if isinstance(v, Fraction):
            return v
        if isinstance(v, int):
            return Fraction(v)
        raise DomainError(f"cannot coerce {v!r} into QQ")

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PolyRing:
    """Univariate polynomial ring over a coefficient field."""

    def __init__(self, coeff, var):
        self.coeff = coeff
        self.var = var
        self.zero = Poly(self, ())
        self.one = Poly(self, (coeff.one,))
        self.gen = Poly(self, (coeff.zero, coeff.one))

    def poly(self, coeffs):
        """Build a polynomial from ascending coefficients, coercing each."""
        return Poly(self, tuple(self.coeff.coerce(c) for c in coeffs))

    def from_int(self, n):
        return Poly(self, (self.coeff.from_int(n),) if n else ())

    def from_coeff(self, c):
        c = self.coeff.coerce(c)
        return Poly(self, (c,) if c else ())

    def monomial(self, c, k):
        c = self.coeff.coerce(c)
        if not c:
            return self.zero
        return Poly(self, (self.coeff.zero,) * k + (c,))

    def coerce(self, v):
        if isinstance(v, Poly):
            if v.ring == self:
                return v
            raise DomainError(f"polynomial from {v.ring!r} used in {self!r}")
        return self.from_coeff(self.coeff.coerce(v))

    def __eq__(self, other):
        return self is other or (
            isinstance(other, PolyRing)
            and self.var == other.var
            and self.coeff == other.coeff
        )

    def __hash__(self):
        return hash(("PolyRing", self.var, self.coeff))

    def __repr__(self):
        return f"{self.coeff!r}[{self.var}]"


def _strip(coeffs):
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return coeffs[:n]


class Poly:
    """Dense univariate polynomial; coefficients ascending, no trailing zeros."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = _strip(tuple(coeffs))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        if not self.coeffs:
            raise DomainError("leading coefficient of the zero polynomial")
        return self.coeffs[-1]

    def constant_term(self):
        return self.coeffs[0] if self.coeffs else self.ring.coeff.zero

    def __bool__(self):
        return bool(self.coeffs)

    def is_constant(self):
        return len(self.coeffs) <= 1

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.var, self.coeffs))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, Poly) and other.ring == self.ring:
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return self.ring.zero
            zero = self.ring.coeff.zero
            out = [zero] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if not ai:
                    continue
                for j, bj in enumerate(b):
                    out[i + j] = out[i + j] + ai * bj
            return Poly(self.ring, out)
        try:
            c = self.ring.coeff.coerce(other)
        except DomainError:
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def scale(self, c):
        c = self.ring.coeff.coerce(c)
        if not c:
            return self.ring.zero
        return Poly(self.ring, tuple(a * c for a in self.coeffs))

    def __truediv__(self, c):
        # division by a coefficient scalar only; use exact_div for polynomials
        c = self.ring.coeff.coerce(c)
        if not c:
            raise DomainError("division by zero scalar")
        return Poly(self.ring, tuple(a / c for a in self.coeffs))

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise DomainError(f"polynomial power must be a nonnegative int, got {k!r}")
        out = self.ring.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other:
            raise DomainError("polynomial division by zero")
        if self.degree < other.degree:
            return self.ring.zero, self
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        quo = [self.ring.coeff.zero] * (dq + 1)
        inv_lc = self.ring.coeff.one / other.lc
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] * inv_lc
            quo[k] = c
            if not c:
                continue
            for j, oc in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - c * oc
        return Poly(self.ring, quo), Poly(self.ring, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if r:
            raise DomainError(f"{self} is not divisible by {other}")
        return q

    def monic(self):
        if not self:
            return self
        if self.lc == self.ring.coeff.one:
            return self
        return self / self.lc

    def derivative(self):
        return Poly(
            self.ring,
            tuple(c * self.ring.coeff.from_int(i) for i, c in enumerate(self.coeffs))[1:],
        )

    def shift(self, k):
        """Multiply by var**k."""
        if not self:
            return self
        return Poly(self.ring, (self.ring.coeff.zero,) * k + self.coeffs)

    def map_coeffs(self, fn, new_ring):
        return Poly(new_ring, tuple(fn(c) for c in self.coeffs))

    def eval(self, point):
        point = self.ring.coeff.coerce(point)
        acc = self.ring.coeff.zero
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def coeff(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.ring.coeff.zero

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring == self.ring:
                return other
            return NotImplemented
        try:
            return self.ring.coerce(other)
        except DomainError:
            return NotImplemented

    def __str__(self):
        if not self:
            return "0"
        one = self.ring.coeff.one
        var = self.ring.var
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                base = ""
            elif k == 1:
                base = var
            else:
                base = f"{var}^{k}"
            if not base:
                term = _coeff_str(c, wrap=False)
            elif c == one:
                term = base
            elif c == -one:
                term = "-" + base
            else:
                term = _coeff_str(c, wrap=True) + "*" + base
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            if term.startswith("-"):
                out += " - " + term[1:]
            else:
                out += " + " + term
        return out

    def __repr__(self):
        return f"Poly({self})"


def _coeff_str(c, wrap):
    s = str(c)
    if wrap and (" + " in s or " - " in s):
        return "(" + s + ")"
    return s


class FracField:
    """Field of fractions of a PolyRing; elements are RatFunc."""

    def __init__(self, ring):
        self.ring = ring
        self.zero = RatFunc(self, ring.zero, ring.one)
        self.one = RatFunc(self, ring.one, ring.one)
        self.gen = RatFunc(self, ring.gen, ring.one)

    def of(self, num, den=None):
        """Build num/den in lowest terms with a monic denominator."""
        num = self.ring.coerce(num)
        den = self.ring.one if den is None else self.ring.coerce(den)
        if not den:
            raise DomainError("zero denominator")
        if not num:
            return self.zero
        g = gcd(num, den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        c = den.lc
        if c != self.ring.coeff.one:
            num = num / c
            den = den / c
        return RatFunc(self, num, den)

    def from_int(self, n):
        return RatFunc(self, self.ring.from_int(n), self.ring.one)

    def coerce(self, v):
        if isinstance(v, RatFunc):
            if v.field == self:
                return v
            raise DomainError(f"fraction from {v.field!r} used in {self!r}")
        if isinstance(v, Poly):
            return RatFunc(self, self.ring.coerce(v), self.ring.one)
        return RatFunc(self, self.ring.coerce(v), self.ring.one)

    def __eq__(self, other):
        return self is other or (isinstance(other, FracField) and self.ring == other.ring)

    def __hash__(self):
        return hash(("FracField", self.ring))

    def __repr__(self):
        return f"Frac({self.ring!r})"


class RatFunc:
    """Reduced fraction of polynomials; denominator monic and nonzero.

    Instances are built through FracField.of; the raw constructor trusts its
    arguments to already be normalized.
    """

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den):
        self.field = field
        self.num = num
        self.den = den

    @property
    def is_polynomial(self):
        return self.den.degree == 0

    def as_poly(self):
        if not self.is_polynomial:
            raise DomainError(f"{self} is not a polynomial")
        return self.num

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field.of(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.field, -self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field.of(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other:
            raise DomainError("division by zero")
        return self.field.of(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, k):
        if not isinstance(k, int):
            raise DomainError("fraction power must be an int")
        if k < 0:
            return (self.field.one / self) ** (-k)
        return self.field.of(self.num**k, self.den**k)

    def derivative(self):
        n, d = self.num, self.den
        return self.field.of(n.derivative() * d - n * d.derivative(), d * d)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.field == self.field:
                return other
            return NotImplemented
        try:
            return self.field.coerce(other)
        except DomainError:
            return NotImplemented

    def __str__(self):
        ns = str(self.num)
        if self.den.degree == 0:
            return ns
        if " + " in ns or " - " in ns:
            ns = "(" + ns + ")"
        ds = str(self.den)
        if " + " in ds or " - " in ds or "*" in ds:
            ds = "(" + ds + ")"
        return ns + "/" + ds

    def __repr__(self):
        return f"RatFunc({self})"


# ---------------------------------------------------------------------------
# gcd machinery over any coefficient field


def gcd(p, q):
    """Monic gcd of two polynomials; gcd(0, 0) is 0."""
    while q:
        p, q = q, (p % q)
        if q:
            q = q.monic()
    return p.monic() if p else p


def gcd_many(polys):
    it = iter(polys)
    try:
        g = next(it)
    except StopIteration:
        raise DomainError("gcd of an empty collection")
    for p in it:
        g = gcd(g, p)
    return g.monic() if g else g


def lcm(p, q):
    if not p or not q:
        return p.ring.zero
    g = gcd(p, q)
    return (p * q).exact_div(g).monic()


def lcm_many(polys):
    it = iter(polys)
    try:
        m = next(it)
    except StopIteration:
        raise DomainError("lcm of an empty collection")
    m = m.monic() if m else m
    for p in it:
        m = lcm(m, p)
    return m


def ext_gcd(p, q):
    """Return (g, s, t) with g = s*p + t*q and g the monic gcd.

    One zero argument is fine; two zero arguments are not.
    """
    ring = p.ring
    if not p and not q:
        raise DomainError("ext_gcd(0, 0) is undefined")
    r0, r1 = p, q
    s0, s1 = ring.one, ring.zero
    t0, t1 = ring.zero, ring.one
    while r1:
        quo, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    c = r0.lc
    if c != ring.coeff.one:
        r0, s0, t0 = r0 / c, s0 / c, t0 / c
    return r0, s0, t0


def invert_mod(p, v):
    """Inverse of p modulo v; requires gcd(p, v) = 1."""
    g, s, _ = ext_gcd(p, v)
    if g.degree != 0:
        raise DomainError(f"{p} is not invertible modulo {v}: common factor {g}")
    return s % v


def poly_crt(pairs):
    """Combine residue/modulus pairs with pairwise coprime moduli.

    Returns (r, M) with r congruent to each residue and deg r < deg M.
    """
    it = iter(pairs)
    try:
        r, m = next(it)
    except StopIteration:
        raise DomainError("poly_crt of an empty collection")
    r = r % m
    for r2, m2 in it:
        g, s, _ = ext_gcd(m, m2)
        if g.degree != 0:
            raise DomainError(f"poly_crt moduli share the factor {g}")
        # r + m*s*(r2 - r) is r mod m and r2 mod m2
        lift = (s * (r2 - r)) % m2
        r = r + m * lift
        m = (m * m2).monic()
        r = r % m
    return r, m


# ---------------------------------------------------------------------------
# squarefree structure


def squarefree_decomposition(p):
    """Yun's algorithm: return (lc, [(factor, multiplicity), ...]).

    Factors are monic, squarefree, pairwise coprime, with p equal to
    lc times the product of factor**multiplicity.  Characteristic zero only.
    """
    if not p:
        raise DomainError("squarefree decomposition of 0")
    c = p.lc
    p = p.monic()
    out = []
    if p.degree == 0:
        return c, out
    g = gcd(p, p.derivative())
    b = p.exact_div(g)
    d = p.derivative().exact_div(g) - b.derivative()
    i = 1
    while b.degree > 0:
        a = gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b.exact_div(a)
        d = d.exact_div(a) - b.derivative()
        i += 1
    return c, out


def squarefree_part(p):
    """Monic product of the distinct irreducible factors of p."""
    if not p:
        raise DomainError("squarefree part of 0")
    p = p.monic()
    if p.degree == 0:
        return p
    return p.exact_div(gcd(p, p.derivative()))


def is_squarefree(p):
    if not p:
        return False
    if p.degree == 0:
        return True
    return gcd(p, p.derivative()).degree == 0


def square_part_root(p):
    """For p = lc * s * f**2 with s squarefree, return the monic f."""
    _, factors = squarefree_decomposition(p)
    out = p.ring.one
    for f, mult in factors:
        if mult >= 2:
            out = out * f ** (mult // 2)
    return out


# ---------------------------------------------------------------------------
# resultants


def resultant(p, q):
    """Resultant via the Sylvester matrix over the coefficient field.

    Convention: if exactly one argument is constant c, the result is
    c ** (degree of the other); two constants are rejected.
    """
    if not p or not q:
        raise DomainError("resultant with a zero argument")
    m, n = p.degree, q.degree
    if m == 0 and n == 0:
        raise DomainError("resultant of two constants")
    if m == 0:
        return p.coeffs[0] ** n
    if n == 0:
        return q.coeffs[0] ** m
    field = p.ring.coeff
    size = m + n
    rows = []
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    for i in range(n):
        rows.append([field.zero] * i + pc + [field.zero] * (n - 1 - i))
    for i in range(m):
        rows.append([field.zero] * i + qc + [field.zero] * (m - 1 - i))
    # Gaussian elimination determinant; exact field arithmetic throughout
    det = field.one
    for col in range(size):
        piv = None
        for r in range(col, size):
            if rows[r][col]:
                piv = r
                break
        if piv is None:
            return field.zero
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        pv = rows[col][col]
        det = det * pv
        inv = field.one / pv
        for r in range(col + 1, size):
            f = rows[r][col] * inv
            if not f:
                continue
            rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    return det


# ---------------------------------------------------------------------------
# the fixed rings used throughout the package

QQ = RationalField()
T_POLY = PolyRing(QQ, "t")
QT = FracField(T_POLY)

POLY_X_QQ = PolyRing(QQ, "x")
POLY_X_QT = PolyRing(QT, "x")
RAT_X_QQ = FracField(POLY_X_QQ)
RAT_X_QT = FracField(POLY_X_QT)


def x_poly_ring(const_field):
    if const_field == QQ:
        return POLY_X_QQ
    if const_field == QT:
        return POLY_X_QT
    raise DomainError(f"no x polynomial ring over {const_field!r}")


def x_frac_field(const_field):
    if const_field == QQ:
        return RAT_X_QQ
    if const_field == QT:
        return RAT_X_QT
    raise DomainError(f"no x fraction field over {const_field!r}")
