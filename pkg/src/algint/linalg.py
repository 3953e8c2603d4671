"""Exact linear algebra over fields and over univariate polynomial rings.

Matrices are tuples of row tuples; vectors are tuples.  Field entries only
need +, -, *, / and truthiness, so the same code runs over QQ, QQ(t) and
K(x).  The polynomial-ring routines (Hermite form, modular solving) take the
PolyRing as an explicit argument.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, PreconditionError, RankDeficient
from .rings import ext_gcd, gcd, is_squarefree, poly_crt


def mat(rows):
    return tuple(tuple(r) for r in rows)


def identity(ring, n):
    return tuple(
        tuple(ring.one if i == j else ring.zero for j in range(n)) for i in range(n)
    )


def zeros(ring, m, n):
    return tuple((ring.zero,) * n for _ in range(m))


def transpose(a):
    return tuple(zip(*a)) if a else ()


def mat_mul(a, b):
    if not a or not b:
        return ()
    n = len(b)
    if any(len(row) != n for row in a):
        raise DomainError("matrix shapes do not match")
    bt = transpose(b)
    return tuple(
        tuple(_dot(row, col) for col in bt) for row in a
    )


def _dot(u, v):
    it = iter(zip(u, v))
    a, b = next(it)
    acc = a * b
    for a, b in it:
        acc = acc + a * b
    return acc


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))

def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))

def mat_scale(a, c):
    return tuple(tuple(x * c for x in row) for row in a)

def vec_mat(v, a):
    """Row vector times matrix."""
    if len(v) != len(a):
        raise DomainError("vector/matrix shapes do not match")
    return tuple(_dot(v, col) for col in transpose(a))

def mat_vec(a, v):
    return tuple(_dot(row, v) for row in a)

def vec_add(u, v):
    return tuple(x + y for x, y in zip(u, v))

def vec_sub(u, v):
    return tuple(x - y for x, y in zip(u, v))

def vec_scale(v, c):
    return tuple(x * c for x in v)


# ---------------------------------------------------------------------------
# field routines


def rref(a, field):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    rows = [list(r) for r in a]
    m = len(rows)
    n = len(rows[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = None
        for i in range(r, m):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.one / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return mat(rows), tuple(pivots)


def nullspace(a, field):
    """Canonical right-kernel basis, one vector per free column, ascending."""
    if not a:
        return ()
    n = len(a[0])
    red, pivots = rref(a, field)
    pivot_set = set(pivots)
    basis = []
    for j in range(n):
        if j in pivot_set:
            continue
        vec = [field.zero] * n
        vec[j] = field.one
        for i, pc in enumerate(pivots):
            vec[pc] = -red[i][j]
        basis.append(tuple(vec))
    return tuple(basis)


def det(a, field):
    n = len(a)
    if any(len(row) != n for row in a):
        raise DomainError("determinant of a non-square matrix")
    rows = [list(r) for r in a]
    out = field.one
    for c in range(n):
        piv = None
        for i in range(c, n):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            return field.zero
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            out = -out
        pv = rows[c][c]
        out = out * pv
        inv = field.one / pv
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return out


def inverse(a, field):
    n = len(a)
    aug = [list(row) + [field.one if i == j else field.zero for j in range(n)]
           for i, row in enumerate(a)]
    red, pivots = rref(aug, field)
    if len(pivots) < n or any(p >= n for p in pivots):
        raise RankDeficient("matrix is singular")
    return tuple(tuple(red[i][n:]) for i in range(n))


def solve_right(a, b, field):
    """One solution x of a x = b over a field, or None if inconsistent."""
    n = len(a[0]) if a else 0
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, pivots = rref(aug, field)
    if n in pivots:
        return None
    x = [field.zero] * n
    for i, pc in enumerate(pivots):
        x[pc] = red[i][n]
    return tuple(x)


# ---------------------------------------------------------------------------
# Hermite normal form over K[x]


def hnf_rows(rows, ring):
    """Row echelon basis of the K[x]-row span, with monic pivots and entries
    above each pivot reduced to lower degree.  Zero rows are dropped; the
    result is a canonical basis of the module.
    """
    work = [list(r) for r in rows if any(r)]
    n = len(rows[0]) if rows else 0
    done = []
    for col in range(n):
        live = [r for r in work if r[col]]
        if not live:
            continue
        # Euclidean cross-reduction until one row survives in this column
        while len(live) > 1:
            live.sort(key=lambda r: r[col].degree)
            base = live[0]
            for r in live[1:]:
                q = r[col] // base[col]
                for j in range(col, n):
                    r[j] = r[j] - q * base[j]
            live = [r for r in live if r[col]]
        pivot_row = live[0]
        work.remove(pivot_row)
        work = [r for r in work if any(r)]
        c = pivot_row[col].lc
        if c != ring.coeff.one:
            pivot_row = [x / c for x in pivot_row]
        for r in done:
            if r[col]:
                q = r[col] // pivot_row[col]
                if q:
                    for j in range(col, n):
                        r[j] = r[j] - q * pivot_row[j]
        done.append(list(pivot_row))
    if work:
        # every remaining row must have been cancelled to zero
        raise DomainError("row reduction left an unplaced nonzero row")
    return mat(done)


def hnf_pivot_columns(h):
    cols = []
    for row in h:
        for j, entry in enumerate(row):
            if entry:
                cols.append(j)
                break
    return tuple(cols)


def hnf_member(h, vec):
    """Is vec in the K[x]-row span of the echelon basis h?"""
    v = list(vec)
    pivots = hnf_pivot_columns(h)
    for row, col in zip(h, pivots):
        if v[col]:
            q, r = divmod(v[col], row[col])
            if r:
                return False
            for j in range(col, len(v)):
                v[j] = v[j] - q * row[j]
    return not any(v)


# ---------------------------------------------------------------------------
# linear solving modulo a squarefree polynomial

# The solver works over K[x]/<v> with v squarefree but not necessarily
# irreducible.  Elimination proceeds as if over a field; an entry that is
# neither zero nor invertible mod v exposes a factorization of v, and the
# solve restarts on the two coprime pieces, recombining by CRT.


@dataclass(frozen=True)
class SolveLeaf:
    """Outcome of elimination modulo one discovered factor of the modulus."""

    modulus: object
    status: str                 # "unique" | "underdetermined" | "inconsistent"
    solution: tuple | None      # row vector s with s*A = rhs mod modulus
    kernel: tuple               # basis of row vectors c with c*A = 0 mod modulus
    cokernel: tuple             # basis of column vectors w with A*w = 0 mod modulus
    witness: tuple | None       # (w, residual): A*w = 0, rhs.w = residual != 0


@dataclass(frozen=True)
class SolveOutcome:
    status: str
    modulus: object
    solution: tuple | None      # defined when status != "inconsistent"
    kernel: tuple               # kernel basis mod the full modulus
    leaves: tuple


def solve_mod(a_mat, rhs, v, ring):
    """Solve s * a_mat = rhs modulo the squarefree polynomial v.

    Unknowns form a row vector; a_mat is n x n and rhs a length-n row.
    Splitting on zero divisors is automatic, so the result may combine
    several leaves with different statuses.
    """
    if v.degree < 1:
        raise PreconditionError(f"modulus must be nonconstant, got {v}")
    if not is_squarefree(v):
        raise PreconditionError(f"modulus {v} is not squarefree")
    n = len(rhs)
    if len(a_mat) != n or any(len(row) != n for row in a_mat):
        raise PreconditionError("system matrix must be square and match the rhs")
    leaves = _solve_leaves(a_mat, rhs, v.monic(), ring)
    return _combine_leaves(leaves, v.monic(), n, ring)


def _solve_leaves(a_mat, rhs, v, ring):
    # transpose: solving s*A = rhs is solving A^T s^T = rhs^T
    m = [[entry % v for entry in row] for row in transpose(a_mat)]
    c = [entry % v for entry in rhs]
    n = len(c)
    # left multiplier accumulator: L * original = current
    lmat = [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]
    pivot_of_col = {}
    used_rows = set()
    for col in range(n):
        piv = None
        for i in range(n):
            if i in used_rows or not m[i][col]:
                continue
            g = gcd(m[i][col], v)
            if g.degree == 0:
                piv = i
                break
            # zero divisor: v splits as g * (v/g), both squarefree and coprime
            w1, w2 = g, v.exact_div(g)
            return _solve_leaves(a_mat, rhs, w1.monic(), ring) + _solve_leaves(
                a_mat, rhs, w2.monic(), ring
            )
        if piv is None:
            continue
        inv = _inv_mod(m[piv][col], v)
        m[piv] = [(x * inv) % v for x in m[piv]]
        lmat[piv] = [(x * inv) % v for x in lmat[piv]]
        for i in range(n):
            if i == piv or not m[i][col]:
                continue
            f = m[i][col]
            m[i] = [(x - f * y) % v for x, y in zip(m[i], m[piv])]
            lmat[i] = [(x - f * y) % v for x, y in zip(lmat[i], lmat[piv])]
        pivot_of_col[col] = piv
        used_rows.add(piv)
    # residual right-hand side: L*c
    lc = [_dot_mod(lmat[i], c, v) for i in range(n)]
    cokernel = []
    for i in range(n):
        if i in used_rows:
            continue
        # zero row of the reduced matrix: L row i kills every column of A^T,
        # so it is a column vector in the right kernel of the original a_mat
        r = lc[i]
        if r:
            g = gcd(r, v)
            if 0 < g.degree < v.degree:
                w1, w2 = g, v.exact_div(g)
                return _solve_leaves(a_mat, rhs, w1.monic(), ring) + _solve_leaves(
                    a_mat, rhs, w2.monic(), ring
                )
            witness = (tuple(lmat[i]), r)
            return [
                SolveLeaf(v, "inconsistent", None, (), tuple(map(tuple, _coker_rows(lmat, used_rows, n))), witness)
            ]
        cokernel.append(tuple(lmat[i]))
    solution = [ring.zero] * n
    for col, piv in pivot_of_col.items():
        solution[col] = lc[piv]
    kernel = []
    for col in range(n):
        if col in pivot_of_col:
            continue
        vec = [ring.zero] * n
        vec[col] = ring.one
        for pc, piv in pivot_of_col.items():
            vec[pc] = (-m[piv][col]) % v
        kernel.append(tuple(vec))
    status = "underdetermined" if kernel else "unique"
    return [SolveLeaf(v, status, tuple(solution), tuple(kernel), tuple(cokernel), None)]


def _coker_rows(lmat, used_rows, n):
    return [lmat[i] for i in range(n) if i not in used_rows]


def _inv_mod(p, v):
    g, s, _ = ext_gcd(p % v, v)
    if g.degree != 0:
        raise DomainError(f"{p} not invertible mod {v}")
    return s % v


def _dot_mod(row, col, v):
    acc = row[0].ring.zero
    for a, b in zip(row, col):
        acc = acc + a * b
    return acc % v


def _combine_leaves(leaves, v, n, ring):
    bad = [lf for lf in leaves if lf.status == "inconsistent"]
    if bad:
        return SolveOutcome("inconsistent", v, None, (), tuple(leaves))
    if len(leaves) == 1:
        lf = leaves[0]
        return SolveOutcome(lf.status, v, lf.solution, lf.kernel, tuple(leaves))
    solution = []
    for j in range(n):
        r, _ = poly_crt([(lf.solution[j], lf.modulus) for lf in leaves])
        solution.append(r)
    kernel = []
    for lf in leaves:
        for vec in lf.kernel:
            ext = []
            for j in range(n):
                r, _ = poly_crt(
                    [(vec[j] if other is lf else ring.zero, other.modulus) for other in leaves]
                )
                ext.append(r)
            kernel.append(tuple(ext))
    status = "underdetermined" if kernel else "unique"
    return SolveOutcome(status, v, tuple(solution), tuple(kernel), tuple(leaves))
