"""Creative telescoping by iterated additive decomposition.

For f in Q(t)(x)[y]/<m> the loop decomposes D_t^r f = g_r' + h_r and stores
the remainders in a ledger.  Because every remainder lives in a space of
bounded dimension (simple poles over the current basis plus the finite
image complement), the h_r become linearly dependent over Q(t); the first
dependency sum(c_i * h_i) = 0 yields the telescoper L = sum(c_i * D_t^i)
with certificate g = sum(c_i * gamma_i), where gamma_r accumulates the
derivative parts so that D_t^r f = gamma_r' + h_r exactly.

All entries must share one basis W, one u and one a; when a decomposition
enlarges the module or grows u or a, the whole ledger is rebased: every
stored remainder is rewritten over the new data (its representation stays
denominator-squarefree, so this never triggers Hermite steps) and the
derivative part that splits off is folded into the entry's gamma.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algfield import AlgElem
from .errors import (
    AlgintError,
    ContainmentViolated,
    MaxOrderExceeded,
    PreconditionError,
)
from .linalg import nullspace
from .polyred import ComplementSchedule, Decomposer
from .rings import QQ, QT, lcm_many


@dataclass
class LedgerEntry:
    """D_t^i f = dx(gamma) + h, with h split as (1/d) p*W + (1/a) q*V."""

    h_elem: AlgElem
    gamma: AlgElem
    d: object
    p_nums: tuple
    q_nums: tuple


class RemainderLedger:
    """Remainders of the telescoping iteration over shared (W, u, a)."""

    def __init__(self, decomposer, first_dec):
        self.decomposer = decomposer
        self.basis = first_dec.basis
        self.u = first_dec.u
        self.a = first_dec.a
        self.entries = [self._entry_from(first_dec, first_dec.g)]

    @staticmethod
    def _entry_from(dec, gamma):
        return LedgerEntry(
            h_elem=dec.remainder_element(),
            gamma=gamma,
            d=dec.d,
            p_nums=dec.p_nums,
            q_nums=dec.q_nums,
        )

    def extend(self, dec, gamma):
        """Append the entry for dec; rebase everything if dec moved the
        shared basis data."""
        entry = self._entry_from(dec, gamma)
        changed = (
            dec.u != self.u or dec.a != self.a or len(dec.hermite.adjoined) > 0
        )
        self.entries.append(entry)
        if changed:
            self._rebase(dec.basis, dec.u, dec.a, skip_last=True)

    def _rebase(self, new_basis, new_u, new_a, skip_last=False):
        if new_basis.transition_from(self.basis) is None:
            raise ContainmentViolated(
                "previous basis does not lie in the enlarged module"
            )
        self.basis = new_basis
        self.u = new_u
        self.a = new_a
        upto = len(self.entries) - (1 if skip_last else 0)
        for i in range(upto):
            entry = self.entries[i]
            dec = self.decomposer.decompose(
                entry.h_elem, basis=new_basis, u_mult=new_u, a_mult=new_a
            )
            if dec.hermite.adjoined:
                # the rebase input has squarefree denominators, so the
                # reduction must not move the module again
                raise ContainmentViolated("module enlarged during a rebase")
            if dec.u != new_u or dec.a != new_a:
                raise ContainmentViolated("rebase changed the shared u or a")
            entry.gamma = entry.gamma + dec.g
            entry.h_elem = dec.remainder_element()
            entry.d = dec.d
            entry.p_nums = dec.p_nums
            entry.q_nums = dec.q_nums


@dataclass(frozen=True)
class Telescoper:
    """L = sum(coeffs[i] * D_t^i) with L(f) = dx(certificate)."""

    coeffs: tuple
    certificate: AlgElem
    order: int
    ranks: tuple


def _const(curve, c):
    return curve.from_x(curve.xfrac.of(curve.xring.from_coeff(c)))


def _dependency_matrix(entries):
    curve = entries[0].h_elem.curve
    coords = [en.h_elem.coords() for en in entries]
    dens = [c.den for row in coords for c in row]
    dstar = lcm_many(dens)
    nums = [
        [c.num * dstar.exact_div(c.den) for c in row] for row in coords
    ]
    rows = []
    for j in range(curve.n):
        degmax = max(nums[i][j].degree for i in range(len(entries)))
        for k in range(degmax + 1):
            row = tuple(nums[i][j].coeff(k) for i in range(len(entries)))
            if any(c != curve.field.zero for c in row):
                rows.append(row)
    return tuple(rows)


def find_dependency(entries):
    """First Q(t)-linear dependency among the ledger remainders.

    Returns (coeffs, rank): coeffs is None while the remainders are
    independent, otherwise a normalized vector with nonzero last entry.
    """
    field = entries[0].h_elem.curve.field
    m = len(entries)
    rows = _dependency_matrix(entries)
    if not rows:
        coeffs = (field.one,) + (field.zero,) * (m - 1)
        return coeffs, 0
    null = nullspace(rows, field)
    rank = m - len(null)
    if not null:
        return None, rank
    vec = null[0]
    if vec[-1] == field.zero:
        # a dependency not involving the newest remainder would have been
        # found in an earlier round; if one shows up anyway, prefer a
        # vector that does involve it
        for cand in null[1:]:
            if cand[-1] != field.zero:
                vec = cand
                break
    return _normalize_dependency(vec, field), rank


def _normalize_dependency(vec, field):
    if field == QQ:
        denlcm = 1
        for c in vec:
            denlcm = denlcm * c.denominator // _gcd_int(denlcm, c.denominator)
        ints = [int(c * denlcm) for c in vec]
        g = 0
        for v in ints:
            g = _gcd_int(g, abs(v))
        if g:
            ints = [v // g for v in ints]
        if ints[_last_nonzero(ints)] < 0:
            ints = [-v for v in ints]
        return tuple(Fraction(v) for v in ints)
    if field == QT:
        dens = [c.den for c in vec]
        dlcm = lcm_many(dens)
        polys = [c.num * dlcm.exact_div(c.den) for c in vec]
        denlcm = 1
        for p in polys:
            for c in p.coeffs:
                denlcm = denlcm * c.denominator // _gcd_int(denlcm, c.denominator)
        polys = [p * Fraction(denlcm) for p in polys]
        g = 0
        for p in polys:
            for c in p.coeffs:
                g = _gcd_int(g, abs(int(c)))
        if g > 1:
            polys = [p / Fraction(g) for p in polys]
        top = polys[_last_nonzero(polys)]
        if top.lc < 0:
            polys = [-p for p in polys]
        return tuple(QT.of(p) for p in polys)
    raise AlgintError(f"no dependency normalization for field {field}")


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return a


def _last_nonzero(seq):
    for i in range(len(seq) - 1, -1, -1):
        if seq[i]:
            return i
    raise AlgintError("zero dependency vector")


def apply_telescoper(f, coeffs):
    """sum(coeffs[i] * D_t^i f)."""
    cur = f.curve
    acc = cur.zero()
    df = f
    for i, c in enumerate(coeffs):
        if i > 0:
            df = df.dt()
        acc = acc + _const(cur, c) * df
    return acc


def verify_telescoper(f, coeffs, certificate):
    """Check sum(c_i * D_t^i f) = dx(certificate) from scratch."""
    return apply_telescoper(f, coeffs) == certificate.dx()


def telescope(f, max_order=20, schedule: ComplementSchedule | None = None):
    """Minimal-order telescoper for f with respect to D_t.

    Raises MaxOrderExceeded (with the per-round ranks) if no dependency
    shows up by the requested order.  The returned telescoper is verified
    against a fresh computation of sum(c_i D_t^i f) before it is returned.
    """
    if f.curve.field != QT:
        raise PreconditionError("telescoping requires the coefficient field QQ(t)")
    decomposer = Decomposer(f.curve, schedule)
    dec0 = decomposer.decompose(f)
    ledger = RemainderLedger(decomposer, dec0)
    ranks = []
    r = 0
    while True:
        coeffs, rank = find_dependency(ledger.entries)
        ranks.append(rank)
        if coeffs is not None:
            cert = f.curve.zero()
            for c, entry in zip(coeffs, ledger.entries):
                cert = cert + _const(f.curve, c) * entry.gamma
            if not verify_telescoper(f, coeffs, cert):
                raise AlgintError("telescoper failed its final verification")
            return Telescoper(
                coeffs=coeffs, certificate=cert, order=r, ranks=tuple(ranks)
            )
        if r >= max_order:
            raise MaxOrderExceeded(max_order, tuple(ranks))
        prev = ledger.entries[-1]
        dec = decomposer.decompose(
            prev.h_elem.dt(), basis=ledger.basis, u_mult=ledger.u, a_mult=ledger.a
        )
        gamma = prev.gamma.dt() + dec.g
        ledger.extend(dec, gamma)
        r += 1
