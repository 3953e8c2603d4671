"""Shared fixtures and hypothesis strategies for the test suite."""
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from algint.algfield import Curve, FieldBasis, power_basis
from algint.parsing import build_curve, build_element
from algint.rings import QQ, QT, POLY_X_QQ, RAT_X_QQ

settings.register_profile(
    "suite",
    max_examples=25,
    deadline=None,
    # curve fixtures are immutable, so sharing them across examples is safe
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("suite")


@pytest.fixture
def parabola():
    """y^2 = x: the running example for Hermite reduction."""
    return build_curve("y^2 - x", QQ)


@pytest.fixture
def cusp():
    """y^2 = x^3: singular model whose power basis is not normal."""
    return build_curve("y^2 - x^3", QQ)


@pytest.fixture
def trefoil():
    """Degree-3 cover with a non-squarefree derivation denominator."""
    return build_curve("y^3 - 3*x^2*y + 2*x^3 + x^2", QQ)


@pytest.fixture
def legendre():
    """Legendre family y^2 = x(x-1)(x-t) over Q(t)."""
    return build_curve("y^2 - x*(x - 1)*(x - t)", QT)


def elem(curve, text):
    return build_element(text, curve)


# ---------------------------------------------------------------------------
# strategies

small_fractions = st.builds(
    Fraction,
    st.integers(min_value=-9, max_value=9),
    st.integers(min_value=1, max_value=5),
)

nonzero_fractions = small_fractions.filter(bool)


def polys_over_qq(max_degree=3, nonzero=False):
    base = st.lists(small_fractions, min_size=1, max_size=max_degree + 1).map(
        lambda cs: POLY_X_QQ.poly(cs)
    )
    if nonzero:
        base = base.filter(bool)
    return base


def ratfuncs_over_qq(max_degree=3):
    return st.builds(
        lambda n, d: RAT_X_QQ.of(n, d),
        polys_over_qq(max_degree),
        polys_over_qq(max_degree, nonzero=True),
    )


def curve_elements(curve, max_degree=2, denom_pool=()):
    """Elements with numerators of bounded degree and denominators drawn
    from a fixed pool of polynomials (1 when the pool is empty)."""
    pool = (POLY_X_QQ.one,) + tuple(denom_pool)

    def build(coeff_lists, which):
        coords = []
        for i in range(curve.n):
            num = POLY_X_QQ.poly(coeff_lists[i])
            den = pool[which[i] % len(pool)]
            coords.append(curve.xfrac.of(num, den))
        return curve.from_coords(coords)

    return st.builds(
        build,
        st.lists(
            st.lists(small_fractions, min_size=1, max_size=max_degree + 1),
            min_size=curve.n,
            max_size=curve.n,
        ),
        st.lists(st.integers(min_value=0, max_value=7), min_size=curve.n, max_size=curve.n),
    )
