import pytest
from hypothesis import settings, strategies as st

from nilcohom import catalog
from nilcohom.exterior import Form, Monomial
from nilcohom.scalars import GaussianRational

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_rationals = st.fractions(min_value=-6, max_value=6, max_denominator=6)
gaussians = st.builds(GaussianRational, small_rationals, small_rationals)
nonzero_gaussians = gaussians.filter(bool)


def monomials(n=3, p=None, q=None):
    full = (1 << n) - 1
    holo = st.integers(0, full) if p is None else st.sampled_from(
        [m for m in range(full + 1) if m.bit_count() == p])
    anti = st.integers(0, full) if q is None else st.sampled_from(
        [m for m in range(full + 1) if m.bit_count() == q])
    return st.builds(Monomial, holo, anti)


def forms(n=3, p=None, q=None, max_terms=4):
    return st.dictionaries(monomials(n, p, q), gaussians, max_size=max_terms).map(Form)


@pytest.fixture(params=catalog.names())
def preset(request):
    return catalog.get(request.param)


@pytest.fixture
def iwasawa():
    return catalog.get("iwasawa").presentation


@pytest.fixture
def torus():
    return catalog.get("torus3").presentation
