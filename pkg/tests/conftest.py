import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from artifact.galois_comb import ExtShape
from artifact.jump_data import random_valid

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def shapes(draw, p_values=(2, 3, 5, 7), e_max=12, f_max=4, m_values=(1,)):
    p = draw(st.sampled_from(p_values))
    m = draw(st.sampled_from(m_values))
    e = draw(st.integers(1, e_max).filter(lambda e: e % p))
    f = draw(st.integers(1, f_max))
    z = draw(st.integers(0, p ** (m * f) - 2))
    try:
        return ExtShape(p, m, e, f, z)
    except ValueError:
        return ExtShape(p, m, e, f, 0)


@st.composite
def jump_data(draw, **shape_kw):
    E = draw(shapes(**shape_kw))
    return random_valid(E, draw(st.integers(0, 10_000)))


@pytest.fixture
def run_cli(capsys):
    from artifact.cli import main

    def run(*argv):
        code = main([str(a) for a in argv])
        out = capsys.readouterr()
        return code, out.out, out.err

    return run
