import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from braidcrypt.braid import BraidWord

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def braids(draw, n=None, min_n=2, max_n=6, max_len=12, positive=False, gens=None):
    if n is None:
        n = draw(st.integers(min_n, max_n))
    pool = list(gens) if gens is not None else list(range(1, n))
    signs = [1] if positive else [1, -1]
    letters = draw(st.lists(st.sampled_from([s * i for i in pool for s in signs]), max_size=max_len))
    return BraidWord(n, tuple(letters))


@st.composite
def braid_pairs(draw, min_n=2, max_n=6, max_len=10):
    n = draw(st.integers(min_n, max_n))
    return draw(braids(n=n, max_len=max_len)), draw(braids(n=n, max_len=max_len))
