import numpy as np
import pytest
from hypothesis import strategies as st

from nls_lab import ModelParams, frequency_window


def model_strategy(sign_case=None, p_max=6.0, q_gap=3.0):
    """Random valid models; sign_case in {'ff','fd','df'} or None for any."""
    cases = {"ff": (1.0, 1.0), "fd": (1.0, -1.0), "df": (-1.0, 1.0)}

    @st.composite
    def build(draw):
        if sign_case is None:
            sp, sq = cases[draw(st.sampled_from(sorted(cases)))]
        else:
            sp, sq = cases[sign_case]
        ap = sp * draw(st.floats(0.25, 4.0))
        aq = sq * draw(st.floats(0.25, 4.0))
        p = draw(st.floats(1.05, p_max))
        q = p + draw(st.floats(0.1, q_gap))
        return ModelParams(a_p=ap, a_q=aq, p=p, q=q)

    return build()


def phi0_inside(model: ModelParams, u: float) -> float:
    """Map u in (0,1) to a peak amplitude safely inside the window."""
    window = frequency_window(model)
    lo = window.phi_lower
    if window.phi_upper is not None:
        return lo + (0.05 + 0.9 * u) * (window.phi_upper - lo)
    span = max(1.0, 2.0 * lo)
    return lo + (0.05 + 0.9 * u) * span


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)
