"""Independent numerical oracles shared by the test modules.

These deliberately avoid the library's own code paths wherever the point is
to cross-check one: extrapolation of sampled values replaces the closed-form
zero-frequency limit, centered differences replace analytic derivatives.
"""

from __future__ import annotations

import numpy as np


def aitken_limit(values) -> float:
    """Iterated Aitken delta-squared extrapolation of a convergent sequence."""
    col = [float(v) for v in values]
    while len(col) >= 3:
        new = []
        for i in range(len(col) - 2):
            d1 = col[i + 1] - col[i]
            d2 = col[i + 2] - col[i + 1]
            den = d2 - d1
            new.append(col[i + 2] if den == 0.0 else col[i + 2] - d2 * d2 / den)
        col = new
    return col[-1]


def central_difference(f, x: float, h: float) -> float:
    return (f(x + h) - f(x - h)) / (2.0 * h)


def sign_pattern(values) -> list[int]:
    return [1 if v > 0 else (-1 if v < 0 else 0) for v in values]


def count_sign_flips(values) -> int:
    signs = np.sign(values)
    return int(np.sum(np.diff(signs) != 0))
