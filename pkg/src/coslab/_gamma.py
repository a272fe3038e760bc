"""Signed log-gamma ratios.

Every multiplier in this package is a ratio of gamma functions whose
arguments may be large (degree ~ 200) or negative (analytic continuation).
Raw gamma values overflow long before degree 200, so products are always
assembled as exp(sum of log|Gamma| differences) with the sign tracked
separately.  For x < 0 the sign of Gamma(x) alternates between integer
poles: Gamma is negative on (-1,0), positive on (-2,-1), and so on.
"""

import math

from .errors import GammaPoleError

__all__ = ["is_gamma_pole", "signed_lgamma", "gamma_ratio"]


def is_gamma_pole(x: float) -> bool:
    """True when x sits exactly on a nonpositive-integer gamma pole."""
    return x <= 0.0 and x == math.floor(x)


def signed_lgamma(x: float) -> tuple[float, float]:
    """Return (sign, log|Gamma(x)|), raising GammaPoleError at poles."""
    if is_gamma_pole(x):
        raise GammaPoleError(f"gamma pole at argument {x}")
    if x > 0.0:
        return 1.0, math.lgamma(x)
    # math.lgamma already returns log|Gamma| for negative non-integers;
    # the sign is (-1)**floor(x).
    sign = -1.0 if int(math.floor(x)) % 2 else 1.0
    return sign, math.lgamma(x)


def gamma_ratio(numerators, denominators=()) -> float:
    """Signed value of prod Gamma(a_i) / prod Gamma(b_i).

    A pole in a denominator argument makes the ratio vanish; that is the
    continuation value, so 0.0 is returned.  A pole in a numerator argument
    (without a cancelling denominator pole) raises GammaPoleError.
    """
    for b in denominators:
        if is_gamma_pole(b):
            for a in numerators:
                if is_gamma_pole(a):
                    raise GammaPoleError(
                        f"indeterminate gamma ratio: poles at {a} and {b}"
                    )
            return 0.0
    sign = 1.0
    log = 0.0
    for a in numerators:
        s, l = signed_lgamma(a)
        sign *= s
        log += l
    for b in denominators:
        s, l = signed_lgamma(b)
        sign *= s
        log -= l
    return sign * math.exp(log)
