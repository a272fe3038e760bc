"""Closed-form multipliers and constants for the spherical intertwining families.

Every operator handled by this package acts on spherical harmonics of
degree j by multiplication with a scalar that is a ratio of gamma
functions.  This module evaluates those scalars for any ambient dimension
n >= 2 and real order parameters, together with the normalization
constants tying the analytic families to the geometric transforms
(Funk-Radon transform, dual Radon transform, section-volume maps).

Conventions: all sphere and Grassmannian measures are probability
measures, so the multiplier of each family on constants equals the value
printed by its defining gamma ratio with j = 0.  Degree parity: the
cosine (M), sine (Q) and Funk families annihilate odd degrees; the
smoothing families (A, Q+, Q-) and the Poisson semigroup act on all
degrees.

Order parameters sitting on a pole lattice of their family are rejected
outright rather than evaluated: gamma-ratio cancellation within ~1e-8 of
a pole has no correct digits left.
"""

from __future__ import annotations

import math
from enum import Enum

from ._gamma import gamma_ratio, is_gamma_pole
from .errors import (
    ExcludedParameterError,
    GammaPoleError,
    NumeratorPoleError,
    UnknownConstantError,
)
from .reports import IdentityReport, make_report

__all__ = [
    "EPS_POLE",
    "Family",
    "sigma",
    "excluded",
    "m_mult",
    "q_mult",
    "qpm_mult",
    "a_mult",
    "funk_mult",
    "poisson_mult",
    "constant",
    "check_identities",
]

# Pole guard: reject order parameters within this distance of a pole lattice.
EPS_POLE = 1e-8


class Family(str, Enum):
    """Operator families with an excluded order lattice."""

    M = "M"            # generalized cosine transform, kernel |theta.u|^(alpha-1)
    Q = "Q"            # generalized sine transform, kernel (sin d)^(alpha-n+1)
    R_I = "R_i"        # codimension-(n-i) Radon family
    K_CLASS = "K_class"  # star-body class parameter


def sigma(n: int) -> float:
    """Surface area of the unit sphere in R^n: 2 pi^(n/2) / Gamma(n/2)."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


def _near_lattice(alpha: float, start: float, step: float = 2.0) -> bool:
    """True if alpha is within EPS_POLE of {start, start+step, start+2*step, ...}."""
    k = round((alpha - start) / step)
    if k < 0:
        k = 0
    return abs(alpha - (start + k * step)) <= EPS_POLE


def _near_lattice_down(alpha: float, start: float, step: float = -2.0) -> bool:
    """True if alpha is within EPS_POLE of {start, start+step, ...} going down."""
    k = round((alpha - start) / step)
    if k < 0:
        k = 0
    return abs(alpha - (start + k * step)) <= EPS_POLE


def excluded(n: int, alpha: float, family: Family | str, i: int | None = None) -> bool:
    """Whether alpha sits on the excluded lattice of the given family.

    M:       {1, 3, 5, ...}
    Q:       {n, n+2, ...}
    R_i:     {n-i, n-i+2, ...}   (requires i)
    K_class: {0, -2, -4, ...} union {n, n+2, ...}
    """
    _check_dim(n)
    if not math.isfinite(alpha):
        return True
    family = Family(family)
    if family is Family.M:
        return _near_lattice(alpha, 1.0)
    if family is Family.Q:
        return _near_lattice(alpha, float(n))
    if family is Family.R_I:
        if i is None:
            raise ValueError("family R_i requires the subspace dimension i")
        if not 1 <= i <= n - 1:
            raise ValueError(f"need 1 <= i <= n-1, got i={i}, n={n}")
        return _near_lattice(alpha, float(n - i))
    if family is Family.K_CLASS:
        return _near_lattice_down(alpha, 0.0) or _near_lattice(alpha, float(n))
    raise ValueError(f"unknown family {family!r}")


def _check_dim(n: int) -> None:
    if n < 2:
        raise ValueError(f"ambient dimension must be >= 2, got {n}")


def _check_degree(j: int) -> None:
    if j < 0:
        raise ValueError(f"degree must be >= 0, got {j}")


def m_mult(n: int, j: int, alpha: float) -> float:
    """Multiplier of the generalized cosine transform on degree-j harmonics.

    Zero for odd j; for even j equal to
    (-1)^(j/2) Gamma((j+1-alpha)/2) / Gamma((j+n-1+alpha)/2).
    """
    _check_dim(n)
    _check_degree(j)
    if excluded(n, alpha, Family.M):
        raise ExcludedParameterError(
            f"alpha={alpha} is on the cosine-family pole lattice 1, 3, 5, ..."
        )
    if j % 2 == 1:
        return 0.0
    num = (j + 1.0 - alpha) / 2.0
    if is_gamma_pole(num):
        raise NumeratorPoleError(
            f"degree-specific numerator pole: (j+1-alpha)/2 = {num} for j={j}, alpha={alpha}"
        )
    sign = -1.0 if (j // 2) % 2 else 1.0
    return sign * gamma_ratio([num], [(j + n - 1.0 + alpha) / 2.0])


def q_mult(n: int, j: int, alpha: float) -> float:
    """Multiplier of the generalized sine transform on degree-j harmonics.

    Zero for odd j; for even j the four-gamma ratio
    Gamma((j+n-1-alpha)/2) Gamma((j+1)/2) / [Gamma((j+alpha+1)/2) Gamma((j+n-1)/2)].
    Identically 1 at alpha = 0.
    """
    _check_dim(n)
    _check_degree(j)
    if excluded(n, alpha, Family.Q):
        raise ExcludedParameterError(
            f"alpha={alpha} is on the sine-family pole lattice n, n+2, ... (n={n})"
        )
    if j % 2 == 1:
        return 0.0
    if alpha == 0.0:
        return 1.0
    return gamma_ratio(
        [(j + n - 1.0 - alpha) / 2.0, (j + 1.0) / 2.0],
        [(j + alpha + 1.0) / 2.0, (j + n - 1.0) / 2.0],
    )


def qpm_mult(n: int, j: int, mu: float, nu: float, sign: str) -> float:
    """Multiplier of the one-sided Poisson-average smoothing operators.

    sign="plus":  Gamma((j+n-nu+1)/2) / Gamma((j+n-nu+1+mu)/2)
    sign="minus": Gamma((j+nu-mu)/2)  / Gamma((j+nu)/2)

    Both come from Beta-weighted averages of the Poisson semigroup and act
    on every degree.  Gamma poles raise GammaPoleError.
    """
    _check_dim(n)
    _check_degree(j)
    if sign == "plus":
        return gamma_ratio([(j + n - nu + 1.0) / 2.0], [(j + n - nu + 1.0 + mu) / 2.0])
    if sign == "minus":
        return gamma_ratio([(j + nu - mu) / 2.0], [(j + nu) / 2.0])
    raise ValueError(f"sign must be 'plus' or 'minus', got {sign!r}")


def a_mult(n: int, j: int, alpha: float, beta: float) -> float:
    """Multiplier of the operator bridging two cosine transforms.

    Defined on all degrees by
    Gamma((j+1-alpha)/2) Gamma((j+n-1+beta)/2)
      / [Gamma((j+n-1+alpha)/2) Gamma((j+1-beta)/2)],
    so that m_mult(n,j,alpha) = m_mult(n,j,beta) * a_mult(n,j,alpha,beta) and
    a_mult factorizes as qpm_mult(plus; mu=alpha-beta, nu=2-beta)
    * qpm_mult(minus; mu=alpha-beta, nu=1-beta).
    """
    _check_dim(n)
    _check_degree(j)
    return gamma_ratio(
        [(j + 1.0 - alpha) / 2.0, (j + n - 1.0 + beta) / 2.0],
        [(j + n - 1.0 + alpha) / 2.0, (j + 1.0 - beta) / 2.0],
    )


def funk_mult(n: int, j: int) -> float:
    """Multiplier of the Funk-Radon (great-circle average) transform.

    Equals m_mult(n, j, 0) divided by the limit constant
    c_(n-1) = sigma(n-1) / (2 pi^((n-2)/2)); for n = 3 this is the Legendre
    value P_j(0) for even j and 0 for odd j.
    """
    _check_dim(n)
    _check_degree(j)
    if j % 2 == 1:
        return 0.0
    return m_mult(n, j, 0.0) / constant("c_limit", n, i=n - 1)


def poisson_mult(j: int, t: float) -> float:
    """Multiplier t^j of the Poisson smoothing semigroup, 0 <= t < 1."""
    _check_degree(j)
    if not 0.0 <= t < 1.0:
        raise ValueError(f"Poisson parameter must satisfy 0 <= t < 1, got {t}")
    return t ** j


# --- closed-form constants -------------------------------------------------
#
# Names:
#   gamma_alpha        normalization of the cosine transform of order alpha
#   gamma_alpha_i      normalization of the codim-(n-i) Radon family
#   c_limit            limit constant c_i = sigma(i) / (2 pi^((i-1)/2))
#   lambda1, lambda2   constants of the Radon/sine composition identities
#                      (equal under probability normalization)
#   c_radon_composite  constant c with R_i^* R_i = c Q^(i-1), c = 1/q_mult(n,0,i-1)
#   c_cosine_radon     constant in R_i M^alpha = c R^(alpha+i-1)_(n-i,perp)
#   c_perp_swap        constant in the continued swap identities
#                      (R_i M^(1-i) = c_perp_swap R_(n-i,perp), and its dual)
#   ib_map             sigma(n-1)/(n-1): section-volume factor of the
#                      intersection-body map
#   kl_factor          pi^(i-n/2) (n-i)/i: factor recovering the partner
#                      radial power of an i-intersection body
#   a_form1/2/3        the three right-inverse representations of the dual
#                      Radon transform
#   c_range_f, c_range_f1   the two constants linking f and f1 when
#                      R_i^alpha f = R_i f1

def constant(name: str, n: int, i: int | None = None, alpha: float | None = None) -> float:
    """Evaluate a named closed-form normalization constant."""
    _check_dim(n)

    def need_i() -> int:
        if i is None or not 1 <= i <= n - 1:
            raise ValueError(f"constant {name!r} needs 1 <= i <= n-1, got i={i}")
        return i

    def need_alpha() -> float:
        if alpha is None:
            raise ValueError(f"constant {name!r} needs alpha")
        return alpha

    if name == "gamma_alpha":
        a = need_alpha()
        return sigma(n) / (2.0 * math.pi ** ((n - 1) / 2.0)) * gamma_ratio(
            [(1.0 - a) / 2.0], [a / 2.0]
        )
    if name == "gamma_alpha_i":
        a, ii = need_alpha(), need_i()
        return sigma(n) / (2.0 * math.pi ** ((n - 1) / 2.0)) * gamma_ratio(
            [(n - a - ii) / 2.0], [a / 2.0]
        )
    if name == "gamma_sine":
        a = need_alpha()
        return sigma(n) / (2.0 * math.pi ** ((n - 1) / 2.0)) * gamma_ratio(
            [(n - 1.0 - a) / 2.0], [a / 2.0]
        )
    if name == "c_limit":
        ii = need_i()
        return sigma(ii) / (2.0 * math.pi ** ((ii - 1) / 2.0))
    if name in ("lambda1", "lambda2"):
        ii = need_i()
        return gamma_ratio([(n - 1.0) / 2.0], [(n - ii) / 2.0])
    if name == "c_radon_composite":
        ii = need_i()
        return (
            2.0
            * math.pi ** ((ii - 1) / 2.0)
            * gamma_ratio([(n - 1.0) / 2.0], [(n - ii) / 2.0])
            / sigma(ii)
        )
    if name == "c_cosine_radon":
        ii = need_i()
        return 2.0 * math.pi ** ((ii - 1) / 2.0) / sigma(ii)
    if name == "c_perp_swap":
        ii = need_i()
        return sigma(n - ii) * math.pi ** (ii - n / 2.0) / sigma(ii)
    if name == "ib_map":
        return sigma(n - 1) / (n - 1.0)
    if name == "kl_factor":
        ii = need_i()
        return math.pi ** (ii - n / 2.0) * (n - ii) / ii
    if name == "a_form1":
        return sigma(n - 1) / (2.0 * math.pi ** (n / 2.0 - 1.0))
    if name == "a_form2":
        ii = need_i()
        return math.pi ** ((1 - ii) / 2.0) * sigma(n - 1) / sigma(n - ii)
    if name == "a_form3":
        ii = need_i()
        return math.pi ** (1.0 - ii) * sigma(n - 1) * sigma(ii) / (2.0 * sigma(n - ii))
    if name == "c_range_f":
        ii = need_i()
        return 2.0 * math.pi ** ((ii - 1) / 2.0) / sigma(ii)
    if name == "c_range_f1":
        ii = need_i()
        return math.pi ** ((1 - ii) / 2.0) * sigma(ii) / 2.0
    raise UnknownConstantError(f"no constant named {name!r}")


# --- identity suite ---------------------------------------------------------

def _even_degrees(j_max: int):
    return range(0, j_max + 1, 2)


def _errs(pairs):
    """abs and rel error lists for (value, expected) pairs."""
    abs_errs, rel_errs = [], []
    for value, expected in pairs:
        err = abs(value - expected)
        abs_errs.append(err)
        rel_errs.append(err / abs(expected) if abs(expected) > 1.0 else err)
    return abs_errs, rel_errs


def check_identities(n: int, j_max: int, alpha_grid, tol: float = 1e-10,
                     beta_grid=None) -> list[IdentityReport]:
    """Run the multiplier-level identity suite for one dimension.

    Identities checked (even degrees 0..j_max, alphas from alpha_grid with
    inadmissible points skipped and counted):

      inversion        m(j,alpha) * m(j,2-n-alpha) = 1
      semigroup        m(j,alpha) * m(j,0) = q(j, alpha+n-2)
      cosine_bridge    m(j,alpha) = m(j,beta) * a(j,alpha,beta)
      bridge_factors   a(j,alpha,beta) = q+(mu=a-b, nu=2-b) * q-(mu=a-b, nu=1-b)
      composite_const  c_radon_composite(i) * q(0, i-1) = 1 for 1 <= i <= n-1
      asymptotics      |m(j_max,alpha)| * (j_max/2)^(alpha+n/2-1) -> 1
                       (checked against a fixed 2% band)

    The error metric is relative where |expected| > 1, absolute otherwise.
    """
    if beta_grid is None:
        beta_grid = alpha_grid
    reports: list[IdentityReport] = []

    def admissible_m(a: float) -> bool:
        return not excluded(n, a, Family.M)

    # inversion
    pairs, skipped = [], 0
    for a in alpha_grid:
        b = 2.0 - n - a
        if not (admissible_m(a) and admissible_m(b)):
            skipped += 1
            continue
        for j in _even_degrees(j_max):
            pairs.append((m_mult(n, j, a) * m_mult(n, j, b), 1.0))
    abs_e, rel_e = _errs(pairs)
    reports.append(make_report(
        "inversion", {"n": n, "j_max": j_max, "alphas": len(alpha_grid), "skipped": skipped},
        abs_e, rel_e, tol))

    # semigroup
    pairs, skipped = [], 0
    for a in alpha_grid:
        if not admissible_m(a) or excluded(n, a + n - 2.0, Family.Q):
            skipped += 1
            continue
        for j in _even_degrees(j_max):
            try:
                expected = q_mult(n, j, a + n - 2.0)
                pairs.append((m_mult(n, j, a) * m_mult(n, j, 0.0), expected))
            except GammaPoleError:
                skipped += 1
                break
    abs_e, rel_e = _errs(pairs)
    reports.append(make_report(
        "semigroup", {"n": n, "j_max": j_max, "alphas": len(alpha_grid), "skipped": skipped},
        abs_e, rel_e, tol))

    # cosine_bridge and bridge_factors over the (alpha, beta) grid
    pairs_bridge, pairs_fact, skipped = [], [], 0
    for a in alpha_grid:
        for b in beta_grid:
            if not (admissible_m(a) and admissible_m(b)):
                skipped += 1
                continue
            mu, nu_plus, nu_minus = a - b, 2.0 - b, 1.0 - b
            try:
                for j in _even_degrees(j_max):
                    av = a_mult(n, j, a, b)
                    pairs_bridge.append((m_mult(n, j, b) * av, m_mult(n, j, a)))
                    qq = (qpm_mult(n, j, mu, nu_plus, "plus")
                          * qpm_mult(n, j, mu, nu_minus, "minus"))
                    pairs_fact.append((qq, av))
            except GammaPoleError:
                skipped += 1
                continue
    abs_e, rel_e = _errs(pairs_bridge)
    reports.append(make_report(
        "cosine_bridge",
        {"n": n, "j_max": j_max, "grid": f"{len(alpha_grid)}x{len(beta_grid)}", "skipped": skipped},
        abs_e, rel_e, tol))
    abs_e, rel_e = _errs(pairs_fact)
    reports.append(make_report(
        "bridge_factors",
        {"n": n, "j_max": j_max, "grid": f"{len(alpha_grid)}x{len(beta_grid)}", "skipped": skipped},
        abs_e, rel_e, tol))

    # composite constant: c * q(0, i-1) = 1
    pairs = []
    for ii in range(1, n):
        c = constant("c_radon_composite", n, i=ii)
        pairs.append((c * q_mult(n, 0, float(ii - 1)), 1.0))
    abs_e, rel_e = _errs(pairs)
    reports.append(make_report("composite_const", {"n": n, "i_range": [1, n - 1]},
                               abs_e, rel_e, tol))

    # asymptotics: probed at a degree where the 2% band applies; the
    # finite-degree correction scales like |alpha + n/2 - 1| (n/2 - 1) / j,
    # so the probe degree grows with the dimension
    pairs, skipped = [], 0
    j = max(j_max, 200, 200 * (n - 2))
    j = j if j % 2 == 0 else j + 1
    probe_alphas = [-1.0, 0.0, 0.5, 2.0]
    for a in probe_alphas:
        if not admissible_m(a):
            skipped += 1
            continue
        scaled = abs(m_mult(n, j, a)) * (j / 2.0) ** (a + n / 2.0 - 1.0)
        pairs.append((scaled, 1.0))
    abs_e, rel_e = _errs(pairs)
    reports.append(make_report(
        "asymptotics", {"n": n, "j": j, "alphas": probe_alphas, "skipped": skipped},
        abs_e, rel_e, 0.02))

    return reports
