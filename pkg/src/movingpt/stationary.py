"""Fixed-box SUSY pair on q in (-pi/2, pi/2).

The minus sector is the trigonometric Poschl-Teller (Scarf) potential with
classical Jacobi eigenfunctions; the plus sector is its rational extension,
solved by X1 exceptional Jacobi polynomials. Both share the spectrum
E_n = (n + A)^2 - (B - 1/2)^2.

Eigenfunctions are evaluated through the wall distances ``s_left = q + pi/2``
and ``s_right = pi/2 - q`` so that ``1 -+ sin q`` stay accurate arbitrarily
close to the walls; quadrature relies on this.
"""
import enum
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import InvalidParametersError, SingularityError
from .special import (
    JacobiIndex,
    jacobi_deriv,
    jacobi_eval,
    norm_const,
    x1_jacobi_deriv,
    x1_jacobi_eval,
)

HALF_PI = 0.5 * math.pi


class Sector(enum.Enum):
    MINUS = "minus"
    PLUS = "plus"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {"-": cls.MINUS, "minus": cls.MINUS, "+": cls.PLUS, "plus": cls.PLUS}
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown sector {value!r}") from None

    @property
    def symbol(self):
        return "-" if self is Sector.MINUS else "+"


@dataclass(frozen=True)
class PTParams:
    """Potential strengths A, B.

    Requires A > max(B + 3/2, |B| + 1/2), which keeps 2A - 1 - 2B sin q
    positive on the closed interval and both Jacobi indices above 1.
    """

    A: float
    B: float

    def __post_init__(self):
        A, B = float(self.A), float(self.B)
        if not (math.isfinite(A) and math.isfinite(B)):
            raise InvalidParametersError("A and B must be finite")
        bound = max(B + 1.5, abs(B) + 0.5)
        if not A > bound:
            raise InvalidParametersError(f"need A > max(B + 1.5, |B| + 0.5) = {bound}, got A = {A}")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def alpha(self):
        return self.A - self.B - 0.5

    @property
    def beta(self):
        return self.A + self.B - 0.5


def _check_domain(q):
    q = np.asarray(q, dtype=float)
    if np.any(~(np.abs(q) < HALF_PI)):
        raise SingularityError("q must lie strictly inside (-pi/2, pi/2)")
    return q


def _out(value, like):
    return float(value) if np.ndim(like) == 0 else value


def superpotential(q, params):
    q_arr = _check_domain(q)
    A, B = params.A, params.B
    s, c = np.sin(q_arr), np.cos(q_arr)
    w = (-B - 0.5) * s / c + (A - 0.5) / c + 2.0 * B * c / (2.0 * A - 1.0 - 2.0 * B * s)
    return _out(w, q)


def superpotential_deriv(q, params):
    q_arr = _check_domain(q)
    A, B = params.A, params.B
    s, c = np.sin(q_arr), np.cos(q_arr)
    den = 2.0 * A - 1.0 - 2.0 * B * s
    w1 = (-B - 0.5) / c**2 + (A - 0.5) * s / c**2 + 2.0 * B * (2.0 * B * c * c - s * den) / den**2
    return _out(w1, q)


def potential_tilde(q, params, sector):
    """Closed-form partner potentials; equal to W^2 -+ W'.

    The last rational term of the plus sector carries a minus sign: that is
    the sign for which the closed form equals W^2 + W'.
    """
    sector = Sector.parse(sector)
    q_arr = _check_domain(q)
    A, B = params.A, params.B
    s, c = np.sin(q_arr), np.cos(q_arr)
    sec2 = 1.0 / (c * c)
    sectan = s * sec2
    shift = (B - 0.5) ** 2
    if sector is Sector.MINUS:
        v = (A * (A - 1.0) + (B + 1.0) ** 2) * sec2 - (B + 1.0) * (2.0 * A - 1.0) * sectan - shift
    else:
        den = 2.0 * A - 1.0 - 2.0 * B * s
        v = (
            (A * (A - 1.0) + B * B) * sec2
            - B * (2.0 * A - 1.0) * sectan
            + 2.0 * (2.0 * A - 1.0) / den
            - 2.0 * ((2.0 * A - 1.0) ** 2 - 4.0 * B * B) / den**2
            - shift
        )
    return _out(v, q)


def energy(n, params):
    if n < 0:
        raise ValueError("quantum number must be non-negative")
    return (n + params.A) ** 2 - (params.B - 0.5) ** 2


@dataclass(frozen=True)
class StationaryState:
    """Unit-normalized eigenfunction Q_n of one sector.

    Q = c * (1-z)^a * (1+z)^b * D(z)^(-d) * R(z) with z = sin q and
    D = beta + alpha - (beta - alpha) z. Minus: R = P_n^(alpha-1, beta+1),
    d = 0. Plus: R = X1 polynomial P-hat_{n+1}^(alpha, beta), d = 1.
    The global sign makes Q positive next to q = -pi/2.
    """

    n: int
    sector: Sector
    params: PTParams

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValueError("n must be a non-negative integer")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "sector", Sector.parse(self.sector))

    @property
    def energy(self):
        return energy(self.n, self.params)

    @cached_property
    def _form(self):
        al, be = self.params.alpha, self.params.beta
        n = self.n
        scale = norm_const(n, JacobiIndex(al - 1.0, be + 1.0))
        if self.sector is Sector.MINUS:
            idx = JacobiIndex(al - 1.0, be + 1.0)
            a, b, d = 0.5 * (al - 0.5), 0.5 * (be + 1.5), 0

            def poly(z, order=0):
                if order == 0:
                    return jacobi_eval(n, idx, z)
                return jacobi_deriv(n, idx, z, order)
        else:
            idx = JacobiIndex(al, be)
            a, b, d = 0.5 * (al + 0.5), 0.5 * (be + 0.5), 1
            # the printed prefactor has norm 2; halve it for unit norm
            scale *= 0.5 * 4.0 * (be - al) * (be + n) / math.sqrt(self.energy)

            def poly(z, order=0):
                if order == 0:
                    return x1_jacobi_eval(n, idx, z)
                return x1_jacobi_deriv(n, idx, z, order)

        sign = math.copysign(1.0, scale * poly(-1.0)) if poly(-1.0) != 0.0 else math.copysign(1.0, scale)
        return abs(scale) * sign, a, b, d, poly

    def evaluate(self, q, s_left=None, s_right=None, order=0):
        """Q (order 0), dQ/dq (1) or d2Q/dq2 (2) at q.

        ``s_left``/``s_right`` are the wall distances; pass them when q is
        within rounding of a wall. Walls themselves are allowed.
        """
        q = np.asarray(q, dtype=float)
        if np.any(np.abs(q) > HALF_PI):
            raise SingularityError("q outside [-pi/2, pi/2]")
        sl = q + HALF_PI if s_left is None else np.asarray(s_left, dtype=float)
        sr = HALF_PI - q if s_right is None else np.asarray(s_right, dtype=float)
        z = np.sin(q)
        omz = 2.0 * np.sin(0.5 * sr) ** 2
        opz = 2.0 * np.sin(0.5 * sl) ** 2
        c, a, b, d, poly = self._form
        al, be = self.params.alpha, self.params.beta
        k = be - al
        den = be + al - k * z
        R = np.asarray(poly(z))
        with np.errstate(divide="ignore", invalid="ignore"):
            if order == 0:
                out = c * omz**a * opz**b * den ** (-d) * R
            elif order == 1:
                R1 = np.asarray(poly(z, 1))
                g = -a * opz + b * omz + d * k * omz * opz / den
                out = c * omz ** (a - 0.5) * opz ** (b - 0.5) * den ** (-d) * (g * R + omz * opz * R1)
            elif order == 2:
                R1 = np.asarray(poly(z, 1))
                R2 = np.asarray(poly(z, 2))
                h1 = -a / omz + b / opz + d * k / den
                h2 = -a / omz**2 - b / opz**2 + d * k * k / den**2
                inner = omz * opz * ((h2 + h1 * h1) * R + 2.0 * h1 * R1 + R2) - z * (h1 * R + R1)
                out = c * omz**a * opz**b * den ** (-d) * inner
            else:
                raise ValueError("order must be 0, 1 or 2")
        return _out(out, q)


def eigenfunction(state, q):
    """Unit-normalized Q_n(q); zero at q = +-pi/2."""
    return state.evaluate(q, order=0)


def eigenfunction_deriv(state, q):
    """Analytic dQ_n/dq. Diverges at q = pi/2 in the minus sector when alpha < 3/2."""
    return state.evaluate(q, order=1)


def eigenfunction_second_deriv(state, q):
    return state.evaluate(q, order=2)


def susy_intertwine(n, params, q):
    """(d/dq + W) Q_n^(-): proportional to sqrt(E_n) Q_n^(+)."""
    _check_domain(q)
    minus = StationaryState(n, Sector.MINUS, params)
    return minus.evaluate(q, order=1) + superpotential(q, params) * minus.evaluate(q)
