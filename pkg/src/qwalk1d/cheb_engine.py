"""Closed-form walk distributions via Chebyshev coefficients in a Laurent basis.

The n-step walk operator acts on the two cyclic basis columns through four
Laurent polynomials with real coefficients, all built from first- and
second-kind Chebyshev polynomials evaluated at s*(z + 1/z)/2.  Coefficients
are computed by the three-term recurrence directly in coefficient space,
which is O(n^2) total work and numerically stable; the textbook binomial
sums blow up for large n and live only in the test suite as a cross-check.

Exponent convention: ``c_x`` multiplies z**x with x increasing to the right,
matching the lattice-site indexing of :mod:`qwalk1d.direct_walk`.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .coin import _check_unit
from .direct_walk import Distribution
from .errors import ParamViolation, QuadratureDivergence

CROSS_CHECK_TOL = 1e-6  # coefficient side vs quadrature side agreement


@dataclass(frozen=True, eq=False)
class LaurentPoly:
    """Real coefficients indexed by integer exponents.

    ``coeffs[k]`` is the coefficient of z**(lo + k).  Stored leading or
    trailing zeros are allowed; the exponent range always contains the true
    support.
    """

    lo: int
    coeffs: np.ndarray  # float64

    @property
    def hi(self) -> int:
        return self.lo + self.coeffs.shape[0] - 1

    @property
    def exponents(self) -> np.ndarray:
        return np.arange(self.lo, self.hi + 1)

    def c(self, x: int) -> float:
        """Coefficient of z**x (zero outside the stored range)."""
        i = x - self.lo
        if 0 <= i < self.coeffs.shape[0]:
            return float(self.coeffs[i])
        return 0.0

    def eval(self, z) -> np.ndarray:
        """Evaluate at complex z (scalar or array) by Horner on z**lo * poly."""
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z)
        for ck in self.coeffs[::-1]:
            acc = acc * z + ck
        return acc * z ** self.lo


@dataclass(frozen=True, eq=False)
class TransferQuadruple:
    """The four Laurent polynomials giving the columns of the n-step operator.

    p1, p2 describe the image of the first basis column, q1, q2 of the
    second; each column carries unit mass (sum of squared coefficients = 1).
    All four share the dense exponent grid [-n, n].
    """

    p1: LaurentPoly
    p2: LaurentPoly
    q1: LaurentPoly
    q2: LaurentPoly

    @property
    def n(self) -> int:
        return self.p1.hi


def _check_s(s: float) -> float:
    s = float(s)
    if not 0.0 < s < 1.0:
        raise ParamViolation(f"s must lie strictly between 0 and 1, got {s!r}")
    return s


def _recurrence(seed1: np.ndarray, count: int, s: float) -> np.ndarray:
    """Run p_{k+1} = s*(z + 1/z)*p_k - p_{k-1} from p_0 = 1 up to p_count.

    ``seed1`` is p_1 centered on [-1, 1]; returns p_count centered on
    [-count, count].  The symmetric update keeps the coefficient array
    exactly palindromic, bit for bit.
    """
    prev = np.array([1.0])
    if count == 0:
        return prev
    curr = seed1
    for _ in range(count - 1):
        nxt = np.zeros(curr.shape[0] + 2)
        nxt[:-2] += s * curr
        nxt[2:] += s * curr
        nxt[2:-2] -= prev
        prev, curr = curr, nxt
    return curr


def cheb_T_laurent(n: int, s: float) -> LaurentPoly:
    """Coefficients of the degree-n first-kind Chebyshev polynomial at s*(z+1/z)/2."""
    _check_s(s)
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    # T_1 = s*(z + 1/z)/2
    return LaurentPoly(lo=-n, coeffs=_recurrence(np.array([s / 2, 0.0, s / 2]), n, s))


def cheb_U_laurent(m: int, s: float) -> LaurentPoly:
    """Coefficients of the degree-m second-kind Chebyshev polynomial at s*(z+1/z)/2.

    m = -1 is the zero polynomial by convention (needed for the 0-step case).
    """
    _check_s(s)
    if m < -1:
        raise ValueError(f"m must be >= -1, got {m}")
    if m == -1:
        return LaurentPoly(lo=0, coeffs=np.array([0.0]))
    # U_1 = s*(z + 1/z)
    return LaurentPoly(lo=-m, coeffs=_recurrence(np.array([s, 0.0, s]), m, s))


def transfer_polys(n: int, s: float, t: float) -> TransferQuadruple:
    """Build the four column polynomials for the n-step operator.

    With T = T_n(s(z+1/z)/2) and U = U_{n-1}(s(z+1/z)/2):

        p1 = T + (s/2)(z - 1/z) U      q1 = -t (1/z) U
        p2 = t z U                     q2 = T - (s/2)(z - 1/z) U

    Raises
    ------
    ParamViolation
        If s^2 + t^2 differs from 1 by more than 1e-10, or s, t are not
        strictly inside (0, 1).
    """
    _check_st(s, t)
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    tn = cheb_T_laurent(n, s).coeffs
    um_raw = cheb_U_laurent(n - 1, s).coeffs
    # everything on the dense grid [-n, n]
    um = np.zeros(2 * n + 1)
    k = (2 * n + 1 - um_raw.shape[0]) // 2
    um[k:2 * n + 1 - k] = um_raw
    z_um = np.zeros_like(um)
    z_um[1:] = um[:-1]          # z * U
    zinv_um = np.zeros_like(um)
    zinv_um[:-1] = um[1:]       # (1/z) * U
    odd = (s / 2) * (z_um - zinv_um)
    lo = -n
    return TransferQuadruple(
        p1=LaurentPoly(lo, tn + odd),
        p2=LaurentPoly(lo, t * z_um),
        q1=LaurentPoly(lo, -t * zinv_um),
        q2=LaurentPoly(lo, tn - odd),
    )


def _check_st(s: float, t: float) -> None:
    _check_s(s)
    t = float(t)
    if not 0.0 < t < 1.0:
        raise ParamViolation(f"t must lie strictly between 0 and 1, got {t!r}")
    if abs(s * s + t * t - 1.0) > 1e-10:
        raise ParamViolation(f"s^2 + t^2 = {s * s + t * t!r}, expected 1")


def qn_distribution(psi: np.ndarray, n: int, s: float, t: float) -> Distribution:
    """Walk distribution after n steps from spin psi, via the closed form.

    The quadratic form in the four coefficient columns is grouped as two
    squared moduli, |psi_1 c(p1) + psi_2 c(q1)|^2 + |psi_1 c(p2) + psi_2 c(q2)|^2,
    which is the same real value as the expanded cross-term formula but keeps
    every entry non-negative in floating point.
    """
    psi = np.asarray(psi, dtype=complex)
    _check_unit(psi)
    quad = transfer_polys(n, s, t)
    a1 = psi[0] * quad.p1.coeffs + psi[1] * quad.q1.coeffs
    a2 = psi[0] * quad.p2.coeffs + psi[1] * quad.q2.coeffs
    probs = np.abs(a1) ** 2 + np.abs(a2) ** 2
    return Distribution(offset=-n, probs=probs)


def _default_nodes(p: LaurentPoly, q: LaurentPoly) -> int:
    """Power-of-two node count exceeding the product bandwidth with margin."""
    band = max(abs(p.lo), abs(p.hi)) + max(abs(q.lo), abs(q.hi))
    m = 2 * band + 16
    return 1 << (m - 1).bit_length()


def cross_series_quadrature(p: LaurentPoly, q: LaurentPoly, w: complex, nodes: int | None = None) -> complex:
    """Trapezoid value of the contour integral of p(w z) q(1/z) dz/(2 pi i z).

    On the unit circle the rule is exact (to roundoff) once the node count
    exceeds the bandwidth of the integrand, which the default guarantees.
    """
    m = _default_nodes(p, q) if nodes is None else int(nodes)
    z = np.exp(2j * np.pi * np.arange(m) / m)
    return complex(np.mean(p.eval(w * z) * q.eval(z.conj())))


def cross_series(p: LaurentPoly, q: LaurentPoly, w: complex, nodes: int | None = None) -> complex:
    """Convolution sum_x c_x(p) c_x(q) w**x, cross-checked against quadrature.

    Returns the coefficient-side value.  The quadrature side is recomputed
    via :func:`cross_series_quadrature` and the two must agree within 1e-6.

    Raises
    ------
    ParamViolation
        If w is not on the unit circle within 1e-10.
    QuadratureDivergence
        If the two sides differ by more than 1e-6 (node count too small for
        the polynomial degree).
    """
    w = complex(w)
    if abs(abs(w) - 1.0) > 1e-10:
        raise ParamViolation(f"w must lie on the unit circle, got |w| = {abs(w)!r}")
    lo = max(p.lo, q.lo)
    hi = min(p.hi, q.hi)
    if lo > hi:
        coef = 0j
    else:
        xs = np.arange(lo, hi + 1)
        cp = p.coeffs[lo - p.lo: hi - p.lo + 1]
        cq = q.coeffs[lo - q.lo: hi - q.lo + 1]
        coef = complex(np.sum(cp * cq * w ** xs))
    quad = cross_series_quadrature(p, q, w, nodes)
    if abs(coef - quad) > CROSS_CHECK_TOL:
        raise QuadratureDivergence(
            f"coefficient side {coef!r} and quadrature side {quad!r} differ by "
            f"{abs(coef - quad):.3e}; increase the node count"
        )
    return coef


def char_fn_components(
    psi: np.ndarray, n: int, s: float, t: float, xi: float
) -> tuple[complex, complex, complex, complex]:
    """Component sums of the characteristic function and their combination.

    Returns (P, Q, R, E) where P, Q, R are the coefficient-square and
    cross-term sums weighted by exp(i*xi*x) for the two columns, and
    E = |psi_1|^2 P + |psi_2|^2 Q + 2 Re(psi_1 conj(psi_2)) R.

    At xi = 0 the values are exactly (1, 1, 0, 1): the column masses are 1 by
    unitarity and the cross sum is the inner product of two orthogonal
    columns, so the normalization shortcut is the exact value.
    """
    psi = np.asarray(psi, dtype=complex)
    _check_unit(psi)
    if xi == 0.0:
        return (1.0 + 0j, 1.0 + 0j, 0j, 1.0 + 0j)
    quad = transfer_polys(n, s, t)
    phases = np.exp(1j * xi * np.arange(-n, n + 1))
    p1, p2 = quad.p1.coeffs, quad.p2.coeffs
    q1, q2 = quad.q1.coeffs, quad.q2.coeffs
    comp_p = complex(np.sum((p1 * p1 + p2 * p2) * phases))
    comp_q = complex(np.sum((q1 * q1 + q2 * q2) * phases))
    comp_r = complex(np.sum((p1 * q1 + p2 * q2) * phases))
    weight = 2.0 * (psi[0] * psi[1].conjugate()).real
    e = abs(psi[0]) ** 2 * comp_p + abs(psi[1]) ** 2 * comp_q + weight * comp_r
    return comp_p, comp_q, comp_r, e


def quadruple_to_csv(tq: TransferQuadruple) -> str:
    """CSV with header ``x,p1,p2,q1,q2`` over the dense exponent grid."""
    buf = io.StringIO()
    buf.write("x,p1,p2,q1,q2\n")
    for x, a, b, cc, d in zip(
        tq.p1.exponents, tq.p1.coeffs, tq.p2.coeffs, tq.q1.coeffs, tq.q2.coeffs
    ):
        buf.write(f"{x},{a:.17g},{b:.17g},{cc:.17g},{d:.17g}\n")
    return buf.getvalue()
