"""Piecewise polynomials with explicit tails.

Pieces live in local monomial coordinates centered at their left breakpoint,
which keeps evaluation well conditioned on wide domains.  The two tails extend
the function beyond the first and last breakpoint; identically zero tails give
a compactly supported function.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import InvalidInputError


def shift_polynomial(coeffs, t0: float) -> np.ndarray:
    """Coefficients of p(t + t0) given monomial coefficients of p(t)."""
    c = np.array(coeffs, dtype=float)
    if t0 == 0.0 or len(c) <= 1:
        return c
    n = len(c)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            c[j] += t0 * c[j + 1]
    return c


def polynomial_derivative(coeffs) -> np.ndarray:
    c = np.asarray(coeffs, dtype=float)
    if len(c) <= 1:
        return np.zeros(1)
    return c[1:] * np.arange(1, len(c), dtype=float)


def polynomial_eval(coeffs, t):
    """Horner evaluation; ``t`` may be a scalar or an array."""
    c = np.asarray(coeffs, dtype=float)
    arr = np.asarray(t, dtype=float)
    out = np.full_like(arr, c[-1], dtype=float)
    for a in c[-2::-1]:
        out = out * arr + a
    if np.ndim(t) == 0:
        return float(out)
    return out


def _derivative_value(coeffs, t: float, order: int) -> float:
    c = np.asarray(coeffs, dtype=float)
    for _ in range(order):
        c = polynomial_derivative(c)
    return float(polynomial_eval(c, t))


def _pad(c, width: int) -> np.ndarray:
    c = np.asarray(c, dtype=float)
    if len(c) == width:
        return c
    out = np.zeros(width)
    out[: len(c)] = c
    return out


class PiecewisePolynomial:
    """Breakpoints b_0 < ... < b_n with one polynomial piece per interval.

    Piece j holds coefficients in the local coordinate (x - b_j) and is used
    on [b_j, b_{j+1}).  ``left_tail`` (coordinate x - b_0) applies for x < b_0
    and ``right_tail`` (coordinate x - b_n) for x >= b_n.
    """

    __slots__ = ("breakpoints", "coefficients", "left_tail", "right_tail")

    def __init__(self, breakpoints, coefficients, left_tail=None, right_tail=None):
        bp = np.asarray(breakpoints, dtype=float)
        if bp.ndim != 1 or len(bp) < 2:
            raise InvalidInputError("need at least two breakpoints")
        if not np.all(np.isfinite(bp)):
            raise InvalidInputError("breakpoints must be finite")
        if not np.all(np.diff(bp) > 0):
            raise InvalidInputError("breakpoints must be strictly increasing")
        pieces = [np.atleast_1d(np.asarray(c, dtype=float)) for c in coefficients]
        if len(pieces) != len(bp) - 1:
            raise InvalidInputError(
                f"{len(bp)} breakpoints require {len(bp) - 1} pieces, got {len(pieces)}"
            )
        lt = np.atleast_1d(np.asarray(left_tail, dtype=float)) if left_tail is not None else np.zeros(1)
        rt = np.atleast_1d(np.asarray(right_tail, dtype=float)) if right_tail is not None else np.zeros(1)
        width = max(
            max(len(c) for c in pieces),
            len(lt),
            len(rt),
        )
        coef = np.vstack([_pad(c, width) for c in pieces])
        if not np.all(np.isfinite(coef)):
            raise InvalidInputError("non-finite piece coefficients")
        self.breakpoints = bp
        self.coefficients = coef
        self.left_tail = _pad(lt, width)
        self.right_tail = _pad(rt, width)
        for arr in (self.breakpoints, self.coefficients, self.left_tail, self.right_tail):
            arr.setflags(write=False)

    # ------------------------------------------------------------------ info

    @property
    def degree(self) -> int:
        """Degree bound (width of the coefficient rows minus one)."""
        return self.coefficients.shape[1] - 1

    @property
    def n_pieces(self) -> int:
        return self.coefficients.shape[0]

    def has_zero_tails(self) -> bool:
        return not (np.any(self.left_tail != 0.0) or np.any(self.right_tail != 0.0))

    # ------------------------------------------------------------ evaluation

    def __call__(self, x):
        arr = np.atleast_1d(np.asarray(x, dtype=float))
        idx = np.searchsorted(self.breakpoints, arr, side="right") - 1
        out = np.empty_like(arr)
        for j in np.unique(idx):
            mask = idx == j
            if j < 0:
                c, origin = self.left_tail, self.breakpoints[0]
            elif j >= self.n_pieces:
                c, origin = self.right_tail, self.breakpoints[-1]
            else:
                c, origin = self.coefficients[j], self.breakpoints[j]
            out[mask] = polynomial_eval(c, arr[mask] - origin)
        if np.ndim(x) == 0:
            return float(out[0])
        return out

    def evaluate(self, x):
        return self(x)

    def differentiate(self) -> "PiecewisePolynomial":
        """Piecewise derivative; breakpoints are preserved."""
        return PiecewisePolynomial(
            self.breakpoints,
            [polynomial_derivative(c) for c in self.coefficients],
            polynomial_derivative(self.left_tail),
            polynomial_derivative(self.right_tail),
        )

    def local_coefficients_at(self, u: float) -> np.ndarray:
        """Coefficients, centered at ``u``, of the polynomial active at ``u``."""
        if u < self.breakpoints[0]:
            return shift_polynomial(self.left_tail, u - self.breakpoints[0])
        if u >= self.breakpoints[-1]:
            return shift_polynomial(self.right_tail, u - self.breakpoints[-1])
        j = int(np.searchsorted(self.breakpoints, u, side="right") - 1)
        return shift_polynomial(self.coefficients[j], u - self.breakpoints[j])

    # -------------------------------------------------------------- calculus

    def smoothness_order(self, tol: float = 1e-8) -> int:
        """Largest r with matching one-sided derivatives up to order r at
        every interior breakpoint.

        Derivative values L, R agree when
        ``|L - R| <= tol * (1 + max(|L|, |R|))``.  Returns -1 when the
        function is not even continuous, and the degree bound when there are
        no interior breakpoints.  Tail joins are not graded here; compactly
        supported constructions keep their extreme pieces compatible with the
        zero tails by construction.
        """
        if tol <= 0:
            raise InvalidInputError("tol must be positive")
        joins = []
        for j in range(1, self.n_pieces):
            h = self.breakpoints[j] - self.breakpoints[j - 1]
            joins.append((self.coefficients[j - 1], h, self.coefficients[j]))
        order = -1
        for r in range(self.degree + 1):
            for cl, t, cr in joins:
                left = _derivative_value(cl, t, r)
                right = _derivative_value(cr, 0.0, r)
                if not abs(left - right) <= tol * (1.0 + max(abs(left), abs(right))):
                    return order
            order = r
        return order

    # --------------------------------------------------------------- algebra

    def __mul__(self, alpha):
        if not np.isscalar(alpha):
            return NotImplemented
        a = float(alpha)
        return PiecewisePolynomial(
            self.breakpoints,
            [a * c for c in self.coefficients],
            a * self.left_tail,
            a * self.right_tail,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def __add__(self, other):
        if not isinstance(other, PiecewisePolynomial):
            return NotImplemented
        bp = np.union1d(self.breakpoints, other.breakpoints)
        pieces = []
        for u in bp[:-1]:
            ca = self.local_coefficients_at(u)
            cb = other.local_coefficients_at(u)
            width = max(len(ca), len(cb))
            pieces.append(_pad(ca, width) + _pad(cb, width))
        lt_a = shift_polynomial(self.left_tail, bp[0] - self.breakpoints[0])
        lt_b = shift_polynomial(other.left_tail, bp[0] - other.breakpoints[0])
        rt_a = shift_polynomial(self.right_tail, bp[-1] - self.breakpoints[-1])
        rt_b = shift_polynomial(other.right_tail, bp[-1] - other.breakpoints[-1])
        width = max(len(lt_a), len(lt_b))
        left = _pad(lt_a, width) + _pad(lt_b, width)
        width = max(len(rt_a), len(rt_b))
        right = _pad(rt_a, width) + _pad(rt_b, width)
        return PiecewisePolynomial(bp, pieces, left, right)

    def __sub__(self, other):
        if not isinstance(other, PiecewisePolynomial):
            return NotImplemented
        return self + (-other)

    # ---------------------------------------------------------- serialization

    def to_dict(self) -> dict:
        return {
            "breakpoints": [float(b) for b in self.breakpoints],
            "pieces": [[float(v) for v in row] for row in self.coefficients],
            "left_tail": [float(v) for v in self.left_tail],
            "right_tail": [float(v) for v in self.right_tail],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PiecewisePolynomial":
        return cls(d["breakpoints"], d["pieces"], d["left_tail"], d["right_tail"])

    def to_json(self) -> str:
        # repr-based float serialization round-trips every finite double
        return json.dumps(self.to_dict(), sort_keys=True, allow_nan=False)

    @classmethod
    def from_json(cls, text: str) -> "PiecewisePolynomial":
        return cls.from_dict(json.loads(text))
