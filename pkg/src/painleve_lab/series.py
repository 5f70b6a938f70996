"""Truncated Laurent series with complex coefficients.

A :class:`TruncatedSeries` stands for ``x**l * sum(c[i] * x**i for i in 0..N)
+ O(x**(l + N + 1))`` where ``x`` is the local variable named by
``variable_tag``: ``"t"`` (expansion at t=0), ``"1-t"`` (at t=1) or ``"1/t"``
(at t=infinity).  Every operation tracks the absolute precision
``l + N + 1`` so that no result ever claims a coefficient it cannot know.
Plain Python numbers mix in as exact constants.
"""

from __future__ import annotations

import numbers

import numpy as np

from .errors import PoleError

VARIABLE_TAGS = ("t", "1-t", "1/t")

# Leading coefficients below this fraction of the largest coefficient are
# treated as cancelled when a series has to be inverted.
CANCEL_RTOL = 1e-12


def _is_scalar(value):
    return isinstance(value, numbers.Number) or (
        isinstance(value, np.generic) and np.isscalar(value)
    )


class TruncatedSeries:
    """Immutable truncated Laurent series.

    Parameters
    ----------
    coeffs : sequence of complex
        ``c_0 .. c_N``; the order ``N`` is ``len(coeffs) - 1``.
    leading_exponent : int
        Exponent ``l`` of the first stored coefficient.
    variable_tag : str
        One of ``"t"``, ``"1-t"``, ``"1/t"``.
    """

    __slots__ = ("_coeffs", "_lead", "_tag")

    def __init__(self, coeffs, leading_exponent=0, variable_tag="t"):
        arr = np.array(coeffs, dtype=complex).ravel()
        if arr.size == 0:
            raise ValueError("a truncated series needs at least one coefficient")
        if not np.all(np.isfinite(arr)):
            raise ArithmeticError("non-finite series coefficient")
        if variable_tag not in VARIABLE_TAGS:
            raise ValueError(f"unknown variable tag {variable_tag!r}")
        arr.setflags(write=False)
        self._coeffs = arr
        self._lead = int(leading_exponent)
        self._tag = variable_tag

    # -- construction helpers ------------------------------------------------

    @classmethod
    def constant(cls, value, order, variable_tag="t"):
        c = np.zeros(order + 1, dtype=complex)
        c[0] = value
        return cls(c, 0, variable_tag)

    @classmethod
    def variable(cls, order, variable_tag="t"):
        """The local variable itself, known through ``x**(order + 1)``."""
        c = np.zeros(order + 1, dtype=complex)
        c[0] = 1.0
        return cls(c, 1, variable_tag)

    @classmethod
    def from_absolute(cls, mapping, precision, variable_tag="t"):
        """Build from ``{exponent: coefficient}`` known below ``precision``."""
        lead = min(mapping) if mapping else precision - 1
        lead = min(lead, precision - 1)
        c = np.zeros(precision - lead, dtype=complex)
        for k, v in mapping.items():
            if k < precision:
                c[k - lead] = v
        return cls(c, lead, variable_tag)

    # -- basic properties ----------------------------------------------------

    @property
    def coeffs(self):
        return self._coeffs

    @property
    def leading_exponent(self):
        return self._lead

    @property
    def order(self):
        return self._coeffs.size - 1

    @property
    def variable_tag(self):
        return self._tag

    @property
    def precision(self):
        """First exponent whose coefficient is unknown."""
        return self._lead + self._coeffs.size

    def coefficient(self, k):
        """Coefficient of ``x**k`` (absolute exponent)."""
        if k >= self.precision:
            raise IndexError(f"coefficient of x^{k} is beyond precision {self.precision}")
        if k < self._lead:
            return 0j
        return complex(self._coeffs[k - self._lead])

    def coefficients(self, lo, hi):
        """Coefficients of ``x**lo .. x**(hi-1)`` as an array."""
        hi = min(hi, self.precision)
        out = np.zeros(max(hi - lo, 0), dtype=complex)
        for k in range(lo, hi):
            if k >= self._lead:
                out[k - lo] = self._coeffs[k - self._lead]
        return out

    def to_dict(self):
        return {"leading_exponent": self._lead, "coeffs": list(self._coeffs)}

    def __repr__(self):
        terms = ", ".join(f"{c:.6g}" for c in self._coeffs[:6])
        more = ", ..." if self._coeffs.size > 6 else ""
        return (f"TruncatedSeries(x^{self._lead}*[{terms}{more}] + O(x^{self.precision}),"
                f" tag={self._tag!r})")

    # -- structural operations -----------------------------------------------

    def _like(self, coeffs, lead):
        return TruncatedSeries(coeffs, lead, self._tag)

    def with_tag(self, variable_tag):
        return TruncatedSeries(self._coeffs, self._lead, variable_tag)

    def truncated(self, order):
        """Keep relative order ``min(order, self.order)``."""
        order = min(order, self.order)
        return self._like(self._coeffs[: order + 1], self._lead)

    def truncated_at(self, precision):
        """Drop every coefficient from ``x**precision`` on."""
        precision = min(precision, self.precision)
        if precision <= self._lead:
            return self._like([0.0], precision - 1)
        return self._like(self._coeffs[: precision - self._lead], self._lead)

    def shifted(self, k):
        """Multiply by ``x**k``."""
        return self._like(self._coeffs, self._lead + int(k))

    def normalized(self, rtol=0.0):
        """Strip negligible leading coefficients.

        A coefficient is negligible when ``|c| <= rtol * max|c|``; with the
        default ``rtol=0`` only exact zeros are removed.  The zero series
        keeps its precision and is stored as a single zero coefficient.
        """
        mags = np.abs(self._coeffs)
        cutoff = rtol * mags.max() if mags.size else 0.0
        nz = np.nonzero(mags > cutoff)[0]
        if nz.size == 0:
            return self._like([0.0], self.precision - 1)
        k = int(nz[0])
        if k == 0:
            return self
        return self._like(self._coeffs[k:], self._lead + k)

    def is_zero(self, atol=0.0):
        return bool(np.all(np.abs(self._coeffs) <= atol))

    def spread(self, m):
        """Substitute ``x -> x**m`` (used for series in ``t**m``)."""
        m = int(m)
        if m == 1:
            return self
        n = self._coeffs.size
        c = np.zeros(m * n, dtype=complex)
        c[::m] = self._coeffs
        return self._like(c, m * self._lead)

    def gather(self, m, atol=None):
        """Inverse of :meth:`spread`; the skipped coefficients must vanish."""
        m = int(m)
        if m == 1:
            return self
        lead = self._lead
        first = -(-lead // m) * m
        prec = self.precision
        last = ((prec - 1) // m) * m
        scale = max(1.0, float(np.abs(self._coeffs).max()))
        tol = 1e-9 * scale if atol is None else atol
        for k in range(lead, prec):
            if k % m and abs(self.coefficient(k)) > tol:
                raise ValueError(f"coefficient of x^{k} does not vanish ({abs(self.coefficient(k)):.2e})")
        vals = [self.coefficient(k) for k in range(first, last + 1, m)]
        if not vals:
            return self._like([0.0], prec // m)
        return self._like(vals, first // m)

    # -- arithmetic ------------------------------------------------------------

    def _check_tag(self, other):
        if other._tag != self._tag:
            raise ValueError(f"variable tags differ: {self._tag!r} vs {other._tag!r}")

    def _add_scalar(self, s):
        if s == 0:
            return self
        prec = self.precision
        if prec <= 0:
            return self
        lead = min(self._lead, 0)
        c = np.zeros(prec - lead, dtype=complex)
        c[self._lead - lead:] = self._coeffs
        c[-lead] += s
        return self._like(c, lead)

    def __add__(self, other):
        if _is_scalar(other):
            return self._add_scalar(complex(other))
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_tag(other)
        lead = min(self._lead, other._lead)
        prec = min(self.precision, other.precision)
        c = np.zeros(prec - lead, dtype=complex)
        for s in (self, other):
            n = min(s.precision, prec) - s._lead
            if n > 0:
                c[s._lead - lead: s._lead - lead + n] += s._coeffs[:n]
        return self._like(c, lead)

    __radd__ = __add__

    def __neg__(self):
        return self._like(-self._coeffs, self._lead)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if _is_scalar(other):
            return self._add_scalar(-complex(other))
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            return self._like(self._coeffs * complex(other), self._lead)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_tag(other)
        n = min(self.order, other.order) + 1
        c = np.convolve(self._coeffs[:n], other._coeffs[:n])[:n]
        return self._like(c, self._lead + other._lead)

    __rmul__ = __mul__

    def _strip_cancelled(self, rtol=CANCEL_RTOL, window=4):
        """Drop leading coefficients that are roundoff next to the following ones.

        The scale is the largest of the first ``window`` coefficients, so fast
        growth of high orders does not mask a genuine leading term.
        """
        c = self._coeffs
        k = 0
        while k < c.size - 1 and abs(c[k]) <= rtol * np.abs(c[k:k + window]).max():
            k += 1
        if k == c.size - 1 and abs(c[k]) == 0:
            return self._like([0.0], self.precision - 1)
        return self if k == 0 else self._like(c[k:], self._lead + k)

    def reciprocal(self):
        s = self._strip_cancelled()
        c = s._coeffs
        if c[0] == 0:
            raise PoleError("division by an identically zero series")
        n = c.size
        d = np.zeros(n, dtype=complex)
        inv0 = 1.0 / c[0]
        d[0] = inv0
        for k in range(1, n):
            d[k] = -inv0 * np.dot(c[1:k + 1], d[k - 1::-1])
        return s._like(d, -s._lead)

    def __truediv__(self, other):
        if _is_scalar(other):
            if other == 0:
                raise PoleError("division of a series by zero")
            return self._like(self._coeffs / complex(other), self._lead)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_tag(other)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        if not _is_scalar(other):
            return NotImplemented
        return self.reciprocal() * complex(other)

    def __pow__(self, n):
        if not isinstance(n, numbers.Integral):
            raise TypeError("only integer powers of a series are supported")
        n = int(n)
        if n < 0:
            return self.reciprocal() ** (-n)
        result = TruncatedSeries.constant(1.0, self.order, self._tag)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- calculus --------------------------------------------------------------

    def derivative(self):
        """d/dx in the local variable."""
        k = self._lead + np.arange(self._coeffs.size)
        c = self._coeffs * k
        if self._lead == 0 and c.size > 1:
            return self._like(c[1:], 0)
        return self._like(c, self._lead - 1)

    def residue(self):
        """Coefficient of ``x**-1``."""
        return self.coefficient(-1)

    def antiderivative(self, drop_log=False):
        """Termwise integral with zero constant.

        The ``x**-1`` coefficient integrates to a logarithm, which a series
        cannot hold; it must vanish unless ``drop_log`` is set, in which
        case the caller accounts for it separately.
        """
        k = self._lead + np.arange(self._coeffs.size) + 1
        c = self._coeffs.copy()
        log_slot = np.nonzero(k == 0)[0]
        if log_slot.size:
            j = int(log_slot[0])
            if c[j] != 0 and not drop_log:
                raise ValueError("series has a 1/x term; its integral is logarithmic")
            c[j] = 0.0
            k = k.copy()
            k[j] = 1
        return self._like(c / k, self._lead + 1)

    def compose(self, inner):
        """``self(inner(x))`` for an inner series without constant term."""
        if not isinstance(inner, TruncatedSeries):
            raise TypeError("inner argument must be a TruncatedSeries")
        inner = inner.normalized()
        if inner._lead < 1:
            if inner._coeffs[0] == 0:
                raise PoleError("inner series is identically zero")
            raise ValueError("composition needs an inner series with zero constant term")
        acc = None
        for c in self._coeffs[::-1]:
            acc = complex(c) if acc is None else acc * inner + complex(c)
        if _is_scalar(acc):
            acc = TruncatedSeries.constant(acc, inner.order, inner._tag)
        cap = inner._lead * (self.order + 1)
        acc = acc.truncated_at(cap)
        if self._lead:
            acc = acc * inner ** self._lead
        return acc

    # -- evaluation ----------------------------------------------------------

    def evaluate(self, x):
        """Evaluate the stored polynomial part at local-variable value ``x``."""
        x = complex(x)
        if x == 0:
            if self._lead < 0 and np.any(self._coeffs[: -self._lead] != 0):
                raise PoleError("series has a pole at the expansion point")
            return complex(self.coefficient(0)) if self.precision > 0 else 0j
        poly = np.polyval(self._coeffs[::-1], x)
        return complex(poly * x ** self._lead)

    def evaluate_derivative(self, x):
        return self.derivative().evaluate(x)

    def local_variable(self, t):
        """Map a value of t to this series' local variable."""
        return to_local(t, self._tag)

    def evaluate_at_t(self, t):
        return self.evaluate(to_local(t, self._tag))

    def allclose(self, other, atol, upto=None):
        return max_abs_diff(self, other, upto) <= atol


def to_local(t, tag):
    t = complex(t)
    if tag == "t":
        return t
    if tag == "1-t":
        return 1.0 - t
    if tag == "1/t":
        if t == 0:
            raise PoleError("t=0 has no image in the 1/t chart")
        return 1.0 / t
    raise ValueError(f"unknown variable tag {tag!r}")


def from_local(x, tag):
    """Inverse of :func:`to_local`."""
    x = complex(x)
    if tag == "t":
        return x
    if tag == "1-t":
        return 1.0 - x
    if tag == "1/t":
        return 1.0 / x
    raise ValueError(f"unknown variable tag {tag!r}")


def t_as_series(tag, order):
    """The deformation variable t written in the local variable of ``tag``."""
    x = TruncatedSeries.variable(order + 2, tag)
    if tag == "t":
        return x
    if tag == "1-t":
        return 1 - x
    return x.reciprocal()


def max_abs_diff(a, b, upto=None):
    """Largest coefficient difference over the exponents both series know.

    ``upto`` caps the exponent range (exclusive).
    """
    if a.variable_tag != b.variable_tag:
        raise ValueError("variable tags differ")
    lo = min(a.leading_exponent, b.leading_exponent)
    hi = min(a.precision, b.precision)
    if upto is not None:
        hi = min(hi, upto)
    if hi <= lo:
        return 0.0
    return float(np.max(np.abs(a.coefficients(lo, hi) - b.coefficients(lo, hi))))
