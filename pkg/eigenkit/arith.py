"""Exact scalar arithmetic and exact dense linear algebra.

Every other module of the ``eigenkit`` package computes over the values defined
here, and none of them ever touches a float:

* **BigInt** is Python's arbitrary precision :obj:`int`.
* **BigRational** is :class:`fractions.Fraction`, always in lowest terms with a
  positive denominator.
* :class:`GaussianRational` is a complex number with rational real and
  imaginary parts.
* :class:`PiScalar` is a polynomial in the formal symbol ``PI2`` which stands
  for the transcendental constant :math:`4\\pi^2`. Since :math:`\\pi^2` is
  transcendental, two PiScalars are equal iff their coefficients are.
* :class:`ExactMatrix` is a dense matrix stored in a numpy object array of
  :obj:`int` or :class:`~fractions.Fraction` entries.

All values are immutable and all functions are pure.

"""
import logging
import math
import re
from fractions import Fraction
from logging import NullHandler

import numpy as np

logger = logging.getLogger(__name__)
logger.addHandler(NullHandler())

_GAUSSIAN_REGEX = re.compile(
    r"^\s*(?:(?P<re>[+-]?\d+(?:/\d+)?)(?![\d/]*\*?i))?"
    r"\s*(?:(?P<im>[+-]?\s*\d*(?:/\d+)?)\s*\*?\s*i)?\s*$")


class DimensionError(ValueError):
    """Raised when the dimensions of a matrix or vector don't fit an
    operation, e.g. the determinant of a non-square matrix."""


def binomial(n, k):
    """Binomial coefficient C(n, k) for ``n >= 0``.

    Out-of-range lower indices give 0, which is the convention every binomial
    sum in :mod:`combi` relies on.

    Parameters
    ----------
    n : int
        Upper index, must be non-negative.
    k : int
        Lower index, any integer.

    Returns
    -------
    value : int
        C(n, k), or 0 when ``k < 0`` or ``k > n``.

    Raises
    ------
    ValueError
        Raised if ``n`` is negative.

    """
    if n < 0:
        raise ValueError("binomial upper index must be >= 0: {}".format(n))
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError("not an exact rational: {!r}".format(value))


class GaussianRational:
    """Complex number ``re + im*i`` with :class:`~fractions.Fraction` parts.

    Instances compare equal to :obj:`int` and :class:`~fractions.Fraction`
    values when their imaginary part is zero, and hash accordingly.

    Parameters
    ----------
    re : int or Fraction or str or GaussianRational, optional
        Real part (the default value is 0). A :class:`GaussianRational` is
        copied, in which case ``im`` must be 0.
    im : int or Fraction or str, optional
        Imaginary part (the default value is 0).

    """
    __slots__ = ('re', 'im')

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            re, im = re.re, re.im + _as_fraction(im)
        self.re = _as_fraction(re)
        self.im = _as_fraction(im)

    @classmethod
    def coerce(cls, value):
        """Return ``value`` as a :class:`GaussianRational`, or
        :obj:`NotImplemented` if it is not an exact complex scalar."""
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        return NotImplemented

    @classmethod
    def parse(cls, text):
        """Parse the serialized form ``"p/q+r/s*i"``.

        Accepted forms are ``"a"``, ``"b*i"``, ``"a+b*i"`` and ``"a-b*i"``
        where ``a`` and ``b`` are integers or fractions ``p/q``.

        Raises
        ------
        ValueError
            Raised if ``text`` is not a Gaussian rational.

        """
        match = _GAUSSIAN_REGEX.match(text)
        if not match or (match.group('re') is None
                         and match.group('im') is None):
            raise ValueError("not a Gaussian rational: '{}'".format(text))
        real = Fraction(match.group('re')) if match.group('re') else Fraction(0)
        imag = Fraction(0)
        if match.group('im') is not None:
            im_text = match.group('im').replace(" ", "")
            if im_text in ("", "+"):
                im_text = "1"
            elif im_text == "-":
                im_text = "-1"
            imag = Fraction(im_text)
        return cls(real, imag)

    def is_real(self):
        return self.im == 0

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by a zero Gaussian rational")
        num = self * other.conjugate()
        return GaussianRational(num.re / norm, num.im / norm)

    def __rtruediv__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = GaussianRational(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __eq__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return "GaussianRational('{}')".format(self)

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return "{}*i".format(self.im)
        return "{}{}{}*i".format(self.re, "+" if self.im > 0 else "-",
                                 abs(self.im))


class PiScalar:
    """Polynomial in the formal symbol ``PI2`` with Gaussian rational
    coefficients.

    ``PI2`` denotes :math:`4\\pi^2`; torus eigenvalues :math:`-4\\pi^2 q` are
    the degree-1 scalars ``-q*PI2``. Coefficients are stored by degree with
    trailing zeros trimmed; the zero scalar has no coefficients.

    Parameters
    ----------
    coeffs : sequence, optional
        Coefficients by increasing degree. Entries may be :obj:`int`,
        :class:`~fractions.Fraction` or :class:`GaussianRational`.

    """
    __slots__ = ('coeffs',)

    def __init__(self, coeffs=()):
        cs = [GaussianRational(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def coerce(cls, value):
        if isinstance(value, PiScalar):
            return value
        scalar = GaussianRational.coerce(value)
        if scalar is NotImplemented:
            return scalar
        return cls((scalar,))

    @classmethod
    def pi2(cls, factor=1):
        """The scalar ``factor*PI2``."""
        return cls((0, factor))

    @property
    def degree(self):
        """Degree in ``PI2``; -1 for the zero scalar."""
        return len(self.coeffs) - 1

    def coefficient(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return GaussianRational(0)

    def conjugate(self):
        return PiScalar([c.conjugate() for c in self.coeffs])

    def real_sign(self):
        """Sign of the scalar as a real number, using ``PI2 > 0``.

        Returns
        -------
        sign : int or None
            -1, 0 or 1 when every nonzero coefficient is real and all of them
            share one sign; :obj:`None` when the sign cannot be decided
            without a numerical value of :math:`\\pi`.

        """
        signs = set()
        for c in self.coeffs:
            if not c:
                continue
            if not c.is_real():
                return None
            signs.add(1 if c.re > 0 else -1)
        if not signs:
            return 0
        if len(signs) > 1:
            return None
        return signs.pop()

    def divide(self, other):
        """Exact quotient ``self / other`` in the polynomial ring.

        Raises
        ------
        ZeroDivisionError
            Raised if ``other`` is zero.
        ArithmeticError
            Raised if ``other`` does not divide ``self`` exactly.

        """
        other = PiScalar.coerce(other)
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero PiScalar")
        remainder = list(self.coeffs)
        lead = other.coeffs[-1]
        quotient = [GaussianRational(0)] * max(
            len(remainder) - len(other.coeffs) + 1, 0)
        for shift in range(len(quotient) - 1, -1, -1):
            factor = remainder[shift + len(other.coeffs) - 1] / lead
            quotient[shift] = factor
            for i, c in enumerate(other.coeffs):
                remainder[shift + i] = remainder[shift + i] - factor * c
        if any(remainder):
            raise ArithmeticError("{} is not divisible by {}".format(
                self, other))
        return PiScalar(quotient)

    def __add__(self, other):
        other = PiScalar.coerce(other)
        if other is NotImplemented:
            return other
        size = max(len(self.coeffs), len(other.coeffs))
        return PiScalar([self.coefficient(k) + other.coefficient(k)
                         for k in range(size)])

    __radd__ = __add__

    def __sub__(self, other):
        other = PiScalar.coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = PiScalar.coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = PiScalar.coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return PiScalar()
        product = [GaussianRational(0)] * (len(self.coeffs)
                                           + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                product[i + j] = product[i + j] + a * b
        return PiScalar(product)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = PiScalar.coerce(other)
        if other is NotImplemented:
            return other
        return self.divide(other)

    def __neg__(self):
        return PiScalar([-c for c in self.coeffs])

    def __pos__(self):
        return self

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = PiScalar((1,))
        for _ in range(exponent):
            result = result * self
        return result

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        other = PiScalar.coerce(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coefficient(0))
        return hash(self.coeffs)

    def __repr__(self):
        return "PiScalar('{}')".format(self)

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            text = str(c)
            if k and not c.is_real() and c.re != 0:
                text = "({})".format(text)
            if k == 1:
                text += "*PI2"
            elif k > 1:
                text += "*PI2^{}".format(k)
            terms.append(text)
        return " + ".join(terms) if terms else "0"


def exact_quotient(numerator, denominator):
    """Exact quotient of two scalars of any of the exact types.

    Returns
    -------
    quotient : GaussianRational or PiScalar or None
        :obj:`None` when the denominator is zero or, for PiScalars, when the
        division is not exact.

    """
    if not denominator:
        return None
    if isinstance(numerator, PiScalar) or isinstance(denominator, PiScalar):
        try:
            return PiScalar.coerce(numerator).divide(denominator)
        except ArithmeticError:
            return None
    return GaussianRational.coerce(numerator) / denominator


def real_sign(value):
    """Sign of a real exact scalar, or :obj:`None` if it is not real (or its
    sign cannot be decided exactly)."""
    if isinstance(value, PiScalar):
        return value.real_sign()
    value = GaussianRational.coerce(value)
    if value is NotImplemented or not value.is_real():
        return None
    return (value.re > 0) - (value.re < 0)


class ExactMatrix:
    """Dense matrix with exact :obj:`int` or :class:`~fractions.Fraction`
    entries.

    The entries live in a read-only numpy array of ``dtype=object``; every
    operation returns a new matrix.

    Parameters
    ----------
    rows : int
        Number of rows.
    cols : int
        Number of columns.
    entries : sequence
        ``rows*cols`` entries in row-major order.

    Raises
    ------
    DimensionError
        Raised if ``rows*cols`` differs from the number of entries.

    """
    __slots__ = ('_array',)

    def __init__(self, rows, cols, entries):
        entries = list(entries)
        if rows < 0 or cols < 0 or rows * cols != len(entries):
            raise DimensionError(
                "{}x{} matrix needs {} entries, got {}".format(
                    rows, cols, rows * cols, len(entries)))
        array = np.empty((rows, cols), dtype=object)
        for idx, value in enumerate(entries):
            if not isinstance(value, (int, Fraction)):
                value = _as_fraction(value)
            array[idx // cols, idx % cols] = value
        array.flags.writeable = False
        self._array = array

    @classmethod
    def from_rows(cls, rows, cols=None):
        """Build a matrix from a list of equally long rows.

        ``cols`` is only needed for a matrix without rows.
        """
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged rows: expected length {}, got "
                                     "{}".format(cols, len(r)))
        return cls(len(rows), cols, [x for r in rows for x in r])

    @classmethod
    def _wrap(cls, array):
        matrix = cls.__new__(cls)
        array = np.array(array, dtype=object)
        array.flags.writeable = False
        matrix._array = array
        return matrix

    @property
    def rows(self):
        return self._array.shape[0]

    @property
    def cols(self):
        return self._array.shape[1]

    @property
    def shape(self):
        return self._array.shape

    def is_square(self):
        return self.rows == self.cols

    def __getitem__(self, index):
        return self._array[index]

    def row(self, i):
        return tuple(self._array[i, :])

    def entries(self):
        """Entries in row-major order."""
        return tuple(self._array.flat)

    def tolist(self):
        return [list(r) for r in self._array]

    def to_array(self):
        """Writable copy of the underlying object array."""
        return np.array(self._array, dtype=object)

    def transpose(self):
        return ExactMatrix._wrap(self._array.T)

    @property
    def T(self):
        return self.transpose()

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.cols != other.rows:
                raise DimensionError("cannot multiply {}x{} by {}x{}".format(
                    self.rows, self.cols, other.rows, other.cols))
            if self.cols == 0:
                return ExactMatrix(self.rows, other.cols,
                                   [0] * (self.rows * other.cols))
            return ExactMatrix._wrap(self._array.dot(other._array))
        vector = list(other)
        if len(vector) != self.cols:
            raise DimensionError("cannot multiply {}x{} matrix by a vector of "
                                 "length {}".format(self.rows, self.cols,
                                                    len(vector)))
        return tuple(sum((a * x for a, x in zip(self._array[i, :], vector)), 0)
                     for i in range(self.rows))

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries() == other.entries()

    def __hash__(self):
        return hash((self.shape, self.entries()))

    def __repr__(self):
        return "ExactMatrix({})".format(self.tolist())

    def __str__(self):
        cells = [[str(x) for x in r] for r in self._array]
        width = max((len(c) for r in cells for c in r), default=0)
        return "\n".join(" ".join(c.rjust(width) for c in r) for r in cells)


def _integer_array(matrix):
    """Integer copy of ``matrix`` and the factor its determinant must be
    divided by (rows with fractions are scaled by their lcm denominator)."""
    array = matrix.to_array()
    scale = 1
    for i in range(array.shape[0]):
        denominators = [x.denominator for x in array[i, :]
                        if isinstance(x, Fraction)]
        lcm = 1
        for d in denominators:
            lcm = lcm * d // math.gcd(lcm, d)
        array[i, :] = [int(x * lcm) for x in array[i, :]]
        scale *= lcm
    return array, scale


def det_bareiss(matrix):
    """Determinant by one-step fraction-free (Bareiss) elimination.

    Every intermediate value is an exact integer: the update
    ``(a_ij*a_kk - a_ik*a_kj) // prev`` is always an exact division. Zero pivots
    are handled by a row swap with sign change. Rational entries are allowed;
    each row is scaled to integers first and the scale divided out at the end.

    Parameters
    ----------
    matrix : ExactMatrix
        Square matrix.

    Returns
    -------
    det : int or Fraction
        The exact determinant (an :obj:`int` for integer matrices).

    Raises
    ------
    DimensionError
        Raised if ``matrix`` is not square.

    """
    if not matrix.is_square():
        raise DimensionError("determinant of a non-square {}x{} matrix".format(
            matrix.rows, matrix.cols))
    n = matrix.rows
    if n == 0:
        return 1
    a, scale = _integer_array(matrix)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k, k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i, k] != 0), None)
            if swap is None:
                return 0
            a[[k, swap]] = a[[swap, k]]
            sign = -sign
        pivot = a[k, k]
        a[k + 1:, k + 1:] = (a[k + 1:, k + 1:] * pivot
                             - np.outer(a[k + 1:, k], a[k, k + 1:])) // prev
        prev = pivot
    det = sign * a[n - 1, n - 1]
    if scale != 1:
        return Fraction(det, scale)
    return det


def _fraction_array(matrix):
    array = matrix.to_array()
    for idx, value in np.ndenumerate(array):
        array[idx] = Fraction(value)
    return array


def det_rational(matrix):
    """Determinant by exact rational Gaussian elimination.

    Independent of :func:`det_bareiss`, which it is used to cross-check.
    """
    if not matrix.is_square():
        raise DimensionError("determinant of a non-square {}x{} matrix".format(
            matrix.rows, matrix.cols))
    a = _fraction_array(matrix)
    n = matrix.rows
    det = Fraction(1)
    for k in range(n):
        swap = next((i for i in range(k, n) if a[i, k] != 0), None)
        if swap is None:
            return Fraction(0)
        if swap != k:
            a[[k, swap]] = a[[swap, k]]
            det = -det
        det *= a[k, k]
        a[k + 1:, k:] = a[k + 1:, k:] - np.outer(a[k + 1:, k] / a[k, k],
                                                 a[k, k:])
    return det


def _row_reduce(matrix):
    """Reduced row echelon form over the rationals and its pivot columns."""
    a = _fraction_array(matrix)
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        swap = next((i for i in range(r, rows) if a[i, c] != 0), None)
        if swap is None:
            continue
        if swap != r:
            a[[r, swap]] = a[[swap, r]]
        a[r, :] = a[r, :] / a[r, c]
        for i in range(rows):
            if i != r and a[i, c] != 0:
                a[i, :] = a[i, :] - a[i, c] * a[r, :]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(matrix):
    """Exact rank over the rationals."""
    return len(_row_reduce(matrix)[1])


def inverse(matrix):
    """Exact inverse over the rationals.

    Raises
    ------
    DimensionError
        Raised if ``matrix`` is not square.
    ZeroDivisionError
        Raised if ``matrix`` is singular.

    """
    if not matrix.is_square():
        raise DimensionError("inverse of a non-square {}x{} matrix".format(
            matrix.rows, matrix.cols))
    n = matrix.rows
    augmented = ExactMatrix.from_rows(
        [row + [1 if i == j else 0 for j in range(n)]
         for i, row in enumerate(matrix.tolist())], 2 * n)
    reduced, pivots = _row_reduce(augmented)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular {}x{} matrix".format(n, n))
    return ExactMatrix._wrap(reduced[:, n:])


def kernel_basis(matrix):
    """Basis of the right kernel by exact Gaussian elimination.

    Parameters
    ----------
    matrix : ExactMatrix
        Any matrix with :obj:`int` or :class:`~fractions.Fraction` entries.

    Returns
    -------
    basis : list of tuple of Fraction
        One vector per free column of the reduced row echelon form (the free
        coordinate set to 1). The list is empty iff ``matrix`` is injective.

    """
    reduced, pivots = _row_reduce(matrix)
    logger.debug("kernel of {}x{} matrix: rank {}".format(
        matrix.rows, matrix.cols, len(pivots)))
    basis = []
    for free in (c for c in range(matrix.cols) if c not in pivots):
        vector = [Fraction(0)] * matrix.cols
        vector[free] = Fraction(1)
        for row, col in enumerate(pivots):
            vector[col] = -reduced[row, free]
        basis.append(tuple(vector))
    return basis
