"""Binomial matrices, their generating polynomials and determinant identities.

The row vectors

.. math::

    a_\\ell(n)_m = \\sum_k \\binom{\\ell}{2k}\\binom{n-\\ell}{2(m-k)+1}, \\qquad
    b_\\ell(n)_m = \\sum_k \\binom{\\ell}{2k}\\binom{n-\\ell}{2(m-k)}

are stacked into three matrix families:

* ``A``: :math:`A(n)` of size :math:`\\lfloor (n+1)/2 \\rfloor` (rows
  :math:`a_0(n), \\dots, a_{\\lfloor (n-1)/2 \\rfloor}(n)`);
* ``B_square``: :math:`B(n)` of size :math:`\\lfloor n/2 \\rfloor + 1`;
* ``B_rect``: for even :math:`N = 2n`, the :math:`n \\times (n+1)` matrix with
  rows :math:`b_0(N), \\dots, b_{n-1}(N)`, whose kernel is one-dimensional.

The determinants of ``A`` and ``B_square`` are signed powers of two. This
module computes them by Bareiss elimination, by closed form and by the row
reduction chain, and checks the polynomial recurrences behind the proofs.

"""
import logging
import math
from collections import namedtuple
from fractions import Fraction
from logging import NullHandler

from eigenkit.arith import (ExactMatrix, binomial, det_bareiss, kernel_basis,
                            rank)
from eigenkit.report import VerificationReport
from eigenkit.utils import UsageError, check_range

logger = logging.getLogger(__name__)
logger.addHandler(NullHandler())

A = "A"
B_SQUARE = "B_square"
B_RECT = "B_rect"
FAMILIES = (A, B_SQUARE, B_RECT)
# Spellings accepted by the CLI
FAMILY_ALIASES = {"A": A, "B": B_SQUARE, "B_square": B_SQUARE,
                  "Brect": B_RECT, "B_rect": B_RECT}
GEN_POLY_KINDS = ("P", "alpha", "beta")
NO_PREDICTION = "no prediction"

GenPolyResult = namedtuple("GenPolyResult", "definition closed_form equal")
DerivativeCase = namedtuple("DerivativeCase", "computed predicted case")
PrintedExample = namedtuple("PrintedExample",
                            "name family n printed transposed cited_det")


class IntPoly:
    """Univariate polynomial with :obj:`int` coefficients.

    Coefficients are stored by increasing degree with trailing zeros trimmed,
    so the zero polynomial has no coefficients and degree -1.
    """
    __slots__ = ('coeffs',)

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, degree, coeff=1):
        return cls([0] * degree + [coeff])

    @classmethod
    def binomial_power(cls, sign, exponent):
        """:math:`(1 + \\text{sign}\\, t)^{\\text{exponent}}`."""
        return cls([binomial(exponent, j) * sign ** j
                    for j in range(exponent + 1)])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def coefficient(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def derivative(self, order=1):
        coeffs = self.coeffs
        for _ in range(order):
            coeffs = [j * c for j, c in enumerate(coeffs)][1:]
        return IntPoly(coeffs)

    def evaluate(self, x):
        value = 0
        for c in reversed(self.coeffs):
            value = value * x + c
        return value

    def __add__(self, other):
        size = max(len(self.coeffs), len(other.coeffs))
        return IntPoly([self.coefficient(k) + other.coefficient(k)
                        for k in range(size)])

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        product = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                product[i + j] += a * b
        return IntPoly(product)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return "IntPoly({})".format(list(self.coeffs))

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append("{}*t".format(c))
            else:
                terms.append("{}*t^{}".format(c, k))
        return " + ".join(terms) if terms else "0"


def _check_family(family, allowed=FAMILIES):
    family = FAMILY_ALIASES.get(family, family)
    if family not in allowed:
        raise UsageError("unknown matrix family: '{}' (choose from {})".format(
            family, ", ".join(allowed)))
    return family


def a_entry(n, l, m):
    """Component :math:`a_\\ell(n)_m`; zero beyond the defined columns.

    Raises
    ------
    UsageError
        Raised unless ``0 <= l <= n`` and ``m >= 0``.

    """
    check_range("l", l, 0, n)
    check_range("m", m, 0)
    return sum(binomial(l, 2 * k) * binomial(n - l, 2 * (m - k) + 1)
               for k in range(l // 2 + 1))


def b_entry(n, l, m):
    """Component :math:`b_\\ell(n)_m`; as :func:`a_entry` with the even-index
    binomial."""
    check_range("l", l, 0, n)
    check_range("m", m, 0)
    return sum(binomial(l, 2 * k) * binomial(n - l, 2 * (m - k))
               for k in range(l // 2 + 1))


def row_vector(kind, n, l, length=None):
    """Row vector :math:`a_\\ell(n)` (``kind='a'``) or :math:`b_\\ell(n)`
    (``kind='b'``) as a tuple.

    Parameters
    ----------
    kind : str, {'a', 'b'}
        Which vector.
    n, l : int
        Degree and row index, ``0 <= l <= n``.
    length : int, optional
        Length of the returned tuple. Shorter lengths truncate, longer ones
        pad with the (vanishing) components beyond the defined columns. The
        default is the number of columns of :math:`A(n)` or :math:`B(n)`.

    """
    entry = {'a': a_entry, 'b': b_entry}[kind]
    if length is None:
        length = (n + 1) // 2 if kind == 'a' else n // 2 + 1
    return tuple(entry(n, l, m) for m in range(length))


def matrix_size(family, n):
    """``(rows, cols)`` of ``family(n)``."""
    family = _check_family(family)
    if family == A:
        return (n + 1) // 2, (n + 1) // 2
    if family == B_SQUARE:
        return n // 2 + 1, n // 2 + 1
    return n // 2, n // 2 + 1


def build_matrix(family, n):
    """Build :math:`A(n)`, :math:`B(n)` or the rectangular :math:`B(n)`.

    Parameters
    ----------
    family : str, {'A', 'B_square', 'B_rect'}
        Matrix family (the CLI spellings ``B`` and ``Brect`` are accepted too).
    n : int
        Degree, ``n >= 1``; even for ``B_rect``.

    Returns
    -------
    matrix : ExactMatrix
        Rows indexed by :math:`\\ell`, columns by :math:`m`.

    Raises
    ------
    UsageError
        Raised if ``n`` is invalid for ``family``.

    """
    family = _check_family(family)
    check_range("n", n, 1)
    if family == B_RECT and n % 2:
        raise UsageError("B_rect needs an even n: {}".format(n))
    rows, cols = matrix_size(family, n)
    entry = a_entry if family == A else b_entry
    logger.debug("building {}({}) of size {}x{}".format(family, n, rows, cols))
    return ExactMatrix(rows, cols, [entry(n, l, m) for l in range(rows)
                                    for m in range(cols)])


def predicted_det(family, n):
    """Closed-form determinant of :math:`A(n)` or :math:`B(n)`.

    With :math:`n = 2h` or :math:`n = 2h+1`:

    * :math:`\\det A(2h) = (-1)^{h(h-1)/2}\\, 2^{h(h-1)+1}`
    * :math:`\\det A(2h+1) = (-1)^{h(h+1)/2}\\, 2^{h^2}`
    * :math:`\\det B(2h) = (-1)^{h(h+1)/2}\\, 2^{h(h-1)}`
    * :math:`\\det B(2h+1) = (-1)^{h(h+1)/2}\\, 2^{h^2}`

    """
    family = _check_family(family, (A, B_SQUARE))
    check_range("n", n, 1)
    h = n // 2
    if n % 2:
        return (-1) ** (h * (h + 1) // 2) * 2 ** (h * h)
    if family == A:
        return (-1) ** (h * (h - 1) // 2) * 2 ** (h * (h - 1) + 1)
    return (-1) ** (h * (h + 1) // 2) * 2 ** (h * (h - 1))


def verify_det(family, n):
    """Compare the Bareiss determinant of ``family(n)`` with
    :func:`predicted_det`."""
    family = _check_family(family, (A, B_SQUARE))
    report = VerificationReport("combi-det")
    report.check("det {}({})".format(family, n), predicted_det(family, n),
                 det_bareiss(build_matrix(family, n)))
    return report


def _as_int(value):
    value = Fraction(value)
    return value.numerator if value.denominator == 1 else value


def det_via_row_reduction(family, n):
    """Determinant through the reduction chain, without elimination.

    ``A`` uses :math:`\\det A(1) = 1` and the two induction steps
    :math:`\\det A(2h) = 2^h \\det A(2h-1)` and
    :math:`\\det A(2h+1) = (-1)^h 2^{h-1} \\det A(2h)`. ``B_square`` uses
    :math:`\\det B(2h) = (-1)^h \\frac12 \\det A(2h)` and
    :math:`\\det B(2h-1) = \\det A(2h-1)`.
    """
    family = _check_family(family, (A, B_SQUARE))
    check_range("n", n, 1)
    det_a = Fraction(1)
    for k in range(2, n + 1):
        h = k // 2
        if k % 2 == 0:
            det_a *= 2 ** h
        else:
            det_a *= (-1) ** h * Fraction(2) ** (h - 1)
    if family == B_SQUARE and n % 2 == 0:
        det_a = (-1) ** (n // 2) * det_a / 2
    return _as_int(det_a)


def _pad(vector, length):
    return tuple(vector[:length]) + (0,) * (length - len(vector))


def reduction_matrix(family, n):
    """Matrix obtained from ``family(n)`` by determinant-preserving row
    operations.

    For :math:`A(n)`, :math:`n \\geq 3`, with :math:`p = n-1`, the rows are
    :math:`a_0(n), a_0(p), 2a_1(p), \\dots, 2a_{\\lfloor p/2 \\rfloor - 1}(p)`.
    For :math:`B(n)` the rows are :math:`a_0(n+1)-a_0(n)` followed by the
    successive differences :math:`a_\\ell(n) - a_{\\ell+1}(n)`,
    :math:`0 \\leq \\ell \\leq \\lfloor (n-2)/2 \\rfloor`. Vectors are
    zero-padded to the matrix size.
    """
    family = _check_family(family, (A, B_SQUARE))
    if family == A:
        check_range("n", n, 3)
        p = n - 1
        size = p // 2 + 1
        rows = [row_vector('a', n, 0, size), row_vector('a', p, 0, size)]
        rows.extend(tuple(2 * x for x in row_vector('a', p, l, size))
                    for l in range(1, p // 2))
    else:
        check_range("n", n, 1)
        size = n // 2 + 1
        first = [x - y for x, y in zip(row_vector('a', n + 1, 0, size),
                                       row_vector('a', n, 0, size))]
        rows = [first]
        rows.extend([x - y for x, y in zip(row_vector('a', n, l, size),
                                           row_vector('a', n, l + 1, size))]
                    for l in range((n - 2) // 2 + 1))
    return ExactMatrix.from_rows(rows, size)


def verify_row_reduction(family, n):
    """Check the reduced matrix and the reduction chain against Bareiss."""
    family = _check_family(family, (A, B_SQUARE))
    report = VerificationReport("combi-reduction")
    det = det_bareiss(build_matrix(family, n))
    if family == B_SQUARE or n >= 3:
        report.check("det reduced {}({})".format(family, n), det,
                     det_bareiss(reduction_matrix(family, n)))
    report.check("det chain {}({})".format(family, n), det,
                 det_via_row_reduction(family, n))
    return report


def kernel_vector(n):
    """Kernel vector of ``B_rect(2n)``: :math:`v_m = (-1)^m
    \\binom{n}{m} / \\binom{2n}{2m}`, :math:`0 \\leq m \\leq n`."""
    check_range("n", n, 1)
    return tuple(Fraction((-1) ** m * binomial(n, m), binomial(2 * n, 2 * m))
                 for m in range(n + 1))


def verify_kernel(n):
    """Check that ``B_rect(2n)`` annihilates :func:`kernel_vector` and that
    its kernel is exactly one-dimensional and spanned by it."""
    matrix = build_matrix(B_RECT, 2 * n)
    vector = kernel_vector(n)
    report = VerificationReport("combi-kernel")
    report.check("B_rect({})*v".format(2 * n), (0,) * n, matrix @ vector)
    basis = kernel_basis(matrix)
    report.check("dim ker B_rect({})".format(2 * n), 1, len(basis))
    if len(basis) == 1:
        # the free coordinate of the basis vector is the last one
        scaled = tuple(x * vector[-1] for x in basis[0])
        report.check("ker B_rect({}) spanned by v".format(2 * n), vector,
                     scaled)
    return report


def verify_kernel_identity(n):
    """Check the kernel relation in generating-polynomial form.

    Summed over :math:`\\ell`, the products
    :math:`\\sum_m (-1)^m \\binom{n}{m}\\binom{2m}{2k}\\binom{2n-2m}{\\ell-2k}`
    are the coefficients of
    :math:`\\sum_m (-1)^m \\binom{n}{m} \\tfrac12((1+t)^{2m}+(1-t)^{2m})
    (1+t)^{2n-2m}`, and this polynomial is exactly :math:`2^{2n-1} t^n`.
    """
    check_range("n", n, 1)
    total = IntPoly()
    for m in range(n + 1):
        even_part = IntPoly([binomial(2 * m, j) if j % 2 == 0 else 0
                             for j in range(2 * m + 1)])
        term = even_part * IntPoly.binomial_power(1, 2 * n - 2 * m)
        total = total + term * ((-1) ** m * binomial(n, m))
    report = VerificationReport("combi-kernel-identity")
    report.check("kernel identity n={}".format(n),
                 IntPoly.monomial(n, 2 ** (2 * n - 1)), total)
    return report


def gen_poly(kind, l, n):
    """Generating polynomial from its definition and from its closed form.

    * ``P``: :math:`4 \\sum_m a_\\ell(n)_m x^{2m+1}` against
      :math:`((1+x)^\\ell+(1-x)^\\ell)((1+x)^{n-\\ell}-(1-x)^{n-\\ell})`.
    * ``alpha``: the same sum against the expanded form
      :math:`(1+t)^n-(1-t)^n-(1+t)^\\ell(1-t)^{n-\\ell}
      +(1+t)^{n-\\ell}(1-t)^\\ell`.
    * ``beta``: :math:`4 \\sum_m b_\\ell(n)_m t^{2m}` against
      :math:`(1+t)^n+(1-t)^n+(1+t)^\\ell(1-t)^{n-\\ell}
      +(1+t)^{n-\\ell}(1-t)^\\ell`; here ``n`` is the total degree.

    Returns
    -------
    result : GenPolyResult
        ``(definition, closed_form, equal)``.

    """
    if kind not in GEN_POLY_KINDS:
        raise UsageError("unknown generating polynomial: '{}' (choose from "
                         "{})".format(kind, ", ".join(GEN_POLY_KINDS)))
    check_range("n", n, 0)
    check_range("l", l, 0, n)
    definition = IntPoly()
    for m in range(n // 2 + 1):
        if kind == "beta":
            definition = definition + IntPoly.monomial(2 * m,
                                                       4 * b_entry(n, l, m))
        else:
            definition = definition + IntPoly.monomial(2 * m + 1,
                                                       4 * a_entry(n, l, m))
    closed_form = _closed_form(kind, l, n)
    return GenPolyResult(definition, closed_form, definition == closed_form)


def _closed_form(kind, l, n):
    power = IntPoly.binomial_power
    if kind == "P":
        return ((power(1, l) + power(-1, l))
                * (power(1, n - l) - power(-1, n - l)))
    mixed = power(1, l) * power(-1, n - l)
    swapped = power(1, n - l) * power(-1, l)
    if kind == "alpha":
        return power(1, n) - power(-1, n) - mixed + swapped
    return power(1, n) + power(-1, n) + mixed + swapped


def verify_gen_polys(n):
    """Check :func:`gen_poly` for every kind and every :math:`\\ell \\leq n`."""
    report = VerificationReport("combi-polys")
    for kind in GEN_POLY_KINDS:
        failing = [l for l in range(n + 1) if not gen_poly(kind, l, n).equal]
        report.add("{} n={}".format(kind, n), n + 1, n + 1 - len(failing),
                   not failing,
                   note="failing l: {}".format(failing) if failing else None)
    return report


def _falling_factorial(x, k):
    value = 1
    for j in range(k):
        value *= x - j
    return value


def _admissible_rows(n):
    """Number of rows l with 2l < n."""
    return (n + 1) // 2


def alpha_derivative_case(n, l, k, kind="alpha"):
    """k-th derivative at 1 of the closed form of :math:`\\alpha_\\ell` (or
    :math:`\\beta_\\ell`) and its predicted value.

    With :math:`n` the total degree (for ``beta`` the :math:`N` of
    :math:`B(N)`) the predictions are:

    1. :math:`k < \\ell`: :math:`\\frac{n!}{(n-k)!} 2^{n-k}`
    2. :math:`k = \\ell`: :math:`(\\frac{n!}{(n-k)!} + (-1)^k k!) 2^{n-k}`
    3. :math:`\\ell = 0, k < n`: :math:`\\frac{n!}{(n-k)!} 2^{n-k+1}`

    Parameters
    ----------
    n : int
        Total degree, ``n >= 1``.
    l : int
        Admissible row: ``l <= (n-1)//2`` for ``alpha``, ``2l < n`` for
        ``beta``.
    k : int
        Derivative order, ``k >= 0``.
    kind : str, {'alpha', 'beta'}
        Generating polynomial.

    Returns
    -------
    case : DerivativeCase
        ``(computed, predicted, case)``; ``predicted`` is the string
        ``'no prediction'`` and ``case`` is 0 outside the three guards.

    """
    if kind not in ("alpha", "beta"):
        raise UsageError("unknown generating polynomial: '{}' (choose from "
                         "alpha, beta)".format(kind))
    check_range("n", n, 1)
    check_range("l", l, 0, _admissible_rows(n) - 1)
    check_range("k", k, 0)
    computed = _closed_form(kind, l, n).derivative(k).evaluate(1)
    falling = math.factorial(n) // math.factorial(n - k) if k <= n else 0
    if k < l:
        return DerivativeCase(computed, falling * 2 ** (n - k), 1)
    if k == l:
        return DerivativeCase(computed,
                              (falling + (-1) ** k * math.factorial(k))
                              * 2 ** (n - k), 2)
    if l == 0 and k < n:
        return DerivativeCase(computed, falling * 2 ** (n - k + 1), 3)
    return DerivativeCase(computed, NO_PREDICTION, 0)


def verify_derivative_cases(n, kind="alpha"):
    """Check :func:`alpha_derivative_case` on every in-guard ``(l, k)``."""
    report = VerificationReport("combi-derivatives")
    for l in range(_admissible_rows(n)):
        for k in range(n + 1):
            case = alpha_derivative_case(n, l, k, kind)
            if case.case:
                report.check("{} n={} l={} k={} case {}".format(
                    kind, n, l, k, case.case), case.predicted, case.computed)
    return report


def surjectivity_witnesses(n, kind="alpha"):
    """Witness vectors spanning the range of :math:`A(n)` (or of
    ``B_rect(2n)`` for ``kind='beta'``).

    :math:`X^k_\\ell = \\frac{(N-k)!}{N!\\, 2^{N-k}}\\,
    \\gamma_\\ell^{(k)}(1)` for every admissible row :math:`\\ell`, where
    :math:`\\gamma` is :math:`\\alpha` with :math:`N = n` or :math:`\\beta`
    with :math:`N = 2n`, and :math:`k` runs over the row indices.

    Returns
    -------
    witnesses : list of tuple of Fraction
        :math:`X^0, X^1, \\dots`

    """
    if kind == "alpha":
        check_range("n", n, 2)
        degree, rows = n, (n + 1) // 2
    else:
        check_range("n", n, 1)
        degree, rows = 2 * n, n
    witnesses = []
    for k in range(rows):
        norm = Fraction(math.factorial(degree - k),
                        math.factorial(degree) * 2 ** (degree - k))
        witnesses.append(tuple(
            norm * _closed_form(kind, l, degree).derivative(k).evaluate(1)
            for l in range(rows)))
    return witnesses


def _witness_preimage(n, k, kind):
    """Exact preimage ``w`` with ``matrix @ w == X^k``."""
    degree = n if kind == "alpha" else 2 * n
    norm = Fraction(math.factorial(degree - k),
                    math.factorial(degree) * 2 ** (degree - k))
    cols = (n + 1) // 2 if kind == "alpha" else n + 1
    shift = 1 if kind == "alpha" else 0
    return tuple(4 * _falling_factorial(2 * m + shift, k) * norm
                 for m in range(cols))


def verify_surjectivity(n, kind="alpha"):
    """Check the witness construction for the surjectivity of :math:`A(n)`
    (``alpha``) or ``B_rect(2n)`` (``beta``).

    Every witness gets an exact preimage, has the documented shape (1 above
    the diagonal index, :math:`1 + (-1)^k / \\binom{N}{k}` on it, 2 in
    component 0) and the witnesses have full rank.
    """
    matrix = build_matrix(A, n) if kind == "alpha" \
        else build_matrix(B_RECT, 2 * n)
    degree = n if kind == "alpha" else 2 * n
    witnesses = surjectivity_witnesses(n, kind)
    report = VerificationReport("combi-surjectivity")
    for k, witness in enumerate(witnesses):
        prefix = "{} n={} X^{}".format(kind, n, k)
        report.check(prefix + " preimage", witness,
                     matrix @ _witness_preimage(n, k, kind))
        # components strictly between 0 and k carry no prediction
        shape = list(witness)
        shape[k] = 1 + Fraction((-1) ** k, binomial(degree, k))
        for l in range(k + 1, len(shape)):
            shape[l] = 1
        shape[0] = 2
        report.check(prefix + " shape", tuple(shape), witness)
    report.check("{} n={} rank".format(kind, n), len(witnesses),
                 rank(ExactMatrix.from_rows(witnesses)))
    return report


def verify_recurrences(n):
    """Check the row-vector relations at degree ``n``, zero-padding vectors
    to a common length:

    1. :math:`a_0(n) = a_\\ell(n) + a_{n-\\ell}(n)`, :math:`0 \\leq \\ell
       \\leq n`;
    2. :math:`a_{\\ell+1}(n+1) = 2(-1)^\\ell \\sum_{j \\leq \\ell} (-1)^j
       a_j(n)` minus :math:`a_0(n)` (:math:`\\ell` even) or plus
       :math:`a_0(n+1)` (:math:`\\ell` odd), :math:`0 \\leq \\ell \\leq n`;
    3. :math:`a_1(n+1) = a_0(n)`;
    4. :math:`a_0(2n) = (-1)^{n+1} 4 a_{n-1}(2n-1) + 4 \\sum_{j \\leq n-2}
       (-1)^j a_j(2n-1)`, minus :math:`2 a_0(2n-1)` when :math:`n` is odd;
    5. :math:`b_\\ell(n) = a_\\ell(n+1) - a_\\ell(n)`, :math:`0 \\leq \\ell
       \\leq n`.

    """
    check_range("n", n, 1)
    length = n + 1

    def a(deg, l):
        return row_vector('a', deg, l, length)

    def combine(*terms):
        return tuple(sum(c * v[m] for c, v in terms) for m in range(length))

    relations = {"symmetry": [], "step": [], "first row": [],
                 "even degree": [], "b difference": []}
    for l in range(n + 1):
        relations["symmetry"].append(
            (l, a(n, 0), combine((1, a(n, l)), (1, a(n, n - l)))))
        terms = [(2 * (-1) ** (l + j), a(n, j)) for j in range(l + 1)]
        terms.append((-1, a(n, 0)) if l % 2 == 0 else (1, a(n + 1, 0)))
        relations["step"].append((l, a(n + 1, l + 1), combine(*terms)))
        relations["b difference"].append(
            (l, row_vector('b', n, l, length),
             combine((1, a(n + 1, l)), (-1, a(n, l)))))
    relations["first row"].append((1, a(n + 1, 1), a(n, 0)))
    odd = 2 * n - 1
    terms = [((-1) ** (n + 1) * 4, row_vector('a', odd, n - 1, length))]
    terms.extend((4 * (-1) ** j, row_vector('a', odd, j, length))
                 for j in range(n - 1))
    if n % 2:
        terms.append((-2, row_vector('a', odd, 0, length)))
    relations["even degree"].append(
        (n, row_vector('a', 2 * n, 0, length), combine(*terms)))

    report = VerificationReport("combi-recur")
    for name, checks in relations.items():
        failing = [(l, lhs, rhs) for l, lhs, rhs in checks if lhs != rhs]
        note = None
        if failing:
            l, lhs, rhs = failing[0]
            note = "first failing l={}: {} != {}".format(l, lhs, rhs)
        report.add("{} n={}".format(name, n), len(checks),
                   len(checks) - len(failing), not failing, note)
    return report


def printed_examples():
    """The four printed example matrices with their cited determinants.

    The ``B_square(10)`` example is printed transposed relative to the
    :math:`(\\ell, m)` indexing.
    """
    return [
        PrintedExample("A(8)", A, 8, ExactMatrix.from_rows(
            [[8, 56, 56, 8], [7, 35, 21, 1], [6, 26, 26, 6],
             [5, 25, 31, 3]]), False, 2 ** 13),
        PrintedExample("A(7)", A, 7, ExactMatrix.from_rows(
            [[7, 35, 21, 1], [6, 20, 6, 0], [5, 15, 11, 1],
             [4, 16, 12, 0]]), False, 2 ** 9),
        PrintedExample("B(10)", B_SQUARE, 10, ExactMatrix.from_rows(
            [[1, 1, 1, 1, 1, 1], [45, 36, 29, 24, 21, 20],
             [210, 126, 98, 98, 106, 110], [210, 84, 98, 112, 106, 100],
             [45, 9, 29, 21, 21, 25], [1, 0, 1, 0, 1, 0]]), True, -2 ** 20),
        PrintedExample("B(9)", B_SQUARE, 9, ExactMatrix.from_rows(
            [[1, 36, 126, 84, 9], [1, 28, 70, 28, 1], [1, 22, 56, 42, 7],
             [1, 18, 60, 46, 3], [1, 16, 66, 40, 5]]), False, 2 ** 16)]


def verify_printed_examples():
    """Compare the printed examples with :func:`build_matrix` entry-wise and
    their determinants (and their transposes') with the cited values."""
    report = VerificationReport("combi-examples")
    for example in printed_examples():
        built = build_matrix(example.family, example.n)
        if example.transposed:
            built = built.transpose()
        report.check("{} entries".format(example.name), example.printed, built)
        report.check("det {}".format(example.name), example.cited_det,
                     det_bareiss(example.printed))
        report.check("det {} transposed".format(example.name),
                     example.cited_det,
                     det_bareiss(example.printed.transpose()))
    return report
