"""Exact multivariate polynomials and functions on round spheres.

A function on the unit sphere :math:`S^{m-1} \\subset \\mathbb{R}^m` is the
restriction of a polynomial in :math:`x_1, \\dots, x_m` with
:class:`~eigenkit.arith.GaussianRational` coefficients. Its canonical
representative is the remainder of division by :math:`\\sum x_i^2 - 1`, i.e.
the polynomial obtained by substituting
:math:`x_1^2 \\leftarrow 1 - \\sum_{i \\geq 2} x_i^2` until :math:`x_1` has
degree at most 1.

On the sphere:

* :math:`\\Delta_S(p) = \\sum_d (\\Delta p_d - d(d+m-2) p_d)` over the
  homogeneous components :math:`p_d` of :math:`p`;
* :math:`\\kappa_S(p, q) = \\langle \\nabla p, \\nabla q \\rangle - (Ep)(Eq)`
  where :math:`E = \\sum x_i \\partial_i` is the Euler operator;
* integrals use the normalized round measure (total mass 1), for which
  :math:`\\int x^\\alpha = \\prod (\\alpha_i - 1)!! / (m(m+2)\\cdots(m+|\\alpha|-2))`
  when every exponent is even and 0 otherwise.

Complex coordinates are :math:`z_j = x_{2j-1} + i x_{2j}`.

"""
import logging
from fractions import Fraction
from functools import lru_cache
from logging import NullHandler

from eigenkit.arith import GaussianRational
from eigenkit.utils import UsageError, check_range

logger = logging.getLogger(__name__)
logger.addHandler(NullHandler())

EXAMPLE_KINDS = ("coordinates", "s7")
# (lambda, mu) cited for the S7 family next to the value the restriction rule
# gives for a harmonic cubic on R^8
S7_CITED = (-15, -9)
S7_EXPECTED = (-27, -9)

I = GaussianRational(0, 1)


def _add_exponents(e1, e2):
    return tuple(a + b for a, b in zip(e1, e2))


def _monomial_str(exponent):
    factors = []
    for i, e in enumerate(exponent):
        if e == 1:
            factors.append("x{}".format(i + 1))
        elif e > 1:
            factors.append("x{}^{}".format(i + 1, e))
    return "*".join(factors)


class MultiPoly:
    """Sparse polynomial in ``nvars`` real variables over the Gaussian
    rationals.

    Parameters
    ----------
    nvars : int
        Number of variables.
    terms : dict, optional
        Map from exponent tuples (length ``nvars``) to coefficients. Zero
        coefficients are dropped.

    Raises
    ------
    UsageError
        Raised if an exponent tuple has the wrong length or a negative entry.

    """
    __slots__ = ('nvars', 'terms')

    def __init__(self, nvars, terms=None):
        clean = {}
        for exponent, coeff in (terms or {}).items():
            exponent = tuple(exponent)
            if len(exponent) != nvars or min(exponent, default=0) < 0:
                raise UsageError("bad exponent {} for {} variables".format(
                    exponent, nvars))
            coeff = GaussianRational(coeff) + clean.get(exponent, 0)
            if coeff:
                clean[exponent] = coeff
            else:
                clean.pop(exponent, None)
        self.nvars = nvars
        self.terms = clean

    @classmethod
    def constant(cls, nvars, value=1):
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars, index):
        """The coordinate :math:`x_{index+1}` (``index`` is 0-based)."""
        check_range("variable index", index, 0, nvars - 1)
        exponent = [0] * nvars
        exponent[index] = 1
        return cls(nvars, {tuple(exponent): 1})

    @classmethod
    def norm_squared(cls, nvars):
        """:math:`\\sum x_i^2`."""
        return cls(nvars, {tuple(2 if j == i else 0 for j in range(nvars)): 1
                           for i in range(nvars)})

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise UsageError("polynomials in {} and {} variables".format(
                    self.nvars, other.nvars))
            return other
        scalar = GaussianRational.coerce(other)
        if scalar is NotImplemented:
            return scalar
        return MultiPoly.constant(self.nvars, scalar)

    @property
    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def leading_exponent(self):
        """Largest exponent in graded-lex order, :obj:`None` for zero."""
        return max(self.terms, key=lambda e: (sum(e), e), default=None)

    def coefficient(self, exponent):
        return self.terms.get(tuple(exponent), GaussianRational(0))

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_components(self):
        """Map from degree to the homogeneous component of that degree."""
        components = {}
        for exponent, coeff in self.terms.items():
            components.setdefault(sum(exponent), {})[exponent] = coeff
        return {d: MultiPoly(self.nvars, t)
                for d, t in sorted(components.items())}

    def conjugate(self):
        return MultiPoly(self.nvars, {e: c.conjugate()
                                      for e, c in self.terms.items()})

    def derivative(self, index):
        terms = {}
        for exponent, coeff in self.terms.items():
            e = exponent[index]
            if e:
                lowered = list(exponent)
                lowered[index] = e - 1
                terms[tuple(lowered)] = coeff * e
        return MultiPoly(self.nvars, terms)

    def gradient(self):
        return [self.derivative(i) for i in range(self.nvars)]

    def laplacian(self):
        """Ambient Laplacian :math:`\\sum \\partial_i^2`."""
        terms = {}
        for exponent, coeff in self.terms.items():
            for i, e in enumerate(exponent):
                if e >= 2:
                    lowered = list(exponent)
                    lowered[i] = e - 2
                    lowered = tuple(lowered)
                    terms[lowered] = terms.get(lowered, 0) + coeff * e * (e - 1)
        return MultiPoly(self.nvars, terms)

    def gradient_pairing(self, other):
        """Ambient :math:`\\langle \\nabla p, \\nabla q \\rangle`,
        complex bilinear."""
        other = self._coerce(other)
        total = MultiPoly(self.nvars)
        for dp, dq in zip(self.gradient(), other.gradient()):
            if dp and dq:
                total = total + dp * dq
        return total

    def euler(self):
        """Euler operator :math:`E p = \\sum x_i \\partial_i p`."""
        return MultiPoly(self.nvars, {e: c * sum(e)
                                      for e, c in self.terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for exponent, coeff in other.terms.items():
            terms[exponent] = terms.get(exponent, 0) + coeff
        return MultiPoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exponent = _add_exponents(e1, e2)
                terms[exponent] = terms.get(exponent, 0) + c1 * c2
        return MultiPoly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = MultiPoly.constant(self.nvars)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return "MultiPoly({}, '{}')".format(self.nvars, self)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exponent in sorted(self.terms, key=lambda e: (sum(e), e),
                               reverse=True):
            coeff = self.terms[exponent]
            monomial = _monomial_str(exponent)
            if not monomial:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(monomial)
            elif coeff.is_real() or coeff.re == 0:
                parts.append("{}*{}".format(coeff, monomial))
            else:
                parts.append("({})*{}".format(coeff, monomial))
        return " + ".join(parts)


def complex_coordinate(m, j, conjugate=False):
    """:math:`z_j = x_{2j-1} + i x_{2j}` (or its conjugate) in ``m`` real
    variables; ``j`` is 1-based."""
    check_range("j", j, 1, m // 2)
    real = MultiPoly.variable(m, 2 * j - 2)
    imag = MultiPoly.variable(m, 2 * j - 1)
    return real - I * imag if conjugate else real + I * imag


@lru_cache(maxsize=None)
def _one_minus_tail_power(m, k):
    """:math:`(1 - \\sum_{i \\geq 2} x_i^2)^k` in ``m`` variables."""
    if k == 0:
        return MultiPoly.constant(m)
    base = MultiPoly.constant(m) - (MultiPoly.norm_squared(m)
                                    - MultiPoly.variable(m, 0) ** 2)
    return _one_minus_tail_power(m, k - 1) * base


def _check_sphere_dimension(m):
    if m < 2:
        raise UsageError("the sphere ideal needs m >= 2 variables: {}".format(m))


def reduce_mod_sphere(p):
    """Normal form of ``p`` modulo :math:`\\sum x_i^2 - 1`.

    Parameters
    ----------
    p : MultiPoly
        Polynomial in ``m >= 2`` variables.

    Returns
    -------
    f : SphereFunction
        The restriction of ``p`` to the sphere, in normal form.

    Raises
    ------
    UsageError
        Raised if ``p`` has fewer than two variables.

    """
    m = p.nvars
    _check_sphere_dimension(m)
    terms = {}
    for exponent, coeff in p.terms.items():
        e1 = exponent[0]
        if e1 < 2:
            terms[exponent] = terms.get(exponent, 0) + coeff
            continue
        rest = (e1 % 2,) + exponent[1:]
        for e, c in _one_minus_tail_power(m, e1 // 2).terms.items():
            key = _add_exponents(rest, e)
            terms[key] = terms.get(key, 0) + coeff * c
    return SphereFunction(MultiPoly(m, terms), _reduced=True)


@lru_cache(maxsize=4096)
def _monomial_integral(exponent):
    if any(e % 2 for e in exponent):
        return Fraction(0)
    m = len(exponent)
    numerator = 1
    for e in exponent:
        for j in range(e - 1, 0, -2):
            numerator *= j
    denominator = 1
    for j in range(sum(exponent) // 2):
        denominator *= m + 2 * j
    return Fraction(numerator, denominator)


class SphereFunction:
    """Function on :math:`S^{m-1}` held as its normal form.

    Two SphereFunctions are equal iff their normal forms are identical.

    Parameters
    ----------
    poly : MultiPoly
        Any representative; it is reduced unless ``_reduced`` is set.

    """
    __slots__ = ('normal_form',)

    def __init__(self, poly, _reduced=False):
        if not _reduced:
            poly = reduce_mod_sphere(poly).normal_form
        self.normal_form = poly

    @classmethod
    def constant(cls, m, value=1):
        _check_sphere_dimension(m)
        return cls(MultiPoly.constant(m, value), _reduced=True)

    @property
    def m(self):
        """Number of ambient variables."""
        return self.normal_form.nvars

    def coefficients(self):
        return self.normal_form.terms

    def leading_key(self):
        return self.normal_form.leading_exponent()

    def _coerce(self, other):
        if isinstance(other, SphereFunction):
            if other.m != self.m:
                raise UsageError("functions on S^{} and S^{}".format(
                    self.m - 1, other.m - 1))
            return other.normal_form
        if isinstance(other, MultiPoly):
            return other
        return self.normal_form._coerce(other)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return SphereFunction(self.normal_form + other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return SphereFunction(self.normal_form - other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return SphereFunction(other - self.normal_form)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return SphereFunction(self.normal_form * other)

    __rmul__ = __mul__

    def __neg__(self):
        return SphereFunction(-self.normal_form, _reduced=True)

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = SphereFunction.constant(self.m)
        for _ in range(exponent):
            result = result * self
        return result

    def __bool__(self):
        return bool(self.normal_form)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.normal_form == reduce_mod_sphere(other).normal_form

    def __hash__(self):
        return hash(self.normal_form)

    def conjugate(self):
        return SphereFunction(self.normal_form.conjugate(), _reduced=True)

    def real_part(self):
        """:math:`(f + \\bar f)/2`, a real-valued function."""
        return (self + self.conjugate()) / 2

    def imag_part(self):
        """:math:`(f - \\bar f)/(2i)`, a real-valued function."""
        return (self - self.conjugate()) / (2 * I)

    def __truediv__(self, scalar):
        scalar = GaussianRational.coerce(scalar)
        if scalar is NotImplemented:
            return scalar
        return self * (1 / scalar)

    def laplacian(self):
        return sphere_laplacian(self)

    def kappa(self, other):
        return sphere_kappa(self, other)

    def integrate(self):
        return sphere_integrate(self)

    def __repr__(self):
        return "SphereFunction(m={}, '{}')".format(self.m, self.normal_form)

    def __str__(self):
        return str(self.normal_form)


def sphere_laplacian(f):
    """Laplace-Beltrami operator of :math:`S^{m-1}`, applied per homogeneous
    component: :math:`\\Delta_S p_d = \\Delta p_d - d(d+m-2) p_d`."""
    m = f.m
    total = MultiPoly(m)
    for d, component in f.normal_form.homogeneous_components().items():
        total = total + component.laplacian() - component * (d * (d + m - 2))
    return reduce_mod_sphere(total)


def sphere_kappa(f, g):
    """Conformality operator :math:`\\kappa_S(f, g)`, complex bilinear."""
    p = f.normal_form
    q = g.normal_form if isinstance(g, SphereFunction) else f._coerce(g)
    return reduce_mod_sphere(p.gradient_pairing(q) - p.euler() * q.euler())


def sphere_integrate(f):
    """Integral against the normalized round measure (total mass 1).

    Returns
    -------
    value : GaussianRational
        Exact integral.

    """
    total = GaussianRational(0)
    for exponent, coeff in f.normal_form.terms.items():
        weight = _monomial_integral(exponent)
        if weight:
            total = total + coeff * weight
    return total


def make_example(kind, params):
    """Build a built-in sphere family.

    Parameters
    ----------
    kind : str, {'coordinates', 's7'}
        ``coordinates``: :math:`\\{z_1, \\dots, z_n\\}` on :math:`S^{2n-1}`,
        ``params`` is ``n >= 2``. ``s7``: the function
        :math:`a(z^2w + zu\\bar v) + b(zu\\bar w - z^2 v) + c(u^2\\bar v + zuw)
        + d(u^2\\bar w - zuv)` on :math:`S^7` with :math:`(z, u, w, v) = (z_1,
        z_2, z_3, z_4)`, ``params`` is ``(a, b, c, d)``.

    Returns
    -------
    family : list of SphereFunction
        The family; an ``s7`` function that vanishes gives an empty family.

    Raises
    ------
    UsageError
        Raised if ``kind`` or ``params`` is invalid.

    """
    if kind == "coordinates":
        n = check_range("n", int(params), 2)
        return [SphereFunction(complex_coordinate(2 * n, j))
                for j in range(1, n + 1)]
    if kind == "s7":
        if len(params) != 4:
            raise UsageError("s7 needs four parameters (a, b, c, d): "
                             "{}".format(params))
        a, b, c, d = (GaussianRational(x) for x in params)
        z, u, w, v = (complex_coordinate(8, j) for j in range(1, 5))
        w_bar = complex_coordinate(8, 3, conjugate=True)
        v_bar = complex_coordinate(8, 4, conjugate=True)
        phi = (a * (z * z * w + z * u * v_bar)
               + b * (z * u * w_bar - z * z * v)
               + c * (u * u * v_bar + z * u * w)
               + d * (u * u * w_bar - z * u * v))
        phi = SphereFunction(phi)
        return [phi] if phi else []
    raise UsageError("unknown example: '{}' (choose from {})".format(
        kind, ", ".join(EXAMPLE_KINDS)))


def _random_coefficient(rng):
    re = rng.randint(-3, 3)
    im = rng.randint(-3, 3)
    return GaussianRational(re, im) / rng.choice((1, 2))


def random_multipoly(rng, m, max_degree, nterms):
    """Seeded random polynomial with at most ``nterms`` terms.

    Parameters
    ----------
    rng : random.Random
        Seeded generator.
    m : int
        Number of variables.
    max_degree : int
        Upper bound on the total degree.
    nterms : int
        Number of random terms drawn (terms may merge or cancel).

    """
    terms = {}
    for _ in range(nterms):
        degree = rng.randint(0, max_degree)
        exponent = [0] * m
        for _ in range(degree):
            exponent[rng.randrange(m)] += 1
        terms[tuple(exponent)] = terms.get(tuple(exponent), 0) \
            + _random_coefficient(rng)
    return MultiPoly(m, terms)


def random_harmonic(rng, m, degree, nterms=3):
    """Seeded random homogeneous harmonic polynomial of degree ``degree``.

    It is a sum of multiples of :math:`(x_i + \\sqrt{-1} x_j)^d` and
    :math:`(x_i - \\sqrt{-1} x_j)^d`, powers of isotropic linear forms, which
    are harmonic. ``m >= 2``.
    """
    _check_sphere_dimension(m)
    total = MultiPoly(m)
    for _ in range(nterms):
        i, j = rng.sample(range(m), 2)
        sign = rng.choice((1, -1))
        form = MultiPoly.variable(m, i) + I * sign * MultiPoly.variable(m, j)
        total = total + form ** degree * _random_coefficient(rng)
    return total
