"""Geometry-independent verification of eigenfunctions and eigenfamilies.

Every check here works over any :class:`FunctionAlgebra`, i.e. over
:class:`~eigenkit.poly.SphereFunction` (functions on round spheres) and
:class:`~eigenkit.torus.TrigPoly` (trigonometric polynomials on flat tori).
A function :math:`f` is a :math:`(\\lambda, \\mu)`-eigenfunction if

.. math::

    \\Delta f = \\lambda f, \\qquad \\kappa(f, f) = \\mu f^2

and a family is a :math:`(\\lambda, \\mu)`-eigenfamily if moreover
:math:`\\kappa(\\varphi, \\psi) = \\mu \\varphi \\psi` for every pair of its
members. Both carriers are integral domains, so :math:`\\lambda` and
:math:`\\mu` are read off a leading coefficient and then checked on the whole
function; nothing is ever solved numerically.

"""
import abc
import itertools
import logging
from collections import namedtuple
from logging import NullHandler

from eigenkit.arith import (GaussianRational, PiScalar, binomial,
                            exact_quotient, real_sign)
from eigenkit.poly import MultiPoly, SphereFunction, reduce_mod_sphere
from eigenkit.report import VerificationReport
from eigenkit.torus import TrigPoly, dual_lattice, norm_shell
from eigenkit.utils import UsageError, check_range

logger = logging.getLogger(__name__)
logger.addHandler(NullHandler())

EigenResult = namedtuple("EigenResult", "is_eigen lambda_ mu residuals")
EigenResult.__doc__ = """Outcome of :func:`check_eigenfunction`.

``residuals`` is the pair :math:`(\\Delta f - \\lambda f,
\\kappa(f, f) - \\mu f^2)`; ``lambda_`` or ``mu`` is :obj:`None` when no
scalar matches the leading coefficient.
"""
ConeParams = namedtuple("ConeParams", "m lambda_ mu s d conical")
PrintedConeParams = namedtuple("PrintedConeParams", "s d_squared round_trip")


class FunctionAlgebra(abc.ABC):
    """Exact function algebra carrying the triple :math:`(\\Delta, \\kappa,
    \\int)`.

    Implementations provide exact equality, ring operations with scalars, a
    zero test (``bool``) and the methods below. The carriers are integral
    domains and satisfy

    .. math::

        \\Delta(\\varphi\\psi) = \\Delta(\\varphi)\\psi
        + 2\\kappa(\\varphi, \\psi) + \\varphi\\Delta(\\psi),
        \\qquad \\int \\Delta f = 0.

    """

    @abc.abstractmethod
    def laplacian(self):
        pass

    @abc.abstractmethod
    def kappa(self, other):
        pass

    @abc.abstractmethod
    def integrate(self):
        pass

    @abc.abstractmethod
    def conjugate(self):
        pass

    @abc.abstractmethod
    def real_part(self):
        pass

    @abc.abstractmethod
    def imag_part(self):
        pass

    @abc.abstractmethod
    def coefficients(self):
        """Map from basis keys (exponents, characters) to scalars."""

    @abc.abstractmethod
    def leading_key(self):
        """Key of the leading coefficient; :obj:`None` for zero."""


FunctionAlgebra.register(SphereFunction)
FunctionAlgebra.register(TrigPoly)


def _check_carrier(f):
    if not isinstance(f, FunctionAlgebra):
        raise UsageError("not a function of a registered algebra: "
                         "{!r}".format(f))


def _proportionality(lhs, rhs):
    """Scalar ``c`` with ``lhs == c*rhs`` read off the leading term of
    ``rhs`` (nonzero), and the residual ``lhs - c*rhs``.

    ``c`` is :obj:`None` when the leading coefficients have no exact quotient;
    the residual is then ``lhs`` itself.
    """
    key = rhs.leading_key()
    scalar = exact_quotient(lhs.coefficients().get(key, 0),
                            rhs.coefficients()[key])
    if scalar is None:
        return None, lhs
    return scalar, lhs - scalar * rhs


def check_eigenfunction(f):
    """Decide whether ``f`` is a :math:`(\\lambda, \\mu)`-eigenfunction.

    Parameters
    ----------
    f : FunctionAlgebra
        Nonzero function.

    Returns
    -------
    result : EigenResult
        ``is_eigen`` is :obj:`True` iff both residuals vanish.

    Raises
    ------
    UsageError
        Raised if ``f`` is zero.

    """
    _check_carrier(f)
    if not f:
        raise UsageError("eigen property of the zero function is undefined")
    lambda_, laplace_residual = _proportionality(f.laplacian(), f)
    mu, kappa_residual = _proportionality(f.kappa(f), f * f)
    is_eigen = lambda_ is not None and mu is not None \
        and not laplace_residual and not kappa_residual
    return EigenResult(is_eigen, lambda_, mu,
                       (laplace_residual, kappa_residual))


def check_eigenfamily(family, task="eigenfamily"):
    """Check that ``family`` is a :math:`(\\lambda, \\mu)`-eigenfamily.

    Every member is checked with :func:`check_eigenfunction` against the
    scalars of the first member, then every pair of distinct members against
    :math:`\\kappa(\\varphi_i, \\varphi_j) = \\mu \\varphi_i \\varphi_j`
    (:math:`\\kappa` is symmetric, so unordered pairs cover the ordered ones).

    Parameters
    ----------
    family : list of FunctionAlgebra
        The members.
    task : str, optional
        Name of the returned report.

    Returns
    -------
    report : VerificationReport
        One item per member and one per pair; failing pairs carry their
        residual as the computed value.

    Raises
    ------
    UsageError
        Raised if the family is empty or has a zero member.

    """
    if not family:
        raise UsageError("empty family")
    results = []
    for i, f in enumerate(family):
        _check_carrier(f)
        if not f:
            raise UsageError("member {} of the family is zero".format(i))
        results.append(check_eigenfunction(f))
    lambda_, mu = results[0].lambda_, results[0].mu
    report = VerificationReport(task)
    for i, result in enumerate(results):
        report.add("member {} (lambda, mu)".format(i), (lambda_, mu),
                   (result.lambda_, result.mu),
                   result.is_eigen and result.lambda_ == lambda_
                   and result.mu == mu)
    logger.debug("checking {} pairs of a family of {}".format(
        len(family) * (len(family) - 1) // 2, len(family)))
    for i, j in itertools.combinations(range(len(family)), 2):
        if mu is None:
            report.add("pair ({}, {}) kappa residual".format(i, j), 0, None,
                       False, "no common mu")
            continue
        residual = family[i].kappa(family[j]) - mu * (family[i] * family[j])
        report.add("pair ({}, {}) kappa residual".format(i, j), 0, residual,
                   not residual)
    return report


def power_eigenvalue(d, lambda_, mu):
    """Laplace eigenvalue :math:`d^2\\mu + d(\\lambda - \\mu)` of :math:`f^d`
    for a :math:`(\\lambda, \\mu)`-eigenfunction :math:`f`, ``d >= 1``."""
    check_range("d", d, 1)
    return d * d * mu + d * (lambda_ - mu)


def check_power_closure(f, d_max):
    """Check that :math:`f^d` is a :math:`(d^2\\mu + d(\\lambda - \\mu),
    d^2\\mu)`-eigenfunction for :math:`1 \\leq d \\leq` ``d_max``.

    Returns
    -------
    report : VerificationReport

    """
    check_range("d_max", d_max, 1)
    report = VerificationReport("power-closure")
    base = check_eigenfunction(f)
    report.add("f (lambda, mu)", "eigen", (base.lambda_, base.mu),
               base.is_eigen)
    if not base.is_eigen:
        return report
    power = f
    for d in range(1, d_max + 1):
        if d > 1:
            power = power * f
        result = check_eigenfunction(power)
        expected = (power_eigenvalue(d, base.lambda_, base.mu),
                    d * d * base.mu)
        report.add("d={} (lambda_d, mu_d)".format(d), expected,
                   (result.lambda_, result.mu),
                   result.is_eigen and (result.lambda_, result.mu) == expected)
    return report


def check_lambda_mu_order(result):
    """Whether :math:`\\lambda \\leq \\mu < 0`, with :math:`\\Pi > 0`.

    Parameters
    ----------
    result : EigenResult

    Returns
    -------
    flag : bool or None
        :obj:`None` when a scalar is not real (the check does not apply).

    """
    if result.lambda_ is None or result.mu is None:
        return None
    mu_sign = real_sign(result.mu)
    gap_sign = real_sign(result.mu - result.lambda_)
    if mu_sign is None or gap_sign is None:
        return None
    return mu_sign < 0 and gap_sign >= 0


def check_spectrum_condition(lambda_, mu, lattice, d_max):
    """Check that :math:`d^2\\mu + d(\\lambda - \\mu)` lies in the Laplace
    spectrum of the flat torus :math:`\\mathbb{R}^n/\\Gamma` for
    :math:`1 \\leq d \\leq` ``d_max``.

    The eigenvalue must be :math:`-\\Pi q` with :math:`q` the squared norm of
    some vector of :math:`\\Gamma^*`.

    Parameters
    ----------
    lambda_, mu : PiScalar
        The pair, usually rational multiples of :math:`\\Pi`.
    lattice : Lattice
        :math:`\\Gamma`.
    d_max : int
        Largest power checked.

    Returns
    -------
    report : VerificationReport

    """
    check_range("d_max", d_max, 1)
    report = VerificationReport("torus-spectrum")
    dual = dual_lattice(lattice)
    for d in range(1, d_max + 1):
        eigenvalue = power_eigenvalue(d, PiScalar.coerce(lambda_),
                                      PiScalar.coerce(mu))
        q = exact_quotient(eigenvalue, PiScalar.pi2(-1))
        check_id = "d={} eigenvalue {} in spectrum".format(d, eigenvalue)
        if q is None or q.degree > 0 or not q.coefficient(0).is_real() \
                or q.coefficient(0).re < 0:
            report.add(check_id, True, False, False,
                       "not a nonnegative rational multiple of -PI2")
            continue
        q = q.coefficient(0).re
        shell = norm_shell(dual, q)
        report.add(check_id, True, bool(shell), bool(shell),
                   "q={}, {} dual vectors".format(q, len(shell)))
    return report


def _power_table(f, n):
    powers = [f ** 0]
    for _ in range(n):
        powers.append(powers[-1] * f)
    return powers


def check_l2_powers(f, n_max):
    """Exact :math:`L^2` relations between the powers of the real part
    :math:`f_1` and the imaginary part :math:`f_2` of an eigenfunction.

    Checked items:

    * ``part 1``: :math:`\\int f_1^a f_2^b = 0` for :math:`a + b \\leq`
      ``n_max``, :math:`a, b` not both even;
    * ``part 2``: :math:`\\binom{2a+2b}{2a} \\int f_1^{2a} f_2^{2b} =
      \\binom{a+b}{a} \\int f_1^{2a+2b}` for :math:`2a + 2b \\leq` ``n_max``;
    * ``orth``: :math:`\\int f_1 f_2 = 0` and
      :math:`\\int f_1^2 = \\int f_2^2`;
    * ``re-im``: :math:`\\int \\mathrm{Re}(f^a)\\mathrm{Im}(f^b) = 0` and, for
      :math:`a \\neq b`, :math:`\\int \\mathrm{Re}(f^a)\\mathrm{Re}(f^b) =
      \\int \\mathrm{Im}(f^a)\\mathrm{Im}(f^b) = 0` for
      :math:`a, b \\leq` ``n_max // 2``.

    Parameters
    ----------
    f : FunctionAlgebra
        An eigenfunction; the check fails if it is not one.
    n_max : int
        Largest total degree of the integrated products.

    Returns
    -------
    report : VerificationReport

    """
    check_range("n_max", n_max, 2)
    report = VerificationReport("l2-powers")
    result = check_eigenfunction(f)
    report.add("f (lambda, mu)", "eigen", (result.lambda_, result.mu),
               result.is_eigen)
    f1, f2 = f.real_part(), f.imag_part()
    pow1, pow2 = _power_table(f1, n_max), _power_table(f2, n_max)
    integrals = {}

    def integral(a, b):
        if (a, b) not in integrals:
            integrals[a, b] = (pow1[a] * pow2[b]).integrate()
        return integrals[a, b]

    for total in range(1, n_max + 1):
        for a in range(total + 1):
            b = total - a
            if a % 2 == 0 and b % 2 == 0:
                continue
            report.check("part 1 int f1^{} f2^{}".format(a, b), 0,
                         integral(a, b))
    for total in range(n_max // 2 + 1):
        for a in range(total + 1):
            b = total - a
            report.check("part 2 a={} b={}".format(a, b),
                         binomial(a + b, a) * integral(2 * a + 2 * b, 0),
                         binomial(2 * a + 2 * b, 2 * a) * integral(2 * a,
                                                                   2 * b))
    report.check("orth int f1 f2", 0, integral(1, 1))
    report.check("orth int f1^2 = int f2^2", integral(2, 0), integral(0, 2))

    bound = n_max // 2
    powers = _power_table(f, bound)
    re_parts = [p.real_part() for p in powers]
    im_parts = [p.imag_part() for p in powers]
    for a in range(bound + 1):
        for b in range(bound + 1):
            report.check("re-im int Re(f^{0}) Im(f^{1})".format(a, b), 0,
                         (re_parts[a] * im_parts[b]).integrate())
            if a < b:
                report.check(
                    "re-im int Re(f^{0}) Re(f^{1}), Im(f^{0}) Im(f^{1})"
                    .format(a, b), (0, 0),
                    ((re_parts[a] * re_parts[b]).integrate(),
                     (im_parts[a] * im_parts[b]).integrate()))
    logger.debug("l2 powers up to degree {}: {} items".format(
        n_max, len(report.items)))
    return report


def exponent_tuples(k, max_degree):
    """Exponent tuples ``((a_1, b_1), ..., (a_k, b_k))`` of total degree at
    most ``max_degree``, sorted by total degree then lexicographically."""
    check_range("k", k, 1)
    check_range("max_degree", max_degree, 0)
    flat = [t for t in itertools.product(range(max_degree + 1), repeat=2 * k)
            if sum(t) <= max_degree]
    flat.sort(key=lambda t: (sum(t), t))
    return [tuple(zip(t[::2], t[1::2])) for t in flat]


def check_l2_family(family, tuples):
    """Sign-swap and odd-degree vanishing relations of an eigenfamily.

    With members :math:`g_j + i h_j`, for every tuple
    :math:`((a_1, b_1), \\dots)` checks

    .. math::

        \\int \\prod_j g_j^{a_j} h_j^{b_j}
        = (-1)^{\\sum_j b_j} \\int \\prod_j g_j^{b_j} h_j^{a_j}

    and that the integral vanishes when :math:`\\sum_j (a_j + b_j)` is odd.

    Parameters
    ----------
    family : list of FunctionAlgebra
        Members of a verified eigenfamily.
    tuples : list
        Exponent tuples, one ``(a_j, b_j)`` per member, e.g. from
        :func:`exponent_tuples`.

    Returns
    -------
    report : VerificationReport

    """
    if not family:
        raise UsageError("empty family")
    report = VerificationReport("l2-family")
    parts = {"re": [f.real_part() for f in family],
             "im": [f.imag_part() for f in family]}
    cache = {}

    def power(kind, j, e):
        if (kind, j, e) not in cache:
            cache[kind, j, e] = parts[kind][j] ** e
        return cache[kind, j, e]

    def integral(exponents):
        product = None
        for j, (a, b) in enumerate(exponents):
            factor = power("re", j, a) * power("im", j, b)
            product = factor if product is None else product * factor
        return product.integrate()

    for exponents in tuples:
        if len(exponents) != len(family):
            raise UsageError("exponent tuple {} for a family of {}".format(
                exponents, len(family)))
        lhs = integral(exponents)
        swapped = integral([(b, a) for a, b in exponents])
        sign = (-1) ** sum(b for _, b in exponents)
        label = " ".join("({},{})".format(a, b) for a, b in exponents)
        report.check("sign swap {}".format(label), sign * swapped, lhs)
        if sum(a + b for a, b in exponents) % 2:
            report.check("odd vanishing {}".format(label), 0, lhs)
    return report


def _scalar(value):
    if isinstance(value, PiScalar):
        return value
    scalar = GaussianRational.coerce(value)
    if scalar is NotImplemented:
        raise UsageError("not an exact scalar: {!r}".format(value))
    return scalar


def cone_parameters(lambda_, mu, m):
    """Slope and degree of the cone construction realizing a conical pair.

    A pair is conical if :math:`\\lambda \\neq \\mu` and
    :math:`-\\mu/(\\mu - \\lambda)^2 > 0`. For a conical pair on an
    ``m``-dimensional :math:`M` this returns

    .. math::

        d = \\frac{\\mu (m - 1)}{\\lambda - \\mu}, \\qquad s = -\\frac{d^2}{\\mu}

    which satisfy :math:`(-d(m+d-1)/s, -d^2/s) = (\\lambda, \\mu)` exactly.
    :func:`printed_cone_parameters` gives the alternative closed forms.

    Returns
    -------
    params : ConeParams
        ``s`` and ``d`` are :obj:`None` when the pair is not conical.

    """
    check_range("m", m, 1)
    lambda_, mu = _scalar(lambda_), _scalar(mu)
    not_conical = ConeParams(m, lambda_, mu, None, None, False)
    if lambda_ == mu:
        return not_conical
    test = exact_quotient(-mu, (mu - lambda_) ** 2)
    if test is None or real_sign(test) != 1:
        return not_conical
    d = exact_quotient(mu * (m - 1), lambda_ - mu)
    s = None if d is None else exact_quotient(-(d * d), mu)
    if s is None or not s:
        return not_conical
    return ConeParams(m, lambda_, mu, s, d, True)


def cone_round_trip(params):
    """:math:`(-d(m+d-1)/s, -d^2/s)` of conical parameters."""
    m, s, d = params.m, params.s, params.d
    return (exact_quotient(-d * (m + d - 1), s), exact_quotient(-(d * d), s))


def printed_cone_parameters(lambda_, mu, m):
    """The closed forms :math:`s = -\\mu(m-1)/(\\lambda-\\mu)^2` and
    :math:`d^2 = \\mu^2(m-1)/(\\lambda-\\mu)^2`, and whether they satisfy the
    round-trip identity.

    The round trip holds iff :math:`-d^2/s = \\mu` and
    :math:`R = (-\\lambda s - d^2)/(m-1)` is a square root of :math:`d^2`
    whose sign is the sign of :math:`\\mu/(\\lambda - \\mu)`, i.e. the
    printed :math:`d`.

    Returns
    -------
    params : PrintedConeParams or None
        :obj:`None` for :math:`\\lambda = \\mu` or ``m < 2``.

    """
    lambda_, mu = _scalar(lambda_), _scalar(mu)
    if lambda_ == mu or m < 2:
        return None
    gap2 = (lambda_ - mu) ** 2
    s = exact_quotient(-mu * (m - 1), gap2)
    d_squared = exact_quotient(mu * mu * (m - 1), gap2)
    if not s:
        return PrintedConeParams(s, d_squared, False)
    root = exact_quotient(-lambda_ * s - d_squared, m - 1)
    round_trip = exact_quotient(-d_squared, s) == mu \
        and root * root == d_squared \
        and real_sign(root) == real_sign(exact_quotient(mu, lambda_ - mu))
    return PrintedConeParams(s, d_squared, bool(round_trip))


def radial_sphere_laplacian(p):
    """:math:`\\Delta_S(p|_S)` from the polar splitting of the Euclidean
    Laplacian, for any ambient representative ``p``:

    .. math::

        \\Delta_S(p|_S) = \\left(\\Delta p - E^2 p - (m-2) E p\\right)|_S,

    where :math:`E` is the Euler operator :math:`r\\partial_r`. Unlike
    :func:`~eigenkit.poly.sphere_laplacian` it needs no homogeneous
    decomposition, so it can be applied to a representative of any degree.
    """
    radial = p.euler()
    return reduce_mod_sphere(p.laplacian() - radial.euler()
                             - radial * (p.nvars - 2))


def check_cone_lemma(p, q=None):
    """Check the cone formulas on Euclidean space viewed as the cone over
    :math:`S^{m-1}`.

    For ``p`` homogeneous of degree :math:`d` (and ``q`` of degree :math:`e`,
    default ``p``) in :math:`m` variables, checks on :math:`S^{m-1}`:

    .. math::

        (\\Delta p)|_S = \\Delta_S(p|_S) + d(d+m-2)\\, p|_S, \\qquad
        \\langle \\nabla p, \\nabla q \\rangle|_S = \\kappa_S(p|_S, q|_S)
        + de\\, p|_S q|_S.

    The sphere operators are cross-checked against Euclidean computations:
    :math:`\\Delta_S` against :func:`radial_sphere_laplacian` of the degree
    :math:`d+2` representative :math:`|x|^2 p`, and :math:`\\kappa_S` against
    the polarization :math:`2\\kappa_S(f, g) = \\Delta_S(fg) - f\\Delta_S g
    - g\\Delta_S f` with every Laplacian taken radially on ambient products.

    Raises
    ------
    UsageError
        Raised if ``p`` or ``q`` is not homogeneous, or ``m < 2``.

    """
    q = p if q is None else q
    for poly in (p, q):
        if not isinstance(poly, MultiPoly) or not poly.is_homogeneous():
            raise UsageError("the cone lemma needs homogeneous polynomials: "
                             "{}".format(poly))
    m = p.nvars
    d, e = max(p.degree, 0), max(q.degree, 0)
    report = VerificationReport("cone-lemma")
    f, g = SphereFunction(p), SphereFunction(q)
    lap_f = f.laplacian()
    kappa_fg = f.kappa(g)
    report.check("laplacian degree {} in {} variables".format(d, m),
                 reduce_mod_sphere(p.laplacian()),
                 lap_f + f * (d * (d + m - 2)))
    report.check("laplacian degree {} in {} variables, radial".format(d, m),
                 radial_sphere_laplacian(p * MultiPoly.norm_squared(m)),
                 lap_f)
    report.check("kappa degrees ({}, {}) in {} variables".format(d, e, m),
                 reduce_mod_sphere(p.gradient_pairing(q)),
                 kappa_fg + f * g * (d * e))
    polarized = (radial_sphere_laplacian(p * q)
                 - f * radial_sphere_laplacian(q)
                 - g * radial_sphere_laplacian(p)) / 2
    report.check("kappa degrees ({}, {}) in {} variables, polarized".format(
        d, e, m), polarized, kappa_fg)
    return report


def check_cone_correspondence(polys, m):
    """Check that homogeneous degree-:math:`d` polynomials forming a
    :math:`(0, 0)`-family on :math:`\\mathbb{R}^m` restrict to a
    :math:`(-d(d+m-2), -d^2)`-family on :math:`S^{m-1}`, with cone parameters
    :math:`(s, d) = (1, d)`.

    Raises
    ------
    UsageError
        Raised if ``polys`` is empty, not homogeneous of one degree, or not in
        ``m`` variables.

    """
    if not polys:
        raise UsageError("empty family")
    degrees = {p.degree for p in polys}
    if len(degrees) != 1 or any(not p.is_homogeneous() or p.nvars != m
                                for p in polys):
        raise UsageError("cone correspondence needs homogeneous polynomials "
                         "of one degree in {} variables".format(m))
    d = degrees.pop()
    report = VerificationReport("cone-correspondence")
    for i, p in enumerate(polys):
        report.check("ambient laplacian {}".format(i), 0, p.laplacian())
    for i, j in itertools.combinations_with_replacement(range(len(polys)), 2):
        report.check("ambient kappa ({}, {})".format(i, j), 0,
                     polys[i].gradient_pairing(polys[j]))
    family = [SphereFunction(p) for p in polys]
    report.extend(check_eigenfamily(family, "restriction"),
                  prefix="restriction")
    result = check_eigenfunction(family[0])
    expected = (-d * (d + m - 2), -d * d)
    report.check("restricted (lambda, mu)", expected,
                 (result.lambda_, result.mu))
    if m > 2 and result.is_eigen:
        params = cone_parameters(result.lambda_, result.mu, m - 1)
        report.check("cone parameters (s, d)", (1, d), (params.s, params.d))
    return report


def check_structure(pairs, task="structure"):
    """Structural identities of the function algebra over element pairs.

    For every pair :math:`(\\varphi, \\psi)` checks the product rule
    :math:`\\Delta(\\varphi\\psi) = \\Delta(\\varphi)\\psi
    + 2\\kappa(\\varphi, \\psi) + \\varphi\\Delta(\\psi)`, the vanishing
    :math:`\\int \\Delta\\varphi = 0` and integration by parts
    :math:`\\int \\varphi \\Delta \\psi = -\\int \\kappa(\\varphi, \\psi)`.
    Each identity is one report item counting the pairs where it holds.

    """
    names = ("product rule", "laplacian integral vanishing",
             "integration by parts")
    holds = dict.fromkeys(names, 0)
    first_failure = {}
    for index, (phi, psi) in enumerate(pairs):
        _check_carrier(phi)
        lap_phi, lap_psi = phi.laplacian(), psi.laplacian()
        kappa = phi.kappa(psi)
        outcomes = (
            (phi * psi).laplacian() == lap_phi * psi + 2 * kappa
            + phi * lap_psi,
            not lap_phi.integrate(),
            (phi * lap_psi).integrate() == -kappa.integrate(),
        )
        for name, ok in zip(names, outcomes):
            if ok:
                holds[name] += 1
            else:
                first_failure.setdefault(name, index)
    report = VerificationReport(task)
    for name in names:
        note = None
        if name in first_failure:
            note = "first failure at case {}".format(first_failure[name])
        report.check(name, len(pairs), holds[name], note)
    return report
