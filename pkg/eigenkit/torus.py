"""Flat tori: rational lattices, norm shells and trigonometric polynomials.

The torus :math:`\\mathbb{R}^n/\\Gamma` has the characters
:math:`e_k(x) = \\exp(2\\pi i \\langle k, x \\rangle)`, :math:`k \\in \\Gamma^*`,
and

* :math:`\\Delta e_k = -\\Pi \\|k\\|^2 e_k`,
* :math:`\\kappa(e_k, e_l) = -\\Pi \\langle k, l \\rangle e_{k+l}`,
* :math:`\\int e_k = 1` if :math:`k = 0` and 0 otherwise,

with :math:`\\Pi = 4\\pi^2` kept as the formal symbol of
:class:`~eigenkit.arith.PiScalar`. Dual vectors are stored as integer
coordinate tuples in the dual basis, so all norms are exact rationals given by
the dual Gram matrix.

"""
import logging
import math
import random
from collections import namedtuple
from fractions import Fraction
from logging import NullHandler

from eigenkit.arith import (ExactMatrix, GaussianRational, PiScalar, inverse,
                            exact_quotient)
from eigenkit.report import VerificationReport
from eigenkit.utils import DEFAULT_SEED, UsageError, check_range

logger = logging.getLogger(__name__)
logger.addHandler(NullHandler())

SpectrumValue = namedtuple("SpectrumValue", "q multiplicity")
ShellClassification = namedtuple("ShellClassification",
                                  "q shell spans report")
# Coefficients of the seeded combinations tried by classify_shell
COMBINATION_COEFFS = (Fraction(1), Fraction(-1), Fraction(2), Fraction(-2),
                      Fraction(1, 2), Fraction(-1, 2))

I = GaussianRational(0, 1)


class Lattice:
    """Full-rank lattice in :math:`\\mathbb{R}^n` with a rational basis.

    Parameters
    ----------
    basis : ExactMatrix or list of list
        Basis vectors as rows.

    Raises
    ------
    UsageError
        Raised if the basis is not square or is singular.

    """
    __slots__ = ('basis', 'gram', '_dual')

    def __init__(self, basis):
        if not isinstance(basis, ExactMatrix):
            basis = ExactMatrix.from_rows(
                [[Fraction(x) for x in row] for row in basis])
        if not basis.is_square() or basis.rows == 0:
            raise UsageError("lattice basis must be a non-empty square matrix, "
                             "got {}x{}".format(basis.rows, basis.cols))
        self.basis = basis
        self.gram = basis @ basis.transpose()
        self._dual = None

    @classmethod
    def standard(cls, dim):
        """:math:`\\mathbb{Z}^{dim}`."""
        return cls([[1 if i == j else 0 for j in range(dim)]
                    for i in range(dim)])

    @property
    def dim(self):
        return self.basis.rows

    def dual(self):
        return dual_lattice(self)

    def norm(self, coords):
        """Squared norm of the vector with coordinates ``coords``."""
        return self.pairing(coords, coords)

    def pairing(self, k, l):
        gram = self.gram
        return sum((gram[i, j] * k[i] * l[j] for i in range(self.dim)
                    for j in range(self.dim) if k[i] and l[j]), Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self):
        return "Lattice({})".format(format_basis(self.basis))


def format_basis(basis):
    """Inverse of :func:`parse_basis`."""
    return ";".join(",".join(str(x) for x in row) for row in basis.tolist())


def parse_basis(text):
    """Parse ``"1,0;1/2,1"`` (rows separated by ``;``) into a
    :class:`Lattice`.

    Raises
    ------
    UsageError
        Raised if the text is malformed, not square or singular.

    """
    try:
        rows = [[Fraction(x.strip()) for x in row.split(",")]
                for row in str(text).split(";")]
    except (ValueError, ZeroDivisionError):
        raise UsageError("malformed lattice basis: '{}' (expected rational "
                         "rows like '1,0;1/2,1')".format(text))
    if any(len(row) != len(rows) for row in rows):
        raise UsageError("lattice basis must be square: '{}'".format(text))
    lattice = Lattice(rows)
    dual_lattice(lattice)
    return lattice


def dual_lattice(lattice):
    """Dual lattice :math:`\\Gamma^*`, with basis the inverse transpose of the
    basis of :math:`\\Gamma`.

    Raises
    ------
    UsageError
        Raised if the basis is singular.

    """
    if lattice._dual is None:
        try:
            dual_basis = inverse(lattice.basis).transpose()
        except ZeroDivisionError:
            raise UsageError("singular lattice basis: {}".format(
                format_basis(lattice.basis)))
        lattice._dual = Lattice(dual_basis)
        lattice._dual._dual = lattice
    return lattice._dual


def _ceil_sqrt(value):
    """Smallest integer t >= 0 with t*t >= value, for a rational value."""
    value = Fraction(value)
    t = math.isqrt(value.numerator // value.denominator)
    while t * t < value:
        t += 1
    return t


def _box(lattice, bound):
    """Integer coordinate vectors in the box containing every vector of
    ``lattice`` with squared norm at most ``bound``."""
    # the inverse of the Gram matrix of a lattice is the Gram matrix of its dual
    inverse_gram = dual_lattice(lattice).gram
    radii = [_ceil_sqrt(bound * inverse_gram[i, i])
             for i in range(lattice.dim)]
    vectors = [()]
    for radius in radii:
        vectors = [v + (c,) for v in vectors
                   for c in range(-radius, radius + 1)]
    return vectors


def norm_shell(dual, q):
    """All vectors of ``dual`` with squared norm exactly ``q``.

    Parameters
    ----------
    dual : Lattice
        The lattice to enumerate, usually :math:`\\Gamma^*`.
    q : Fraction
        Squared norm, ``q >= 0``.

    Returns
    -------
    shell : list of tuple of int
        Coordinate vectors in the basis of ``dual``, sorted.

    """
    q = Fraction(q)
    check_range("q", q, 0)
    shell = sorted(v for v in _box(dual, q) if dual.norm(v) == q)
    logger.debug("shell q={}: {} vectors".format(q, len(shell)))
    return shell


def spectrum_up_to(lattice, bound):
    """Laplace spectrum of :math:`\\mathbb{R}^n/\\Gamma` up to ``bound``.

    Returns
    -------
    spectrum : list of SpectrumValue
        ``(q, multiplicity)`` for every realized :math:`q = \\|k\\|^2 \\leq`
        ``bound``, :math:`k \\in \\Gamma^*`, sorted by ``q``; the eigenvalue is
        :math:`-\\Pi q`.

    """
    bound = Fraction(bound)
    check_range("bound", bound, 0)
    dual = dual_lattice(lattice)
    counts = {}
    for v in _box(dual, bound):
        q = dual.norm(v)
        if q <= bound:
            counts[q] = counts.get(q, 0) + 1
    return [SpectrumValue(q, counts[q]) for q in sorted(counts)]


def smallest_nonzero_norm(lattice):
    """Smallest nonzero :math:`\\|k\\|^2`, :math:`k \\in \\Gamma^*`."""
    dual = dual_lattice(lattice)
    bound = min(dual.gram[i, i] for i in range(dual.dim))
    return next(value.q for value in spectrum_up_to(lattice, bound)
                if value.q > 0)


def _pi_coerce(value):
    if isinstance(value, PiScalar):
        return value
    return PiScalar.coerce(value)


class TrigPoly:
    """Finite Fourier sum :math:`\\sum_k c_k e_k` over the dual lattice of
    ``lattice`` with :class:`~eigenkit.arith.PiScalar` coefficients.

    Parameters
    ----------
    lattice : Lattice
        The lattice :math:`\\Gamma` of the torus.
    terms : dict, optional
        Map from dual coordinate tuples to coefficients.

    """
    __slots__ = ('lattice', 'terms')

    def __init__(self, lattice, terms=None):
        clean = {}
        for k, coeff in (terms or {}).items():
            k = tuple(int(x) for x in k)
            if len(k) != lattice.dim:
                raise UsageError("character {} on a {}-dimensional "
                                 "torus".format(k, lattice.dim))
            coeff = _pi_coerce(coeff) + clean.get(k, 0)
            if coeff:
                clean[k] = coeff
            else:
                clean.pop(k, None)
        self.lattice = lattice
        self.terms = clean

    @classmethod
    def character(cls, lattice, k, coeff=1):
        """:math:`c \\cdot e_k`."""
        return cls(lattice, {tuple(k): coeff})

    @classmethod
    def constant(cls, lattice, value=1):
        return cls(lattice, {(0,) * lattice.dim: value})

    def coefficients(self):
        return self.terms

    def leading_key(self):
        return max(self.terms, default=None)

    def _coerce(self, other):
        if isinstance(other, TrigPoly):
            if other.lattice != self.lattice:
                raise UsageError("trigonometric polynomials on different "
                                 "lattices: {!r} and {!r}".format(
                                     self.lattice, other.lattice))
            return other
        scalar = _pi_coerce(other)
        if scalar is NotImplemented:
            return scalar
        return TrigPoly.constant(self.lattice, scalar)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return TrigPoly(self.lattice, terms)

    __radd__ = __add__

    def __neg__(self):
        return TrigPoly(self.lattice, {k: -c for k, c in self.terms.items()})

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
        for k, c in self.terms.items():
            for l, d in other.terms.items():
                key = tuple(a + b for a, b in zip(k, l))
                terms[key] = terms.get(key, 0) + c * d
        return TrigPoly(self.lattice, terms)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        """Exact division by a scalar.

        Raises
        ------
        ArithmeticError
            Raised if a PiScalar coefficient is not divisible by ``scalar``.

        """
        scalar = _pi_coerce(scalar)
        if scalar is NotImplemented:
            return scalar
        return TrigPoly(self.lattice, {k: c.divide(scalar)
                                       for k, c in self.terms.items()})

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = TrigPoly.constant(self.lattice)
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
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def conjugate(self):
        """:math:`\\overline{c e_k} = \\bar c e_{-k}`."""
        return TrigPoly(self.lattice, {tuple(-x for x in k): c.conjugate()
                                       for k, c in self.terms.items()})

    def real_part(self):
        return (self + self.conjugate()) / 2

    def imag_part(self):
        return (self - self.conjugate()) / (2 * I)

    def laplacian(self):
        return trig_laplacian(self)

    def kappa(self, other):
        return trig_kappa(self, other)

    def integrate(self):
        return trig_integrate(self)

    def __repr__(self):
        return "TrigPoly({!r}, '{}')".format(self.lattice, self)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            coeff = str(self.terms[k])
            if any(ch in coeff for ch in " +") or "i" in coeff:
                coeff = "({})".format(coeff)
            parts.append("{}*e({})".format(coeff, ",".join(str(x) for x in k)))
        return " + ".join(parts)


def trig_laplacian(f):
    """:math:`\\Delta e_k = -\\Pi \\|k\\|^2 e_k`, coefficient-wise."""
    dual = dual_lattice(f.lattice)
    return TrigPoly(f.lattice, {k: PiScalar.pi2(-dual.norm(k)) * c
                                for k, c in f.terms.items()})


def trig_kappa(f, g):
    """:math:`\\kappa(e_k, e_l) = -\\Pi \\langle k, l \\rangle e_{k+l}`,
    extended bilinearly.

    Raises
    ------
    UsageError
        Raised if ``f`` and ``g`` live on different lattices.

    """
    g = f._coerce(g)
    dual = dual_lattice(f.lattice)
    terms = {}
    for k, c in f.terms.items():
        for l, d in g.terms.items():
            pairing = dual.pairing(k, l)
            if pairing:
                key = tuple(a + b for a, b in zip(k, l))
                terms[key] = terms.get(key, 0) \
                    + PiScalar.pi2(-pairing) * c * d
    return TrigPoly(f.lattice, terms)


def trig_integrate(f):
    """Normalized Haar integral: the coefficient of :math:`e_0`."""
    return f.terms.get((0,) * f.lattice.dim, PiScalar())


def random_trig_poly(rng, lattice, radius, nterms):
    """Seeded random TrigPoly with characters in the coordinate box of the
    given ``radius`` and coefficients :math:`c_0 + c_1 \\Pi`."""
    terms = {}
    for _ in range(nterms):
        k = tuple(rng.randint(-radius, radius) for _ in range(lattice.dim))
        coeff = PiScalar([GaussianRational(rng.randint(-3, 3),
                                           rng.randint(-3, 3))
                          / rng.choice((1, 2)) for _ in range(2)])
        terms[k] = terms.get(k, 0) + coeff
    return TrigPoly(lattice, terms)


def _is_proportional(lhs, rhs):
    """Whether ``lhs == mu * rhs`` for a scalar ``mu`` (``rhs`` nonzero)."""
    key = rhs.leading_key()
    mu = exact_quotient(lhs.terms.get(key, PiScalar()), rhs.terms[key])
    return mu is not None and lhs == mu * rhs


def _maximal_cliques(vertices, adjacent):
    """Maximal cliques (Bron-Kerbosch with pivoting)."""
    cliques = []

    def expand(clique, candidates, excluded):
        if not candidates and not excluded:
            cliques.append(tuple(sorted(clique)))
            return
        pivot = max(candidates | excluded,
                    key=lambda v: len(adjacent[v] & candidates))
        for v in sorted(candidates - adjacent[pivot]):
            expand(clique | {v}, candidates & adjacent[v],
                   excluded & adjacent[v])
            candidates = candidates - {v}
            excluded = excluded | {v}

    expand(set(), set(vertices), set())
    return sorted(cliques)


def classify_shell(lattice, q, seed=DEFAULT_SEED, samples=32):
    """Classify the eigenfamilies spanned by characters of one norm shell.

    Every generator :math:`e_k` is checked to be a
    :math:`(-\\Pi q, -\\Pi q)`-eigenfunction. Then (i) every ordered pair
    :math:`(k, l)` of the shell is tested for
    :math:`\\kappa(e_k, e_l) = \\mu e_k e_l` with the common
    :math:`\\mu = -\\Pi q`, and the maximal sets of pairwise compatible
    characters are collected; (ii) ``samples`` seeded combinations
    :math:`f = \\sum a_i e_{k_i}` of at least two characters, with
    :math:`a_i \\in` :data:`COMBINATION_COEFFS`, are tested for
    :math:`\\kappa(f, f) = \\mu f^2`.

    The classification passes iff the maximal spans are exactly the
    one-dimensional spans :math:`\\{e_k\\}` and every combination fails.

    Raises
    ------
    UsageError
        Raised if the shell is empty.

    """
    q = Fraction(q)
    dual = dual_lattice(lattice)
    shell = norm_shell(dual, q)
    if not shell:
        raise UsageError("empty norm shell q={} for lattice {}".format(
            q, format_basis(lattice.basis)))
    report = VerificationReport("torus-classify")
    eigenvalue = PiScalar.pi2(-q)
    for k in shell:
        e = TrigPoly.character(lattice, k)
        report.check("generator e{} (lambda, mu)".format(k),
                     (eigenvalue * e, eigenvalue * e * e),
                     (trig_laplacian(e), trig_kappa(e, e)))

    adjacent = {k: set() for k in shell}
    pairs = 0
    for k in shell:
        for l in shell:
            if k == l:
                continue
            pairs += 1
            e_k = TrigPoly.character(lattice, k)
            e_l = TrigPoly.character(lattice, l)
            if trig_kappa(e_k, e_l) == eigenvalue * e_k * e_l:
                adjacent[k].add(l)
    rejected = pairs - sum(len(v) for v in adjacent.values())
    report.check("q={} distinct pairs rejected".format(q), pairs, rejected)
    spans = _maximal_cliques(shell, adjacent)
    report.check("q={} maximal spans".format(q), [(k,) for k in shell], spans)

    if len(shell) >= 2:
        rng = random.Random(seed)
        failures = 0
        for _ in range(samples):
            size = rng.randint(2, len(shell))
            chosen = rng.sample(shell, size)
            f = TrigPoly(lattice, {k: rng.choice(COMBINATION_COEFFS)
                                   for k in chosen})
            if not _is_proportional(trig_kappa(f, f), f * f):
                failures += 1
        report.check("q={} seeded combinations rejected".format(q), samples,
                     failures)
    return ShellClassification(q, shell, spans, report)
