import logging
import random
from fractions import Fraction
from logging import NullHandler

from eigenkit import poly
from eigenkit.poly import MultiPoly, SphereFunction
from eigenkit.utils import UsageError
from pyutils.genutils import get_qualname
from pyutils.testutils import TestBase

logger = logging.getLogger(__name__)
logger.addHandler(NullHandler())


def monomial(m, exponent, coeff=1):
    return MultiPoly(m, {tuple(exponent): coeff})


class TestPoly(TestBase):
    TEST_MODULE_QUALNAME = get_qualname(poly)
    LOGGER_NAME = __name__
    SHOW_FIRST_CHARS_IN_LOG = 0
    CREATE_SANDBOX_TMP_DIR = False
    CREATE_DATA_TMP_DIR = False

    def test_multipoly_calculus(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where <color>ambient "
                                        "operators</color> act on polynomials")
        r2 = MultiPoly.norm_squared(3)
        self.assertEqual(r2.laplacian(), 6)
        self.assertEqual(r2.degree, 2)
        self.assertTrue(r2.is_homogeneous())
        self.assertEqual(r2.euler(), r2 * 2)
        x1 = MultiPoly.variable(2, 0)
        self.assertEqual((x1 ** 2).laplacian(), 2)
        self.assertEqual(x1.gradient_pairing(x1), 1)
        z1 = poly.complex_coordinate(4, 1)
        self.assertFalse(z1.gradient_pairing(z1))
        self.assertEqual(z1.gradient_pairing(z1.conjugate()), 2)
        self.assertFalse((z1 ** 3).laplacian())
        self.assertEqual(MultiPoly(2).degree, -1)
        with self.assertRaises(UsageError):
            MultiPoly(2, {(1,): 1})
        with self.assertRaises(UsageError):
            x1 + MultiPoly.variable(3, 0)
        logger.info("<color>RESULT:</color> Ambient operators are exact "
                    "<color>as expected</color>")

    def test_reduce_mod_sphere(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where the <color>normal form"
                                        "</color> removes x1 squared")
        self.assertEqual(poly.reduce_mod_sphere(MultiPoly.norm_squared(4)),
                         SphereFunction.constant(4))
        f = poly.reduce_mod_sphere(monomial(3, (3, 1, 0)))
        for exponent in f.coefficients():
            self.assertLess(exponent[0], 2)
        self.assertEqual(f, SphereFunction(monomial(3, (3, 1, 0))))
        with self.assertRaises(UsageError):
            poly.reduce_mod_sphere(MultiPoly.constant(1))
        logger.info("<color>RESULT:</color> Normal forms are reduced "
                    "<color>as expected</color>")

    def test_reduction_is_ring_homomorphism(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where <color>reduction modulo "
                                        "the sphere</color> is idempotent and "
                                        "multiplicative")
        rng = random.Random(577)
        for m in range(2, 5):
            ideal = MultiPoly.norm_squared(m) - 1
            for _ in range(15):
                p = poly.random_multipoly(rng, m, 4, 5)
                q = poly.random_multipoly(rng, m, 3, 4)
                f, g = poly.reduce_mod_sphere(p), poly.reduce_mod_sphere(q)
                self.assertEqual(poly.reduce_mod_sphere(f.normal_form)
                                 .normal_form, f.normal_form)
                self.assertEqual(poly.reduce_mod_sphere(p + q).normal_form,
                                 (f + g).normal_form)
                self.assertEqual(poly.reduce_mod_sphere(p * q).normal_form,
                                 (f * g).normal_form)
                self.assertFalse(poly.reduce_mod_sphere(p * ideal))
                self.assertEqual(poly.reduce_mod_sphere(p + q * ideal)
                                 .normal_form, f.normal_form)
                self.assertTrue(all(e[0] < 2 for e in f.coefficients()))
        logger.info("<color>RESULT:</color> Reduction is a ring homomorphism "
                    "<color>as expected</color>")

    def test_kappa_symmetric_bilinear(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where <color>kappa</color> is "
                                        "symmetric and complex bilinear")
        rng = random.Random(1729)
        scalars = [2, Fraction(-1, 3), poly.I, 1 + poly.I]
        for m in (3, 4):
            for _ in range(10):
                f, g, h = (SphereFunction(poly.random_multipoly(rng, m, 3, 4))
                           for _ in range(3))
                a = scalars[rng.randrange(len(scalars))]
                self.assertEqual(poly.sphere_kappa(f, g),
                                 poly.sphere_kappa(g, f))
                self.assertEqual(poly.sphere_kappa(f * a + g, h),
                                 poly.sphere_kappa(f, h) * a
                                 + poly.sphere_kappa(g, h))
                self.assertEqual(poly.sphere_kappa(f, g * a + h),
                                 poly.sphere_kappa(f, g) * a
                                 + poly.sphere_kappa(f, h))
                self.assertFalse(poly.sphere_kappa(f, SphereFunction.constant(
                    m, 5)))
        logger.info("<color>RESULT:</color> Kappa is symmetric and bilinear "
                    "<color>as expected</color>")

    def test_sphere_integrate(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where <color>monomials</color> "
                                        "are integrated over S^3")
        integral = poly.sphere_integrate
        self.assertEqual(integral(SphereFunction(monomial(4, (2, 2, 0, 0)))),
                         Fraction(1, 24))
        self.assertEqual(integral(SphereFunction(monomial(4, (4, 0, 0, 0)))),
                         Fraction(1, 8))
        self.assertEqual(integral(SphereFunction(monomial(4, (3, 1, 0, 0)))),
                         0)
        self.assertEqual(integral(SphereFunction.constant(4, 3)), 3)
        self.assertEqual(integral(SphereFunction(monomial(2, (0, 2)))),
                         Fraction(1, 2))
        logger.info("<color>RESULT:</color> Integrals are exact <color>as "
                    "expected</color>")

    def test_sphere_operators(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where <color>z1 on S^3</color> "
                                        "is a (-3, -1) eigenfunction")
        z1 = SphereFunction(poly.complex_coordinate(4, 1))
        self.assertEqual(z1.laplacian(), z1 * -3)
        self.assertEqual(z1.kappa(z1), z1 * z1 * -1)
        self.assertEqual((z1 * z1).laplacian(), z1 * z1 * -8)
        self.assertEqual(z1.real_part(),
                         SphereFunction(MultiPoly.variable(4, 0)))
        self.assertEqual(z1.imag_part(),
                         SphereFunction(MultiPoly.variable(4, 1)))
        x1 = SphereFunction(MultiPoly.variable(3, 0))
        self.assertEqual(x1.laplacian(), x1 * -2)
        self.assertEqual(SphereFunction.constant(3).laplacian(), 0)
        logger.info("<color>RESULT:</color> Sphere operators are exact "
                    "<color>as expected</color>")

    def test_make_example(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where the <color>built-in "
                                        "examples</color> are constructed")
        family = poly.make_example("coordinates", 3)
        self.assertEqual(len(family), 3)
        self.assertEqual(family[0].m, 6)
        (phi,) = poly.make_example("s7", (1, 2, 3, 4))
        self.assertEqual(phi.m, 8)
        self.assertEqual(phi.laplacian(), phi * poly.S7_EXPECTED[0])
        self.assertEqual(poly.make_example("s7", (0, 0, 0, 0)), [])
        with self.assertRaises(UsageError):
            poly.make_example("coordinates", 1)
        with self.assertRaises(UsageError):
            poly.make_example("s7", (1, 2))
        with self.assertRaises(UsageError):
            poly.make_example("torus", 2)
        logger.info("<color>RESULT:</color> The examples are built <color>as "
                    "expected</color>")

    def test_random_harmonic(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where <color>seeded random "
                                        "harmonics</color> are harmonic")
        rng = random.Random("harmonic")
        for m in range(2, 6):
            for degree in range(1, 5):
                p = poly.random_harmonic(rng, m, degree)
                self.assertFalse(p.laplacian(), "not harmonic: {}".format(p))
                self.assertTrue(p.is_homogeneous())
        first = poly.random_multipoly(random.Random(7), 3, 4, 5)
        second = poly.random_multipoly(random.Random(7), 3, 4, 5)
        self.assertEqual(first, second)
        self.assertLessEqual(first.degree, 4)
        logger.info("<color>RESULT:</color> Random harmonics are harmonic "
                    "<color>as expected</color>")
