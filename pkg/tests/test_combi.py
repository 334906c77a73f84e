import logging
from fractions import Fraction
from logging import NullHandler

from eigenkit import combi
from eigenkit.arith import ExactMatrix
from eigenkit.report import PASS
from eigenkit.utils import UsageError
from pyutils.genutils import get_qualname
from pyutils.testutils import TestBase

logger = logging.getLogger(__name__)
logger.addHandler(NullHandler())


class TestCombi(TestBase):
    TEST_MODULE_QUALNAME = get_qualname(combi)
    LOGGER_NAME = __name__
    SHOW_FIRST_CHARS_IN_LOG = 0
    CREATE_SANDBOX_TMP_DIR = False
    CREATE_DATA_TMP_DIR = False

    def assert_passes(self, report):
        failures = report.failures()
        self.assertEqual(report.status, PASS,
                         "{} failed: {}".format(report.task, failures[:3]))

    def test_build_matrix(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where <color>small matrices"
                                        "</color> are built entry-wise")
        self.assertEqual(combi.build_matrix(combi.A, 1),
                         ExactMatrix.from_rows([[1]]))
        self.assertEqual(combi.build_matrix("B", 2),
                         ExactMatrix.from_rows([[1, 1], [1, 0]]))
        self.assertEqual(combi.build_matrix("Brect", 2),
                         ExactMatrix.from_rows([[1, 1]]))
        self.assertEqual(combi.matrix_size(combi.B_RECT, 10), (5, 6))
        with self.assertRaises(UsageError):
            combi.build_matrix(combi.B_RECT, 3)
        with self.assertRaises(UsageError):
            combi.build_matrix(combi.A, 0)
        with self.assertRaises(UsageError):
            combi.build_matrix("C", 2)
        logger.info("<color>RESULT:</color> Matrices are built <color>as "
                    "expected</color>")

    def test_predicted_det(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where the <color>closed-form "
                                        "determinants</color> give the "
                                        "printed values")
        self.assertEqual(combi.predicted_det(combi.A, 8), 8192)
        self.assertEqual(combi.predicted_det(combi.A, 7), 512)
        self.assertEqual(combi.predicted_det(combi.B_SQUARE, 10), -1048576)
        self.assertEqual(combi.predicted_det(combi.B_SQUARE, 9), 65536)
        self.assertEqual(combi.predicted_det(combi.A, 1), 1)
        logger.info("<color>RESULT:</color> Closed forms match the printed "
                    "values <color>as expected</color>")

    def test_verify_det(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where <color>Bareiss "
                                        "determinants</color> match the "
                                        "closed forms for n <= 24")
        for family in (combi.A, combi.B_SQUARE):
            for n in range(1, 25):
                self.assert_passes(combi.verify_det(family, n))
        report = combi.verify_det(combi.A, 7)
        self.assertEqual(report.items[0].computed, 512)
        logger.info("<color>RESULT:</color> All determinants match <color>as "
                    "expected</color>")

    def test_row_reduction(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where the <color>row-reduction"
                                        "</color> route agrees with Bareiss")
        for family in (combi.A, combi.B_SQUARE):
            for n in range(1, 13):
                self.assert_passes(combi.verify_row_reduction(family, n))
        logger.info("<color>RESULT:</color> Both routes agree <color>as "
                    "expected</color>")

    def test_printed_examples(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where the <color>four printed "
                                        "matrices</color> are reproduced")
        report = combi.verify_printed_examples()
        self.assert_passes(report)
        self.assertEqual(len(report.items), 12)
        logger.info("<color>RESULT:</color> The printed matrices are "
                    "reproduced <color>as expected</color>")

    def test_kernel(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where <color>B_rect(2n)</color> "
                                        "has a one-dimensional kernel")
        self.assertEqual(combi.kernel_vector(1), (1, -1))
        self.assertEqual(combi.kernel_vector(2),
                         (1, Fraction(-1, 3), 1))
        for n in range(1, 11):
            self.assert_passes(combi.verify_kernel(n))
            self.assert_passes(combi.verify_kernel_identity(n))
        logger.info("<color>RESULT:</color> Kernels are one-dimensional "
                    "<color>as expected</color>")

    def test_gen_polys(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where <color>generating "
                                        "polynomials</color> match their "
                                        "closed forms")
        result = combi.gen_poly("P", 1, 3)
        self.assertTrue(result.equal)
        for n in range(1, 13):
            self.assert_passes(combi.verify_gen_polys(n))
        with self.assertRaises(UsageError):
            combi.gen_poly("gamma", 0, 2)
        with self.assertRaises(UsageError):
            combi.gen_poly("alpha", 4, 3)
        logger.info("<color>RESULT:</color> Generating polynomials match "
                    "<color>as expected</color>")

    def test_derivative_cases(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where <color>derivatives at 1"
                                        "</color> follow the three guards")
        case = combi.alpha_derivative_case(5, 2, 3)
        self.assertEqual(case.case, 0)
        self.assertEqual(case.predicted, combi.NO_PREDICTION)
        case = combi.alpha_derivative_case(4, 0, 0)
        self.assertEqual(case.case, 2)
        self.assertEqual(case.computed, case.predicted)
        for n in range(1, 11):
            for kind in ("alpha", "beta"):
                self.assert_passes(combi.verify_derivative_cases(n, kind))
        with self.assertRaises(UsageError):
            combi.alpha_derivative_case(4, 2, 0)
        logger.info("<color>RESULT:</color> Derivative predictions hold "
                    "<color>as expected</color>")

    def test_surjectivity(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where the <color>witness "
                                        "vectors</color> have exact preimages")
        for n in range(2, 11):
            self.assert_passes(combi.verify_surjectivity(n, "alpha"))
        for n in range(1, 6):
            self.assert_passes(combi.verify_surjectivity(n, "beta"))
        logger.info("<color>RESULT:</color> The witnesses span the range "
                    "<color>as expected</color>")

    def test_recurrences(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where the <color>row-vector "
                                        "relations</color> hold")
        for n in range(1, 13):
            report = combi.verify_recurrences(n)
            self.assert_passes(report)
            self.assertEqual(len(report.items), 5)
        logger.info("<color>RESULT:</color> The relations hold <color>as "
                    "expected</color>")
