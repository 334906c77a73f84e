import logging
from fractions import Fraction
from logging import NullHandler

from eigenkit import runner, utils
from eigenkit.poly import S7_CITED, S7_EXPECTED
from eigenkit.report import FAIL, PASS
from eigenkit.runner import Job, Task, TaskRunner
from eigenkit.utils import UsageError
from pyutils.genutils import get_qualname
from pyutils.testutils import TestBase

logger = logging.getLogger(__name__)
logger.addHandler(NullHandler())


def _broken_job(n):
    raise ValueError("broken job {}".format(n))


class TestRunner(TestBase):
    TEST_MODULE_QUALNAME = get_qualname(runner)
    LOGGER_NAME = __name__
    SHOW_FIRST_CHARS_IN_LOG = 0
    CREATE_SANDBOX_TMP_DIR = False
    CREATE_DATA_TMP_DIR = False

    def run_task(self, task, jobs=1, config=None):
        return TaskRunner(jobs=jobs, timing=False).run(task, config)

    def assert_passes(self, report):
        self.assertEqual(report.status, PASS,
                         "{} failed: {}".format(report.task,
                                                report.failures()[:3]))

    def test_task(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where <color>tasks</color> "
                                        "compare by value")
        first = Task("combi-det", n="1..4", family="A")
        second = Task("combi-det", family="A", n="1..4")
        self.assertEqual(first, second)
        self.assertEqual(hash(first), hash(second))
        self.assertEqual(first.get("family"), "A")
        self.assertIsNone(first.get("seed"))
        self.assertEqual(str(Task("structure", count=5, seed=None)),
                         "structure count=5")
        logger.info("<color>RESULT:</color> Tasks compare by value <color>as "
                    "expected</color>")

    def test_validate_task(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where <color>invalid tasks"
                                        "</color> are rejected before running")
        bad_tasks = [
            Task("combi-trace", n="1"),
            Task("combi-det", family="Brect", n="2"),
            Task("combi-det", family="A", n="0..3"),
            Task("combi-kernel", n="3..1"),
            Task("sphere-verify", example="coordinates", n="1..2"),
            Task("sphere-verify", example="s7", s7_params=(0, 0, 0, 0)),
            Task("sphere-verify", example="torus"),
            Task("torus-classify", lattice="1,0;2,0"),
            Task("torus-classify", lattice="1,0;0,1", q=Fraction(-1)),
            Task("torus-l2", lattice="1,0;0,1", character=(1,),
                 max_degree=4),
            Task("cone-check", m="1..3", max_degree=2, count=1),
            Task("structure", count=0),
        ]
        for task in bad_tasks:
            with self.assertRaises(UsageError, msg=str(task)):
                runner.validate_task(task)
        task = Task("combi-det", family="B", n="1..3")
        self.assertIs(runner.validate_task(task), task)
        logger.info("<color>RESULT:</color> Invalid tasks are rejected "
                    "<color>as expected</color>")

    def test_combi_tasks(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where <color>combi tasks</color> "
                                        "run on one and on several workers")
        task = Task("combi-det", family="A", n="1..8", reduction=True,
                    examples=True)
        report = self.run_task(task)
        self.assert_passes(report)
        self.assertEqual(report.ms, 0)
        parallel = self.run_task(task, jobs=3)
        self.assertEqual(parallel.to_json(), report.to_json())
        for kind in ("combi-kernel", "combi-polys", "combi-recur"):
            self.assert_passes(self.run_task(Task(kind, n="1..5")))
        logger.info("<color>RESULT:</color> Reports don't depend on the "
                    "number of workers <color>as expected</color>")

    def test_sphere_tasks(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where the <color>sphere "
                                        "examples</color> are verified")
        report = self.run_task(Task("sphere-verify", example="coordinates",
                                    n="2..3", max_degree=3))
        self.assert_passes(report)
        report = self.run_task(Task("sphere-verify", example="s7", count=2,
                                    seed=utils.DEFAULT_SEED))
        self.assert_passes(report)
        notes = [item.note for item in report.items
                 if item.id.endswith("(lambda, mu)") and "basis" not in item.id]
        self.assertEqual(len(notes), 2)
        for note in notes:
            self.assertIn(str(S7_CITED[0]), note)
        computed = [item.computed for item in report.items
                    if item.note is not None]
        self.assertEqual(computed, [S7_EXPECTED] * 2)
        ids = [item.id for item in report.items]
        self.assertTrue(ids[0].startswith("s7 basis "), ids[0])
        self.assertTrue(all(i.startswith("s7 ") for i in ids))
        self.assertFalse(any("s7 s7" in i for i in ids))
        self.assertEqual(runner.s7_parameter_tuples(5, 3),
                         runner.s7_parameter_tuples(5, 3))
        report = self.run_task(Task("sphere-l2", n="2", max_degree=4,
                                    family_degree=3))
        self.assert_passes(report)
        logger.info("<color>RESULT:</color> The sphere examples verify "
                    "<color>as expected</color>")

    def test_torus_tasks(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where <color>torus tasks</color> "
                                        "parse their lattice")
        self.assert_passes(self.run_task(Task("torus-classify",
                                              lattice="1,0;0,1", q=None)))
        self.assert_passes(self.run_task(Task("torus-spectrum",
                                              lattice="1,0;0,1",
                                              lambda_=Fraction(-2),
                                              mu=Fraction(-2), max_degree=5)))
        report = self.run_task(Task("torus-spectrum", lattice="1,0;0,1",
                                    lambda_=Fraction(-3), mu=Fraction(-3),
                                    max_degree=2))
        self.assertEqual(report.status, FAIL)
        self.assert_passes(self.run_task(Task("torus-l2", lattice="1,0;1/2,1",
                                              character=None, max_degree=4)))
        logger.info("<color>RESULT:</color> Torus tasks run <color>as "
                    "expected</color>")

    def test_cone_and_structure_tasks(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where <color>cone and structure"
                                        "</color> tasks pass")
        report = self.run_task(Task("cone-check", m="2..3", max_degree=2,
                                    count=5, seed=1, sphere_n="2..3"))
        self.assert_passes(report)
        skipped = [item for item in report.items if item.passed is None]
        self.assertEqual(len(skipped), 2)
        for lambda_, mu, m in runner.conical_pairs(1, 10):
            self.assertNotEqual(lambda_, mu)
            self.assertLess(mu, 0)
        report = self.run_task(Task("structure", count=3, seed=2), jobs=2)
        self.assert_passes(report)
        logger.info("<color>RESULT:</color> Cone and structure tasks pass "
                    "<color>as expected</color>")

    def test_full_suite_plan(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where <color>full-suite</color> "
                                        "is planned from the main config")
        config = utils.load_json(utils.get_cfg_filepath('default_main'))
        tasks = runner.full_suite_tasks(config, seed=3)
        labels = [label for label, _ in tasks]
        self.assertEqual(len(labels), len(set(labels)))
        self.assertIn("det A", labels)
        for _, task in tasks:
            runner.validate_task(task)
        jobs = runner.plan_task(Task("full-suite", seed=3), config)
        self.assertTrue(all(isinstance(job, Job) for job in jobs))
        self.assertEqual(jobs[0].label, "det A")
        s7_jobs = [job for job in jobs if job.func in (runner._s7_basis,
                                                      runner._s7_tuple)]
        self.assertTrue(s7_jobs)
        self.assertEqual({job.label for job in s7_jobs}, {"s7"})
        logger.info("<color>RESULT:</color> The full suite is planned <color>as "
                    "expected</color>")

    def test_failing_job(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where a <color>raising job"
                                        "</color> becomes a failed item")
        jobs = [Job(None, _broken_job, (1,)), Job(None, _broken_job, (2,))]
        reports = TaskRunner(jobs=2).run_jobs(jobs)
        self.assertEqual(len(reports), 2)
        for report in reports:
            self.assertEqual(report.status, FAIL)
            self.assertIn("ValueError", report.items[0].computed)
        with self.assertRaises(UsageError):
            TaskRunner(jobs=0)
        logger.info("<color>RESULT:</color> Raising jobs fail cleanly <color>as "
                    "expected</color>")
