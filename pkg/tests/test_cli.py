import io
import json
import logging
import os
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction
from logging import NullHandler
from unittest import mock

from eigenkit import cli
from pyutils.genutils import get_qualname
from pyutils.testutils import TestBase

logger = logging.getLogger(__name__)
logger.addHandler(NullHandler())


class TestCli(TestBase):
    TEST_MODULE_QUALNAME = get_qualname(cli)
    LOGGER_NAME = __name__
    SHOW_FIRST_CHARS_IN_LOG = 0
    CREATE_SANDBOX_TMP_DIR = False
    CREATE_DATA_TMP_DIR = False

    def run_main(self, argv, env=None):
        """Run the script quietly and return its exit code, stdout and
        stderr."""
        stdout, stderr = io.StringIO(), io.StringIO()
        environ = {cli.SEED_ENV_VAR: ""}
        environ.update(env or {})
        with mock.patch.dict(os.environ, environ), redirect_stdout(stdout), \
                redirect_stderr(stderr):
            retcode = cli.main(argv + ["-q", "--no-timing"])
        return retcode, stdout.getvalue(), stderr.getvalue()

    def test_json_report(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where a passing task prints a "
                                        "<color>JSON report</color>")
        retcode, out, _ = self.run_main(["combi", "det", "--family", "B",
                                         "--n", "1..6", "--examples"])
        self.assertEqual(retcode, cli.EXIT_PASS)
        report = json.loads(out)
        self.assertEqual(report["task"], "combi-det")
        self.assertEqual(report["status"], "pass")
        self.assertEqual(report["ms"], 0)
        self.assertEqual(set(report["items"][0]),
                         {"id", "expected", "computed", "pass"})
        self.assertIn("-1048576", [item["computed"]
                                   for item in report["items"]])
        logger.info("<color>RESULT:</color> The JSON report is printed "
                    "<color>as expected</color>")

    def test_text_report(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where a report is printed as "
                                        "<color>text</color>")
        retcode, out, _ = self.run_main(["torus", "classify", "--q", "1",
                                         "--format", "text"])
        self.assertEqual(retcode, cli.EXIT_PASS)
        self.assertTrue(out.startswith("torus-classify [PASS]"), out)
        logger.info("<color>RESULT:</color> The text report is printed "
                    "<color>as expected</color>")

    def test_failing_task(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where a failing check gives "
                                        "<color>exit code 1</color>")
        retcode, out, _ = self.run_main(["torus", "spectrum", "--lambda", "-3",
                                         "--mu", "-3", "--max-degree", "1"])
        self.assertEqual(retcode, cli.EXIT_FAIL)
        self.assertEqual(json.loads(out)["status"], "fail")
        logger.info("<color>RESULT:</color> The failing task exits with 1 "
                    "<color>as expected</color>")

    def test_usage_errors(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where <color>usage errors</color> "
                                        "give exit code 2")
        cases = [
            ["torus", "classify", "--basis", "1,0;2,0"],
            ["torus", "classify", "--basis", "1,x;0,1"],
            ["combi", "det", "--n", "5..1"],
            ["combi", "det", "--family", "Brect"],
            ["sphere", "verify", "--example", "s7", "--a", "1/0"],
            ["cone", "check", "--n", "1"],
            ["combi", "trace"],
        ]
        for argv in cases:
            retcode, out, _ = self.run_main(argv)
            self.assertEqual(retcode, cli.EXIT_USAGE, argv)
            self.assertEqual(out, "", argv)
        retcode, _, err = self.run_main(["torus", "classify", "--basis",
                                         "1,0;2,0"])
        self.assertIn("UsageError: singular lattice basis", err)
        logger.info("<color>RESULT:</color> Usage errors exit with 2 <color>as "
                    "expected</color>")

    def test_seed_env_var(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where <color>{}</color> "
                                        "overrides --seed".format(
                                            cli.SEED_ENV_VAR))
        argv = ["sphere", "verify", "--example", "s7", "--count", "1"]
        _, first, _ = self.run_main(argv + ["--seed", "1"],
                                    {cli.SEED_ENV_VAR: "7"})
        _, second, _ = self.run_main(argv + ["--seed", "2"],
                                     {cli.SEED_ENV_VAR: "7"})
        self.assertEqual(first, second)
        retcode, _, _ = self.run_main(argv, {cli.SEED_ENV_VAR: "seven"})
        self.assertEqual(retcode, cli.EXIT_USAGE)
        logger.info("<color>RESULT:</color> The environment seed takes "
                    "precedence <color>as expected</color>")

    def test_build_task(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where parsed arguments become a "
                                        "<color>task</color>")
        parser = cli.setup_argparser()
        args = parser.parse_args(["torus", "l2", "--character", "1,1"])
        task = cli.build_task(args, 5)
        self.assertEqual(task.kind, "torus-l2")
        self.assertEqual(task.get("character"), (1, 1))
        args = parser.parse_args(["sphere", "verify", "--example", "s7",
                                  "--a", "1/2"])
        task = cli.build_task(args, 5)
        self.assertEqual(task.get("s7_params"), (Fraction(1, 2), 0, 0, 0))
        args = parser.parse_args(["cone", "check", "--n", "3"])
        self.assertEqual(cli.build_task(args, 5).get("m"), "3")
        logger.info("<color>RESULT:</color> Tasks are built <color>as "
                    "expected</color>")

    def test_jobs_do_not_change_output(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where <color>--jobs</color> "
                                        "leaves the report unchanged")
        argv = ["combi", "det", "--family", "A", "--n", "1..12",
                "--reduction"]
        retcode, serial, _ = self.run_main(argv + ["--jobs", "1"])
        self.assertEqual(retcode, cli.EXIT_PASS)
        retcode, parallel, _ = self.run_main(argv + ["--jobs", "4"])
        self.assertEqual(retcode, cli.EXIT_PASS)
        self.assertEqual(serial, parallel)
        argv = ["sphere", "verify", "--example", "s7", "--count", "3",
                "--seed", "11"]
        _, serial, _ = self.run_main(argv + ["--jobs", "1"])
        _, parallel, _ = self.run_main(argv + ["--jobs", "4"])
        self.assertEqual(serial, parallel)
        logger.info("<color>RESULT:</color> Reports are independent of the "
                    "number of workers <color>as expected</color>")

    def test_json_round_trip(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where the JSON report is "
                                        "<color>parsed and re-serialized"
                                        "</color> byte for byte")
        for argv in (["combi", "kernel", "--n", "1..6"],
                     ["torus", "classify", "--basis", "1,0;1/2,1"],
                     ["sphere", "verify", "--example", "s7", "--count", "2"]):
            _, out, _ = self.run_main(argv)
            text = out.rstrip("\n")
            again = json.dumps(json.loads(text), indent=2, ensure_ascii=False)
            self.assertEqual(again, text, argv)
        logger.info("<color>RESULT:</color> The JSON report round-trips "
                    "<color>as expected</color>")

    def test_same_seed_same_report(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where two runs with the "
                                        "<color>same seed</color> agree")
        for argv in (["sphere", "verify", "--example", "s7", "--count", "3"],
                     ["structure", "--count", "5"],
                     ["cone", "check", "--n", "2..3", "--max-degree", "2",
                      "--count", "5"]):
            _, first, _ = self.run_main(argv + ["--seed", "42"])
            _, second, _ = self.run_main(argv + ["--seed", "42"])
            self.assertTrue(first)
            self.assertEqual(first, second, argv)
        logger.info("<color>RESULT:</color> Seeded runs are deterministic "
                    "<color>as expected</color>")

    def test_quiet_silences_package(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where <color>--quiet</color> "
                                        "silences every module logger")
        retcode, _, _ = self.run_main(["sphere", "verify", "--example", "s7",
                                       "--count", "1"])
        self.assertEqual(retcode, cli.EXIT_PASS)
        names = ["eigenkit", "eigenkit.cli", "eigenkit.runner",
                 "eigenkit.verify", "eigenkit.combi"]
        try:
            for name in names:
                self.assertFalse(
                    logging.getLogger(name).isEnabledFor(logging.CRITICAL),
                    name)
        finally:
            cli.set_package_loggers_disabled(False)
        for name in names:
            self.assertFalse(logging.getLogger(name).disabled, name)
        logger.info("<color>RESULT:</color> Quiet mode silences the package "
                    "<color>as expected</color>")
