import argparse
import logging
import os
from fractions import Fraction
from logging import NullHandler

from eigenkit import configs, utils
from pyutils.genutils import get_qualname
from pyutils.testutils import TestBase

logger = logging.getLogger(__name__)
logger.addHandler(NullHandler())


class TestUtils(TestBase):
    TEST_MODULE_QUALNAME = get_qualname(utils)
    LOGGER_NAME = __name__
    SHOW_FIRST_CHARS_IN_LOG = 0
    CREATE_SANDBOX_TMP_DIR = False
    CREATE_DATA_TMP_DIR = False

    def test_add_cfg_filenames(self):
        nb_config_types = 2
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where dictionaries are checked "
                                        "if they are <color>correctly filled"
                                        "</color>")
        msg = "Dictionary of config filenames not found"
        self.assertTrue(isinstance(utils._CFG_FILENAMES.default_cfg, dict), msg)
        self.assertTrue(isinstance(utils._CFG_FILENAMES.user_cfg, dict), msg)
        msg = "There should be {} types of config files".format(nb_config_types)
        self.assertEqual(len(utils._CFG_FILENAMES.default_cfg),
                         nb_config_types, msg)
        self.assertEqual(len(utils._CFG_FILENAMES.user_cfg),
                         nb_config_types, msg)
        for k in utils._CFG_FILENAMES.default_cfg:
            msg = "Config file should start with default"
            self.assertTrue(k.startswith("default"), msg)
        logger.info("<color>RESULT:</color> The dictionaries of config "
                    "filenames seem to be filled <color>as expected</color>")

    def test_get_cfg_dirpath(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where the returned <color>"
                                        "directory path</color> to the "
                                        "<color>config files</color> is checked "
                                        "to be <color>valid</color>")
        cfg_dirpath = utils.get_cfg_dirpath()
        msg = "The returned directory path to the configuration files is invalid"
        self.assertEqual(cfg_dirpath, configs.__path__[0], msg)
        logger.info("<color>RESULT:</color> The directory path to the config "
                    "files is returned <color>as expected</color>")

    def test_get_cfg_filepath(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where <color>config file types"
                                        "</color> return valid <color>file paths"
                                        "</color>")
        for ft in ['default_log', 'default_main']:
            try:
                fp = utils.get_cfg_filepath(ft)
            except AssertionError as e:
                logger.exception("<color>{}</color>".format(e))
                self.fail("Config file type not recognized: {}".format(ft))
            else:
                msg = "Returned path is invalid: {}".format(fp)
                self.assertTrue(os.path.isfile(fp), msg)
                self.assertIn(ft, fp)
        with self.assertRaises(AssertionError):
            utils.get_cfg_filepath('sounds')
        logger.info("<color>RESULT:</color> All config file types return "
                    "valid file paths <color>as expected</color>")

    def test_default_main_cfg(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where the <color>default main "
                                        "config</color> is loaded")
        cfg = utils.load_json(utils.get_cfg_filepath('default_main'))
        for key in ['quiet', 'verbose', 'format', 'jobs', 'seed', 'timing',
                    'full_suite']:
            self.assertIn(key, cfg, "Missing option: {}".format(key))
        self.assertEqual(cfg['seed'], utils.DEFAULT_SEED)
        logger.info("<color>RESULT:</color> The default main config has all "
                    "the run options <color>as expected</color>")

    def test_check_range(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where <color>out-of-range"
                                        "</color> values are rejected")
        self.assertEqual(utils.check_range("n", 3, 1, 10), 3)
        self.assertEqual(utils.check_range("n", 10, 1), 10)
        with self.assertRaises(utils.UsageError):
            utils.check_range("n", 0, 1, 10)
        with self.assertRaises(utils.UsageError):
            utils.check_range("n", 11, maximum=10)
        logger.info("<color>RESULT:</color> Ranges are checked <color>as "
                    "expected</color>")

    def test_parse_int_range(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where <color>integer ranges"
                                        "</color> are parsed")
        self.assertEqual(list(utils.parse_int_range("1..4")), [1, 2, 3, 4])
        self.assertEqual(list(utils.parse_int_range("7")), [7])
        self.assertEqual(list(utils.parse_int_range(" 2 .. 3 ")), [2, 3])
        for bad in ["4..1", "a..b", "1..", ""]:
            with self.assertRaises(utils.UsageError, msg=bad):
                utils.parse_int_range(bad)
        logger.info("<color>RESULT:</color> Ranges are parsed <color>as "
                    "expected</color>")

    def test_parse_rational(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where <color>exact rationals"
                                        "</color> are parsed")
        self.assertEqual(utils.parse_rational("-1/2"), Fraction(-1, 2))
        self.assertEqual(utils.parse_rational("3"), 3)
        for bad in ["x", "1/0"]:
            with self.assertRaises(utils.UsageError, msg=bad):
                utils.parse_rational(bad)
        logger.info("<color>RESULT:</color> Rationals are parsed <color>as "
                    "expected</color>")

    def test_override_config_with_args(self):
        self.log_test_method_name()
        self.log_main_message(extra_msg="Case where <color>command-line "
                                        "arguments</color> override the config")
        parser = argparse.ArgumentParser()
        parser.add_argument("--jobs", type=int)
        parser.add_argument("--verbose", action="store_true")
        parser.add_argument("--extra")
        args = parser.parse_args(["--jobs", "4"])
        config = {"jobs": 1, "verbose": True}
        retval = utils.override_config_with_args(config, parser, args)
        self.assertEqual(config, {"jobs": 4, "verbose": True})
        self.assertEqual(retval.config_opts_overridden, [("jobs", 1, 4)])
        self.assertEqual(retval.args_not_found, ["extra"])
        logger.info("<color>RESULT:</color> The config is overridden <color>as "
                    "expected</color>")
