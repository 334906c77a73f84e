"""Collection of utilities for the *eigenkit* project.
"""
import codecs
import json
import os
import re
import shutil
from collections import namedtuple
from fractions import Fraction

from eigenkit import configs

_CFG_EXT = "json"
_LOG_CFG_FILENAME = 'logging_cfg'
_MAIN_CFG_FILENAME = 'main_cfg'
_CFG_FILENAMES = namedtuple("cfg_filenames", "user_cfg default_cfg")
# Seed of every seeded check when neither the config, --seed nor EIGENKIT_SEED
# sets one
DEFAULT_SEED = 31415
_RANGE_REGEX = re.compile(r"^\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?$")


def _add_cfg_filenames():
    """Fill the user and default config filenames, keyed by config type
    (``log``, ``main``, ``default_log``, ``default_main``).
    """
    _CFG_FILENAMES.user_cfg = {
        'log': '{}.'.format(_LOG_CFG_FILENAME) + _CFG_EXT,
        'main': '{}.'.format(_MAIN_CFG_FILENAME) + _CFG_EXT}
    _CFG_FILENAMES.default_cfg = dict(
        [("default_" + k, "default_" + v)
         for k, v in _CFG_FILENAMES.user_cfg.items()])


_add_cfg_filenames()


class UsageError(ValueError):
    """Raised when an operation or a command-line task gets an argument outside
    of its accepted range, e.g. a negative matrix size or malformed lattice
    text. The CLI turns it into exit code 2."""


def check_range(name, value, minimum=None, maximum=None):
    """Raise :exc:`UsageError` unless ``minimum <= value <= maximum``.

    Parameters
    ----------
    name : str
        Name of the checked argument, used in the error message.
    value : int or Fraction
        Value to check.
    minimum, maximum : int or Fraction, optional
        Inclusive bounds; :obj:`None` means unbounded on that side.

    Returns
    -------
    value : int or Fraction
        The checked value, unchanged.

    Raises
    ------
    UsageError
        Raised if ``value`` is out of range.

    """
    if (minimum is not None and value < minimum) \
            or (maximum is not None and value > maximum):
        bounds = "[{}, {}]".format("-inf" if minimum is None else minimum,
                                   "inf" if maximum is None else maximum)
        raise UsageError("{} out of range: {} (accepted range: {})".format(
            name, value, bounds))
    return value


def dumps_json(filepath, data, encoding='utf8', ensure_ascii=False,
               indent=None, sort_keys=False):
    """Write data to a JSON file.

    The data is first serialized to a JSON formatted string and then saved
    to disk.

    Parameters
    ----------
    filepath : str
        Path to the JSON file where the data will be saved.
    data
        Data to be written to the JSON file.
    encoding : str, optional
        Encoding to be used for opening the JSON file in write mode (the
        default value is '*utf8*').
    ensure_ascii : bool, optional
        See the ``json.dumps`` docstring description (the default value is
        *False*).
    indent : int or None, optional
        See the ``json.dumps`` docstring description (the default value is
        :obj:`None`).
    sort_keys : bool, optional
        See the ``json.dumps`` docstring description (the default value is
        *False*).

    Raises
    ------
    OSError
        Raised if any I/O related error occurs while writing the data to disk,
        e.g. the file doesn't exist.

    """
    with codecs.open(filepath, 'w', encoding) as f:
        f.write(json.dumps(data,
                           ensure_ascii=ensure_ascii,
                           indent=indent,
                           sort_keys=sort_keys))


def get_cfg_dirpath():
    """Get the path to the directory containing the config files.

    Returns
    -------
    dirpath : str
        The path to the directory containing the config files.

    """
    return configs.__path__[0]


def get_cfg_filepath(file_type):
    """Get the path to a config file used by the :mod:`eigenkit.cli` script.

    ``file_type`` accepts the following values:

    - **default_log**: the default logging configuration file, a
      :func:`logging.config.dictConfig` dictionary.
    - **default_main**: the default main configuration file with the run
      options and the ``full-suite`` parameters.
    - **log**: the user copy of the logging configuration file.
    - **main**: the user copy of the main configuration file.

    Parameters
    ----------
    file_type : str, {'*default_log*', '*default_main*', '*log*', '*main*'}
        The type of config file for which we want the path.

    Returns
    -------
    filepath : str
        The path to the config file.

    Raises
    ------
    AssertionError
        Raised if the wrong type of config file is given to the function.

    """
    valid_file_types = list(_CFG_FILENAMES.user_cfg.keys()) \
        + list(_CFG_FILENAMES.default_cfg.keys())
    assert file_type in valid_file_types, \
        "Wrong type of config file: '{}' (choose from {})".format(
            file_type, ", ".join(valid_file_types))
    if file_type.startswith('default'):
        filename = _CFG_FILENAMES.default_cfg[file_type]
    else:
        filename = _CFG_FILENAMES.user_cfg[file_type]
    return os.path.join(get_cfg_dirpath(), filename)


def get_cfg_dict(cfg_type):
    """Load a user config file, creating it from the default one if missing.

    Parameters
    ----------
    cfg_type : str, {'log', 'main'}
        The type of config file to load.

    Returns
    -------
    cfg_dict : dict
        The configuration data.

    """
    cfg_filepath = get_cfg_filepath(cfg_type)
    try:
        return load_json(cfg_filepath)
    except FileNotFoundError:
        shutil.copy(get_cfg_filepath("default_{}".format(cfg_type)),
                    cfg_filepath)
        return load_json(cfg_filepath)


def check_user_cfg_dict(cfg_type, user_cfg_dict):
    """Add to a user config dict the keys it is missing from the default one.

    The check goes one level deep into ``loggers`` for the logging config and
    into ``full_suite`` for the main config. The updated dict is saved back to
    the user file when keys were added.

    Returns
    -------
    retval : :obj:`collections.namedtuple`
        ``keys_not_found`` (list of added keys) and ``user_cfg_filepath``.

    """
    retval = namedtuple("retval", "keys_not_found user_cfg_filepath")
    retval.keys_not_found = []
    retval.user_cfg_filepath = get_cfg_filepath(cfg_type)
    default_cfg_dict = load_json(get_cfg_filepath("default_{}".format(cfg_type)))
    for section in (None, 'loggers', 'full_suite'):
        if section is None:
            default_dict, user_dict = default_cfg_dict, user_cfg_dict
        else:
            default_dict = default_cfg_dict.get(section)
            user_dict = user_cfg_dict.get(section)
            if not isinstance(default_dict, dict) \
                    or not isinstance(user_dict, dict):
                continue
        for k in sorted(set(default_dict) - set(user_dict)):
            retval.keys_not_found.append(k)
            user_dict[k] = default_dict[k]
    if retval.keys_not_found:
        dumps_json(filepath=retval.user_cfg_filepath, data=user_cfg_dict,
                   indent=2)
    return retval


def get_error_msg(exc):
    """One-line diagnostic ``ClassName: message`` for an exception."""
    return "{}: {}".format(exc.__class__.__name__, exc)


def load_json(filepath, encoding='utf8'):
    """Load JSON data from a file on disk.

    Parameters
    ----------
    filepath : str
        Path to the JSON file which will be read.
    encoding : str, optional
        Encoding to be used for opening the JSON file in read mode (the default
        value is '*utf8*').

    Returns
    -------
    data : dict
        Data loaded from the JSON file.

    Raises
    ------
    OSError
        Raised if any I/O related error occurs while reading the file, e.g. the
        file doesn't exist.

    """
    with codecs.open(filepath, 'r', encoding) as f:
        return json.load(f)


def override_config_with_args(config, parser, args=None):
    """Override a config dictionary with arguments from the command-line.

    Parameters
    ----------
    config : dict
        Dictionary containing configuration options.
    parser : argparse.ArgumentParser
        Argument parser.
    args : argparse.Namespace, optional
        Already parsed arguments (the default value is :obj:`None` which
        implies that ``parser`` parses :obj:`sys.argv`).

    Returns
    -------
    retval : :obj:`collections.namedtuple`
        Contains two lists:

        1. `args_not_found`: saves command-line arguments not found in the
        config dictionary

        2. `config_opts_overridden`: saves config options overridden by
        command-line arguments as a three-tuple (option name, old value,
        new value)

    """
    args = (args if args is not None else parser.parse_args()).__dict__
    retval = namedtuple("retval", "args_not_found config_opts_overridden")
    retval.args_not_found = []
    retval.config_opts_overridden = []
    for opt_name, new_val in args.items():
        if opt_name not in config:
            retval.args_not_found.append(opt_name)
            continue
        old_val = config[opt_name]
        if new_val is None or new_val is False:
            continue
        if new_val != old_val:
            config[opt_name] = new_val
            retval.config_opts_overridden.append((opt_name, old_val, new_val))
    return retval


def parse_int_range(text):
    """Parse ``"a..b"`` or ``"a"`` into an inclusive :obj:`range`.

    Raises
    ------
    UsageError
        Raised if ``text`` is malformed or the range is empty.

    """
    match = _RANGE_REGEX.match(str(text))
    if not match:
        raise UsageError("malformed range: '{}' (expected <int> or "
                         "<int>..<int>)".format(text))
    start = int(match.group(1))
    stop = int(match.group(2)) if match.group(2) is not None else start
    if stop < start:
        raise UsageError("empty range: '{}'".format(text))
    return range(start, stop + 1)


def parse_rational(text):
    """Parse an exact rational such as ``"3"``, ``"-1/2"``.

    Raises
    ------
    UsageError
        Raised if ``text`` is not an exact rational.

    """
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError("not an exact rational: '{}'".format(text))
