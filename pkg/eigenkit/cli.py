#!/usr/bin/env python
"""Command-line front end of *eigenkit*.

Each invocation runs one verification task and writes its report to standard
output (JSON or text); logging goes to standard error.

.. _usage-eigenkit-label:

Usage
-----

.. highlight:: console

Once the ``eigenkit`` package is installed, you should have access to the
:mod:`eigenkit` script:

    ``eigenkit <group> <command> [options]``

Check the determinant identities of :math:`A(n)` for :math:`n \\leq 80`::

    $ eigenkit combi det --family A --n 1..80 --format json

Classify the eigenfamilies of the smallest shell of the square torus::

    $ eigenkit torus classify --basis "1,0;0,1" --q 1

Check the :math:`S^7` family for one parameter tuple::

    $ eigenkit sphere verify --example s7 --a 1 --b 0 --c 0 --d 0

Run every acceptance check with the parameters of the main config file::

    $ eigenkit full-suite --jobs 4

.. highlight:: python

Exit codes: 0 if every check passed, 1 if at least one failed, 2 for a usage
error (bad flag, malformed lattice, out-of-range parameter).

"""
import argparse
import logging.config
import os
import sys

from eigenkit import __version__ as package_version
from eigenkit import combi
from eigenkit.poly import EXAMPLE_KINDS
from eigenkit.runner import Task, TaskRunner
from eigenkit.utils import (UsageError, check_user_cfg_dict, get_cfg_dict,
                            get_error_msg, override_config_with_args,
                            parse_rational)

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

package_name = "eigenkit"
SEED_ENV_VAR = "EIGENKIT_SEED"
EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _common_parser():
    """Options accepted after every command."""
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("General options")
    group.add_argument("-q", "--quiet", action="store_true",
                       help="Enable quiet mode, i.e. no logging at all.")
    group.add_argument("-v", "--verbose", action="store_true",
                       help="Print various debugging information, e.g. print "
                            "traceback when there is an exception.")
    group.add_argument("--format", choices=["json", "text"],
                       help="Report format (default from the main config).")
    group.add_argument("--jobs", type=int,
                       help="Number of worker processes.")
    group.add_argument("--seed", type=int,
                       help="Seed of every seeded check; the {} environment "
                            "variable takes precedence.".format(SEED_ENV_VAR))
    group.add_argument("--transpose", action="store_true",
                       help="Print matrices of text reports transposed.")
    group.add_argument("--no-timing", dest="no_timing", action="store_true",
                       help="Report 0 ms so that runs are byte-identical.")
    return common


def setup_argparser():
    """Setup the argument parser for the command-line script.

    Returns
    -------
    parser : argparse.ArgumentParser
        Argument parser with one sub-command per task kind.

    """
    common = _common_parser()
    fmt = argparse.ArgumentDefaultsHelpFormatter
    parser = argparse.ArgumentParser(
        prog=package_name,
        description="Exact verification of eigenfunction and eigenfamily "
                    "identities: binomial determinants, round spheres, flat "
                    "tori and cones.",
        formatter_class=fmt)
    parser.add_argument("--version", action='version',
                        version='%(prog)s {}'.format(package_version))
    groups = parser.add_subparsers(dest="group", metavar="<group>")
    groups.required = True

    def command(subparsers, name, kind, help_msg):
        sub = subparsers.add_parser(name, parents=[common], help=help_msg,
                                    formatter_class=fmt)
        sub.set_defaults(kind=kind)
        return sub

    # =====
    # combi
    # =====
    combi_parser = groups.add_parser("combi", help="Binomial matrices.")
    combi_cmds = combi_parser.add_subparsers(dest="command",
                                             metavar="<command>")
    combi_cmds.required = True
    det = command(combi_cmds, "det", "combi-det",
                  "Determinants of A(n) or B(n).")
    det.add_argument("--family", default="A",
                     choices=sorted(combi.FAMILY_ALIASES),
                     help="Matrix family.")
    det.add_argument("--reduction", action="store_true",
                     help="Also check the row-reduction chain.")
    det.add_argument("--examples", action="store_true",
                     help="Also check the four printed example matrices.")
    kernel = command(combi_cmds, "kernel", "combi-kernel",
                     "Kernel of the rectangular B(2n).")
    polys = command(combi_cmds, "polys", "combi-polys",
                    "Generating polynomials and derivative cases.")
    recur = command(combi_cmds, "recur", "combi-recur",
                    "Row recurrences and surjectivity witnesses.")
    for sub in (det, kernel, polys, recur):
        sub.add_argument("--n", default="1..10",
                         help="Degree or inclusive range a..b.")
    # ======
    # sphere
    # ======
    sphere_parser = groups.add_parser("sphere", help="Round spheres.")
    sphere_cmds = sphere_parser.add_subparsers(dest="command",
                                               metavar="<command>")
    sphere_cmds.required = True
    sverify = command(sphere_cmds, "verify", "sphere-verify",
                      "Check a built-in eigenfamily.")
    sverify.add_argument("--example", default="coordinates",
                         choices=EXAMPLE_KINDS, help="Built-in example.")
    sverify.add_argument("--n", default="2..3",
                         help="coordinates: n (range) for S^(2n-1).")
    for name in ("a", "b", "c", "d"):
        sverify.add_argument("--{}".format(name),
                             help="s7: rational parameter {}.".format(name))
    sverify.add_argument("--count", type=int, default=3,
                         help="s7: number of seeded parameter tuples when "
                              "--a..--d are not given.")
    sverify.add_argument("--max-degree", dest="max_degree", type=int,
                         default=4,
                         help="Largest power checked for closure.")
    sl2 = command(sphere_cmds, "l2", "sphere-l2",
                  "L2 relations of z1 and of {z1, ..., zn}.")
    sl2.add_argument("--n", default="2", help="S^(2n-1).")
    sl2.add_argument("--max-degree", dest="max_degree", type=int, default=10,
                     help="Largest degree of the power integrals.")
    sl2.add_argument("--family-degree", dest="family_degree", type=int,
                     default=6,
                     help="Largest total degree of the family exponents.")
    # =====
    # torus
    # =====
    torus_parser = groups.add_parser("torus", help="Flat tori.")
    torus_cmds = torus_parser.add_subparsers(dest="command",
                                             metavar="<command>")
    torus_cmds.required = True
    classify = command(torus_cmds, "classify", "torus-classify",
                       "Classify the eigenfamilies of one norm shell.")
    classify.add_argument("--q", help="Squared norm of the shell (default: "
                                      "the smallest nonzero one).")
    spectrum = command(torus_cmds, "spectrum", "torus-spectrum",
                       "Spectral condition for a pair (lambda, mu).")
    spectrum.add_argument("--lambda", dest="lambda_", default="-1",
                          help="lambda as a rational multiple of PI2.")
    spectrum.add_argument("--mu", default="-1",
                          help="mu as a rational multiple of PI2.")
    spectrum.add_argument("--max-degree", dest="max_degree", type=int,
                          default=10, help="Largest power d.")
    tl2 = command(torus_cmds, "l2", "torus-l2",
                  "L2 relations of a character.")
    tl2.add_argument("--character", help="Dual coordinates, e.g. '1,0' "
                                         "(default: first dual basis "
                                         "vector).")
    tl2.add_argument("--max-degree", dest="max_degree", type=int, default=10,
                     help="Largest degree of the power integrals.")
    for sub in (classify, spectrum, tl2):
        sub.add_argument("--basis", default="1,0;0,1",
                         help="Lattice basis, rows separated by ';'.")
    # ====
    # cone
    # ====
    cone_parser = groups.add_parser("cone", help="Cone correspondence.")
    cone_cmds = cone_parser.add_subparsers(dest="command",
                                           metavar="<command>")
    cone_cmds.required = True
    cone = command(cone_cmds, "check", "cone-check",
                   "Cone lemma, correspondence and parameters.")
    cone.add_argument("--n", default="2..6",
                      help="Numbers m of variables for the harmonic "
                           "polynomials.")
    cone.add_argument("--max-degree", dest="max_degree", type=int, default=4,
                      help="Largest degree of the harmonic polynomials.")
    cone.add_argument("--count", type=int, default=50,
                      help="Number of seeded conical pairs.")
    # ==========
    # full-suite
    # ==========
    command(groups, "full-suite", "full-suite",
            "Every acceptance check with the parameters of the main config.")
    structure = command(groups, "structure", "structure",
                        "Product rule, integration by parts and Laplacian "
                        "integral on seeded elements.")
    structure.add_argument("--count", type=int, default=200,
                           help="Seeded cases per carrier.")
    return parser


def _parse_character(text):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError("malformed character: '{}' (expected integers like "
                         "'1,0')".format(text))


def build_task(args, seed):
    """Turn parsed arguments into a :class:`~eigenkit.runner.Task`.

    Raises
    ------
    UsageError
        Raised if an argument cannot be parsed.

    """
    kind = args.kind
    if kind == "combi-det":
        return Task(kind, family=args.family, n=args.n,
                    reduction=args.reduction, examples=args.examples)
    if kind in ("combi-kernel", "combi-polys", "combi-recur"):
        return Task(kind, n=args.n)
    if kind == "sphere-verify":
        s7_params = None
        values = [args.a, args.b, args.c, args.d]
        if any(v is not None for v in values):
            s7_params = tuple(parse_rational(v if v is not None else 0)
                              for v in values)
        return Task(kind, example=args.example, n=args.n,
                    s7_params=s7_params, count=args.count,
                    max_degree=args.max_degree, seed=seed)
    if kind == "sphere-l2":
        return Task(kind, n=args.n, max_degree=args.max_degree,
                    family_degree=args.family_degree)
    if kind == "torus-classify":
        q = None if args.q is None else parse_rational(args.q)
        return Task(kind, lattice=args.basis, q=q, seed=seed)
    if kind == "torus-spectrum":
        return Task(kind, lattice=args.basis,
                    lambda_=parse_rational(args.lambda_),
                    mu=parse_rational(args.mu), max_degree=args.max_degree)
    if kind == "torus-l2":
        character = None if args.character is None \
            else _parse_character(args.character)
        return Task(kind, lattice=args.basis, character=character,
                    max_degree=args.max_degree)
    if kind == "cone-check":
        return Task(kind, m=args.n, max_degree=args.max_degree,
                    count=args.count, seed=seed)
    if kind == "structure":
        return Task(kind, count=args.count, seed=seed)
    return Task(kind, seed=seed)


def _seed_from_env(default):
    value = os.environ.get(SEED_ENV_VAR)
    if value is None or value == "":
        return default
    try:
        return int(value)
    except ValueError:
        raise UsageError("{} is not an integer: '{}'".format(SEED_ENV_VAR,
                                                            value))


def set_package_loggers_disabled(disabled):
    """Disable or re-enable the package logger and every module logger."""
    names = [package_name] + [
        name for name in logging.Logger.manager.loggerDict
        if name.startswith(package_name + ".")]
    for name in names:
        logging.getLogger(name).disabled = disabled


def main(argv=None):
    """Main entry-point to the script.

    Parameters
    ----------
    argv : list of str, optional
        Command-line arguments (the default value is :obj:`None` which implies
        :obj:`sys.argv`).

    Returns
    -------
    retcode : int
        0 if every check passed, 1 if a check failed, 2 for a usage error.

    """
    global logger
    parser = setup_argparser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits with 2 on bad flags and 0 on --help/--version
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    # Get main config dict and check if keys missing
    main_cfg_dict = get_cfg_dict('main')
    check_main_cfg_retval = check_user_cfg_dict('main', main_cfg_dict)
    # Override logging configuration with command-line arguments
    override_retval = override_config_with_args(main_cfg_dict, parser, args)
    if args.no_timing:
        main_cfg_dict['timing'] = False

    # ==============================
    # Logging setup from config file
    # ==============================
    # NOTE: if quiet and verbose are both activated, only quiet will have an effect
    check_log_cfg_retval = None
    set_package_loggers_disabled(main_cfg_dict['quiet'])
    if not main_cfg_dict['quiet']:
        logging_cfg_dict = get_cfg_dict('log')
        check_log_cfg_retval = check_user_cfg_dict('log', logging_cfg_dict)
        if main_cfg_dict['verbose']:
            for k in ['handlers', 'loggers']:
                for name, val in logging_cfg_dict[k].items():
                    val['level'] = "DEBUG"
        logging.config.dictConfig(logging_cfg_dict)
        logger = logging.getLogger(__name__)

    # ==================================================
    # Start logging and process previous returned values
    # ==================================================
    logger.debug("Running {} v{}".format(package_name, package_version))
    for retval in [check_main_cfg_retval, check_log_cfg_retval]:
        if retval is None or not retval.keys_not_found:
            continue
        logger.info("checked configuration file '{}': {} keys missing".format(
            os.path.basename(retval.user_cfg_filepath),
            len(retval.keys_not_found)))
        for i, k in enumerate(retval.keys_not_found):
            logger.warning("{}) Key '{}' not found. Added it in the "
                           "configuration dict with default "
                           "values.".format(i + 1, k))
    if override_retval.config_opts_overridden:
        msg = "Config options overridden by command-line arguments:"
        for cfg_name, old_v, new_v in override_retval.config_opts_overridden:
            msg += "\n\t {}: {} --> {}".format(cfg_name, old_v, new_v)
        logger.debug(msg)

    # =======
    # Actions
    # =======
    try:
        seed = _seed_from_env(main_cfg_dict['seed'])
        main_cfg_dict['seed'] = seed
        task = build_task(args, seed)
        runner = TaskRunner(jobs=main_cfg_dict['jobs'],
                            timing=main_cfg_dict['timing'],
                            verbose=main_cfg_dict['verbose'])
        logger.info("Running task: {}".format(task))
        report = runner.run(task, main_cfg_dict)
    except UsageError as e:
        if main_cfg_dict['verbose']:
            logger.exception(e)
        print(get_error_msg(e), file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        if main_cfg_dict['verbose']:
            logger.exception(e)
        else:
            logger.error(get_error_msg(e))
        return EXIT_FAIL
    if main_cfg_dict['format'] == "text":
        print(report.to_text(transpose=args.transpose))
    else:
        print(report.to_json())
    return EXIT_PASS if report.passed else EXIT_FAIL


if __name__ == '__main__':
    sys.exit(main())
