"""Verification tasks and the worker pool that runs them.

A :class:`Task` names one of :data:`TASK_KINDS` with its already parsed
parameters. :func:`plan_task` expands it into independent jobs (usually one
per degree, example or lattice) and :class:`TaskRunner` evaluates the jobs on
a :class:`~concurrent.futures.ProcessPoolExecutor`. Job reports are merged in
job order, so the number of workers never changes the content or the ordering
of a report.

"""
import logging
import random
import time
from collections import namedtuple
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from logging import NullHandler

from eigenkit import combi, verify
from eigenkit.arith import PiScalar
from eigenkit.poly import (S7_CITED, S7_EXPECTED, MultiPoly, SphereFunction,
                           complex_coordinate, make_example, random_harmonic,
                           random_multipoly)
from eigenkit.report import VerificationReport
from eigenkit.torus import (Lattice, TrigPoly, classify_shell, parse_basis,
                            random_trig_poly, smallest_nonzero_norm)
from eigenkit.utils import (DEFAULT_SEED, UsageError, check_range,
                            get_error_msg, parse_int_range, parse_rational)

logger = logging.getLogger(__name__)
logger.addHandler(NullHandler())

TASK_KINDS = ("combi-det", "combi-kernel", "combi-polys", "combi-recur",
              "sphere-verify", "sphere-l2", "torus-classify", "torus-spectrum",
              "torus-l2", "cone-check", "structure", "full-suite")

Job = namedtuple("Job", "label func args")


class Task(namedtuple("Task", "kind params")):
    """Immutable verification task.

    Parameters
    ----------
    kind : str
        One of :data:`TASK_KINDS`.
    **params
        Parsed parameters, e.g. ``n=range(1, 81)``, ``family='A'``,
        ``lattice=Lattice(...)``. Stored as a sorted tuple of items so that
        tasks compare and hash by value.

    """
    __slots__ = ()

    def __new__(cls, kind, **params):
        return super().__new__(cls, kind, tuple(sorted(params.items())))

    def get(self, name, default=None):
        return dict(self.params).get(name, default)

    def __str__(self):
        return " ".join([self.kind] + ["{}={}".format(k, v)
                                       for k, v in self.params
                                       if v is not None])


def _error_report(check_id, exc):
    report = VerificationReport("error")
    report.add(check_id, "no error", get_error_msg(exc), False)
    return report


def run_job(job, verbose=False):
    """Evaluate ``job`` and return its report.

    An exception raised by the job is logged (with its traceback if
    ``verbose``) and turned into a failed item, e.g. ``ValueError: broken``.
    """
    try:
        return job.func(*job.args)
    except Exception as e:
        if verbose:
            logger.exception(e)
        else:
            logger.error(get_error_msg(e))
        return _error_report(
            "{}{}".format(job.func.__name__.lstrip("_"), job.args), e)


def _range(value, name, minimum=None):
    if isinstance(value, range):
        values = value
    elif isinstance(value, int):
        values = range(value, value + 1)
    else:
        values = parse_int_range(value)
    if minimum is not None:
        check_range(name, values[0], minimum)
    return values


def _lattice(value):
    return value if isinstance(value, Lattice) else parse_basis(value)


def validate_task(task):
    """Check the parameters of ``task`` before anything runs.

    Raises
    ------
    UsageError
        Raised if the kind is unknown or a parameter is out of range.

    """
    if task.kind not in TASK_KINDS:
        raise UsageError("unknown task: '{}' (choose from {})".format(
            task.kind, ", ".join(TASK_KINDS)))
    kind = task.kind
    if kind == "combi-det":
        family = combi.FAMILY_ALIASES.get(task.get("family"))
        if family not in (combi.A, combi.B_SQUARE):
            raise UsageError("combi det needs family A or B: '{}'".format(
                task.get("family")))
        _range(task.get("n"), "n", 1)
    elif kind in ("combi-kernel", "combi-polys", "combi-recur"):
        _range(task.get("n"), "n", 1)
    elif kind == "sphere-verify":
        example = task.get("example")
        if example == "coordinates":
            _range(task.get("n"), "n", 2)
        elif example == "s7":
            params = task.get("s7_params")
            if params is not None and not any(params):
                raise UsageError("s7 with a = b = c = d = 0 is the zero "
                                 "function")
            check_range("count", task.get("count", 1), 1)
        else:
            raise UsageError("unknown example: '{}' (choose from {})".format(
                example, ", ".join(("coordinates", "s7"))))
        check_range("max_degree", task.get("max_degree", 1), 0)
    elif kind == "sphere-l2":
        _range(task.get("n"), "n", 2)
        check_range("max_degree", task.get("max_degree"), 2)
        check_range("family_degree", task.get("family_degree"), 0)
    elif kind in ("torus-classify", "torus-spectrum", "torus-l2"):
        lattice = _lattice(task.get("lattice"))
        if kind == "torus-classify" and task.get("q") is not None:
            check_range("q", task.get("q"), Fraction(0))
        if kind == "torus-spectrum":
            check_range("max_degree", task.get("max_degree"), 1)
        if kind == "torus-l2":
            check_range("max_degree", task.get("max_degree"), 2)
            character = task.get("character")
            if character is not None and len(character) != lattice.dim:
                raise UsageError("character {} on a {}-dimensional "
                                 "torus".format(character, lattice.dim))
    elif kind == "cone-check":
        _range(task.get("m"), "m", 2)
        check_range("max_degree", task.get("max_degree"), 1)
        check_range("count", task.get("count"), 0)
    elif kind == "structure":
        check_range("count", task.get("count"), 1)
    return task


# =====
# Combi
# =====
def _combi_det(family, n, reduction):
    report = combi.verify_det(family, n)
    if reduction:
        report.extend(combi.verify_row_reduction(family, n))
    return report


def _combi_polys(n, derivatives):
    report = combi.verify_gen_polys(n)
    if derivatives:
        report.extend(combi.verify_derivative_cases(n, "alpha"))
        report.extend(combi.verify_derivative_cases(n, "beta"))
    return report


def _combi_recur(n, surjectivity):
    report = combi.verify_recurrences(n)
    if surjectivity:
        if n >= 2:
            report.extend(combi.verify_surjectivity(n, "alpha"))
        report.extend(combi.verify_surjectivity(n, "beta"))
    return report


def _combi_kernel(n):
    return combi.verify_kernel(n).extend(combi.verify_kernel_identity(n))


# ======
# Sphere
# ======
def _coordinates(n, max_degree):
    family = make_example("coordinates", n)
    label = "coordinates n={}".format(n)
    report = VerificationReport("sphere-verify")
    report.extend(verify.check_eigenfamily(family), prefix=label)
    result = verify.check_eigenfunction(family[0])
    report.check("{} (lambda, mu)".format(label), (-(2 * n - 1), -1),
                 (result.lambda_, result.mu))
    order = verify.check_lambda_mu_order(result)
    report.add("{} lambda <= mu < 0".format(label), True, order, order)
    if max_degree:
        report.extend(verify.check_power_closure(family[0], max_degree),
                      prefix="{} z1".format(label))
    return report


def _s7_basis():
    units = [tuple(int(i == j) for j in range(4)) for i in range(4)]
    family = [make_example("s7", unit)[0] for unit in units]
    report = VerificationReport("sphere-verify")
    return report.extend(verify.check_eigenfamily(family), prefix="basis")


def _s7_tuple(params):
    report = VerificationReport("sphere-verify")
    label = "({})".format(", ".join(str(x) for x in params))
    family = make_example("s7", params)
    if not family:
        report.skip("{} (lambda, mu)".format(label), "zero function")
        return report
    result = verify.check_eigenfunction(family[0])
    computed = (result.lambda_, result.mu)
    note = None
    if computed != S7_CITED:
        note = "cited (lambda, mu) = ({}, {})".format(*S7_CITED)
        logger.warning("s7 {}: computed (lambda, mu) = ({}, {}), cited ({}, "
                       "{})".format(label, result.lambda_, result.mu,
                                    *S7_CITED))
    report.add("{} (lambda, mu)".format(label), S7_EXPECTED, computed,
               result.is_eigen and result.mu == S7_EXPECTED[1], note)
    order = verify.check_lambda_mu_order(result)
    report.add("{} lambda <= mu < 0".format(label), True, order, order)
    return report


def s7_parameter_tuples(seed, count):
    """``count`` seeded nonzero rational tuples ``(a, b, c, d)``."""
    rng = random.Random(seed)
    tuples = []
    while len(tuples) < count:
        params = tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                       for _ in range(4))
        if any(params):
            tuples.append(params)
    return tuples


def _sphere_l2(n, max_degree, family_degree):
    family = make_example("coordinates", n)
    report = VerificationReport("sphere-l2")
    report.extend(verify.check_l2_powers(family[0], max_degree),
                  prefix="z1 on S^{}".format(2 * n - 1))
    tuples = verify.exponent_tuples(len(family), family_degree)
    report.extend(verify.check_l2_family(family, tuples),
                  prefix="coordinates n={}".format(n))
    return report


# =====
# Torus
# =====
def _torus_classify(lattice, q, seed):
    if q is None:
        q = smallest_nonzero_norm(lattice)
    return classify_shell(lattice, q, seed).report


def _torus_spectrum(lattice, lambda_, mu, max_degree):
    report = verify.check_spectrum_condition(PiScalar.pi2(lambda_),
                                             PiScalar.pi2(mu), lattice,
                                             max_degree)
    return report


def _torus_l2(lattice, character, max_degree):
    if character is None:
        character = (1,) + (0,) * (lattice.dim - 1)
    f = TrigPoly.character(lattice, character)
    label = "e{}".format(tuple(character))
    report = VerificationReport("torus-l2")
    report.extend(verify.check_l2_powers(f, max_degree), prefix=label)
    report.extend(verify.check_power_closure(f, max_degree // 2),
                  prefix=label)
    return report


# ====
# Cone
# ====
def _cone_lemma(m, max_degree, seed):
    rng = random.Random("{}-cone-{}".format(seed, m))
    report = VerificationReport("cone-check")
    for degree in range(1, max_degree + 1):
        p = random_harmonic(rng, m, degree)
        q = random_harmonic(rng, m, degree)
        report.extend(verify.check_cone_lemma(p, q),
                      prefix="harmonic m={} d={}".format(m, degree))
    report.extend(verify.check_cone_lemma(MultiPoly.variable(m, 0) ** 2),
                  prefix="x1^2 m={}".format(m))
    return report


def conical_pairs(seed, count):
    """``count`` seeded conical rational pairs ``(lambda, mu, m)`` with
    ``2 <= m <= 8``."""
    rng = random.Random("{}-conical".format(seed))
    pairs = []
    while len(pairs) < count:
        mu = -Fraction(rng.randint(1, 12), rng.randint(1, 4))
        lambda_ = Fraction(rng.randint(-24, 24), rng.randint(1, 4))
        if lambda_ != mu:
            pairs.append((lambda_, mu, rng.randint(2, 8)))
    return pairs


def _cone_round_trips(seed, count):
    report = VerificationReport("cone-check")
    for lambda_, mu, m in conical_pairs(seed, count):
        params = verify.cone_parameters(lambda_, mu, m)
        label = "round trip ({}, {}) m={}".format(lambda_, mu, m)
        if not params.conical:
            report.add(label, (lambda_, mu), "not conical", False)
            continue
        report.check(label, (lambda_, mu), verify.cone_round_trip(params))
    return report


def _cone_sphere_family(n):
    m = 2 * n - 1
    lambda_, mu = -(2 * n - 1), -1
    params = verify.cone_parameters(lambda_, mu, m)
    report = VerificationReport("cone-check")
    label = "S^{} ({}, {})".format(m, lambda_, mu)
    report.check("{} (s, d)".format(label), (1, 1), (params.s, params.d))
    printed = verify.printed_cone_parameters(lambda_, mu, m)
    report.add("{} printed (s, d^2)".format(label), "round trip",
               (printed.s, printed.d_squared), None,
               "printed closed forms {} the round trip".format(
                   "satisfy" if printed.round_trip else "violate"))
    polys = [complex_coordinate(2 * n, j) for j in range(1, n + 1)]
    report.extend(verify.check_cone_correspondence(polys, 2 * n),
                  prefix="coordinates n={}".format(n))
    return report


def _cone_holomorphic(degree):
    z1, z2 = complex_coordinate(4, 1), complex_coordinate(4, 2)
    polys = [z1 ** (degree - j) * z2 ** j for j in range(degree + 1)]
    return verify.check_cone_correspondence(polys, 4)


# =========
# Structure
# =========
def _structure_sphere(seed, count, m):
    rng = random.Random("{}-sphere-{}".format(seed, m))
    pairs = [(SphereFunction(random_multipoly(rng, m, 3, 4)),
              SphereFunction(random_multipoly(rng, m, 3, 4)))
             for _ in range(count)]
    return verify.check_structure(pairs)


def _structure_torus(seed, count, basis):
    lattice = parse_basis(basis)
    rng = random.Random("{}-torus-{}".format(seed, basis))
    pairs = [(random_trig_poly(rng, lattice, 2, 3),
              random_trig_poly(rng, lattice, 2, 3)) for _ in range(count)]
    return verify.check_structure(pairs)


def example_corpus():
    """Built-in eigenfunctions: ``(name, function)``."""
    corpus = [("z1 on S^{}".format(2 * n - 1),
               make_example("coordinates", n)[0]) for n in range(2, 5)]
    corpus.append(("s7 (1, 0, 0, 0)", make_example("s7", (1, 0, 0, 0))[0]))
    for basis in ("1,0;0,1", "1,0;1/2,1"):
        lattice = parse_basis(basis)
        for k in ((1, 0), (1, 1)):
            corpus.append(("e{} on {}".format(k, basis),
                           TrigPoly.character(lattice, k)))
    return corpus


def _lambda_mu_corpus():
    report = VerificationReport("structure")
    for name, f in example_corpus():
        result = verify.check_eigenfunction(f)
        order = verify.check_lambda_mu_order(result)
        report.add("{} lambda <= mu < 0".format(name), True,
                   (result.lambda_, result.mu), result.is_eigen and order)
    return report


# ========
# Planning
# ========
def plan_task(task, config=None, label=None):
    """Expand ``task`` into independent jobs.

    Parameters
    ----------
    task : Task
        A validated task.
    config : dict, optional
        Main configuration; ``full-suite`` reads its ``full_suite`` section.
    label : str, optional
        Prefix of the item ids of every job.

    Returns
    -------
    jobs : list of Job

    """
    config = config or {}
    seed = task.get("seed", config.get("seed", DEFAULT_SEED))
    kind = task.kind
    jobs = []

    def add(func, *args):
        jobs.append(Job(label, func, args))

    if kind == "combi-det":
        family = combi.FAMILY_ALIASES[task.get("family")]
        for n in _range(task.get("n"), "n", 1):
            add(_combi_det, family, n, bool(task.get("reduction")))
        if task.get("examples"):
            add(combi.verify_printed_examples)
    elif kind == "combi-kernel":
        for n in _range(task.get("n"), "n", 1):
            add(_combi_kernel, n)
    elif kind == "combi-polys":
        for n in _range(task.get("n"), "n", 1):
            add(_combi_polys, n, task.get("derivatives", True))
    elif kind == "combi-recur":
        for n in _range(task.get("n"), "n", 1):
            add(_combi_recur, n, task.get("surjectivity", True))
    elif kind == "sphere-verify":
        if task.get("example") == "coordinates":
            for n in _range(task.get("n"), "n", 2):
                add(_coordinates, n, task.get("max_degree", 0))
        else:
            # one "s7" prefix per id, standalone or in the full suite
            s7_label = label or "s7"
            jobs.append(Job(s7_label, _s7_basis, ()))
            params = task.get("s7_params")
            tuples = [params] if params is not None \
                else s7_parameter_tuples(seed, task.get("count", 1))
            for params in tuples:
                jobs.append(Job(s7_label, _s7_tuple, (params,)))
    elif kind == "sphere-l2":
        for n in _range(task.get("n"), "n", 2):
            add(_sphere_l2, n, task.get("max_degree"),
                task.get("family_degree"))
    elif kind == "torus-classify":
        add(_torus_classify, _lattice(task.get("lattice")), task.get("q"),
            seed)
    elif kind == "torus-spectrum":
        add(_torus_spectrum, _lattice(task.get("lattice")),
            task.get("lambda_"), task.get("mu"), task.get("max_degree"))
    elif kind == "torus-l2":
        add(_torus_l2, _lattice(task.get("lattice")), task.get("character"),
            task.get("max_degree"))
    elif kind == "cone-check":
        ms = _range(task.get("m"), "m", 2)
        for m in ms:
            add(_cone_lemma, m, task.get("max_degree"), seed)
        add(_cone_round_trips, seed, task.get("count"))
        for n in _range(task.get("sphere_n", "2..6"), "sphere_n", 2):
            add(_cone_sphere_family, n)
        for degree in range(1, task.get("max_degree") + 1):
            add(_cone_holomorphic, degree)
    elif kind == "structure":
        count = task.get("count")
        add(_structure_sphere, seed, count, 3)
        add(_structure_sphere, seed, count, 4)
        add(_structure_torus, seed, count, "1,0;0,1")
        add(_structure_torus, seed, count, "1,0;1/2,1")
        add(_lambda_mu_corpus)
    elif kind == "full-suite":
        for sub_label, sub_task in full_suite_tasks(config, seed):
            jobs.extend(plan_task(validate_task(sub_task), config, sub_label))
    return jobs


def full_suite_tasks(config, seed=DEFAULT_SEED):
    """The tasks of ``full-suite`` with their labels, from the
    ``full_suite`` section of the main config."""
    suite = config.get("full_suite", {})
    tasks = [
        ("det A", Task("combi-det", family="A", n=suite["det_n"],
                       reduction=False, examples=False)),
        ("det B", Task("combi-det", family="B", n=suite["det_n"],
                       reduction=False, examples=True)),
        ("kernel", Task("combi-kernel", n=suite["kernel_n"])),
        ("reduction A", Task("combi-det", family="A", n=suite["reduction_n"],
                             reduction=True)),
        ("reduction B", Task("combi-det", family="B", n=suite["reduction_n"],
                             reduction=True)),
        ("polys", Task("combi-polys", n=suite["polys_n"], derivatives=False)),
        ("derivatives", Task("combi-polys", n=suite["derivatives_n"],
                             derivatives=True)),
        ("recur", Task("combi-recur", n=suite["polys_n"],
                       surjectivity=False)),
        ("surjectivity", Task("combi-recur", n=suite["derivatives_n"],
                              surjectivity=True)),
        ("sphere", Task("sphere-verify", example="coordinates",
                        n=suite["coordinates_n"],
                        max_degree=suite["power_max_degree"])),
        ("s7", Task("sphere-verify", example="s7", count=suite["s7_count"],
                    seed=seed, max_degree=0)),
        ("l2 sphere", Task("sphere-l2", n=2,
                           max_degree=suite["l2_max_degree"],
                           family_degree=suite["l2_family_degree"])),
        ("l2 torus", Task("torus-l2", lattice="1,0;0,1", character=(1, 0),
                          max_degree=suite["l2_max_degree"])),
    ]
    for basis, q in suite["torus_classify"]:
        q = None if q is None else parse_rational(q)
        tasks.append(("classify {} q={}".format(basis, q if q is not None
                                                else "min"),
                      Task("torus-classify", lattice=basis, q=q, seed=seed)))
    for lambda_, mu in suite["spectrum_pairs"]:
        tasks.append(("spectrum ({}, {})".format(lambda_, mu),
                      Task("torus-spectrum", lattice="1,0;0,1",
                           lambda_=parse_rational(lambda_),
                           mu=parse_rational(mu),
                           max_degree=suite["spectrum_max_d"])))
    tasks.append(("cone", Task("cone-check", m=suite["cone_m"],
                               max_degree=suite["cone_max_degree"],
                               count=suite["cone_pairs"], seed=seed)))
    tasks.append(("structure", Task("structure",
                                    count=suite["structure_cases"],
                                    seed=seed)))
    return tasks


class TaskRunner:
    """Run the jobs of a task on a pool of worker processes.

    Parameters
    ----------
    jobs : int, optional
        Number of worker processes. With 1, jobs run in the calling process.
    timing : bool, optional
        If `False`, every report has ``ms = 0``.
    verbose : bool, optional
        Log tracebacks of failing jobs.

    """

    def __init__(self, jobs=1, timing=True, verbose=False):
        self.jobs = check_range("jobs", int(jobs), 1)
        self.timing = timing
        self.verbose = verbose

    def run_jobs(self, jobs):
        """Evaluate ``jobs`` and return their reports in job order."""
        workers = min(self.jobs, len(jobs))
        if workers <= 1:
            return [run_job(job, self.verbose) for job in jobs]
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(run_job, job, self.verbose)
                       for job in jobs]
            results = []
            for index, future in enumerate(futures):
                # Pickling errors and dead workers surface here
                try:
                    results.append(future.result())
                except Exception as e:
                    logger.error("job {}: {}".format(index, get_error_msg(e)))
                    results.append(_error_report("job {}".format(index), e))
        return results

    def run(self, task, config=None):
        """Validate, plan and run ``task``.

        Returns
        -------
        report : VerificationReport
            Items of every job, in job order.

        Raises
        ------
        UsageError
            Raised if the task is invalid.

        """
        validate_task(task)
        start = time.perf_counter()
        jobs = plan_task(task, config)
        logger.debug("{}: {} jobs on {} workers".format(task, len(jobs),
                                                       self.jobs))
        report = VerificationReport(task.kind)
        for job, result in zip(jobs, self.run_jobs(jobs)):
            report.extend(result, prefix=job.label)
        if self.timing:
            report.ms = int((time.perf_counter() - start) * 1000)
        logger.info("{}: {} ({} items)".format(task.kind, report.status,
                                               len(report.items)))
        return report
