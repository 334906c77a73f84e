"""Verification reports and the exact serialization of their witnesses.

A :class:`VerificationReport` is what every verification operation returns
and what the CLI prints. Each :class:`CheckItem` keeps the exact expected and
computed values; they are turned into strings only when the report is
rendered, so nothing is ever rounded:

* :obj:`int` and :class:`~fractions.Fraction` as ``"p"`` or ``"p/q"``
* :class:`~eigenkit.arith.GaussianRational` as ``"p/q+r/s*i"``
* :class:`~eigenkit.arith.PiScalar` as ``"c0 + c1*PI2"`` where ``PI2`` stands
  for :math:`4\\pi^2`
* sequences as ``"(x, y, ...)"`` and matrices as ``"[[...], [...]]"``

"""
import json
import logging
from collections import namedtuple
from fractions import Fraction
from logging import NullHandler

from eigenkit.arith import ExactMatrix

logger = logging.getLogger(__name__)
logger.addHandler(NullHandler())

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"

CheckItem = namedtuple("CheckItem", "id expected computed passed note")
CheckItem.__new__.__defaults__ = (None,)
CheckItem.__doc__ = """One check of a report.

``passed`` is :obj:`True`, :obj:`False` or :obj:`None` (skipped); ``note`` is
an optional free-text remark, e.g. a discrepancy with a cited value.
"""


def serialize(value):
    """Exact string form of a witness value."""
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return value
    if isinstance(value, ExactMatrix):
        return "[{}]".format(", ".join(
            "[{}]".format(", ".join(serialize(x) for x in row))
            for row in value.tolist()))
    if isinstance(value, (tuple, list)):
        return "({})".format(", ".join(serialize(x) for x in value))
    if isinstance(value, Fraction):
        return str(value)
    return str(value)


class VerificationReport:
    """Structured pass/fail result of a verification task.

    Parameters
    ----------
    task : str
        Name of the task echoed in the rendered report.
    items : list of CheckItem, optional
        Initial items.

    Attributes
    ----------
    ms : int
        Wall time in milliseconds; set by the runner, 0 when timing is
        disabled.

    """

    def __init__(self, task, items=None):
        self.task = task
        self.items = list(items or [])
        self.ms = 0

    @property
    def status(self):
        """``fail`` iff any item failed, ``skipped`` if no item was decided."""
        if any(item.passed is False for item in self.items):
            return FAIL
        if any(item.passed for item in self.items):
            return PASS
        return SKIPPED

    @property
    def passed(self):
        return self.status != FAIL

    def check(self, check_id, expected, computed, note=None):
        """Add an item which passes iff ``expected == computed``."""
        passed = bool(expected == computed)
        self.items.append(CheckItem(check_id, expected, computed, passed, note))
        return passed

    def add(self, check_id, expected, computed, passed, note=None):
        """Add an item with an explicit verdict."""
        self.items.append(CheckItem(check_id, expected, computed,
                                    None if passed is None else bool(passed),
                                    note))
        return passed

    def skip(self, check_id, note=None):
        self.items.append(CheckItem(check_id, None, None, None, note))

    def extend(self, other, prefix=None):
        """Append the items of ``other``; their ids get ``prefix`` if given."""
        for item in other.items:
            if prefix:
                item = item._replace(id="{} {}".format(prefix, item.id))
            self.items.append(item)
        return self

    def failures(self):
        return [item for item in self.items if item.passed is False]

    def to_dict(self):
        items = []
        for item in self.items:
            entry = {"id": item.id,
                     "expected": serialize(item.expected),
                     "computed": serialize(item.computed),
                     "pass": item.passed}
            if item.note:
                entry["note"] = item.note
            items.append(entry)
        return {"task": self.task, "status": self.status, "items": items,
                "ms": int(self.ms)}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def to_text(self, transpose=False):
        """Human-readable rendering, one line per item.

        Matrix witnesses are printed below their item, transposed if
        ``transpose`` is set.
        """
        lines = ["{} [{}] ({} items, {} ms)".format(
            self.task, self.status.upper(), len(self.items), int(self.ms))]
        for item in self.items:
            verdict = {True: "PASS", False: "FAIL", None: "SKIP"}[item.passed]
            line = "  {:4} {}".format(verdict, item.id)
            if not isinstance(item.computed, ExactMatrix) \
                    and item.passed is not None:
                line += ": expected {}, computed {}".format(
                    serialize(item.expected), serialize(item.computed))
            if item.note:
                line += " ({})".format(item.note)
            lines.append(line)
            for value in (item.expected, item.computed):
                if isinstance(value, ExactMatrix):
                    matrix = value.transpose() if transpose else value
                    lines.extend("      " + row
                                 for row in str(matrix).splitlines())
        return "\n".join(lines)

    def __repr__(self):
        return "VerificationReport(task={!r}, status={!r}, items={})".format(
            self.task, self.status, len(self.items))


def merge_reports(task, reports):
    """Merge sub-reports in order into one report named ``task``.

    Item ids are prefixed by the sub-report task name.
    """
    merged = VerificationReport(task)
    for report in reports:
        merged.extend(report, prefix=report.task)
        merged.ms += report.ms
    logger.debug("merged {} reports into '{}': {} items".format(
        len(reports), task, len(merged.items)))
    return merged
