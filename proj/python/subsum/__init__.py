"""Approximation schemes for SUBSET SUM, PARTITION and UNBOUNDED SUBSET SUM.

Thin wrappers over the compiled ``_subsum`` extension. Solver results are
plain dictionaries with the same fields as the command-line JSON output.
"""

import json

from . import _subsum
from ._subsum import BudgetError, InputError, OverflowError, subset_sums

__all__ = [
    "BudgetError",
    "InputError",
    "OverflowError",
    "exact",
    "generate",
    "solve",
    "subset_sums",
    "verify",
]


def solve(problem, items, target=None, eps=0.1, d=0, threads=1, trace=False, candidates=None):
    """Approximately solve one instance; returns the result dictionary."""
    kwargs = {} if candidates is None else {"candidates": candidates}
    text = _subsum.solve_json(problem, list(items), target, eps, d, threads, trace=trace, **kwargs)
    return json.loads(text)


def exact(problem, items, target=None, budget=None):
    """Exact optimum by dynamic programming."""
    if budget is None:
        return _subsum.exact(problem, list(items), target)
    return _subsum.exact(problem, list(items), target, budget)


def generate(problem, spec):
    """Generated instance as a dictionary (see the CLI ``gen`` subcommand)."""
    return json.loads(_subsum.generate_json(problem, spec))


def verify(instance, eps=0.1, d=0):
    """Solves an instance dictionary and checks it against the exact optimum.

    Returns ``(ok, ratio, message)``.
    """
    return _subsum.verify(json.dumps(instance), instance["problem"], eps, d)
