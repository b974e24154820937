"""Requirements models: parsing, reasoning, graded membership and linting."""

import json as _json
from fractions import Fraction

from ._desiree import (  # noqa: F401
    DesireeError,
    consistency,
    element_ids,
    format_model,
    fulfill,
    interval_pair,
    parse_diagnostics,
    query,
    subsumes,
    to_owl,
)
from . import _desiree


def membership(model, quality, value):
    """Region name -> exact degree."""
    return {r: Fraction(d) for r, d in _desiree.membership(model, quality, str(value))}


def lint(model):
    return _json.loads(_desiree.lint(model))
