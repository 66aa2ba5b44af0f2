"""Exact resolution graphs, inner rates and polar data of superisolated surface singularities."""

import json

from . import _core
from ._core import SCHEMA_VERSION, SisresError

__all__ = [
    "SCHEMA_VERSION",
    "SisresError",
    "check",
    "cli",
    "compare",
    "isomorphic",
    "polar",
    "resolve_germ",
    "sis_graph",
    "to_dot",
]


def resolve_germ(h, rates=False, seed=1):
    return json.loads(_core.resolve_germ(h, rates, seed))


def sis_graph(F, mode="min", rates=False, partials=False, seed=1):
    return json.loads(_core.sis_graph(F, mode, rates, partials, seed))


def polar(F, seed=1, samples=5):
    return json.loads(_core.polar(F, seed, samples))


def compare(F1, F2, polar=False, seed=1, samples=5):
    return json.loads(_core.compare(F1, F2, polar, seed, samples))


def check(F):
    return json.loads(_core.check(F))


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def to_dot(doc):
    return _core.to_dot(_text(doc))


def isomorphic(a, b, rates=True, mults=False):
    """Vertex map a -> b as a list, or None."""
    return _core.isomorphic(_text(a), _text(b), rates, mults)


def cli(*args):
    """Run the command line tool in-process; returns (exit code, stdout, stderr)."""
    return _core.cli(list(args))
