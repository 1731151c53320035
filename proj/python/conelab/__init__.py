"""Python bindings for conelab.

Exact values travel as ``fractions.Fraction``; the extension exchanges them as
``"p/q"`` strings.
"""

import json
from fractions import Fraction

from . import _core
from ._core import ParseError, fixture_dir

__all__ = [
    "Clan",
    "Rep",
    "ParseError",
    "fixture_dir",
    "load_clan",
    "load_rep",
    "builtin_rep",
]


def _out(values):
    return [str(Fraction(v)) for v in values]


def _in(values):
    return [Fraction(v) for v in values]


def _fractions(obj, keys):
    for key in keys:
        if key in obj:
            value = obj[key]
            if value and isinstance(value[0], list):
                obj[key] = [_in(v) for v in value]
            else:
                obj[key] = _in(value)
    return obj


class Clan:
    def __init__(self, core):
        self._core = core

    @property
    def rank(self):
        return self._core.rank

    @property
    def dim(self):
        return self._core.dim

    def product(self, x, y):
        return _in(self._core.product(_out(x), _out(y)))

    def validate(self):
        return json.loads(self._core.validate())

    def member(self, x):
        return self._core.member(_out(x))


class Rep:
    def __init__(self, core):
        self._core = core

    @property
    def clan(self):
        return Clan(self._core.clan)

    @property
    def dim_e(self):
        return self._core.dim_e

    @property
    def blocks(self):
        return list(self._core.blocks)

    def q(self, nu):
        return _in(self._core.q(_out(nu)))

    def validate(self, seed=0):
        return json.loads(self._core.validate(seed))

    def classify(self, seed=0):
        return json.loads(self._core.classify(seed))

    def reconstruct(self, nu):
        cert = json.loads(self._core.reconstruct(_out(nu)))
        return _fractions(cert, ("h_squared", "v", "schedule"))

    def verify(self, samples=100, seed=0):
        return json.loads(self._core.verify(samples, seed))


def load_clan(spec):
    return Clan(_core.load_clan(spec))


def load_rep(spec, clan):
    return Rep(_core.load_rep(spec, clan._core))


def builtin_rep(name):
    return Rep(_core.builtin_rep(name))
