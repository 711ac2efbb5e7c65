"""Projective systems, multifoliate structures and Weil functors over finite posets.

Documents are plain dicts in the JSON schemas of the command-line tool.
"""

import json as _json

from . import _core

__all__ = [
    "MultifolError",
    "validate",
    "complete",
    "classify",
    "dual",
    "equiv",
    "product",
    "weil_eval",
    "fiber_dim",
    "selftest",
]


class MultifolError(Exception):
    def __init__(self, code, message, witness=None):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message
        self.witness = witness


def _call(fn, *docs, **kwargs):
    try:
        return _json.loads(fn(*(_json.dumps(d) for d in docs), **kwargs))
    except _core.Error as e:
        err = _json.loads(str(e))["error"]
        raise MultifolError(err["code"], err["message"], err.get("witness")) from None


def validate(doc, kind="auto", max_poset=20):
    return _call(_core.validate, doc, kind=kind, max_poset=max_poset)


def complete(system, max_poset=20):
    return _call(_core.complete, system, max_poset=max_poset)


def classify(system, max_poset=20):
    return _call(_core.classify, system, max_poset=max_poset)


def dual(system, max_poset=20):
    return _call(_core.dual, system, max_poset=max_poset)


def equiv(s, t, max_poset=20):
    return _call(_core.equiv, s, t, max_poset=max_poset)


def product(a, b, max_poset=20):
    return _call(_core.product, a, b, max_poset=max_poset)


def weil_eval(algebra, evaluation):
    return _call(_core.weil_eval, algebra, evaluation)


def fiber_dim(weil_system, obj, max_poset=20):
    return _call(_core.fiber_dim, weil_system, obj, max_poset=max_poset)


def selftest(seed=20260101):
    return _core.selftest(seed)
