"""Congruence quotients, f-invariants and tree-indexed processes of self-similar groups."""

import json as _json

from . import _core
from ._core import SelfsimError, __version__

__all__ = ["Group", "SelfsimError", "run_cli", "__version__"]


def _base(base):
    if base in (None, "natural", "e"):
        return 0
    return int(base)


class Group:
    """A self-similar group given by a spec dict or one of the presets."""

    def __init__(self, spec, max_enum=None, max_states=None):
        text = spec if isinstance(spec, str) else _json.dumps(spec)
        kw = {}
        if max_enum is not None:
            kw["max_enum"] = max_enum
        if max_states is not None:
            kw["max_states"] = max_states
        self._t = _core.Tower(text, **kw)

    @classmethod
    def ggs(cls, p, alpha, **kw):
        return cls({"preset": "ggs", "p": p, "alpha": list(alpha)}, **kw)

    @classmethod
    def grigorchuk(cls, **kw):
        return cls({"preset": "grigorchuk"}, **kw)

    @classmethod
    def wreath(cls, m, pattern_group="cyclic", **kw):
        return cls({"preset": "wreath", "m": m, "pattern_group": pattern_group}, **kw)

    @property
    def name(self):
        return self._t.name

    @property
    def arity(self):
        return self._t.arity

    def spec(self):
        return _json.loads(self._t.spec_json())

    def order(self, n):
        """|G_n| as a Python int."""
        return int(self._t.order(n))

    def log_order(self, n, base=None):
        return _json.loads(self._t.log_order(n, _base(base)))

    def f_invariant(self, n_max=5, base=None):
        return _json.loads(_core.f_invariant(self._t, n_max, _base(base)))

    def hausdorff_dimension(self, n_max=5, ambient="full", base=None):
        return _json.loads(_core.hausdorff_dimension(self._t, n_max, ambient, _base(base)))

    def big_f_direct(self, n, method="enumerate", base=None):
        return _json.loads(_core.big_f_direct(self._t, n, method, _base(base)))

    def big_f_formula(self, n, depth, base=None):
        return _json.loads(_core.big_f_formula(self._t, n, depth, _base(base)))

    def check_markov(self, k, v, x, method="enumerate"):
        return _json.loads(_core.check_markov(self._t, k, v, x, method))

    def check_measure_preserving(self, v, d, method="enumerate"):
        return _json.loads(_core.check_measure_preserving(self._t, v, d, method))

    def count_pattern_closed(self, depth, n, method="stabilizer"):
        return int(_core.count_pattern_closed(self._t, depth, n, method))

    def haar_sample(self, n, seed=1):
        return _core.haar_sample(self._t, n, seed)


def run_cli(*args):
    """Run the command-line tool in-process; returns (exit_code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])
