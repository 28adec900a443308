"""Learn reward machines from preference and equivalence queries.

Machines are plain dicts in the machine file format (kind moore, mealy or
guarded). Rational outputs are strings such as "0", "1/2" or "-3".
"""
import json

from . import _remap
from ._remap import RemapError

__all__ = [
    "RemapError",
    "load_machine",
    "ground_truth",
    "learn",
    "lstar",
    "experiment",
    "isomorphic",
    "minimize",
    "from_regex_union",
    "run",
    "convert",
]


def _text(machine):
    return machine if isinstance(machine, str) else json.dumps(machine)


def load_machine(path):
    return json.loads(_remap.load_machine(str(path)))


def ground_truth(machine, halt_output=None):
    """Moore machine the simulated teachers answer from."""
    return json.loads(_remap.ground_truth(_text(machine), halt_output))


def learn(target, teacher="exact", samples=None, seed=0, stop_prob=0.2, halt_output=None):
    """Runs one learning session against a simulated teacher.

    Returns a dict with the learned machine, the trace events and query counts.
    """
    out = _remap.learn(_text(target), teacher, samples, seed, stop_prob, halt_output)
    out["machine"] = json.loads(out["machine"])
    out["trace"] = [json.loads(line) for line in out["trace"].splitlines()]
    return out


def lstar(target, halt_output=None):
    out = _remap.lstar(_text(target), halt_output)
    out["machine"] = json.loads(out["machine"])
    return out


def experiment(target, grid, trials, seed=0, jobs=1, eval_random=1000, halt_output=None):
    """Fraction of isomorphic results per grid entry; None in the grid means the exact teacher."""
    return _remap.experiment(_text(target), list(grid), trials, seed, jobs, eval_random, halt_output)


def isomorphic(a, b):
    return _remap.isomorphic(_text(a), _text(b))


def minimize(machine):
    return json.loads(_remap.minimize(_text(machine)))


def from_regex_union(components, alphabet):
    return json.loads(_remap.from_regex_union(list(components), list(alphabet)))


def run(machine, word):
    """Output for a word given as a list of symbol labels."""
    return _remap.run(_text(machine), list(word))


def convert(op, machine, halt_output=None, props=()):
    return json.loads(_remap.convert(op, _text(machine), halt_output, list(props)))
