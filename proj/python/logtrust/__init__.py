"""Audit shared-document logs for usage-control violations and derive trust.

Thin wrapper over the native ``_logtrust`` module: inputs may be JSON text
or plain Python objects, results come back as Python objects.
"""

import json

try:
    from . import _logtrust as _native
except ImportError:  # in-tree build: module sits next to the package
    import _logtrust as _native

LogtrustError = _native.LogtrustError

__all__ = [
    "LogtrustError",
    "audit",
    "compare_atoms",
    "effective_status",
    "generate_scenario",
    "merge_logs",
    "run_scenario",
]


def _text(value):
    return value if isinstance(value, str) else json.dumps(value)


def run_scenario(scenario, trust_model="multiplicative:0.5", mode="prose",
                 carry_forward=False, trace=False):
    """Run a scenario; returns ``{"reports": [...]}`` or the full trace."""
    return json.loads(_native.run_scenario(_text(scenario), trust_model, mode,
                                           carry_forward, trace))


def audit(edit_log, comm_log, assessor=None, trust_model="multiplicative:0.5",
          mode="prose"):
    return json.loads(_native.audit(_text(edit_log), _text(comm_log), assessor,
                                    trust_model, mode))


def merge_logs(a, b):
    return json.loads(_native.merge_logs(_text(a), _text(b)))


def compare_atoms(a, b):
    """Compare two ``(verb, allow)`` pairs: less, equal, greater or incomparable."""
    return _native.compare_atoms(a[0], a[1], b[0], b[1])


def effective_status(comm_log, peer, verb, at):
    return json.loads(_native.effective_status(_text(comm_log), peer, verb, at))


def generate_scenario(seed):
    return json.loads(_native.generate_scenario(seed))
