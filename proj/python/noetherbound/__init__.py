"""Certified Noether number bounds for finite groups.

Thin wrapper over the C++ extension: descriptors and certificates travel as
strings, structured results as parsed JSON (dicts/lists). Integers that
exceed the native range arrive as decimal strings; ``as_int`` normalizes.
"""

import json

try:
    from . import _core
except ImportError:  # build-tree layout: extension sits next to the package
    import _core

DescriptorError = _core.DescriptorError
BudgetError = _core.BudgetError
EngineError = _core.EngineError
CertificateError = _core.CertificateError

__all__ = [
    "canonical_descriptor",
    "group_order",
    "davenport",
    "beta_abelian",
    "find_short_zero_sum",
    "row_decomposition",
    "atoms",
    "derive",
    "derive_candidates",
    "check_certificate",
    "certify_cyclic_index",
    "table1_check",
    "as_int",
    "DescriptorError",
    "BudgetError",
    "EngineError",
    "CertificateError",
]


def as_int(value):
    """JSON integers may arrive as decimal strings when oversized."""
    return int(value)


def canonical_descriptor(text):
    return _core.canonical_descriptor(text)


def group_order(text):
    return int(_core.group_order(text))


def davenport(group, max_nodes=5_000_000):
    """Exact Davenport constant with a zero-sum-free witness."""
    r = json.loads(_core.davenport_json(group, max_nodes))
    r["value"] = as_int(r["value"])
    return r


def beta_abelian(group, max_nodes=5_000_000):
    """Noether number of an abelian group; equals its Davenport constant."""
    return davenport(group, max_nodes)


def find_short_zero_sum(p, seq, h):
    return _core.find_short_zero_sum(p, list(seq), h)


def row_decomposition(monomial):
    return _core.row_decomposition(monomial)


def atoms(group, weights, max_nodes=5_000_000):
    norm = [[w] if isinstance(w, int) else list(w) for w in weights]
    r = json.loads(_core.atoms_json(group, norm, max_nodes))
    r["beta"] = as_int(r["beta"])
    return r


def derive(descriptor, goal="beta_upper", precision=192, max_nodes=5_000_000):
    """Best certificate for the goal, as a parsed certificate dict."""
    return json.loads(_core.derive_json(descriptor, goal, precision, max_nodes))


def derive_candidates(descriptor, goal="beta_upper", precision=192, max_nodes=5_000_000):
    return json.loads(_core.derive_candidates_json(descriptor, goal, precision, max_nodes))


def check_certificate(cert, precision=192, max_nodes=5_000_000):
    """Replay a certificate (dict or JSON string); returns (valid, why)."""
    if not isinstance(cert, str):
        cert = json.dumps(cert)
    return _core.check_certificate(cert, precision, max_nodes)


def certify_cyclic_index(descriptor, precision=192, max_nodes=5_000_000):
    return json.loads(_core.certify_index_json(descriptor, precision, max_nodes))


def table1_check(precision=192):
    return json.loads(_core.table1_json(precision))
