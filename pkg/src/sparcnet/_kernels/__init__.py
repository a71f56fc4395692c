"""Kernel backend selection.

The hot operations (per-complex component/weight scans) exist twice: a
Cython extension (``_speedups``) and a pure Python fallback (``_pure``).
The compiled backend is used when it imported successfully, unless the
SPARCNET_PURE environment variable is set or :func:`set_backend` forces
a choice.  Dispatch happens per call, so tests and benchmarks can switch
backends at runtime.
"""

from __future__ import annotations

import os

from . import _pure

try:
    from . import _speedups
except ImportError:  # extension not built; pure fallback only
    _speedups = None

_forced: str | None = "python" if os.environ.get("SPARCNET_PURE") else None


def available_backends() -> tuple[str, ...]:
    return ("cython", "python") if _speedups is not None else ("python",)


def active_backend() -> str:
    if _forced is not None:
        return _forced
    return "cython" if _speedups is not None else "python"


def set_backend(name: str | None) -> None:
    """Force a backend ('cython' or 'python'); None restores auto-selection."""
    global _forced
    if name is not None and name not in available_backends():
        raise ValueError(f"backend {name!r} not available (have {available_backends()})")
    _forced = name


def complex_stats(network, members):
    """Dispatch ``(component_sizes, intra_weight, nb_weight)`` for a member set."""
    if active_backend() == "cython":
        names, index, indptr, indices, weights = network._csr()
        idx = network._member_indices(members)
        sizes, intra, nbw = _speedups.complex_stats(indptr, indices, weights, idx, len(names))
        return [int(s) for s in sizes], float(intra), float(nbw)
    sizes, intra, nbw = _pure.complex_stats(network._adj, members)
    return sizes, intra, nbw


def component_partition(network, members):
    """Dispatch the induced-subgraph component partition (list of sets)."""
    if active_backend() == "cython":
        names, index, indptr, indices, weights = network._csr()
        idx = network._member_indices(members)
        labels = _speedups.member_labels(indptr, indices, idx, len(names))
        groups: dict[int, set[str]] = {}
        for t, root in enumerate(labels):
            groups.setdefault(int(root), set()).add(names[idx[t]])
        return list(groups.values())
    return _pure.component_labels(network._adj, members)
