"""Composite Gauss-Legendre quadrature with panel-doubling refinement.

Shared by the special-function evaluators and the brute-force amplitude
oracle.  The integrands here are smooth but oscillatory, so the driver seeds
the panel count from the caller's oscillation estimate and doubles panels
until two successive estimates agree.
"""

import math

import numpy as np

from .errors import ConvergenceError

_GL_ORDER = 8
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(_GL_ORDER)


def composite_gl(f, a: float, b: float, panels: int):
    """Integrate ``f`` over [a, b] with ``panels`` Gauss-Legendre panels.

    ``f`` must accept an ndarray of abscissae and return an ndarray (real or
    complex) of the same shape.
    """
    edges = np.linspace(a, b, panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1] - edges[0])
    x = (mid[:, None] + half * _GL_NODES[None, :]).ravel()
    w = np.broadcast_to(half * _GL_WEIGHTS, (panels, _GL_ORDER)).ravel()
    return np.sum(w * f(x))


def refine_to_tolerance(f, a: float, b: float, initial_panels: int,
                        rel_tol: float, max_nodes: int = 10**6):
    """Panel-doubling driver around :func:`composite_gl`.

    Returns ``(value, error_estimate, panels_used)`` where the error estimate
    is the difference between the last two refinements.  Raises
    :class:`ConvergenceError` when the node budget is exhausted first.
    """
    panels = max(1, int(initial_panels))
    value = composite_gl(f, a, b, panels)
    err = math.inf
    while panels * _GL_ORDER <= max_nodes:
        panels *= 2
        refined = composite_gl(f, a, b, panels)
        err = abs(refined - value)
        value = refined
        if err <= rel_tol * max(1.0, abs(value)):
            return value, err, panels
    raise ConvergenceError(
        f"quadrature did not reach rel_tol={rel_tol:g} within "
        f"{max_nodes} nodes (achieved {err:g})",
        error_estimate=err,
    )
