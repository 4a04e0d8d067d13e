"""Discrete calculus on explored windows.

Two layers share the same graph: an exact layer for identities, where a
field is a sparse mapping from vertex index to Fraction (absent vertices
are zero), and a float layer for optimization and norm sweeps, where a
field is a dense float64 array.

The gradient modulus at a vertex is the sum of |f(v) - f(n)| over the
neighbors n of v.  On an incomplete window it is faithful only at
interior vertices; identities stated per window treat the window as a
finite graph in its own right.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

import numpy as np

from . import kernels
from .groups import ExploredBall
from .isoperimetry import set_perimeter

ExactField = Mapping[int, Fraction]


# ---------------------------------------------------------------------------
# Exact layer


def grad_modulus_exact(ball: ExploredBall, field: ExactField) -> dict[int, Fraction]:
    """Gradient modulus of a sparse exact field, on its closed support."""
    touched = set(field)
    indptr, indices = ball.indptr, ball.indices
    for v in list(field):
        touched.update(int(w) for w in indices[indptr[v] : indptr[v + 1]])
    out: dict[int, Fraction] = {}
    zero = Fraction(0)
    for v in touched:
        fv = field.get(v, zero)
        acc = Fraction(0)
        for e in range(indptr[v], indptr[v + 1]):
            acc += abs(fv - field.get(int(indices[e]), zero))
        if acc:
            out[v] = acc
    return out


def l1_norm_exact(field: ExactField) -> Fraction:
    return sum((abs(x) for x in field.values()), Fraction(0))


def level_thresholds(field: ExactField) -> list[Fraction]:
    """Distinct positive values of |f|, ascending."""
    return sorted({abs(x) for x in field.values() if x})


def coarea_report(ball: ExploredBall, field: ExactField) -> dict:
    """Exact layer cake identity on the window graph.

    The total gradient of |f| equals the perimeter of each superlevel set
    weighted by the gap between consecutive thresholds.
    """
    absf = {v: abs(x) for v, x in field.items() if x}
    lhs = l1_norm_exact(grad_modulus_exact(ball, absf))
    thresholds = level_thresholds(field)
    rhs = Fraction(0)
    prev = Fraction(0)
    layers = []
    for t in thresholds:
        level = [v for v, x in absf.items() if x >= t]
        perim = set_perimeter(ball, level)
        rhs += (t - prev) * perim
        layers.append({"threshold": t, "size": len(level), "perimeter": perim})
        prev = t
    return {"lhs": lhs, "rhs": rhs, "ok": lhs == rhs, "layers": layers}


def median_exact(ball: ExploredBall, field: ExactField) -> Fraction:
    """Smallest value t (implicit zeros included) with at least half the
    vertices weakly below t."""
    n = ball.num_vertices
    values = sorted(set(field.values()) | {Fraction(0)})
    support = set(field)
    zeros = n - len([v for v in support if field[v]])
    for t in values:
        count = sum(1 for x in field.values() if x and x <= t)
        if t >= 0:
            count += zeros
        if 2 * count >= n:
            return t
    return values[-1]


def median_report(ball: ExploredBall, field: ExactField) -> dict:
    """Exact median facts used by the compact chain.

    Checks that the median obeys the mass bound (its size is at most
    twice the mean of |f|) and, for zero sum fields, that recentering at
    the median costs at most a factor two in total mass.
    """
    n = ball.num_vertices
    m0 = median_exact(ball, field)
    total = l1_norm_exact(field)
    markov_ok = n * abs(m0) <= 2 * total
    mean = sum(field.values(), Fraction(0))
    zero_sum = mean == 0
    nz = [x for x in field.values() if x]
    shifted = sum((abs(x - m0) for x in nz), Fraction(0)) + (n - len(nz)) * abs(m0)
    shift_ok = total <= 2 * shifted if zero_sum else None
    return {
        "median": m0,
        "l1": total,
        "l1_recentred": shifted,
        "markov_ok": markov_ok,
        "zero_sum": zero_sum,
        "shift_ok": shift_ok,
    }


# ---------------------------------------------------------------------------
# Float layer


def to_dense(ball: ExploredBall, field: ExactField) -> np.ndarray:
    out = np.zeros(ball.num_vertices)
    for v, x in field.items():
        out[v] = float(x)
    return out


def grad_modulus(ball: ExploredBall, values: np.ndarray) -> np.ndarray:
    out = np.empty(ball.num_vertices)
    kernels.grad_modulus_csr(ball.indptr, ball.indices, np.asarray(values, np.float64), out)
    return out


def energy_subgradient(ball: ExploredBall, values: np.ndarray) -> np.ndarray:
    """Subgradient of the squared 2-norm of the gradient modulus."""
    values = np.asarray(values, np.float64)
    gmod = grad_modulus(ball, values)
    out = np.empty(ball.num_vertices)
    kernels.energy_subgrad_csr(ball.indptr, ball.indices, values, gmod, out)
    return out


def lp_norm(values: np.ndarray, p: float) -> float:
    a = np.abs(np.asarray(values, np.float64))
    if p == 1:
        return float(a.sum())
    if p == 2:
        return float(np.sqrt((a * a).sum()))
    return float((a**p).sum() ** (1.0 / p))


def grad_lp_norm(ball: ExploredBall, values: np.ndarray, p: float) -> float:
    return lp_norm(grad_modulus(ball, values), p)


def weighted_lp_norm(values: np.ndarray, weight: np.ndarray, alpha: float, p: float) -> float:
    return lp_norm(np.asarray(weight, np.float64) ** alpha * np.asarray(values, np.float64), p)


def zero_sum(values: np.ndarray) -> np.ndarray:
    values = np.asarray(values, np.float64)
    return values - values.mean()


def power_leibniz_report(ball: ExploredBall, values: np.ndarray, p: float) -> dict:
    """Gradient of the p-th power of |f| against the product rule bound."""
    values = np.asarray(values, np.float64)
    absf = np.abs(values)
    lhs = lp_norm(grad_modulus(ball, absf**p), 1)
    rhs = 2.0 * p * lp_norm(values, p) ** (p - 1.0) * grad_lp_norm(ball, values, p)
    return {"lhs": lhs, "rhs": rhs, "ok": lhs <= rhs * (1 + 1e-12)}
