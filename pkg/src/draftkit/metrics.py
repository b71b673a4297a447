"""Evaluation metrics: assignment, F1 scores, error measures, and losses.

All set-valued comparisons go through one min-cost assignment primitive with
a documented deterministic tie-break, so every metric is reproducible. The
convention for empty inputs: a score metric (accuracy, F1, dimension
accuracy) is 1.0 when both sides are empty and 0.0 when exactly one is.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from draftkit import _kernels
from draftkit.dimensions import Dimension
from draftkit.constraints import Constraint, canonical_constraint
from draftkit.errors import DimensionMismatchError, EmptyPointSetError
from draftkit.geometry import ACTIVE_PARAMS, ElementRef, Sketch, param_vector, resolve_element
from draftkit.raster import PointSample, RasterImage

# --- assignment -------------------------------------------------------------


@dataclass(frozen=True)
class Matching:
    """Result of a min-cost assignment.

    pairs holds (gt index, pred index) sorted by gt index; total_cost sums
    the original costs of kept pairs only.
    """

    pairs: tuple[tuple[int, int], ...]
    unmatched_gt: tuple[int, ...]
    unmatched_pred: tuple[int, ...]
    total_cost: float


def _jv_square(a: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """O(n^3) shortest-augmenting-path assignment on a square matrix.

    Returns (col_of_row, row potentials u, column potentials v) with
    a[i, j] - u[i] - v[j] >= 0 everywhere and == 0 on the optimal pairs.
    """
    n = a.shape[0]
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    p = np.zeros(n + 1, dtype=np.intp)  # row matched to column j (1-based, 0 free)
    way = np.zeros(n + 1, dtype=np.intp)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = np.full(n + 1, np.inf)
        used = np.zeros(n + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = p[j0]
            free = ~used[1:]
            cur = a[i0 - 1] - u[i0] - v[1:]
            better = free & (cur < minv[1:])
            minv_view = minv[1:]
            minv_view[better] = cur[better]
            way_view = way[1:]
            way_view[better] = j0
            masked = np.where(free, minv_view, np.inf)
            j1 = int(np.argmin(masked)) + 1  # first minimum: lowest column index
            delta = masked[j1 - 1]
            u[p[used]] += delta
            v[used] -= delta
            minv_view[free] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    col_of_row = np.zeros(n, dtype=np.intp)
    for j in range(1, n + 1):
        col_of_row[p[j] - 1] = j - 1
    return col_of_row, u[1:], v[1:]


def _perfectable(adj: list[list[int]], row_of_col: list[int], col_of_row: list[int], first_free: int) -> bool:
    """Kuhn check: can every row >= first_free still be matched?

    Columns held by rows below first_free are fixed and off limits.
    """
    n = len(adj)

    def augment(r: int, seen: set[int]) -> bool:
        for j in adj[r]:
            if j in seen:
                continue
            owner = row_of_col[j]
            if 0 <= owner < first_free:
                continue
            seen.add(j)
            if owner < 0 or augment(owner, seen):
                row_of_col[j] = r
                col_of_row[r] = j
                return True
        return False

    for r in range(first_free, n):
        if col_of_row[r] < 0:
            if not augment(r, set()):
                return False
    return True


def _lex_smallest_matching(zero: np.ndarray, seed: np.ndarray) -> np.ndarray:
    """Lexicographically smallest perfect matching inside the zero-cost graph.

    Rows are fixed in ascending order to their lowest feasible column, which
    realizes the lowest-(gt, pred) tie-break among optimal assignments.
    """
    n = zero.shape[0]
    adj = [list(np.nonzero(zero[i])[0]) for i in range(n)]
    col_of_row = [int(c) for c in seed]
    row_of_col = [-1] * n
    for r, c in enumerate(col_of_row):
        row_of_col[c] = r
    for i in range(n):
        current = col_of_row[i]
        for j in adj[i]:
            if j >= current:
                break  # adj is ascending; current is always feasible
            owner = row_of_col[j]
            if 0 <= owner < i:
                continue  # column belongs to an already-fixed row
            # Try to give column j to row i, rerouting its owner.
            saved_cols = col_of_row.copy()
            saved_rows = row_of_col.copy()
            col_of_row[i] = j
            row_of_col[j] = i
            row_of_col[current] = -1
            ok = True
            if owner >= 0:
                col_of_row[owner] = -1
                ok = _perfectable(adj, row_of_col, col_of_row, i + 1)
            if ok:
                break
            col_of_row[:] = saved_cols
            row_of_col[:] = saved_rows
    return np.array(col_of_row, dtype=np.intp)


def assign_min_cost(cost, max_cost: float = math.inf) -> Matching:
    """Deterministic min-cost one-to-one assignment.

    Accepts a 2D cost matrix (gt rows, pred columns). Non-finite entries are
    never matched; finite pairs costing more than max_cost are dropped after
    the assignment. Ties between equal-cost assignments break toward the
    lowest (gt, pred) indices. Empty matrices yield an all-unmatched result.
    """
    a = np.asarray(cost, dtype=np.float64)
    if a.ndim != 2:
        raise ValueError("cost matrix must be 2-dimensional")
    n, m = a.shape
    if n == 0 or m == 0:
        return Matching((), tuple(range(n)), tuple(range(m)), 0.0)

    finite = np.isfinite(a)
    if finite.any():
        max_finite = float(np.abs(a[finite]).max())
    else:
        max_finite = 0.0
    big = max(1e9, 1e3 * max_finite)
    work = np.where(finite, a, big)

    k = max(n, m)
    padded = np.zeros((k, k))
    padded[:n, :m] = work

    seed, u, v = _jv_square(padded)
    rc = padded - u[:, None] - v[None, :]
    tol = 1e-10 * max(1.0, float(np.abs(padded).max()))
    col_of_row = _lex_smallest_matching(rc <= tol, seed)

    pairs: list[tuple[int, int]] = []
    total = 0.0
    unmatched_gt: list[int] = []
    matched_pred: set[int] = set()
    for i in range(n):
        j = int(col_of_row[i])
        if j < m and finite[i, j] and a[i, j] <= max_cost:
            pairs.append((i, j))
            matched_pred.add(j)
            total += float(a[i, j])
        else:
            unmatched_gt.append(i)
    unmatched_pred = [j for j in range(m) if j not in matched_pred]
    return Matching(tuple(pairs), tuple(unmatched_gt), tuple(unmatched_pred), total)


# --- primitive metrics ------------------------------------------------------


def primitive_cost_matrix(gt: Sketch, pred: Sketch) -> np.ndarray:
    """Pairwise parameter distance: mean |diff| over the 5 slots, inf across kinds."""
    n, m = len(gt.primitives), len(pred.primitives)
    out = np.full((n, m), np.inf)
    gt_vecs = [param_vector(p) for p in gt.primitives]
    pred_vecs = [param_vector(p) for p in pred.primitives]
    for i, gv in enumerate(gt_vecs):
        for j, pv in enumerate(pred_vecs):
            if gv.kind == pv.kind:
                out[i, j] = sum(abs(a - b) for a, b in zip(gv.values, pv.values)) / 5.0
    return out


def primitive_f1(
    gt: Sketch, pred: Sketch, match_threshold: float = 10.0
) -> tuple[float, Matching]:
    """F1 over primitives matched within a parameter-distance threshold."""
    n, m = len(gt.primitives), len(pred.primitives)
    if n == 0 and m == 0:
        return 1.0, Matching((), (), (), 0.0)
    if n == 0 or m == 0:
        return 0.0, Matching((), tuple(range(n)), tuple(range(m)), 0.0)
    matching = assign_min_cost(primitive_cost_matrix(gt, pred), max_cost=match_threshold)
    matched = len(matching.pairs)
    precision = matched / m
    recall = matched / n
    f1 = 0.0 if matched == 0 else 2.0 * precision * recall / (precision + recall)
    return f1, matching


def constraint_f1(
    gt_constraints: tuple[Constraint, ...] | list[Constraint],
    pred_constraints: tuple[Constraint, ...] | list[Constraint],
    matching: Matching,
) -> float:
    """F1 over constraints after mapping pred refs through the primitive matching.

    A predicted constraint is correct iff its kind matches and every ref maps
    through a matched primitive pair onto a ground-truth constraint.
    """
    gt_set = {canonical_constraint(c) for c in gt_constraints}
    pred_to_gt = {j: i for i, j in matching.pairs}
    mapped: set[Constraint] = set()
    seen: set[Constraint] = set()
    for c in pred_constraints:
        canon = canonical_constraint(c)
        if canon in seen:
            continue
        seen.add(canon)
        try:
            refs = tuple(ElementRef(pred_to_gt[r.index], r.element) for r in canon.refs)
        except KeyError:
            continue  # ref through an unmatched primitive: counted incorrect
        mapped.add(canonical_constraint(Constraint(canon.kind, refs)))
    n_pred = len(seen)
    n_gt = len(gt_set)
    if n_gt == 0 and n_pred == 0:
        return 1.0
    if n_gt == 0 or n_pred == 0:
        return 0.0
    tp = len(mapped & gt_set)
    precision = tp / n_pred
    recall = tp / n_gt
    return 0.0 if tp == 0 else 2.0 * precision * recall / (precision + recall)


def param_mse(gt: Sketch, pred: Sketch, matching: Matching) -> float:
    """Mean squared parameter error over matched pairs.

    Each pair contributes the mean squared difference over its kind's active
    entries (validity flag excluded); unmatched primitives are excluded
    (counts live in the Matching). No pairs yields 0.0.
    """
    if not matching.pairs:
        return 0.0
    total = 0.0
    for i, j in matching.pairs:
        gv = param_vector(gt.primitives[i])
        pv = param_vector(pred.primitives[j])
        if gv.kind != pv.kind:
            raise ValueError("matching pairs primitives of different kinds")
        active = ACTIVE_PARAMS[gv.kind]
        sq = sum((gv.values[k] - pv.values[k]) ** 2 for k in range(active))
        total += sq / active
    return total / len(matching.pairs)


def accuracy(gt: Sketch, pred: Sketch, matching: Matching, grid: float = 1.0) -> float:
    """Fraction of gt primitives matched and exact after snapping to the grid."""
    n = len(gt.primitives)
    if n == 0:
        return 1.0 if len(pred.primitives) == 0 else 0.0
    correct = 0
    for i, j in matching.pairs:
        gv = param_vector(gt.primitives[i])
        pv = param_vector(pred.primitives[j])
        if gv.kind != pv.kind:
            continue
        if all(
            np.rint(a / grid) == np.rint(b / grid) for a, b in zip(gv.values, pv.values)
        ):
            correct += 1
    return correct / n


# --- image and point metrics ------------------------------------------------


def img_mse(a: RasterImage, b: RasterImage) -> float:
    """Mean squared pixel difference; images must have equal dimensions."""
    if (a.width, a.height) != (b.width, b.height):
        raise DimensionMismatchError(
            f"image sizes differ: {a.width}x{a.height} vs {b.width}x{b.height}"
        )
    diff = a.pixels - b.pixels
    return float(np.mean(diff * diff))


def chamfer(a: PointSample, b: PointSample, backend: str | None = None) -> float:
    """Symmetric chamfer distance between two point samples."""
    if len(a) == 0 or len(b) == 0:
        raise EmptyPointSetError("chamfer distance requires nonempty point sets")
    k = _kernels.get_backend(backend)
    pa = np.ascontiguousarray(a.points, dtype=np.float64)
    pb = np.ascontiguousarray(b.points, dtype=np.float64)
    return 0.5 * (float(k.nn_mean_distance(pa, pb)) + float(k.nn_mean_distance(pb, pa)))


# --- dimension accuracy -----------------------------------------------------


@dataclass(frozen=True)
class DAConfig:
    """Indicator tolerances: tau_v on values, tau_e on reference points."""

    tau_v: float = 0.5
    tau_e: float = 5.0

    def __post_init__(self) -> None:
        if self.tau_v < 0.0 or self.tau_e < 0.0:
            raise ValueError("tolerances must be nonnegative")


def _dim_ref_points(dims: tuple[Dimension, ...], sketch: Sketch) -> list[list[tuple[float, float]]]:
    return [[resolve_element(sketch, r) for r in d.refs] for d in dims]


def dimension_accuracy(
    gt_dims: tuple[Dimension, ...] | list[Dimension],
    pred_dims: tuple[Dimension, ...] | list[Dimension],
    gt_sketch: Sketch,
    pred_sketch: Sketch,
    config: DAConfig = DAConfig(),
) -> tuple[float, tuple[tuple[int, int, int], ...]]:
    """Fraction of gt dimensions correctly predicted, with (T, V, E) breakdown.

    A prediction is correct when its type matches (T), its value is within
    tau_v (V), and every resolved reference point is within tau_e (E).
    Pairing minimizes |value diff| + mean ref-point distance over same-kind,
    same-arity pairs; tolerances play no part in the pairing, so widening
    them never lowers the score. Unmatched gt dimensions score (0, 0, 0);
    an empty gt set scores 1.0.
    """
    gt_dims = tuple(gt_dims)
    pred_dims = tuple(pred_dims)
    if not gt_dims:
        return 1.0, ()
    gt_pts = _dim_ref_points(gt_dims, gt_sketch)
    pred_pts = _dim_ref_points(pred_dims, pred_sketch)

    cost = np.full((len(gt_dims), len(pred_dims)), np.inf)
    for i, g in enumerate(gt_dims):
        for j, p in enumerate(pred_dims):
            if g.kind != p.kind or len(g.refs) != len(p.refs):
                continue
            dists = [
                math.hypot(ga[0] - pa[0], ga[1] - pa[1])
                for ga, pa in zip(gt_pts[i], pred_pts[j])
            ]
            cost[i, j] = abs(g.value - p.value) + sum(dists) / len(dists)

    matching = assign_min_cost(cost)
    pred_of_gt = dict(matching.pairs)
    breakdown: list[tuple[int, int, int]] = []
    hits = 0
    for i, g in enumerate(gt_dims):
        j = pred_of_gt.get(i)
        if j is None:
            breakdown.append((0, 0, 0))
            continue
        p = pred_dims[j]
        t = 1 if g.kind == p.kind else 0
        v = 1 if abs(g.value - p.value) <= config.tau_v else 0
        e = (
            1
            if all(
                math.hypot(ga[0] - pa[0], ga[1] - pa[1]) <= config.tau_e
                for ga, pa in zip(gt_pts[i], pred_pts[j])
            )
            else 0
        )
        breakdown.append((t, v, e))
        hits += t * v * e
    return hits / len(gt_dims), tuple(breakdown)


# --- losses -----------------------------------------------------------------

_PROB_FLOOR = 1e-12


def ce_loss(probs, targets) -> float:
    """Summed cross-entropy of predicted distributions against target indices."""
    p = np.asarray(probs, dtype=np.float64)
    t = np.asarray(targets, dtype=np.intp)
    if p.ndim != 2 or t.ndim != 1 or p.shape[0] != t.shape[0]:
        raise ValueError("probs must be (N, K) and targets length N")
    picked = np.maximum(p[np.arange(len(t)), t], _PROB_FLOOR)
    return float(-np.sum(np.log(picked)))


def ce_loss_grad(probs, targets) -> np.ndarray:
    """Gradient of ce_loss with respect to the probabilities."""
    p = np.asarray(probs, dtype=np.float64)
    t = np.asarray(targets, dtype=np.intp)
    grad = np.zeros_like(p)
    rows = np.arange(len(t))
    picked = np.maximum(p[rows, t], _PROB_FLOOR)
    grad[rows, t] = -1.0 / picked
    return grad


def p_mse_loss(outputs, targets) -> float:
    """Mean over instances of the squared L2 distance between vector pairs."""
    if len(outputs) != len(targets):
        raise ValueError("outputs and targets must pair up")
    if len(outputs) == 0:
        return 0.0
    total = 0.0
    for out, tgt in zip(outputs, targets):
        o = np.asarray(out, dtype=np.float64)
        g = np.asarray(tgt, dtype=np.float64)
        if o.shape != g.shape:
            raise ValueError("paired vectors must have equal dimension")
        diff = o - g
        total += float(np.dot(diff, diff))
    return total / len(outputs)


def p_mse_loss_grad(outputs, targets) -> list[np.ndarray]:
    """Per-instance gradient of p_mse_loss: 2 (out - target) / N."""
    n = len(outputs)
    grads = []
    for out, tgt in zip(outputs, targets):
        o = np.asarray(out, dtype=np.float64)
        g = np.asarray(tgt, dtype=np.float64)
        grads.append(2.0 * (o - g) / n)
    return grads


def total_loss(l_ce: float, l_p_mse: float, lambda_ce: float = 1.0, lambda_p_mse: float = 1.0) -> float:
    """Weighted sum of the classification and parameter losses."""
    return lambda_ce * l_ce + lambda_p_mse * l_p_mse


# --- report -----------------------------------------------------------------


@dataclass
class EvalReport:
    """Per-pair metric values; da is None outside the dimension paradigm."""

    acc: float = 0.0
    param_mse: float = 0.0
    img_mse: float = 0.0
    cd: float = 0.0
    pf1: float = 0.0
    cf1: float = 0.0
    da: float | None = None
    da_breakdown: tuple[tuple[int, int, int], ...] = ()
    matched: int = 0
    unmatched_gt: int = 0
    unmatched_pred: int = 0

    def to_dict(self) -> dict:
        out = {
            "acc": self.acc,
            "param_mse": self.param_mse,
            "img_mse": self.img_mse,
            "cd": self.cd,
            "pf1": self.pf1,
            "cf1": self.cf1,
            "matched": self.matched,
            "unmatched_gt": self.unmatched_gt,
            "unmatched_pred": self.unmatched_pred,
        }
        if self.da is not None:
            out["da"] = self.da
            out["da_breakdown"] = [list(t) for t in self.da_breakdown]
        return out
