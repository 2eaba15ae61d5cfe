"""Pure-Python (numpy) CART split-search kernel.

Fallback for oerrec.quality._split_fast; results are bit-identical: same
stable argsort, same float64 expressions, same tie-breaking. Counts are exact
integers, so the only float work is the per-split Gini arithmetic, written
here expression-for-expression like the compiled kernel.
"""

import numpy as np


def best_split(values, labels, candidates, min_leaf):
    """Best (feature, threshold, weighted_gini) over candidate features, or None.

    Splits send rows with value <= threshold left; only splits leaving at
    least min_leaf rows on each side are considered.
    """
    n = values.shape[0]
    if n < 2 * min_leaf:
        return None
    total1 = int(labels.sum())

    best = None  # (w, feature, threshold)
    for f in candidates:
        col = values[:, f]
        order = np.argsort(col, kind="stable")
        v = col[order]
        y = labels[order]

        left1 = np.cumsum(y[:-1], dtype=np.int64).astype(np.float64)
        nl = np.arange(1, n, dtype=np.float64)
        nr = np.float64(n) - nl
        left0 = nl - left1
        right1 = np.float64(total1) - left1
        right0 = nr - right1

        pl0 = left0 / nl
        pl1 = left1 / nl
        pr0 = right0 / nr
        pr1 = right1 / nr
        gl = 1.0 - pl0 * pl0 - pl1 * pl1
        gr = 1.0 - pr0 * pr0 - pr1 * pr1
        w = (nl * gl + nr * gr) / np.float64(n)

        valid = v[:-1] != v[1:]
        if min_leaf > 1:
            valid[: min_leaf - 1] = False
            valid[n - min_leaf :] = False
        if not valid.any():
            continue
        w = np.where(valid, w, np.inf)
        i = int(np.argmin(w))
        wi = float(w[i])
        if best is None or wi < best[0]:
            best = (wi, int(f), float((v[i] + v[i + 1]) / 2.0))

    if best is None:
        return None
    return best[1], best[2], best[0]
