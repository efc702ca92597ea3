"""numba implementations of the pair/stencil supremum loops."""

import numpy as np
from numba import njit


@njit(cache=True)
def sup_pairs(vals, wbase, i_idx, j_idx, dists, weight_pow, use_min, exponent):
    """Supremum of w * |vals[i]-vals[j]| / dist**exponent over index pairs.

    w = (min or max of the endpoint weight bases) ** weight_pow; pairs whose
    difference is non-finite are skipped and counted when their weight is
    positive.  Returns (best value, index of first maximizing pair or -1,
    number of skipped non-finite pairs).
    """
    best = 0.0
    bidx = -1
    nonf = 0
    # hoist the endpoint power out of the pair loop; pow is monotone on
    # nonnegative bases, so the endpoint selection flips for negative powers
    wpow = np.ones(wbase.size)
    pick_min = use_min
    if weight_pow != 0.0:
        if weight_pow < 0.0:
            pick_min = not use_min
        for q in range(wbase.size):
            wpow[q] = wbase[q] ** weight_pow
    for p in range(i_idx.size):
        i = i_idx[p]
        j = j_idx[p]
        if pick_min:
            w = min(wpow[i], wpow[j])
        else:
            w = max(wpow[i], wpow[j])
        dv = vals[i] - vals[j]
        if not np.isfinite(dv):
            if w > 0.0:
                nonf += 1
            continue
        if w == 0.0:
            continue
        r = w * abs(dv) / dists[p] ** exponent
        if r > best:
            best = r
            bidx = p
    return best, bidx, nonf


@njit(cache=True)
def sup_combos(vals2d, coeffs, weights, denoms):
    """Supremum of weights[b] * |sum_k coeffs[k] vals2d[b,k]| / denoms[b].

    Rows containing non-finite values are skipped and counted when their
    weight is positive.
    """
    best = 0.0
    bidx = -1
    nonf = 0
    nb, nk = vals2d.shape
    for b in range(nb):
        ok = True
        acc = 0.0
        for k in range(nk):
            v = vals2d[b, k]
            if not np.isfinite(v):
                ok = False
                break
            acc += coeffs[k] * v
        if not ok:
            if weights[b] > 0.0:
                nonf += 1
            continue
        if weights[b] == 0.0:
            continue
        r = weights[b] * abs(acc) / denoms[b]
        if r > best:
            best = r
            bidx = b
    return best, bidx, nonf
