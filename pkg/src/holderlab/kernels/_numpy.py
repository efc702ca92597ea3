"""Pure-numpy fallback for the supremum kernels, chunked to bound memory."""

import numpy as np

_CHUNK = 1 << 20


def sup_pairs(vals, wbase, i_idx, j_idx, dists, weight_pow, use_min, exponent):
    best = 0.0
    bidx = -1
    nonf = 0
    # endpoint power applied per point, not per pair (monotone on
    # nonnegative bases; the min/max selection flips for negative powers)
    if weight_pow == 0.0:
        wpow = np.ones(wbase.size)
        pick_min = use_min
    else:
        with np.errstate(divide="ignore"):
            wpow = wbase**weight_pow
        pick_min = use_min if weight_pow > 0.0 else not use_min
    for s in range(0, i_idx.size, _CHUNK):
        ii = i_idx[s:s + _CHUNK]
        jj = j_idx[s:s + _CHUNK]
        w = np.minimum(wpow[ii], wpow[jj]) if pick_min \
            else np.maximum(wpow[ii], wpow[jj])
        dv = vals[ii] - vals[jj]
        finite = np.isfinite(dv)
        nonf += int(np.count_nonzero(~finite & (w > 0.0)))
        with np.errstate(invalid="ignore"):
            r = np.where(finite & (w > 0.0),
                         w * np.abs(dv) / dists[s:s + _CHUNK] ** exponent,
                         -np.inf)
        k = int(np.argmax(r))
        if r[k] > best:
            best = float(r[k])
            bidx = s + k
    return best, bidx, nonf


def sup_combos(vals2d, coeffs, weights, denoms):
    best = 0.0
    bidx = -1
    nonf = 0
    for s in range(0, vals2d.shape[0], _CHUNK):
        block = vals2d[s:s + _CHUNK]
        w = weights[s:s + _CHUNK]
        finite = np.all(np.isfinite(block), axis=1)
        nonf += int(np.count_nonzero(~finite & (w > 0.0)))
        with np.errstate(invalid="ignore"):
            acc = block @ coeffs
            r = np.where(finite & (w > 0.0),
                         w * np.abs(acc) / denoms[s:s + _CHUNK],
                         -np.inf)
        k = int(np.argmax(r))
        if r[k] > best:
            best = float(r[k])
            bidx = s + k
    return best, bidx, nonf
