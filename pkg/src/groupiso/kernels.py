"""Low level numeric kernels with an optional JIT backend.

The hot loops (subset enumeration, annealing, gradient passes) are written
against flat CSR arrays so the same source can be compiled with numba or
executed as plain Python/numpy.  Set ``GROUPISO_NO_NUMBA=1`` in the
environment to force the fallback implementations; the active choice is
exposed as :data:`BACKEND`.

Integer valued kernels (perimeters, witnesses, leaf counts) produce
identical output on both backends.  Floating point kernels agree up to
summation order.
"""

from __future__ import annotations

import itertools
import math
import os

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover
    HAS_NUMBA = False

#: Sentinel perimeter returned when an enumeration saw no leaf at all.
NO_RESULT = np.int64(2) ** np.int64(62)


def _grad_modulus_loop(indptr, indices, values, out):
    n = indptr.shape[0] - 1
    for v in range(n):
        acc = 0.0
        fv = values[v]
        for e in range(indptr[v], indptr[v + 1]):
            acc += abs(fv - values[indices[e]])
        out[v] = acc


def _grad_modulus_numpy(indptr, indices, values, out):
    n = indptr.shape[0] - 1
    rows = np.repeat(np.arange(n), np.diff(indptr))
    diffs = np.abs(values[rows] - values[indices])
    out[:] = np.bincount(rows, weights=diffs, minlength=n)


def _energy_subgrad_loop(indptr, indices, values, gmod, out):
    n = indptr.shape[0] - 1
    for v in range(n):
        acc = 0.0
        fv = values[v]
        gv = gmod[v]
        for e in range(indptr[v], indptr[v + 1]):
            u = indices[e]
            d = fv - values[u]
            if d > 0.0:
                acc += 2.0 * (gv + gmod[u])
            elif d < 0.0:
                acc -= 2.0 * (gv + gmod[u])
        out[v] = acc


def _energy_subgrad_numpy(indptr, indices, values, gmod, out):
    n = indptr.shape[0] - 1
    rows = np.repeat(np.arange(n), np.diff(indptr))
    sign = np.sign(values[rows] - values[indices])
    contrib = 2.0 * sign * (gmod[rows] + gmod[indices])
    out[:] = np.bincount(rows, weights=contrib, minlength=n)


def _min_perimeter_scan_loop(indptr, indices, cand, k, firsts, cap):
    # Depth first walk over k-subsets of cand in lexicographic order,
    # restricted to the given first positions.  Perimeter is maintained
    # incrementally as 2 * (degree sum - 2 * inside edges).
    m = cand.shape[0]
    nverts = indptr.shape[0] - 1
    in_set = np.zeros(nverts, np.uint8)
    pos = np.zeros(k + 1, np.int64)
    added = np.zeros(k + 1, np.int64)
    best_wit = np.full(k, -1, np.int64)
    best = np.int64(2) ** np.int64(62)
    leaves = np.int64(0)
    capped = np.int64(0)
    for fi in range(firsts.shape[0]):
        first = firsts[fi]
        depth = 0
        pos[0] = first
        within = np.int64(0)
        degsum = np.int64(0)
        while depth >= 0:
            p = pos[depth]
            ok = p <= m - (k - depth)
            if depth == 0 and p != first:
                ok = False
            if ok:
                v = cand[p]
                cnt = np.int64(0)
                for e in range(indptr[v], indptr[v + 1]):
                    if in_set[indices[e]] != 0:
                        cnt += 1
                within += cnt
                degsum += indptr[v + 1] - indptr[v]
                in_set[v] = 1
                added[depth] = cnt
                if depth == k - 1:
                    leaves += 1
                    perim = 2 * (degsum - 2 * within)
                    if perim < best:
                        best = perim
                        for d in range(k):
                            best_wit[d] = cand[pos[d]]
                    in_set[v] = 0
                    within -= cnt
                    degsum -= indptr[v + 1] - indptr[v]
                    if leaves >= cap:
                        for d in range(depth):
                            in_set[cand[pos[d]]] = 0
                        return best, leaves, np.int64(1), best_wit
                    pos[depth] += 1
                else:
                    depth += 1
                    pos[depth] = p + 1
            else:
                depth -= 1
                if depth >= 0:
                    u = cand[pos[depth]]
                    in_set[u] = 0
                    within -= added[depth]
                    degsum -= indptr[u + 1] - indptr[u]
                    pos[depth] += 1
    return best, leaves, capped, best_wit


def _min_perimeter_scan_numpy(indptr, indices, cand, k, firsts, cap):
    # Same enumeration order as the loop kernel, evaluated in batches.
    m = cand.shape[0]
    nverts = indptr.shape[0] - 1
    deg = np.diff(indptr)
    cpos = np.full(nverts, -1, np.int64)
    cpos[cand] = np.arange(m)
    adj = np.zeros((m, m), np.bool_)
    for i in range(m):
        v = cand[i]
        nb = indices[indptr[v] : indptr[v + 1]]
        nb = cpos[nb]
        adj[i, nb[nb >= 0]] = True
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    best = np.int64(2) ** np.int64(62)
    best_wit = np.full(k, -1, np.int64)
    leaves = np.int64(0)
    for first in firsts:
        if first > m - k:
            continue
        tail = itertools.combinations(range(first + 1, m), k - 1)
        while True:
            room = int(cap - leaves)
            batch = list(itertools.islice(tail, min(4096, max(room, 0))))
            if not batch:
                break
            sel = np.empty((len(batch), k), np.int64)
            sel[:, 0] = first
            if k > 1:
                sel[:, 1:] = np.asarray(batch, np.int64)
            verts = cand[sel]
            perim = 2 * deg[verts].sum(axis=1)
            for i, j in pairs:
                perim -= 4 * adj[sel[:, i], sel[:, j]]
            bi = int(np.argmin(perim))
            if perim[bi] < best:
                best = np.int64(perim[bi])
                best_wit = verts[bi].copy()
            leaves += len(batch)
            if leaves >= cap:
                return best, leaves, np.int64(1), best_wit
    return best, leaves, np.int64(0), best_wit


def _anneal_chain_loop(
    indptr,
    indices,
    cand_mask,
    cand_list,
    members,
    t0,
    cool,
    sweep,
    rem_idx,
    src_idx,
    nb_u,
    fb_idx,
    acc_u,
):
    # Fixed cardinality Metropolis chain.  All randomness is precomputed
    # by the caller so the walk is identical on both backends.
    nsteps = rem_idx.shape[0]
    k = members.shape[0]
    nverts = indptr.shape[0] - 1
    in_set = np.zeros(nverts, np.uint8)
    cur = members.copy()
    for i in range(k):
        in_set[cur[i]] = 1
    degsum = np.int64(0)
    inside2 = np.int64(0)
    for i in range(k):
        v = cur[i]
        degsum += indptr[v + 1] - indptr[v]
        for e in range(indptr[v], indptr[v + 1]):
            if in_set[indices[e]] != 0:
                inside2 += 1
    perim = 2 * degsum - 2 * inside2
    best = perim
    best_set = cur.copy()
    t = t0
    for s in range(nsteps):
        if s > 0 and s % sweep == 0:
            t *= cool
        ri = rem_idx[s]
        u = cur[ri]
        src = cur[src_idx[s]]
        w = np.int64(-1)
        dsrc = indptr[src + 1] - indptr[src]
        if dsrc > 0:
            cnd = indices[indptr[src] + np.int64(nb_u[s] * dsrc)]
            if cand_mask[cnd] != 0 and in_set[cnd] == 0:
                w = cnd
        if w < 0:
            cf = cand_list[fb_idx[s]]
            if in_set[cf] == 0:
                w = cf
        if w < 0:
            continue
        deg_u = indptr[u + 1] - indptr[u]
        deg_w = indptr[w + 1] - indptr[w]
        cnt_u = np.int64(0)
        for e in range(indptr[u], indptr[u + 1]):
            if in_set[indices[e]] != 0:
                cnt_u += 1
        in_set[u] = 0
        cnt_w = np.int64(0)
        for e in range(indptr[w], indptr[w + 1]):
            if in_set[indices[e]] != 0:
                cnt_w += 1
        delta = 2 * ((deg_w - deg_u) - 2 * (cnt_w - cnt_u))
        accept = delta <= 0
        if not accept and t > 0.0:
            accept = acc_u[s] < math.exp(-delta / t)
        if accept:
            in_set[w] = 1
            cur[ri] = w
            perim += delta
            if perim < best:
                best = perim
                for i in range(k):
                    best_set[i] = cur[i]
        else:
            in_set[u] = 1
    return best, best_set


def _make_impls():
    impls = {
        "numpy": {
            "grad_modulus": _grad_modulus_numpy,
            "energy_subgrad": _energy_subgrad_numpy,
            "min_perimeter_scan": _min_perimeter_scan_numpy,
            "anneal_chain": _anneal_chain_loop,
        }
    }
    if HAS_NUMBA:
        jit = njit(cache=True, nogil=True)
        impls["numba"] = {
            "grad_modulus": jit(_grad_modulus_loop),
            "energy_subgrad": jit(_energy_subgrad_loop),
            "min_perimeter_scan": jit(_min_perimeter_scan_loop),
            "anneal_chain": jit(_anneal_chain_loop),
        }
    return impls


IMPLS = _make_impls()

_disabled = os.environ.get("GROUPISO_NO_NUMBA", "").strip() not in ("", "0")
BACKEND = "numba" if (HAS_NUMBA and not _disabled) else "numpy"

grad_modulus_csr = IMPLS[BACKEND]["grad_modulus"]
energy_subgrad_csr = IMPLS[BACKEND]["energy_subgrad"]
min_perimeter_scan = IMPLS[BACKEND]["min_perimeter_scan"]
anneal_chain = IMPLS[BACKEND]["anneal_chain"]
