"""Hot loops, each with a numba version and a vectorised numpy version.

* ``face_step``: one level of the face lattice walk on uint64 ray masks.
* ``count_fibers``: lattice points of many small fiber polytopes.
* ``gr25_sweep``: classify all integer metrics on five points in a box.

The public functions dispatch on :func:`coxsagbi._accel.backend`; the
``*_numba`` and ``*_numpy`` variants stay importable for benchmarking and
cross-checking.
"""

from __future__ import annotations

import itertools

import numpy as np

from ._accel import backend, njit

# ---------------------------------------------------------------------------
# face lattice


@njit(cache=True)
def _face_step_nb(faces, facets):
    nf = facets.shape[0]
    out = np.empty(faces.shape[0] * nf, dtype=np.uint64)
    cand = np.empty(nf, dtype=np.uint64)
    k = 0
    for i in range(faces.shape[0]):
        f = faces[i]
        m = 0
        for j in range(nf):
            c = f & facets[j]
            if c != f:
                dup = False
                for q in range(m):
                    if cand[q] == c:
                        dup = True
                        break
                if not dup:
                    cand[m] = c
                    m += 1
        for a in range(m):
            ca = cand[a]
            maximal = True
            for b in range(m):
                cb = cand[b]
                if b != a and (ca & cb) == ca and ca != cb:
                    maximal = False
                    break
            if maximal:
                out[k] = ca
                k += 1
    return out[:k]


def face_step_numba(faces, facets):
    return np.unique(_face_step_nb(faces, facets))


def face_step_numpy(faces, facets, chunk=None):
    nf = facets.shape[0]
    if chunk is None:
        chunk = max(1, 2_000_000 // max(1, nf * nf))
    pieces = []
    for s in range(0, faces.shape[0], chunk):
        f = faces[s:s + chunk]
        inter = f[:, None] & facets[None, :]
        proper = inter != f[:, None]
        a = inter[:, :, None]
        b = inter[:, None, :]
        strict = ((a & b) == a) & (a != b) & proper[:, None, :]
        maximal = proper & ~strict.any(axis=2)
        pieces.append(inter[maximal])
    if not pieces:
        return np.empty(0, dtype=np.uint64)
    return np.unique(np.concatenate(pieces))


def face_step(faces, facets):
    faces = np.ascontiguousarray(faces, dtype=np.uint64)
    facets = np.ascontiguousarray(facets, dtype=np.uint64)
    if backend() == "numba":
        return face_step_numba(faces, facets)
    return face_step_numpy(faces, facets)


# ---------------------------------------------------------------------------
# fiber lattice points


@njit(cache=True)
def _count_fibers_nb(H, rhs, lo, hi):
    """For each row i count w in [lo_i, hi_i] with H w + rhs_i >= 0."""
    n, k = lo.shape
    m = H.shape[0]
    out = np.zeros(n, dtype=np.int64)
    w = np.empty(k, dtype=np.int64)
    for i in range(n):
        empty = False
        for c in range(k):
            if lo[i, c] > hi[i, c]:
                empty = True
        if empty:
            continue
        for c in range(k):
            w[c] = lo[i, c]
        total = 0
        while True:
            ok = True
            for row in range(m):
                s = rhs[i, row]
                for c in range(k):
                    s += H[row, c] * w[c]
                if s < 0:
                    ok = False
                    break
            if ok:
                total += 1
            c = k - 1
            while c >= 0:
                w[c] += 1
                if w[c] <= hi[i, c]:
                    break
                w[c] = lo[i, c]
                c -= 1
            if c < 0:
                break
        out[i] = total
    return out


def count_fibers_numba(H, rhs, lo, hi):
    return _count_fibers_nb(H, rhs, lo, hi)


def count_fibers_numpy(H, rhs, lo, hi):
    n, k = lo.shape
    out = np.zeros(n, dtype=np.int64)
    for i in range(n):
        if np.any(lo[i] > hi[i]):
            continue
        axes = [np.arange(lo[i, c], hi[i, c] + 1, dtype=np.int64) for c in range(k)]
        pts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, k)
        ok = (pts @ H.T + rhs[i][None, :] >= 0).all(axis=1)
        out[i] = int(ok.sum())
    return out


def count_fibers(H, rhs, lo, hi):
    H = np.ascontiguousarray(H, dtype=np.int64)
    rhs = np.ascontiguousarray(rhs, dtype=np.int64)
    lo = np.ascontiguousarray(lo, dtype=np.int64)
    hi = np.ascontiguousarray(hi, dtype=np.int64)
    if backend() == "numba":
        return count_fibers_numba(H, rhs, lo, hi)
    return count_fibers_numpy(H, rhs, lo, hi)


# ---------------------------------------------------------------------------
# metrics on five points
#
# Metric coordinates: d12 d13 d14 d15 d23 d24 d25 d34 d35 d45 (indices 0..9).
# Class code: sum_t c_t 3^t + 3^10 q, where c_t in {0,1,2} picks the term of
# L_ijk (t-th triple) with the largest d among (d_ij, d_ik, d_jk) and q is
# the index of the pair {l,m} for the leading split of Q_12345.  Ties give
# code -1 (not moneric).

PAIRS = list(itertools.combinations(range(5), 2))
PAIR_INDEX = {p: i for i, p in enumerate(PAIRS)}
TRIPLES = list(itertools.combinations(range(5), 3))
TRIPLE_PAIRS = np.array([[PAIR_INDEX[(i, j)], PAIR_INDEX[(i, k)], PAIR_INDEX[(j, k)]]
                         for i, j, k in TRIPLES], dtype=np.int64)
# split q: pair (l,m) = PAIRS[q]; the triple is the complement
SPLIT_PAIRS = np.array([
    [PAIR_INDEX[p] for p in itertools.combinations([s for s in range(5) if s not in PAIRS[q]], 2)]
    + [q] for q in range(10)], dtype=np.int64)
QUARTETS = np.array([
    [PAIR_INDEX[(a, b)], PAIR_INDEX[(c, e)], PAIR_INDEX[(a, c)], PAIR_INDEX[(b, e)],
     PAIR_INDEX[(a, e)], PAIR_INDEX[(b, c)]]
    for a, b, c, e in itertools.combinations(range(5), 4)], dtype=np.int64)
NCODES = 3**10 * 10


@njit(cache=True)
def _four_point_ok(d, qi):
    s1 = d[qi[0]] + d[qi[1]]
    s2 = d[qi[2]] + d[qi[3]]
    s3 = d[qi[4]] + d[qi[5]]
    m = max(s1, max(s2, s3))
    cnt = (s1 == m) + (s2 == m) + (s3 == m)
    return cnt >= 2


@njit(cache=True)
def _classify_nb(d, tp, sp):
    code = 0
    p3 = 1
    for t in range(10):
        a = d[tp[t, 0]]
        b = d[tp[t, 1]]
        c = d[tp[t, 2]]
        if a > b and a > c:
            ch = 0
        elif b > a and b > c:
            ch = 1
        elif c > a and c > b:
            ch = 2
        else:
            return -1
        code += ch * p3
        p3 *= 3
    best = -1
    bv = -1
    tie = False
    for q in range(10):
        v = d[sp[q, 0]] + d[sp[q, 1]] + d[sp[q, 2]] + d[sp[q, 3]]
        if v > bv:
            bv = v
            best = q
            tie = False
        elif v == bv:
            tie = True
    if tie:
        return -1
    return code + p3 * best


@njit(cache=True)
def _gr25_sweep_nb(bound, tp, sp, quart):
    counts = np.zeros(NCODES, dtype=np.int64)
    reps = np.full((NCODES, 10), -1, dtype=np.int64)
    d = np.zeros(10, dtype=np.int64)
    nonmoneric = 0
    inside = 0
    B = bound + 1
    for d0 in range(B):
        d[0] = d0
        for d1 in range(B):
            d[1] = d1
            for d2 in range(B):
                d[2] = d2
                for d3 in range(B):
                    d[3] = d3
                    for d4 in range(B):
                        d[4] = d4
                        for d5 in range(B):
                            d[5] = d5
                            for d6 in range(B):
                                d[6] = d6
                                for d7 in range(B):
                                    d[7] = d7
                                    if not _four_point_ok(d, quart[0]):
                                        continue
                                    for d8 in range(B):
                                        d[8] = d8
                                        if not _four_point_ok(d, quart[1]):
                                            continue
                                        for d9 in range(B):
                                            d[9] = d9
                                            if not (_four_point_ok(d, quart[2])
                                                    and _four_point_ok(d, quart[3])
                                                    and _four_point_ok(d, quart[4])):
                                                continue
                                            inside += 1
                                            c = _classify_nb(d, tp, sp)
                                            if c < 0:
                                                nonmoneric += 1
                                                continue
                                            if counts[c] == 0:
                                                for z in range(10):
                                                    reps[c, z] = d[z]
                                            counts[c] += 1
    return counts, reps, inside, nonmoneric


def gr25_sweep_numba(bound):
    counts, reps, inside, nonmon = _gr25_sweep_nb(bound, TRIPLE_PAIRS, SPLIT_PAIRS, QUARTETS)
    codes = np.nonzero(counts)[0]
    return codes, counts[codes], reps[codes], int(inside), int(nonmon)


def _four_point_mask(D, q):
    s1 = D[:, q[0]] + D[:, q[1]]
    s2 = D[:, q[2]] + D[:, q[3]]
    s3 = D[:, q[4]] + D[:, q[5]]
    m = np.maximum(s1, np.maximum(s2, s3))
    return ((s1 == m).astype(np.int8) + (s2 == m) + (s3 == m)) >= 2


def _classify_numpy(D):
    vals = D[:, TRIPLE_PAIRS]  # (N, 10, 3)
    mx = vals.max(axis=2)
    uniq = (vals == mx[:, :, None]).sum(axis=2) == 1
    choice = vals.argmax(axis=2)
    sv = D[:, SPLIT_PAIRS].sum(axis=2)  # (N, 10)
    smx = sv.max(axis=1)
    suniq = (sv == smx[:, None]).sum(axis=1) == 1
    q = sv.argmax(axis=1)
    code = (choice * (3 ** np.arange(10, dtype=np.int64))[None, :]).sum(axis=1) + 3**10 * q
    ok = uniq.all(axis=1) & suniq
    return np.where(ok, code, -1)


def gr25_sweep_numpy(bound):
    B = bound + 1
    grid7 = np.array(list(itertools.product(range(B), repeat=5)), dtype=np.int64)
    counts = np.zeros(NCODES, dtype=np.int64)
    reps = np.full((NCODES, 10), -1, dtype=np.int64)
    inside = 0
    nonmon = 0
    vals = np.arange(B, dtype=np.int64)
    for d0 in range(B):
        for d1 in range(B):
            D = np.concatenate([np.full((grid7.shape[0], 1), d0), np.full((grid7.shape[0], 1), d1),
                                grid7], axis=1)
            for col, quarts in ((7, [0]), (8, [1]), (9, [2, 3, 4])):
                D = np.repeat(D, B, axis=0)
                D = np.concatenate([D, np.tile(vals, D.shape[0] // B)[:, None]], axis=1)
                keep = np.ones(D.shape[0], dtype=bool)
                for qi in quarts:
                    keep &= _four_point_mask(D, QUARTETS[qi])
                D = D[keep]
            inside += D.shape[0]
            code = _classify_numpy(D)
            nonmon += int((code < 0).sum())
            good = code >= 0
            cs, first, cnt = np.unique(code[good], return_index=True, return_counts=True)
            new = counts[cs] == 0
            reps[cs[new]] = D[good][first[new]]
            counts[cs] += cnt
    codes = np.nonzero(counts)[0]
    return codes, counts[codes], reps[codes], int(inside), int(nonmon)


def gr25_sweep(bound):
    """Returns (codes, metric counts per code, first metric per code,
    number of tropical metrics, number of non-moneric metrics)."""
    if backend() == "numba":
        return gr25_sweep_numba(bound)
    return gr25_sweep_numpy(bound)


def classify_metric_code(d) -> int:
    D = np.asarray(d, dtype=np.int64).reshape(1, 10)
    return int(_classify_numpy(D)[0])


def decode_code(code: int):
    """(choices for the ten L_ijk, split index for Q)."""
    ch = []
    c = code
    for _ in range(10):
        ch.append(c % 3)
        c //= 3
    return ch, c
