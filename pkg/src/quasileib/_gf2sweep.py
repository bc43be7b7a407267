"""Bit-packed exhaustive sweep of 3-dimensional multiplication tables over
GF(2).

A table is 27 bits: c[i][j][k] at position 9i + 3j + k.  Equivalently it is
a triple of right-multiplication matrices R_m (R_m[i][k] = c[i][m][k], a
9-bit pattern with bit 3i + k), and the right Leibniz identity becomes the
nine matrix equations

    sum_k R_m[j][k] * R_k  =  R_j R_m - R_m R_j      for all j, m,

which this module evaluates for all 2**27 candidate triples with vectorized
word operations, pruning after each equation.  Isomorphism classes are the
orbits of GL(3,2) acting by base change; each surviving table is mapped to
the minimum of its orbit (a canonical form) by precomputed 27x27 bit-matrix
transports applied through byte lookup tables.
"""

from __future__ import annotations

import numpy as np

_STATE = {}


def _mat_of(idx: int):
    return [[(idx >> (3 * i + k)) & 1 for k in range(3)] for i in range(3)]


def _idx_of(mat) -> int:
    return sum(mat[i][k] << (3 * i + k) for i in range(3) for k in range(3))


def _mat_mul2(a, b):
    return [
        [sum(a[i][x] & b[x][k] for x in range(3)) & 1 for k in range(3)]
        for i in range(3)
    ]


def _mat_inv2(a):
    # gaussian elimination over GF(2) on the augmented 3x6 system
    m = [row[:] + [1 if r == i else 0 for r in range(3)] for i, row in enumerate(a)]
    for col in range(3):
        piv = next((r for r in range(col, 3) if m[r][col]), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        for r in range(3):
            if r != col and m[r][col]:
                m[r] = [(x + y) & 1 for x, y in zip(m[r], m[col])]
    return [row[3:] for row in m]


def _tables():
    """Lazily built per-process lookup tables."""
    if _STATE:
        return _STATE
    mats = [_mat_of(i) for i in range(512)]
    m3 = np.array(mats, dtype=np.uint8)  # (512, 3, 3)
    prod_m = np.einsum("aik,bkj->abij", m3, m3) % 2
    weights = (1 << (3 * np.arange(3)[:, None] + np.arange(3)[None, :])).astype(
        np.uint32
    )
    prod = (prod_m.astype(np.uint32) * weights).sum(axis=(2, 3)).astype(np.uint32)
    comm = prod ^ prod.T

    # spread[j][r]: matrix pattern r (bit 3i+k) placed at table slot j
    # (bit 9i + 3j + k)
    spread = np.zeros((3, 512), dtype=np.uint32)
    for r in range(512):
        for i in range(3):
            for k in range(3):
                if (r >> (3 * i + k)) & 1:
                    for j in range(3):
                        spread[j, r] |= 1 << (9 * i + 3 * j + k)

    # canonical transports: for P in GL(3,2), the 27x27 bit matrix taking a
    # table to its base change, compiled to byte lookup tables
    luts = []
    for p_idx in range(512):
        p = _mat_of(p_idx)
        pinv = _mat_inv2(p)
        if pinv is None:
            continue
        colpat = [0] * 27
        for a in range(3):
            for b in range(3):
                for l in range(3):
                    src = 9 * a + 3 * b + l
                    pat = 0
                    for i in range(3):
                        if not p[i][a]:
                            continue
                        for j in range(3):
                            if not p[j][b]:
                                continue
                            for k in range(3):
                                if pinv[l][k]:
                                    pat ^= 1 << (9 * i + 3 * j + k)
                    colpat[src] = pat
        lut = np.zeros((4, 256), dtype=np.uint32)
        for byte in range(4):
            for val in range(256):
                acc = 0
                for bit in range(8):
                    src = 8 * byte + bit
                    if src < 27 and (val >> bit) & 1:
                        acc ^= colpat[src]
                lut[byte, val] = acc
        luts.append(lut)
    _STATE["prod"] = prod
    _STATE["comm"] = comm
    _STATE["spread"] = spread
    _STATE["luts"] = luts
    return _STATE


def _row(arr, j):
    return (arr >> np.uint32(3 * j)) & np.uint32(7)


def _row_scalar(val, j):
    return (val >> (3 * j)) & 7


def _lincomb(sel, b0, b1, b2):
    zero = np.uint32(0)
    out = np.where((sel & 1).astype(bool), b0, zero)
    out = out ^ np.where((sel & 2).astype(bool), b1, zero)
    out = out ^ np.where((sel & 4).astype(bool), b2, zero)
    return out


def survivors_for_r2(r2: int) -> np.ndarray:
    """Valid tables with the given third right-multiplication matrix,
    returned as packed 27-bit table ids."""
    t = _tables()
    prod, comm, spread = t["prod"], t["comm"], t["spread"]
    idx = np.arange(512 * 512, dtype=np.uint32)
    a0 = idx >> np.uint32(9)
    a1 = idx & np.uint32(511)
    r2u = np.uint32(r2)

    def keep(mask):
        nonlocal a0, a1
        a0 = a0[mask]
        a1 = a1[mask]

    # (j, m) = (2, 2): row 2 of R_2 selects; commutator with itself is 0
    s = _row_scalar(r2, 2)
    keep(_lincomb(np.uint32(s), a0, a1, r2u) == 0)
    # (0, 2) and (1, 2): rows of R_2 select, rhs = comm[R_j, r2]
    for j in (0, 1):
        s = _row_scalar(r2, j)
        rj = a0 if j == 0 else a1
        keep(_lincomb(np.uint32(s), a0, a1, r2u) == comm[rj, r2])
    # (2, 0) and (2, 1): rows of the varying matrix select
    for m in (0, 1):
        rm = a0 if m == 0 else a1
        keep(_lincomb(_row(rm, 2), a0, a1, r2u) == comm[r2, rm])
    # (0, 0) and (1, 1): rhs = 0
    for jm in (0, 1):
        rm = a0 if jm == 0 else a1
        keep(_lincomb(_row(rm, jm), a0, a1, r2u) == 0)
    # (0, 1) and (1, 0): full two-sided gather, done last on few survivors
    rhs = comm[a0, a1]
    keep(_lincomb(_row(a1, 0), a0, a1, r2u) == rhs)
    rhs = comm[a0, a1]
    keep(_lincomb(_row(a0, 1), a0, a1, r2u) == rhs)

    return spread[0][a0] | spread[1][a1] | spread[2][r2]


def sweep_range(r2_lo: int, r2_hi: int) -> np.ndarray:
    chunks = [survivors_for_r2(r2) for r2 in range(r2_lo, r2_hi)]
    if not chunks:
        return np.zeros(0, dtype=np.uint32)
    return np.concatenate(chunks)


def canonicalize(ids: np.ndarray) -> np.ndarray:
    """Minimum of the GL(3,2) orbit of each table id."""
    t = _tables()
    best = ids.copy()
    b0 = ids & np.uint32(255)
    b1 = (ids >> np.uint32(8)) & np.uint32(255)
    b2 = (ids >> np.uint32(16)) & np.uint32(255)
    b3 = ids >> np.uint32(24)
    for lut in t["luts"]:
        cand = lut[0][b0] ^ lut[1][b1] ^ lut[2][b2] ^ lut[3][b3]
        np.minimum(best, cand, out=best)
    return best


def run(workers: int = 1):
    """Full exhaustive sweep.  Returns (scanned, valid, sorted canonical ids).

    The worker count only affects how the candidate space is chunked; the
    result is a set union, so the output is identical for any count.
    """
    if workers <= 1:
        survivors = sweep_range(0, 512)
    else:
        from concurrent.futures import ProcessPoolExecutor

        bounds = np.linspace(0, 512, workers + 1, dtype=int)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(sweep_range, bounds[:-1].tolist(), bounds[1:].tolist())
            )
        survivors = (
            np.concatenate(parts) if parts else np.zeros(0, dtype=np.uint32)
        )
    canon = canonicalize(survivors)
    classes = np.unique(canon)
    return 1 << 27, int(survivors.size), [int(x) for x in classes.tolist()]


def decode_table_bits(table_id: int, dim: int = 3):
    """27-bit id -> nested [i][j][k] 0/1 lists."""
    return [
        [
            [(table_id >> (dim * dim * i + dim * j + k)) & 1 for k in range(dim)]
            for j in range(dim)
        ]
        for i in range(dim)
    ]
