"""Dense exact linear algebra over a prime field F_p.

Matrices are float64 arrays holding exact integers of magnitude below
2**53.  Reduction produces signed residues in [-p/2, p/2]; products of
two reduced values (~ p**2 / 4 < 2**30 for p = 32003) accumulate
additively during blocked elimination, so everything stays exactly
representable as long as the pivot count times p**2 stays under 2**53 --
true by orders of magnitude at the sizes this package handles.
"""
from __future__ import annotations

import numpy as np


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


def reduce_mod(a: np.ndarray, p: int) -> np.ndarray:
    """In-place signed residue of a mod p, exact, for float64 integer arrays.

    Rounds a/p to the nearest integer k and subtracts k*p, leaving values
    in [-p/2, p/2].  For odd p and |a| < 2**52 this is exact: a/p is never
    within float error of a half-integer (that would need 2*(a mod p) = p),
    and both k*p and the subtraction are exact in float64.  Mask- and
    branch-free, so it is fast on small slices too (~30x faster than '%').
    """
    q = np.multiply(a, 1.0 / p, dtype=np.float64)
    np.rint(q, out=q)
    q *= p
    a -= q
    return a


def _swap_rows(a: np.ndarray, i: int, j: int) -> None:
    if i != j:
        a[[i, j], :] = a[[j, i], :]


def _unit_lower_inverse_modp(L: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a unit lower triangular matrix over F_p (small s x s)."""
    s = L.shape[0]
    X = np.eye(s, dtype=np.float64)
    for t in range(1, s):
        X[t, :t] = -(L[t, :t] @ X[:t, :t])
        reduce_mod(X[t, :t], p)
    return X


def _factor_panel_t(PT: np.ndarray, p: int, A: np.ndarray, r: int, sub: int = 32) -> list[int]:
    """LU-factor a panel given TRANSPOSED (columns as contiguous rows).

    PT has shape (panel width b) x (active rows mr); PT[j, i] is panel
    entry (row i, column j).  Returns panel pivot columns; multipliers
    are stored in place of the eliminated entries; row swaps (= column
    swaps of PT) are mirrored onto the full matrix A at global row r.
    The panel is processed in narrow sub-panels with gemm updates.
    """
    b, mr = PT.shape
    piv: list[int] = []
    for j0 in range(0, b, sub):
        j1 = min(j0 + sub, b)
        s0 = len(piv)
        for j in range(j0, j1):
            rr = len(piv)
            if rr == mr:
                break
            row = PT[j, rr:]
            reduce_mod(row, p)
            nz = np.flatnonzero(row)
            if nz.size == 0:
                continue
            i = rr + nz[0]
            if i != rr:
                PT[:, [rr, i]] = PT[:, [i, rr]]
                _swap_rows(A, r + rr, r + i)
            inv = pow(int(PT[j, rr]), p - 2, p)
            mult = PT[j, rr + 1:] * inv
            reduce_mod(mult, p)
            if j + 1 < j1:
                u = PT[j + 1:j1, rr].copy()
                reduce_mod(u, p)
                PT[j + 1:j1, rr + 1:] -= np.outer(u, mult)
            PT[j, rr + 1:] = mult
            piv.append(j)
        s = len(piv) - s0
        if s and j1 < b:
            sub_piv = piv[s0:]
            L11t = PT[sub_piv, s0:s0 + s]  # transposed unit-lower factor
            Linv = _unit_lower_inverse_modp(np.tril(L11t.T, -1) + np.eye(s), p)
            UT = PT[j1:, s0:s0 + s]
            reduce_mod(UT, p)
            UT[:] = UT @ Linv.T
            reduce_mod(UT, p)
            PT[j1:, s0 + s:] -= UT @ PT[sub_piv, s0 + s:]
    return piv


def rank_modp(
    a: np.ndarray,
    p: int,
    block: int = 256,
    stop_at: int | None = None,
    overwrite: bool = False,
) -> int:
    """Rank over F_p by right-looking blocked Gaussian elimination.

    `a` may be any integer-valued array; it is copied to float64 unless
    `overwrite` is set and it already is one.  If `stop_at` is given,
    elimination returns as soon as that many pivots are found (sound
    when the caller knows an a-priori upper bound on the rank).

    Each panel is factored transposed in a contiguous scratch buffer,
    its pivot rows are fixed up with one small triangular-inverse gemm,
    and the trailing matrix receives a single (chunked) gemm update.
    Trailing values are left unreduced between panels; they stay below
    pivots * p**2 << 2**53.
    """
    if overwrite and isinstance(a, np.ndarray) and a.dtype == np.float64:
        A = a
    else:
        A = np.array(a, dtype=np.float64)
    m, n = A.shape
    if m == 0 or n == 0:
        return 0
    reduce_mod(A, p)
    r = 0
    c0 = 0
    buf = None
    while c0 < n and r < m:
        c1 = min(c0 + block, n)
        PT = A[r:, c0:c1].T.copy()  # panel transposed: columns contiguous
        piv = _factor_panel_t(PT, p, A, r)
        s = len(piv)
        if s and c1 < n:
            Lt = PT[piv]  # row j is panel pivot column j
            Linv = _unit_lower_inverse_modp(np.tril(Lt[:, :s].T, -1) + np.eye(s), p)
            U = A[r:r + s, c1:]
            reduce_mod(U, p)
            U[:] = Linv @ U
            reduce_mod(U, p)
            L21t = Lt[:, s:]
            if buf is None:
                buf = np.empty((A.shape[0], 4096), dtype=np.float64)
            for w0 in range(c1, n, 4096):  # chunk to bound the gemm temporary
                w1 = min(w0 + 4096, n)
                out = buf[:L21t.shape[1], :w1 - w0]
                np.matmul(L21t.T, U[:, w0 - c1:w1 - c1], out=out)
                A[r + s:, w0:w1] -= out
        r += s
        c0 = c1
        if stop_at is not None and r >= stop_at:
            return r
    return r


def rref_modp(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p; returns (R, pivot_columns)."""
    A = np.array(a, dtype=np.float64)
    m, n = A.shape
    reduce_mod(A, p)
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        col = A[r:, c]
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        _swap_rows(A, r, r + nz[0])
        inv = pow(int(A[r, c]), p - 2, p)
        row = A[r] * inv
        reduce_mod(row, p)
        A[r] = row
        col_all = A[:, c].copy()
        col_all[r] = 0.0
        nzr = np.flatnonzero(col_all)
        if nzr.size:
            sub = A[nzr]  # fancy indexing copies; write back explicitly
            sub -= np.outer(col_all[nzr], row)
            reduce_mod(sub, p)
            A[nzr] = sub
        pivots.append(c)
        r += 1
    return A, pivots


def nullspace_modp(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right kernel over F_p, returned as int64 columns."""
    A = np.asarray(a)
    m, n = A.shape
    if m == 0:
        return np.eye(n, dtype=np.int64)
    R, pivots = rref_modp(A, p)
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    for idx, c in enumerate(free):
        basis[c, idx] = 1
        for rr, pc in enumerate(pivots):
            v = int(R[rr, c])
            if v:
                basis[pc, idx] = (-v) % p
    return basis
