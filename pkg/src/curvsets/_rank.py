"""Matrix rank kernels: blocked elimination over GF(p), exact Bareiss, and
rational rank via multi-prime agreement.

The blocked driver does panel factorisation (the hot loop, compiled with
numba when available) and pushes the trailing update through float64 BLAS
matmul, which is exact because block * (p-1)^2 < 2^53 for the primes used.
Set CURVATURE_BACKEND=numpy to force the pure-numpy panel kernel, or
CURVATURE_BACKEND=numba to insist on the compiled one.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import InvalidRange, RankDisagreement

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - sandbox always has numba
    HAS_NUMBA = False

    def njit(*args, **kwargs):  # type: ignore[misc]
        def wrap(fn):
            return fn

        return wrap


# all < 2^22 so that float64 GEMM accumulation over blocks of 256 stays exact
MODULAR_PRIMES = (4194301, 4194287, 4194277)

_BACKEND_ENV = "CURVATURE_BACKEND"
DEFAULT_BLOCK = 128

# Bareiss is used for exact rational rank only on genuinely small matrices;
# everything bigger goes through multi-prime modular rank.
BAREISS_MAX_SHORT_SIDE = 64
BAREISS_MAX_LONG_SIDE = 640


def active_backend(backend: str | None = None) -> str:
    """Resolve the kernel backend: explicit arg > env var > numba-if-present."""
    choice = backend or os.environ.get(_BACKEND_ENV, "").strip().lower() or None
    if choice is None:
        return "numba" if HAS_NUMBA else "numpy"
    if choice not in ("numba", "numpy"):
        raise InvalidRange(f"unknown backend {choice!r} (use 'numba' or 'numpy')")
    if choice == "numba" and not HAS_NUMBA:
        raise InvalidRange("numba backend requested but numba is not importable")
    return choice


@njit(cache=True)
def _panel_numba(panel, p, perm):
    # Eliminate within a tall int64 panel over GF(p) with partial pivoting and
    # column skipping.  Entries start in [0, p); non-pivot rows accumulate
    # unreduced values bounded by p + block*p^2 (fits int64), pivot rows are
    # reduced when selected.  Multipliers overwrite eliminated entries.
    R, b = panel.shape
    piv_cols = np.empty(b, np.int64)
    npiv = 0
    r = 0
    for c in range(b):
        pr = -1
        for i in range(r, R):
            v = panel[i, c] % p
            panel[i, c] = v
            if v != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(b):
                tmp = panel[r, j]
                panel[r, j] = panel[pr, j]
                panel[pr, j] = tmp
            tmp = perm[r]
            perm[r] = perm[pr]
            perm[pr] = tmp
        for j in range(c, b):
            panel[r, j] %= p
        inv = 1  # modular inverse by Fermat: pivot^(p-2)
        base = panel[r, c]
        e = p - 2
        while e:
            if e & 1:
                inv = (inv * base) % p
            base = (base * base) % p
            e >>= 1
        for i in range(r + 1, R):
            v = panel[i, c] % p
            if v != 0:
                mult = (v * inv) % p
                panel[i, c] = mult
                for j in range(c + 1, b):
                    panel[i, j] -= mult * panel[r, j]
            else:
                panel[i, c] = 0
        piv_cols[npiv] = c
        npiv += 1
        r += 1
        if r == R:
            break
    return npiv, piv_cols[:npiv]


def _panel_numpy(panel, p, perm):
    # numpy twin of _panel_numba; same storage contract.
    R, b = panel.shape
    piv_cols = []
    r = 0
    for c in range(b):
        col = panel[r:, c] % p
        panel[r:, c] = col
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            panel[[r, pr]] = panel[[pr, r]]
            perm[[r, pr]] = perm[[pr, r]]
        panel[r, c:] %= p
        inv = pow(int(panel[r, c]), p - 2, p)
        mult = (panel[r + 1 :, c] * inv) % p
        panel[r + 1 :, c] = mult
        if c + 1 < b:
            panel[r + 1 :, c + 1 :] -= np.outer(mult, panel[r, c + 1 :])
        piv_cols.append(c)
        r += 1
        if r == R:
            break
    return len(piv_cols), np.asarray(piv_cols, np.int64)


@njit(cache=True)
def _forward_numba(L11, U, p):
    # U <- L11^{-1} U over GF(p), L11 unit lower triangular (multipliers).
    # Row i is reduced mod p when finalised, then feeds the rows below it;
    # accumulated values stay below p + block*p^2.
    k, C = U.shape
    for i in range(k):
        for j in range(C):
            U[i, j] %= p
        for i2 in range(i + 1, k):
            m = L11[i2, i] % p
            if m != 0:
                for j in range(C):
                    U[i2, j] -= m * U[i, j]


def _forward_numpy(L11, U, p):
    k, _ = U.shape
    for i in range(k):
        U[i] %= p
        if i + 1 < k:
            U[i + 1 :] -= np.outer(L11[i + 1 :, i] % p, U[i])


def rank_mod_p(
    A, p: int, block: int = DEFAULT_BLOCK, backend: str | None = None
) -> int:
    """Rank of an integer matrix over GF(p) by blocked elimination."""
    if p < 2:
        raise InvalidRange(f"p must be a prime >= 2, got {p}")
    if block < 1 or block * (p - 1) ** 2 >= 2 ** 53:
        raise InvalidRange("block size breaks exact float64 accumulation")
    use_numba = active_backend(backend) == "numba"
    W = np.remainder(np.asarray(A, dtype=np.int64), p).astype(np.float64)
    rank = 0
    while W.shape[0] and W.shape[1]:
        R, C = W.shape
        b = min(block, C)
        panel = W[:, :b].astype(np.int64)
        perm = np.arange(R, dtype=np.int64)
        if use_numba:
            npiv, pcol = _panel_numba(panel, p, perm)
        else:
            npiv, pcol = _panel_numpy(panel, p, perm)
        rank += npiv
        if npiv == R or b == C:
            break
        if npiv == 0:
            W = W[:, b:]
            continue
        trail = W[:, b:]
        U = np.ascontiguousarray(trail[perm[:npiv]]).astype(np.int64)
        L11 = np.ascontiguousarray(panel[:npiv, :][:, pcol])
        if use_numba:
            _forward_numba(L11, U, p)
            Uf = np.remainder(U, p).astype(np.float64)
        else:
            Uf = U.astype(np.float64)
            _forward_numpy(L11, Uf, p)
            np.remainder(Uf, p, out=Uf)
        Wn = np.ascontiguousarray(trail[perm[npiv:]])
        L21 = panel[npiv:, :][:, pcol].astype(np.float64)
        Wn -= L21 @ Uf
        np.remainder(Wn, p, out=Wn)
        W = Wn
    return rank


def rank_bareiss(A) -> int:
    """Exact rank over the rationals by fraction-free integer elimination.

    Intermediate entries are minors of the input, so this is only for small
    matrices; use :func:`rank_rational` for automatic dispatch.
    """
    M = [[int(x) for x in row] for row in np.asarray(A)]
    R = len(M)
    C = len(M[0]) if R else 0
    prev = 1
    r = 0
    for c in range(C):
        pr = next((i for i in range(r, R) if M[i][c]), None)
        if pr is None:
            continue
        if pr != r:
            M[r], M[pr] = M[pr], M[r]
        pivot_row = M[r]
        pivot = pivot_row[c]
        for i in range(r + 1, R):
            row = M[i]
            f = row[c]
            for j in range(c + 1, C):
                row[j] = (row[j] * pivot - f * pivot_row[j]) // prev
            row[c] = 0
        prev = pivot
        r += 1
        if r == R:
            break
    return r


def rank_rational(A, block: int = DEFAULT_BLOCK, backend: str | None = None) -> int:
    """Exact rank over the rationals.

    Small matrices go through Bareiss; larger ones are ranked modulo the three
    fixed primes and must agree (:class:`RankDisagreement` otherwise, which
    would signal torsion divisible by one of the primes).
    """
    A = np.asarray(A, dtype=np.int64)
    R, C = A.shape if A.ndim == 2 else (0, 0)
    if R == 0 or C == 0:
        return 0
    if min(R, C) <= BAREISS_MAX_SHORT_SIDE and max(R, C) <= BAREISS_MAX_LONG_SIDE:
        return rank_bareiss(A)
    ranks = {p: rank_mod_p(A, p, block=block, backend=backend) for p in MODULAR_PRIMES}
    values = set(ranks.values())
    if len(values) != 1:
        raise RankDisagreement(
            f"modular ranks disagree across primes: {ranks}; "
            "the matrix has invariant factors divisible by one of them"
        )
    return values.pop()
