"""Dense linear algebra over F_p on int64 arrays (p < 2**31)."""

from __future__ import annotations

import numpy as np

_INT64_SAFE = 2**62


def matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    inner = A.shape[-1]
    if inner * (p - 1) ** 2 < _INT64_SAFE:
        return (A @ B) % p
    out = (A.astype(object) @ B.astype(object)) % p
    return out.astype(np.int64)


def rref(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with zero rows dropped."""
    M = np.array(A, dtype=np.int64) % p
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if len(nz) == 0:
            continue
        i = r + nz[0]
        if i != r:
            M[[r, i]] = M[[i, r]]
        M[r] = (M[r] * pow(int(M[r, c]), -1, p)) % p
        factors = M[:, c].copy()
        factors[r] = 0
        M = (M - np.outer(factors, M[r])) % p
        pivots.append(c)
        r += 1
    return M[:r], pivots


def nullspace(A: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning ``{v : A v = 0}``."""
    n = A.shape[1]
    R, pivots = rref(A, p)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for row, pc in enumerate(pivots):
            basis[t, pc] = (-R[row, f]) % p
    return basis


def hessenberg(A: np.ndarray, p: int) -> np.ndarray:
    H = np.array(A, dtype=np.int64) % p
    n = len(H)
    for c in range(n - 2):
        nz = np.flatnonzero(H[c + 1 :, c])
        if len(nz) == 0:
            continue
        i = c + 1 + nz[0]
        if i != c + 1:
            H[[c + 1, i]] = H[[i, c + 1]]
            H[:, [c + 1, i]] = H[:, [i, c + 1]]
        u = (H[c + 2 :, c] * pow(int(H[c + 1, c]), -1, p)) % p
        if not u.any():
            continue
        H[c + 2 :] = (H[c + 2 :] - np.outer(u, H[c + 1])) % p
        H[:, c + 1] = (H[:, c + 1] + matmul_mod(H[:, c + 2 :], u, p)) % p
    return H


def charpoly(A: np.ndarray, p: int) -> list[int]:
    """Characteristic polynomial, coefficients lowest degree first."""
    H = hessenberg(A, p).tolist()
    n = len(H)
    polys: list[list[int]] = [[1]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        h = H[m - 1][m - 1]
        new = [0] + prev  # x * p_{m-1}
        for t, c in enumerate(prev):
            new[t] = (new[t] - h * c) % p
        prod = 1
        for i in range(m - 1, 0, -1):
            prod = prod * H[i][i - 1] % p
            coef = H[i - 1][m - 1] * prod % p
            if coef:
                for t, c in enumerate(polys[i - 1]):
                    new[t] = (new[t] - coef * c) % p
        polys.append(new)
    return polys[n]


def roots(poly: list[int], p: int) -> list[int]:
    """All roots in F_p, by vectorised evaluation at every field element."""
    lam = np.arange(p, dtype=np.int64)
    vals = np.zeros(p, dtype=np.int64)
    for c in reversed(poly):
        vals = (vals * lam + c) % p
    return np.flatnonzero(vals == 0).tolist()
