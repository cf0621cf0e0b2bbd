"""Exact row reduction over a prime field, on small integer numpy arrays."""

from __future__ import annotations

import numpy as np


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def rref(mat: np.ndarray, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form over F_p with zero rows dropped, and pivot columns."""
    a = np.array(mat, dtype=np.int64) % p
    if a.ndim == 1:
        a = a.reshape(1, -1)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        others = np.nonzero(a[:, c])[0]
        for i in others:
            if i != r:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        pivots.append(c)
        r += 1
    return a[:r], tuple(pivots)


def rank(mat: np.ndarray, p: int) -> int:
    return len(rref(mat, p)[1])


def nullspace(mat: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of ``{x : mat @ x = 0}``."""
    mat = np.asarray(mat, dtype=np.int64)
    n = mat.shape[1]
    red, piv = rref(mat, p) if mat.shape[0] else (np.zeros((0, n), dtype=np.int64), ())
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = np.zeros(n, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(piv):
            v[c] = (-red[i, f]) % p
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(len(basis), n)


def inverse(mat: np.ndarray, p: int) -> np.ndarray:
    n = mat.shape[0]
    aug = np.concatenate([np.asarray(mat, dtype=np.int64) % p, np.eye(n, dtype=np.int64)], axis=1)
    red, piv = rref(aug, p)
    if piv[:n] != tuple(range(n)) or red.shape[0] < n:
        raise np.linalg.LinAlgError("matrix is singular over F_p")
    return red[:, n:]


def intersection(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Row space intersection, via the left null space of the stacked bases."""
    n = a.shape[1]
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.zeros((0, n), dtype=np.int64)
    stacked = np.concatenate([a, b], axis=0)
    coeffs = nullspace(stacked.T, p)
    if coeffs.shape[0] == 0:
        return np.zeros((0, n), dtype=np.int64)
    return rref(coeffs[:, : a.shape[0]] @ a % p, p)[0]
