"""Dense linear algebra over GF(p^n) on numpy coefficient arrays.

A matrix over GF(p^n) is an int64 array of shape ``(..., rows, cols, n)``
holding the little-endian residue coefficients of each entry.  Products are
computed as integer convolutions folded through ``Field.reduction_tensor``,
so everything is exact and vectorises over leading batch axes.
"""

from __future__ import annotations

import numpy as np

from .gf import Field, FieldElement, FieldError


def zeros(field: Field, rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols, field.n), dtype=np.int64)


def identity(field: Field, dim: int) -> np.ndarray:
    out = zeros(field, dim, dim)
    out[np.arange(dim), np.arange(dim), 0] = 1
    return out


def scalar_array(a: FieldElement) -> np.ndarray:
    return np.array(a.coeffs, dtype=np.int64)


def from_int_matrix(field: Field, m) -> np.ndarray:
    """Embed an integer matrix (reduced mod p) into the coefficient layout."""
    m = np.asarray(m, dtype=np.int64) % field.p
    out = np.zeros(m.shape + (field.n,), dtype=np.int64)
    out[..., 0] = m
    return out


def from_elements(field: Field, rows) -> np.ndarray:
    rows = [[field(x) for x in row] for row in rows]
    return np.array([[x.coeffs for x in row] for row in rows], dtype=np.int64).reshape(
        len(rows), len(rows[0]) if rows else 0, field.n)


def entry(field: Field, m: np.ndarray, i: int, j: int) -> FieldElement:
    return field(m[i, j].tolist())


def to_elements(field: Field, m: np.ndarray) -> list[list[FieldElement]]:
    return [[field(m[i, j].tolist()) for j in range(m.shape[1])] for i in range(m.shape[0])]


def emul(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Entrywise product with numpy broadcasting over everything but the last axis."""
    if field.n == 1:
        return (a * b) % field.p
    prod = a[..., :, None] * b[..., None, :]
    return np.tensordot(prod, field.reduction_tensor, axes=([-2, -1], [0, 1])) % field.p


def scale(field: Field, s: FieldElement, m: np.ndarray) -> np.ndarray:
    return emul(field, scalar_array(s), m)


def matmul(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if field.n == 1:
        return np.matmul(a[..., 0], b[..., 0])[..., None] % field.p
    t = np.einsum("...ima,...mjb->...ijab", a, b)
    return np.tensordot(t, field.reduction_tensor, axes=([-2, -1], [0, 1])) % field.p


def add(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a + b) % field.p


def sub(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a - b) % field.p


def neg(field: Field, a: np.ndarray) -> np.ndarray:
    return (-a) % field.p


def frobenius(field: Field, m: np.ndarray, r: int = 1) -> np.ndarray:
    """Apply a -> a^(p^r) to every entry."""
    r %= field.n
    if r == 0:
        return m.copy()
    out = np.empty_like(m)
    flat_in = m.reshape(-1, field.n)
    flat_out = out.reshape(-1, field.n)
    cache: dict[tuple, tuple] = {}
    for k, row in enumerate(flat_in):
        key = tuple(row.tolist())
        if key not in cache:
            cache[key] = field(list(key)).frobenius(r).coeffs
        flat_out[k] = cache[key]
    return out


def kron(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    ra, ca, rb, cb = a.shape[0], a.shape[1], b.shape[0], b.shape[1]
    prod = emul(field, a[:, None, :, None, :], b[None, :, None, :, :])
    return prod.reshape(ra * rb, ca * cb, field.n)


def is_zero(m: np.ndarray) -> bool:
    return not m.any()


def transpose(m: np.ndarray) -> np.ndarray:
    return np.swapaxes(m, -3, -2).copy()


# --- Gaussian elimination ---------------------------------------------------

def rref(field: Field, m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = m.copy() % field.p
    rows, cols = a.shape[0], a.shape[1]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c].any(axis=-1))[0]
        if len(nz) == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = field(a[r, c].tolist()).inv()
        a[r] = emul(field, scalar_array(inv), a[r])
        col = a[:, c].copy()
        col[r] = 0
        if col.any():
            a = (a - emul(field, col[:, None, :], a[r][None, :, :])) % field.p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(field: Field, m: np.ndarray) -> int:
    if m.shape[0] == 0 or m.shape[1] == 0:
        return 0
    return len(rref(field, m)[1])


def row_space(field: Field, m: np.ndarray) -> np.ndarray:
    """Echelonised basis (as rows) of the row space of m."""
    if m.shape[0] == 0:
        return m.copy()
    red, piv = rref(field, m)
    return red[: len(piv)]


def nullspace(field: Field, m: np.ndarray) -> np.ndarray:
    """Basis (as rows) of {v : m v = 0} for column vectors v."""
    rows, cols = m.shape[0], m.shape[1]
    if rows == 0:
        return identity(field, cols)
    red, piv = rref(field, m)
    free = [c for c in range(cols) if c not in piv]
    basis = zeros(field, len(free), cols)
    for k, f in enumerate(free):
        basis[k, f, 0] = 1
        for i, pc in enumerate(piv):
            basis[k, pc] = (-red[i, f]) % field.p
    return basis


def left_nullspace(field: Field, m: np.ndarray) -> np.ndarray:
    """Basis (as rows) of {v : v m = 0}."""
    return nullspace(field, transpose(m))


def inverse(field: Field, m: np.ndarray) -> np.ndarray:
    dim = m.shape[0]
    aug = np.concatenate([m, identity(field, dim)], axis=1)
    red, piv = rref(field, aug)
    if piv[:dim] != list(range(dim)) or len(piv) < dim:
        raise FieldError("matrix is singular")
    return red[:, dim:].copy()


def solve_rows(field: Field, basis: np.ndarray, vecs: np.ndarray) -> np.ndarray:
    """Coordinates c with c @ basis = vecs (rows); basis rows must be independent."""
    k = basis.shape[0]
    aug = np.concatenate([transpose(basis), transpose(vecs)], axis=1)
    red, piv = rref(field, aug)
    if any(p >= k for p in piv):
        raise FieldError("vector not in the row space")
    out = zeros(field, vecs.shape[0], k)
    for i, pc in enumerate(piv):
        out[:, pc] = red[i, k:]
    return out


def in_row_space(field: Field, basis: np.ndarray, v: np.ndarray) -> bool:
    if basis.shape[0] == 0:
        return not v.any()
    return rank(field, np.concatenate([basis, v.reshape(1, -1, field.n)])) == basis.shape[0]


def complement_basis(field: Field, sub: np.ndarray, dim: int) -> np.ndarray:
    """Standard basis vectors extending the echelonised ``sub`` to a basis."""
    red = row_space(field, sub) if sub.shape[0] else sub
    piv = []
    for row in red:
        nz = np.nonzero(row.any(axis=-1))[0]
        piv.append(int(nz[0]))
    extra = [c for c in range(dim) if c not in piv]
    out = zeros(field, len(extra), dim)
    for k, c in enumerate(extra):
        out[k, c, 0] = 1
    return out


def det(field: Field, m: np.ndarray) -> FieldElement:
    a = m.copy()
    dim = a.shape[0]
    result = field.one
    for c in range(dim):
        nz = np.nonzero(a[c:, c].any(axis=-1))[0]
        if len(nz) == 0:
            return field.zero
        piv = c + int(nz[0])
        if piv != c:
            a[[c, piv]] = a[[piv, c]]
            result = -result
        pv = field(a[c, c].tolist())
        result = result * pv
        inv = scalar_array(pv.inv())
        col = emul(field, a[c + 1:, c], inv[None, :])
        a[c + 1:] = (a[c + 1:] - emul(field, col[:, None, :], a[c][None, :, :])) % field.p
    return result


def key(m: np.ndarray) -> bytes:
    """Canonical byte encoding used for hashing group elements."""
    return m.astype(np.uint8).tobytes()


def from_key(field: Field, data: bytes, dim: int) -> np.ndarray:
    return np.frombuffer(data, dtype=np.uint8).astype(np.int64).reshape(dim, dim, field.n)
