"""Small dense complex matrices (2x2 and 4x4) and vectors.

Matrices are plain ``complex128`` numpy arrays. Every function also accepts a
stack of matrices with shape ``(..., d, d)``, which is how the Fourier grid
and the path enumerations batch their work.
"""

from __future__ import annotations

import numpy as np

DIMS = (2, 4)


class DimensionError(ValueError):
    """Raised when operands have unsupported or mismatched dimensions."""


def as_cmat(m, dim: int | None = None) -> np.ndarray:
    """Validate ``m`` as a (stack of) 2x2 or 4x4 complex matrices."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim < 2 or arr.shape[-1] != arr.shape[-2] or arr.shape[-1] not in DIMS:
        raise DimensionError(f"expected a 2x2 or 4x4 matrix, got shape {arr.shape}")
    if dim is not None and arr.shape[-1] != dim:
        raise DimensionError(f"expected a {dim}x{dim} matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    return arr


def as_cvec(v, dim: int | None = None) -> np.ndarray:
    arr = np.asarray(v, dtype=np.complex128)
    if arr.ndim != 1 or arr.shape[0] not in DIMS:
        raise DimensionError(f"expected a length-2 or length-4 vector, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise DimensionError(f"expected a length-{dim} vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector has non-finite entries")
    return arr


def identity(dim: int) -> np.ndarray:
    if dim not in DIMS:
        raise DimensionError(f"unsupported dimension {dim}")
    return np.eye(dim, dtype=np.complex128)


def _same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape[-1] != b.shape[-1]:
        raise DimensionError(f"dimension mismatch: {a.shape[-1]} vs {b.shape[-1]}")


def mat_mul(a, b) -> np.ndarray:
    a, b = as_cmat(a), as_cmat(b)
    _same_dim(a, b)
    return a @ b


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product of two 2x2 matrices, blocks ordered (a11 b | a12 b ; a21 b | a22 b).

    Stacks broadcast over their leading axes.
    """
    a, b = as_cmat(a, 2), as_cmat(b, 2)
    out = a[..., :, None, :, None] * b[..., None, :, None, :]
    return out.reshape(out.shape[:-4] + (4, 4))


def adjoint(m) -> np.ndarray:
    m = as_cmat(m)
    return np.conj(np.swapaxes(m, -1, -2))


def mat_power(m, n: int) -> np.ndarray:
    """``m**n`` by repeated squaring; ``m**0`` is the identity."""
    if n < 0:
        raise ValueError(f"exponent must be non-negative, got {n}")
    m = as_cmat(m)
    result = np.broadcast_to(identity(m.shape[-1]), m.shape).copy()
    base = m.copy()
    while n:
        if n & 1:
            result = result @ base
        n >>= 1
        if n:
            base = base @ base
    return result


def frobenius_distance(a, b) -> float:
    a, b = as_cmat(a), as_cmat(b)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.sqrt(np.sum(np.abs(a - b) ** 2)))


def is_unitary(m, tol: float = 1e-12) -> bool:
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = as_cmat(m)
    eye = np.broadcast_to(identity(m.shape[-1]), m.shape)
    if m.ndim == 2:
        return frobenius_distance(adjoint(m) @ m, eye) <= tol
    # stacks: every member must pass individually
    diff = np.sqrt(np.sum(np.abs(adjoint(m) @ m - eye) ** 2, axis=(-2, -1)))
    return bool(np.all(diff <= tol))
