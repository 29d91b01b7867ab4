"""Angle trees: the compiled, heap-ordered form of an input vector.

Both synthesizers are driven by the same complete binary tree of rotation
angles. Node ``k`` lives at ``angles[k]``; its children are ``2k+1`` and
``2k+2``. The tree is produced bottom-up from the norms of sub-vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .errors import DimensionError, InputError, NormalizationError

NORM_TOL = 1e-8
NO_PARENT = -1


# -- heap navigation ---------------------------------------------------------

def level(k: int) -> int:
    if k < 0:
        raise ValueError(f"node index must be >= 0, got {k}")
    return (k + 1).bit_length() - 1


def left(k: int) -> int:
    return 2 * k + 1


def right(k: int) -> int:
    return 2 * k + 2


def parent(k: int) -> int:
    """Parent index, or ``NO_PARENT`` (-1) for the root."""
    if k < 0:
        raise ValueError(f"node index must be >= 0, got {k}")
    return (k - 1) // 2


def heap_to_level_index(k: int, n: int) -> tuple[int, int]:
    """Map heap node ``k`` of an ``n``-level tree to ``(j, v)``.

    ``v`` counts levels from the leaves (1 = deepest angle level, n = root)
    and ``j`` is the 1-based position inside that level.
    """
    lvl = level(k)
    return k - (2**lvl - 1) + 1, n - lvl


# -- vector checks -----------------------------------------------------------

def num_qubits(size: int) -> int:
    if size < 2 or size & (size - 1):
        raise DimensionError(f"vector length must be a power of two >= 2, got {size}")
    return size.bit_length() - 1


def check_vector(x, normalize: bool = False) -> np.ndarray:
    """Validate an amplitude vector and return it as a 1-D numpy array.

    Real input stays real (float64); anything with a nonzero imaginary part
    is returned as complex128. With ``normalize`` the vector is divided by
    its norm instead of being rejected.
    """
    arr = np.asarray(x)
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionError(f"expected a non-empty 1-D vector, got shape {arr.shape}")
    num_qubits(arr.size)
    if np.iscomplexobj(arr):
        arr = arr.astype(np.complex128)
        if not np.any(arr.imag):
            arr = arr.real.copy()
    else:
        arr = arr.astype(np.float64)
    if not np.all(np.isfinite(arr)):
        raise InputError("vector contains non-finite entries")
    norm = float(np.linalg.norm(arr))
    if normalize:
        if norm == 0.0:
            raise NormalizationError("cannot normalize the zero vector")
        return arr / norm
    if abs(norm - 1.0) > NORM_TOL:
        raise NormalizationError(f"vector norm {norm!r} differs from 1 by more than {NORM_TOL}")
    return arr


# -- angle trees -------------------------------------------------------------

@dataclass(frozen=True)
class AngleTree:
    angles: tuple[float, ...]
    kind: Literal["ry", "rz"]

    def __len__(self) -> int:
        return len(self.angles)

    def __getitem__(self, k: int) -> float:
        return self.angles[k]

    def __iter__(self):
        return iter(self.angles)

    @property
    def size(self) -> int:
        """Dimension N of the vector this tree encodes."""
        return len(self.angles) + 1

    @property
    def n(self) -> int:
        return num_qubits(self.size)

    def validate(self) -> None:
        num_qubits(self.size)
        if not all(math.isfinite(a) for a in self.angles):
            raise InputError("angle tree contains non-finite angles")


def _check_tree_input(x) -> np.ndarray:
    arr = np.asarray(x)
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionError(f"expected a non-empty 1-D vector, got shape {arr.shape}")
    num_qubits(arr.size)
    return arr


def _ry_angles(x: np.ndarray) -> np.ndarray:
    if x.size == 1:
        return np.empty(0)
    even, odd = x[0::2], x[1::2]
    new_x = np.sqrt(np.abs(even) ** 2 + np.abs(odd) ** 2)
    inner = _ry_angles(new_x)
    angles = np.zeros(new_x.size)
    nz = new_x != 0
    # atan2 equals asin(odd/norm) for even > 0 and pi - asin(odd/norm) otherwise,
    # without asin's precision loss near |ratio| = 1
    half = np.arctan2(odd[nz], even[nz])
    half = np.where((even[nz] <= 0) & (half < 0), half + 2 * np.pi, half)
    angles[nz] = 2 * half
    return np.concatenate([inner, angles])


def gen_angles(x: Sequence[float]) -> AngleTree:
    """RY angle tree for a real vector of length ``N = 2**n``.

    Node ``k`` gets ``theta`` with ``sin(theta/2) = x[2k+1]/norm`` and
    ``cos(theta/2) = x[2k]/norm`` over the sub-vector it covers. A negative
    left entry yields an angle in ``(pi, 3pi]``; angles are not reduced
    modulo anything since RY has period 4pi. Zero-norm nodes get angle 0.
    The input need not be normalized (angles are scale invariant).
    """
    arr = _check_tree_input(x)
    if np.iscomplexobj(arr):
        if np.any(arr.imag):
            raise InputError("gen_angles takes real vectors; pass abs(x) for complex data")
        arr = arr.real
    arr = arr.astype(np.float64)
    return AngleTree(tuple(float(a) for a in _ry_angles(arr)), "ry")


def _rz_angles(omega: np.ndarray) -> np.ndarray:
    if omega.size == 1:
        return np.empty(0)
    even, odd = omega[0::2], omega[1::2]
    inner = _rz_angles((even + odd) / 2)
    return np.concatenate([inner, odd - even])


def gen_angles_z(omega: Sequence[float]) -> AngleTree:
    """RZ angle tree from the phases of a complex vector.

    Each node stores the difference between the mean phase of its right and
    left halves. The root mean (a global phase) is dropped.
    """
    arr = _check_tree_input(omega)
    if np.iscomplexobj(arr):
        raise InputError("gen_angles_z takes real phases")
    arr = arr.astype(np.float64)
    if not np.all(np.isfinite(arr)):
        raise InputError("phases must be finite")
    return AngleTree(tuple(float(a) for a in _rz_angles(arr)), "rz")


@dataclass(frozen=True)
class TreeParams:
    beta: float
    lam: float
    v: int
    j: int
    degenerate: bool = False


def tree_params(x, j: int, v: int) -> TreeParams:
    """Closed-form ``beta`` and ``lambda`` for node ``(j, v)``.

    Evaluated directly from sums over ``x`` (no recursion), so it can be
    used to cross-check :func:`gen_angles` and :func:`gen_angles_z`.
    ``v`` runs 1 (leaves) .. n (root); ``j`` runs 1 .. 2**(n-v).
    """
    arr = np.asarray(x)
    n = num_qubits(arr.size)
    if not 1 <= v <= n:
        raise DimensionError(f"level v={v} outside 1..{n}")
    if not 1 <= j <= 2 ** (n - v):
        raise DimensionError(f"index j={j} outside 1..{2 ** (n - v)}")
    half = 2 ** (v - 1)
    mags = np.abs(arr)
    omega = np.angle(arr) if np.iscomplexobj(arr) else np.where(arr < 0, np.pi, 0.0)

    right_start = (2 * j - 1) * half
    left_start = (2 * j - 2) * half
    lam = float(np.sum(omega[right_start:right_start + half] - omega[left_start:left_start + half]) / half)

    num = math.sqrt(float(np.sum(mags[right_start:right_start + half] ** 2)))
    den = math.sqrt(float(np.sum(mags[(j - 1) * 2 * half:j * 2 * half] ** 2)))
    if den == 0.0:
        return TreeParams(0.0, lam, v, j, degenerate=True)
    return TreeParams(min(num / den, 1.0), lam, v, j)
