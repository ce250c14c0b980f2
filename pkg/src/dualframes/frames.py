"""Finite frames and their canonical operators.

A frame is a finite family of vectors spanning a d-dimensional complex
space, stored through its synthesis matrix (d x n, one column per vector).
The coefficient space is the n-dimensional complex space with its
canonical basis, so the analysis operator is the conjugate transpose of
the synthesis matrix and the frame operator is their product.

Annihilators -- maps into coefficient space whose range lies in the
kernel of the synthesis operator -- are the free parameter of every dual
construction in :mod:`dualframes.duality`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np
import scipy.linalg

from . import oplin
from .errors import DimensionMismatch, NotAFrame
from .oplin import adjoint, operator_norm

# A family is accepted as a frame when lambda_min(S) > FRAME_THRESHOLD_REL * lambda_max(S).
FRAME_THRESHOLD_REL = 1e-10
# Range of an annihilator must sit in ker(T) to this relative tolerance.
ANNIHILATOR_TOL = 1e-10


class FrameBounds(NamedTuple):
    """Optimal frame bounds: the spectral endpoints of the frame operator."""

    lower: float
    upper: float


@dataclass(frozen=True)
class Frame:
    """A finite vector family, held as its d x n synthesis matrix."""

    synthesis: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "synthesis", oplin.as_operator(self.synthesis))

    @classmethod
    def from_vectors(cls, vectors: Sequence) -> "Frame":
        """Build a frame from a sequence of length-d vectors."""
        cols = [np.asarray(v, dtype=complex).reshape(-1) for v in vectors]
        return cls(np.column_stack(cols))

    @property
    def dim(self) -> int:
        return self.synthesis.shape[0]

    @property
    def count(self) -> int:
        return self.synthesis.shape[1]

    def vector(self, k: int) -> np.ndarray:
        return self.synthesis[:, k].copy()

    def __repr__(self):
        return f"Frame(dim={self.dim}, count={self.count})"


def _check_same_shape(phi: Frame, psi: Frame) -> None:
    if phi.dim != psi.dim or phi.count != psi.count:
        raise DimensionMismatch(
            f"frames have shapes {phi.dim}x{phi.count} and {psi.dim}x{psi.count}"
        )


def analysis(phi: Frame, f) -> np.ndarray:
    """Coefficients ( <f, phi_k> )_k of a vector against the frame."""
    f = np.asarray(f, dtype=complex).reshape(-1)
    if f.shape[0] != phi.dim:
        raise DimensionMismatch(f"vector length {f.shape[0]}, frame dimension {phi.dim}")
    return adjoint(phi.synthesis) @ f


def synthesis(phi: Frame, c) -> np.ndarray:
    """Linear combination sum_k c_k phi_k of the frame vectors."""
    c = np.asarray(c, dtype=complex).reshape(-1)
    if c.shape[0] != phi.count:
        raise DimensionMismatch(f"coefficient length {c.shape[0]}, frame count {phi.count}")
    return phi.synthesis @ c


def frame_operator(phi: Frame) -> np.ndarray:
    """The Hermitian PSD operator synthesis o analysis (d x d)."""
    return phi.synthesis @ adjoint(phi.synthesis)


def frame_bounds(phi: Frame) -> FrameBounds:
    """Optimal bounds; ``lower == 0.0`` signals a Bessel family that is not a frame."""
    w = np.linalg.eigvalsh(frame_operator(phi))
    upper = float(max(w[-1], 0.0))
    lower = float(w[0])
    if lower <= FRAME_THRESHOLD_REL * upper:
        lower = 0.0
    return FrameBounds(lower=lower, upper=upper)


def is_frame(phi: Frame) -> bool:
    return frame_bounds(phi).lower > 0.0


def require_frame(phi: Frame, name: str = "family") -> FrameBounds:
    bounds = frame_bounds(phi)
    if bounds.lower == 0.0:
        raise NotAFrame(f"{name} has lower frame bound 0 (rank deficient)")
    return bounds


def is_riesz(phi: Frame) -> bool:
    """True iff the family is a Riesz basis: square synthesis with trivial kernel."""
    return phi.count == phi.dim and is_frame(phi)


def canonical_dual(phi: Frame) -> Frame:
    """The frame ( S^{-1} phi_k )_k, giving exact reconstruction."""
    require_frame(phi, "frame")
    s = frame_operator(phi)
    return Frame(np.linalg.solve(s, phi.synthesis))


def mixed_operator(phi: Frame, psi: Frame) -> np.ndarray:
    """The d x d operator synthesis(phi) o analysis(psi)."""
    _check_same_shape(phi, psi)
    return phi.synthesis @ adjoint(psi.synthesis)


def approximation_rate(phi: Frame, psi: Frame) -> float:
    """Distance ||Id - mixed_operator(phi, psi)||; below 1 means approximately dual."""
    return operator_norm(oplin.identity(phi.dim) - mixed_operator(phi, psi))


def bessel_bound_difference(phi: Frame, psi: Frame) -> float:
    """Optimal Bessel bound of the difference family (phi_k - psi_k)_k."""
    _check_same_shape(phi, psi)
    return operator_norm(phi.synthesis - psi.synthesis) ** 2


def kernel_basis(phi: Frame) -> np.ndarray:
    """Orthonormal basis (n x (n - rank)) of the kernel of the synthesis map."""
    return scipy.linalg.null_space(phi.synthesis).astype(complex)


@dataclass(frozen=True)
class Annihilator:
    """An n x d map whose range lies in the kernel of the synthesis operator.

    These maps add pure kernel content to dual constructions: they change
    the dual family without changing the mixed operator.
    """

    map: np.ndarray
    base: Frame = field(repr=False)

    def __post_init__(self):
        m = oplin.as_operator(self.map)
        object.__setattr__(self, "map", m)
        if m.shape != (self.base.count, self.base.dim):
            raise DimensionMismatch(
                f"annihilator must be {self.base.count}x{self.base.dim}, got {m.shape}"
            )
        t = self.base.synthesis
        residual = operator_norm(t @ m)
        allowed = ANNIHILATOR_TOL * operator_norm(t) * max(operator_norm(m), 1e-300)
        if residual > allowed:
            raise DimensionMismatch(
                f"range not inside ker(synthesis): ||T theta|| = {residual:.3e}"
            )

    @classmethod
    def zero(cls, phi: Frame) -> "Annihilator":
        return cls(map=np.zeros((phi.count, phi.dim), dtype=complex), base=phi)

    @property
    def norm(self) -> float:
        return operator_norm(self.map)


def random_annihilator(phi: Frame, seed: int, scale: float) -> Annihilator:
    """Seeded annihilator with operator norm ``scale``.

    Coefficients are complex Gaussian draws against an orthonormal kernel
    basis, then rescaled.  A Riesz basis has trivial kernel, so the zero
    map is returned; ``scale == 0`` also yields the zero map.
    """
    kernel = kernel_basis(phi)
    if kernel.shape[1] == 0 or scale == 0.0:
        return Annihilator.zero(phi)
    rng = np.random.default_rng(seed)
    coeffs = rng.standard_normal((kernel.shape[1], phi.dim)) + 1j * rng.standard_normal(
        (kernel.shape[1], phi.dim)
    )
    raw = kernel @ coeffs
    return Annihilator(map=raw * (scale / operator_norm(raw)), base=phi)
