"""Transfer of dual-type frames across nearby frames.

Given a frame pair (phi, phi_dual) of dual type (approximate or
generalized) and a second frame psi close to phi in the Bessel-difference
sense, these routines build a dual-type partner for psi that stays close
to phi_dual and realizes the *same* mixed operator.  The quantitative
closeness claim is surfaced as a closed-form predicted bound so it can be
checked against the measured one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import oplin
from .errors import NotApproxDual, NotRieszBasis, SmallnessViolated
from .frames import (
    Frame,
    bessel_bound_difference,
    canonical_dual,
    frame_bounds,
    is_riesz,
    kernel_basis,
    mixed_operator,
    require_frame,
)
from .oplin import adjoint, operator_norm

# The perturbation product sqrt(M_diff) * ||theta|| * ||inv mixed|| must
# stay strictly below 1; violations raise with the measured product.
SMALLNESS_MARGIN = 1e-9


@dataclass(frozen=True)
class TransferResult:
    """Outcome of a dual-type transfer.

    ``psi_dual`` is the constructed partner for the perturbed frame,
    ``omega`` the intermediate family before correction, ``corrector``
    the operator whose inverse aligns omega with psi.  On success
    ``mixed_match_residual`` is at machine level and
    ``measured_diff_bound`` stays below ``predicted_diff_bound``.
    """

    psi_dual: Frame
    omega: Frame
    corrector: np.ndarray
    predicted_diff_bound: float
    measured_diff_bound: float
    mixed_match_residual: float
    smallness: float


def _recover_theta(phi: Frame, phi_dual: Frame, mixed: np.ndarray) -> np.ndarray:
    theta_map = adjoint(phi_dual.synthesis) - adjoint(canonical_dual(phi).synthesis) @ mixed
    kernel = kernel_basis(phi)
    return kernel @ (adjoint(kernel) @ theta_map)


def _transfer(phi: Frame, psi: Frame, phi_dual: Frame, expect_approx: bool) -> TransferResult:
    m_phi, big_m_phi = require_frame(phi, "original frame")
    m_psi, big_m_psi = require_frame(psi, "perturbed frame")

    mixed = mixed_operator(phi, phi_dual)
    if expect_approx:
        rate = operator_norm(oplin.identity(phi.dim) - mixed)
        if rate >= 1.0 - 1e-12:
            raise NotApproxDual("(phi, phi_dual) is not approximately dual", measured=rate)
    inv_mixed = oplin.inverse(mixed)

    theta_map = _recover_theta(phi, phi_dual, mixed)
    theta_norm = operator_norm(theta_map)

    diff_bound = bessel_bound_difference(phi, psi)
    smallness = float(np.sqrt(diff_bound) * theta_norm * operator_norm(inv_mixed))
    if smallness >= 1.0 - SMALLNESS_MARGIN:
        raise SmallnessViolated(
            "requires sqrt(M_diff) * ||theta|| * ||inv mixed|| < 1", measured=smallness
        )

    omega_syn = adjoint(mixed) @ canonical_dual(psi).synthesis + adjoint(theta_map)
    omega = Frame(omega_syn)
    corrector = omega_syn @ adjoint(psi.synthesis) @ adjoint(inv_mixed)
    # The smallness estimate is sufficient, not necessary (vacuous for
    # theta == 0); invertibility of the corrector is what actually matters.
    psi_dual = Frame(oplin.solve(corrector, omega_syn))

    mixed_match = operator_norm(mixed_operator(psi, psi_dual) - mixed)
    measured = bessel_bound_difference(phi_dual, psi_dual)
    big_m_dual = frame_bounds(phi_dual).upper
    predicted = (
        diff_bound
        * (operator_norm(inv_mixed) / (1.0 - smallness)) ** 2
        * (
            theta_norm * np.sqrt(big_m_dual)
            + operator_norm(mixed)
            * (m_phi + big_m_phi + np.sqrt(big_m_psi * big_m_phi))
            / (m_phi * m_psi)
        )
        ** 2
    )
    return TransferResult(
        psi_dual=psi_dual,
        omega=omega,
        corrector=corrector,
        predicted_diff_bound=float(predicted),
        measured_diff_bound=float(measured),
        mixed_match_residual=float(mixed_match),
        smallness=smallness,
    )


def transfer_approx_dual(phi: Frame, psi: Frame, phi_ad: Frame) -> TransferResult:
    """Carry an approximate dual of phi over to the nearby frame psi.

    The result satisfies mixed_operator(psi, psi_dual) ==
    mixed_operator(phi, phi_ad), and the Bessel bound of the difference
    (phi_ad_k - psi_dual_k)_k is bounded by the returned closed form,
    itself a multiple of the Bessel bound of (phi_k - psi_k)_k.
    """
    return _transfer(phi, psi, phi_ad, expect_approx=True)


def transfer_gdual(phi: Frame, psi: Frame, phi_gd: Frame) -> TransferResult:
    """Same transfer for a g-dual (mixed operator merely invertible)."""
    return _transfer(phi, psi, phi_gd, expect_approx=False)


def self_gdual_transfer(phi: Frame, psi: Frame) -> TransferResult:
    """Transfer of the tautological g-dual of phi (phi itself).

    Every frame is a g-dual of itself with mixed operator S_phi; the
    transferred family satisfies mixed_operator(psi, psi_dual) == S_phi.
    The recovered annihilator is exactly zero here, so the smallness
    hypothesis is vacuous and the corrector is the identity.
    """
    return _transfer(phi, psi, phi, expect_approx=False)


def riesz_difference_bound(phi: Frame, psi: Frame) -> float:
    """Closed-form Bessel bound for the difference of two Riesz bases.

    With D the operator mapping phi_k to psi_k, returns
    min(M_phi ||Id - D||^2, M_psi ||Id - D^{-1}||^2), a valid (possibly
    non-optimal) Bessel bound of (phi_k - psi_k)_k.
    """
    if not (is_riesz(phi) and is_riesz(psi)):
        raise NotRieszBasis("both inputs must be Riesz bases (square, invertible synthesis)")
    d = psi.synthesis @ oplin.inverse(phi.synthesis)
    eye = oplin.identity(phi.dim)
    big_m_phi = frame_bounds(phi).upper
    big_m_psi = frame_bounds(psi).upper
    return float(
        min(
            big_m_phi * operator_norm(eye - d) ** 2,
            big_m_psi * operator_norm(eye - oplin.inverse(d)) ** 2,
        )
    )
