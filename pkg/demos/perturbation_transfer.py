"""Carrying an approximate dual across a perturbation of the frame.

The transfer keeps the mixed operator exactly and comes with a
closed-form bound on how far the new dual drifts from the old one.

Run:  python demos/perturbation_transfer.py
"""

import numpy as np

import dualframes as df


def main():
    rng = np.random.default_rng(99)
    syn = rng.standard_normal((6, 10)) + 1j * rng.standard_normal((6, 10))
    phi = df.Frame(syn)

    # A fixed approximate dual with nontrivial kernel content.
    bump = rng.standard_normal((6, 6))
    target = np.eye(6) + 0.25 * bump / df.operator_norm(bump)
    theta = df.random_annihilator(phi, seed=1, scale=0.5)
    phi_ad = df.approx_dual_from_mixed(phi, target, theta)

    direction = rng.standard_normal((6, 10)) + 1j * rng.standard_normal((6, 10))
    direction /= df.operator_norm(direction)

    print(f"{'eps':>7} {'diff bound':>12} {'measured':>12} {'predicted':>12} {'mixed match':>12}")
    for eps in (0.02, 0.01, 0.005):
        psi = df.Frame(phi.synthesis + eps * direction)
        result = df.transfer_approx_dual(phi, psi, phi_ad)
        print(f"{eps:7.3f} {df.bessel_bound_difference(phi, psi):12.3e} "
              f"{result.measured_diff_bound:12.3e} {result.predicted_diff_bound:12.3e} "
              f"{result.mixed_match_residual:12.3e}")

    # The self-g-dual transfer realizes the original frame operator on the
    # perturbed frame.
    psi = df.Frame(phi.synthesis + 0.01 * direction)
    self_result = df.self_gdual_transfer(phi, psi)
    s = df.frame_operator(phi)
    print("self-g-dual mixed residual:",
          df.operator_norm(df.mixed_operator(psi, self_result.psi_dual) - s))

    # For Riesz bases the difference bound has a two-term closed form.
    basis = df.Frame(np.eye(5) + 0.2 * rng.standard_normal((5, 5)))
    other = df.Frame(np.eye(5) + 0.2 * rng.standard_normal((5, 5)))
    print("riesz difference bound:", df.riesz_difference_bound(basis, other),
          ">= optimal:", df.bessel_bound_difference(basis, other))


if __name__ == "__main__":
    main()
