"""Count photons at the receiver after teleporting a single photon.

Averaged over all measurement outcomes, the output photon number follows
P_q(n) = ((1+q)/2)((1-q)/2)^(n+1) (1 + ((1+q)/(1-q))^2 n). Three classes
matter for a single-photon input: losing it (n = 0), exact transfer
(n = 1), and gaining photons (n >= 2). This script prints the distribution
from the closed form next to the polar-quadrature integral of the operator
route, then sweeps the three-way split across the entanglement range.

Run:  python3 demos/photon_number_statistics.py
"""

import numpy as np

from cvteleport.fock import number_state
from cvteleport.statistics import (
    loss_gain_split,
    photon_statistics_closed_form,
    photon_statistics_quadrature,
)

Q = 0.5
N_MAX = 48


def main() -> None:
    dist = photon_statistics_quadrature(number_state(1, N_MAX), Q)
    print(f"photon-number statistics at q = {Q}")
    print(f"{'n':>3} {'closed form':>14} {'quadrature':>14} {'difference':>12}")
    for n in range(8):
        closed = photon_statistics_closed_form(Q, n)
        quad = float(dist.probabilities[n])
        print(f"{n:>3} {closed:>14.9f} {quad:>14.9f} {abs(closed - quad):>12.3e}")

    split = loss_gain_split(Q)
    print(
        f"\nclasses at q = {Q}: loss {split.p_loss:.5f}, "
        f"success {split.p_success:.5f}, gain {split.p_gain:.5f}"
    )

    print("\nsweep of the split (success rises, loss and gain trade places):")
    print(f"{'q':>5} {'loss':>9} {'success':>9} {'gain':>9}")
    for q in np.arange(0.0, 1.0, 0.1):
        s = loss_gain_split(float(q))
        print(f"{q:>5.1f} {s.p_loss:>9.5f} {s.p_success:>9.5f} {s.p_gain:>9.5f}")

    print("\nnote: gain stays above loss at every q, while both vanish as q -> 1")


if __name__ == "__main__":
    main()
