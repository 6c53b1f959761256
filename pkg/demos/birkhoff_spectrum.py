"""Entropy of Birkhoff level sets against the Legendre transform of pressure.

On the full 2-shift with the indicator of [1] both sides equal the binary
entropy H(a).  On the golden-mean shift the level-set entropy stays below
the variational value and levels above 1/2 are unreachable.

Run: python demos/birkhoff_spectrum.py
"""
import numpy as np

from uentropy.multifractal import Potential, spectrum_identity_check
from uentropy.separation import binary_entropy
from uentropy.systems import full_shift, golden_mean_shift


def main():
    phi = Potential.cylinder_indicator("1")
    grid = np.arange(1, 10) / 10
    for system in (full_shift(2), golden_mean_shift()):
        res = spectrum_identity_check(system, phi, grid)
        print(f"\n{system.name}: {'PASS' if res.passed else 'FAIL'}")
        print(f"{'a':>5} {'level set':>10} {'legendre':>10} {'H(a)':>8}  status")
        for row in res.rows():
            print(f"{row['a']:5.2f} {row['lhs']:10.5f} {row['rhs']:10.5f} "
                  f"{binary_entropy(row['a']):8.5f}  {row['status']}")


if __name__ == "__main__":
    main()
