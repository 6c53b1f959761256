"""Leafwise unstable entropy of the cat map and of its product with a rotation.

Both systems have the same expanding direction, so the estimates should agree
with each other and with log of the unstable eigenvalue.

Run: python demos/cat_map_entropy.py
"""
import math

import numpy as np

from uentropy.local_entropy import LeafMeasure, local_unstable_entropy
from uentropy.systems import LinearLeaf, cat_map, cat_rotation_product
from uentropy.unstable import (delta_independence_check, unstable_bowen_entropy,
                               unstable_upper_capacity_entropy)


def main():
    truth = math.log((3 + math.sqrt(5)) / 2)
    print(f"log of unstable eigenvalue: {truth:.4f}\n")
    for system in (cat_map(), cat_rotation_product()):
        uc = unstable_upper_capacity_entropy(system)
        b = unstable_bowen_entropy(system)
        print(f"{system.name:>16}: upper capacity {uc.sup_estimate:.4f}  "
              f"Bowen {b.sup_estimate:.4f}  delta spread {delta_independence_check(uc):.4f}")
        print(f"{'':>16}  flags: {sorted(set(uc.flags + b.flags))}")

    # local entropy of leaf Lebesgue measure equals the expansion rate everywhere
    seg = LinearLeaf(cat_map(), [0.3, 0.6], 0.1)
    mu = LeafMeasure.lebesgue(seg)
    print("\nlocal entropy of leaf Lebesgue measure:")
    for t in np.linspace(-0.05, 0.05, 5):
        le = local_unstable_entropy(mu, seg.chart(t))
        print(f"  t={t:+.3f}: lower {le.lower:.6f}  upper {le.upper:.6f}")


if __name__ == "__main__":
    main()
