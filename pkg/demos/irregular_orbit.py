"""An orbit whose Birkhoff averages never settle.

Blocks of 0s and 1s with doubling lengths make the frequency of 1s swing
between about 1/3 and 2/3 forever; a pseudorandom Bernoulli word converges.

Run: python demos/irregular_orbit.py
"""
import numpy as np

from uentropy.measures import MarkovMeasure
from uentropy.multifractal import Potential, irregular_orbit_constructor, limit_set_probe
from uentropy.systems import full_shift


def main():
    fs = full_shift(2)
    phi = Potential.cylinder_indicator("1")
    checkpoints = [2 ** j - 1 for j in range(4, 17)]
    x = irregular_orbit_constructor(fs, "0", "1", length=1 << 16)
    y = MarkovMeasure.bernoulli([0.5, 0.5]).sample_word(1 << 16, np.random.default_rng(42))
    for label, w in (("doubling blocks", x), ("bernoulli word", y)):
        pr = limit_set_probe(fs, w, [phi], checkpoints)
        print(f"{label}: {pr.classification}")
        for n, a in zip(pr.checkpoints, pr.averages[:, 0]):
            print(f"   n={n:>6}  average {a:.4f}")


if __name__ == "__main__":
    main()
