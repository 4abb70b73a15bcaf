"""Writes the stand-in shear-layer files in this directory.

The published measurement/simulation tables were not available when this
repository was assembled, so these files are synthetic. They keep the shape
of the real case (11 simulator runs on a regular Mach grid, 32 scattered
measurements on [0, 1.5], few points in [1, 1.25]) and put the
simulator/measurement mismatch in the middle of the range.
"""

import numpy as np


def simulator(m):
    return 0.22 + 0.78 / (1.0 + (m / 0.6) ** 3)


def physical(m):
    return simulator(m) - 0.12 * np.exp(-(((m - 0.9) / 0.25) ** 8))


def main():
    rng = np.random.default_rng(20240611)
    m_sim = np.linspace(0.0, 1.5, 11)
    counts = [6, 7, 7, 6, 2, 4]
    edges = np.linspace(0.0, 1.5, 7)
    m_phys = np.sort(np.concatenate(
        [rng.uniform(lo, hi, k) for lo, hi, k in zip(edges[:-1], edges[1:], counts)]))
    y_phys = physical(m_phys) + rng.normal(0.0, 0.025, m_phys.size)

    with open("simulation.csv", "w") as f:
        f.write("# stand-in simulator runs, see README.md\nmc,growth_rate\n")
        for m, y in zip(m_sim, simulator(m_sim)):
            f.write(f"{m:.2f},{y:.5f}\n")
    with open("physical.csv", "w") as f:
        f.write("# stand-in measurements, see README.md\nmc,growth_rate\n")
        for m, y in zip(m_phys, y_phys):
            f.write(f"{m:.4f},{y:.5f}\n")


if __name__ == "__main__":
    main()
