"""Smoke test for the pycartan extension.

Build and run from the repository root:

    cargo build --release -p cartan-cs-py --features extension-module
    cp target/release/libpycartan.so python/pycartan.so
    python3 python/smoke_test.py
"""

import cmath
import math
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import pycartan as pc  # noqa: E402


def close(a, b, tol):
    assert abs(a - b) <= tol, (a, b)


def main():
    z = [[0.2 + 0.1j, 0.05j], [-0.1, 0.15 - 0.05j]]
    zp = [[-0.1j, 0.1], [0.05 + 0.05j, 0.3]]

    # D^{1/2}(X) is X itself.
    d = pc.wigner_d(1, z)
    for r in range(2):
        for c in range(2):
            close(d[r][c], z[r][c], 1e-15)

    lam = 4
    exact = pc.bergman_kernel(z, zp, lam)
    close(pc.kernel_partial_sum(z, zp, lam, 40), exact, 1e-8)
    close(abs(pc.cs_overlap(z, z, lam)), 1.0, 1e-14)

    for idx in pc.indices_up_to(5, 3):
        ev, off, closed = pc.casimir2(idx)
        close(ev, 5.0, 1e-10)
        close(closed, 5.0, 1e-10)
        assert off < 1e-10

    idx = pc.BasisIndex(4, 2, 1, 0, 2)
    poly = pc.basis_poly(idx)
    zs = [(z[0][0] + z[1][1]) / 2, (z[0][1] + z[1][0]) / 2, 1j * (z[0][1] - z[1][0]) / 2, (z[0][0] - z[1][1]) / 2]
    value = sum(c * math.prod(x**e for x, e in zip(zs, exps)) for exps, c in poly)
    close(value, pc.basis_eval(idx, z), 1e-14)

    est, err = pc.mc_inner_product(idx, idx, 200_000, 7)
    assert abs(est - 1.0) < 4 * err, (est, err)

    origin = pc.BasisIndex(4, 0, 0, 0, 0)
    assert pc.generator_row("P0", origin) == []
    row = pc.generator_row("K0", origin)
    assert row and all(t.degree == 1 for t, _ in row)

    close(pc.symbol("D", [[0, 0], [0, 0]], lam), lam, 1e-14)

    state = pc.compound_basis(pc.BasisIndex(3, 1, 0, 1, -1))
    swapped = pc.exchange(pc.exchange(state))
    assert set(swapped) == set(state)
    for occ, amp in state.items():
        close(swapped[occ], amp, 1e-14)
    norm = sum(abs(a) ** 2 for a in pc.lowest_weight(3).values())
    close(norm, 1.0, 1e-14)

    for bad in (lambda: pc.BasisIndex(4, 1, 0, 3, 1), lambda: pc.lowest_weight(1)):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("invalid input accepted")

    print("pycartan smoke test: ok")


if __name__ == "__main__":
    main()
