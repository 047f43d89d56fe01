#!/usr/bin/env python3
"""Generate a plain-text table of zeta zero ordinates (one per line, 9 decimals).

Used to produce the test fixture when the published Odlyzko tables are not at
hand. Low zeros come from mpmath.zetazero; higher zeros are isolated on a fine
grid with a vectorised Riemann-Siegel Z(t) (terms C0..C3) and refined by
bisection. The script cross-checks a handful of ordinates against mpmath and
verifies the total count below the last requested zero.

usage: gen_zeta_zeros.py COUNT OUT
"""
import sys

import mpmath
import numpy as np

LOW = 649  # zeros below t = 1000 come straight from mpmath


def psi_derivatives(order=40):
    mpmath.mp.dps = 60

    def psi(p):
        return mpmath.cos(2 * mpmath.pi * (p * p - p - mpmath.mpf(1) / 16)) / mpmath.cos(2 * mpmath.pi * p)

    coeffs = mpmath.taylor(psi, mpmath.mpf(1) / 2, order)
    return [float(c) for c in coeffs]


def poly_eval(coeffs, u):
    acc = np.zeros_like(u)
    for c in reversed(coeffs):
        acc = acc * u + c
    return acc


def derivative(coeffs, k):
    out = []
    for i in range(k, len(coeffs)):
        f = 1.0
        for j in range(i - k + 1, i + 1):
            f *= j
        out.append(coeffs[i] * f)
    return out


class SiegelZ:
    def __init__(self):
        c = psi_derivatives()
        pi2 = np.pi ** 2
        self.c0 = c
        d2, d3, d6 = derivative(c, 2), derivative(c, 3), derivative(c, 6)
        self.c1 = [-x / (96 * pi2) for x in d3]
        n = max(len(d2), len(d6))
        d2 = d2 + [0.0] * (n - len(d2))
        d6 = d6 + [0.0] * (n - len(d6))
        self.c2 = [a / (64 * pi2) + b / (18432 * pi2 * pi2) for a, b in zip(d2, d6)]
        d1, d5, d9 = derivative(c, 1), derivative(c, 5), derivative(c, 9)
        n = len(d1)
        d5 = d5 + [0.0] * (n - len(d5))
        d9 = d9 + [0.0] * (n - len(d9))
        self.c3 = [-a / (64 * pi2) - b / (3840 * pi2 * pi2) - e / (5308416 * pi2 ** 3) for a, b, e in zip(d1, d5, d9)]

    @staticmethod
    def theta(t):
        return (t / 2) * np.log(t / (2 * np.pi)) - t / 2 - np.pi / 8 + 1 / (48 * t) + 7 / (5760 * t ** 3) + 31 / (80640 * t ** 5)

    def __call__(self, t):
        t = np.asarray(t, dtype=np.float64)
        a = np.sqrt(t / (2 * np.pi))
        m = np.floor(a).astype(np.int64)
        p = a - m
        th = self.theta(t)
        mmax = int(m.max())
        total = np.zeros_like(t)
        for k in range(1, mmax + 1):
            active = m >= k
            term = np.cos(th - t * np.log(k)) / np.sqrt(k)
            total += np.where(active, term, 0.0)
        total *= 2
        u = p - 0.5
        rem = poly_eval(self.c0, u) + poly_eval(self.c1, u) / a + poly_eval(self.c2, u) / (a * a) + poly_eval(self.c3, u) / (a * a * a)
        sign = np.where((m - 1) % 2 == 0, 1.0, -1.0)
        return total + sign * a ** -0.5 * rem


def isolate(z, t_lo, t_hi, chunk=400_000):
    roots = []
    t = t_lo
    while t < t_hi:
        spacing = 2 * np.pi / np.log(t / (2 * np.pi))
        step = spacing / 24
        end = min(t_hi, t + chunk * step)
        grid = np.arange(t, end + step, step)
        vals = z(grid)
        idx = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]
        lo, hi = grid[idx], grid[idx + 1]
        flo = vals[idx]
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            fm = z(mid)
            left = np.sign(fm) == np.sign(flo)
            lo = np.where(left, mid, lo)
            flo = np.where(left, fm, flo)
            hi = np.where(left, hi, mid)
        roots.append(0.5 * (lo + hi))
        t = grid[-1]
    return np.concatenate(roots)


def fill_gaps(z, roots, theta):
    """Re-scan, on a much finer grid, stretches where the zero count lags the smooth count."""
    roots = np.sort(roots)
    for _ in range(8):
        n0 = np.arange(len(roots))
        drift = n0 - theta(roots) / np.pi
        window = 64
        kernel = np.ones(window) / window
        smooth = np.convolve(drift, kernel, mode="valid")
        jumps = np.nonzero(smooth[window:] - smooth[:-window] < -1.0)[0]
        if len(jumps) == 0:
            return roots
        centre = jumps[len(jumps) // 2] + window
        i0 = max(1, centre - 2 * window)
        i1 = min(len(roots) - 1, centre + 2 * window)
        lo = 0.5 * (roots[i0 - 1] + roots[i0])
        hi = 0.5 * (roots[i1 - 1] + roots[i1])
        spacing = 2 * np.pi / np.log(lo / (2 * np.pi))
        grid = np.arange(lo, hi, spacing / 4000)
        vals = z(grid)
        idx = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]
        a, b, fa = grid[idx], grid[idx + 1], vals[idx]
        for _ in range(60):
            mid = 0.5 * (a + b)
            fm = z(mid)
            left = np.sign(fm) == np.sign(fa)
            a = np.where(left, mid, a)
            fa = np.where(left, fm, fa)
            b = np.where(left, b, mid)
        fine = 0.5 * (a + b)
        keep = (roots < lo) | (roots > hi)
        inner = fine[(fine >= lo) & (fine <= hi)]
        print(f"rescanned [{lo:.3f}, {hi:.3f}]: {np.sum(~keep)} -> {len(inner)} zeros", file=sys.stderr)
        roots = np.sort(np.concatenate([roots[keep], inner]))
    return roots


def main():
    count, out = int(sys.argv[1]), sys.argv[2]
    mpmath.mp.dps = 20
    low = [mpmath.zetazero(n).imag for n in range(1, min(count, LOW) + 1)]
    heights = [float(x) for x in low]
    if count > LOW:
        last = float(mpmath.zetazero(count).imag)
        z = SiegelZ()
        start = 0.5 * (heights[-1] + float(mpmath.zetazero(LOW + 1).imag))
        high = fill_gaps(z, isolate(z, start, last + 0.05), SiegelZ.theta)
        heights.extend(high.tolist())
        if len(heights) != count:
            raise SystemExit(f"count mismatch: found {len(heights)} zeros, expected {count}")
        for n in (LOW + 1, 1000, 5000, 20000, count):
            ref = float(mpmath.zetazero(n).imag)
            err = abs(heights[n - 1] - ref)
            print(f"n={n} ref={ref:.9f} got={heights[n - 1]:.9f} err={err:.2e}", file=sys.stderr)
            if err > 5e-9:
                raise SystemExit("cross-check failed")
    with open(out, "w") as fh:
        for h in heights:
            fh.write(f"{h:.9f}\n")


if __name__ == "__main__":
    main()
