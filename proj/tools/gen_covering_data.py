#!/usr/bin/env python3
"""Regenerates the shipped Klein covering data in data/*.cov.

Binary invariant forms are dehomogenized along x = 2z + 1, y = z so that
z = infinity is not a critical point and c*deg R = b*deg P = a*deg Q = n.
The C++ test suite re-validates every file by exact expansion.
"""
import sys
from pathlib import Path

import sympy as sp

x, y, z = sp.symbols("x y z")
w3 = sp.Symbol("w3")  # stands for sqrt(D), reduced with w3**2 = D
r3 = w3


def coeff_text(c, D):
    c = sp.Poly(sp.rem(sp.expand(c), w3**2 - D, w3), w3)
    re_part = sp.Rational(c.coeff_monomial(1))
    im_part = sp.Rational(c.coeff_monomial(w3))
    if im_part == 0:
        return str(re_part)
    s = str(im_part) + "√D"
    if re_part == 0:
        return s
    return f"{re_part}{'+' if im_part > 0 else ''}{s}"


def poly_line(name, form, D):
    p = sp.Poly(sp.expand(form.subs({x: 2 * z + 1, y: z}, simultaneous=True)), z)
    cs = list(reversed(p.all_coeffs()))
    if D == 1:
        cs = [c.subs(w3, 1) for c in cs]
    return f"{name}: " + ", ".join(coeff_text(c, D) for c in cs)


def write(path, D, abc, P, Q, R, comment):
    a, b, c = abc
    lines = [f"# {comment}", f"D={D} a={a} b={b} c={c}",
             poly_line("P", P, D), poly_line("Q", Q, D), poly_line("R", R, D)]
    Path(path).write_text("\n".join(lines) + "\n")


def main(outdir):
    out = Path(outdir)
    t = x * y * (x**4 - y**4)
    phi = x**4 + 2 * r3 * x**2 * y**2 + y**4
    psi = x**4 - 2 * r3 * x**2 * y**2 + y**4
    write(out / "tetrahedral.cov", -3, (2, 3, 3),
          3 * r3 * psi, 54 * t, 3 * r3 * phi, "tetrahedral covering, n = 12")

    w = x**8 + 14 * x**4 * y**4 + y**8
    chi = x**12 - 33 * x**8 * y**4 - 33 * x**4 * y**8 + y**12
    write(out / "octahedral.cov", -3, (2, 3, 4),
          sp.Rational(4, 3) * w, sp.Rational(8, 9) * r3 * chi, 4 * t,
          "octahedral covering, n = 24")

    f = x * y * (x**10 + 11 * x**5 * y**5 - y**10)
    h = -(x**20 + y**20) + 228 * (x**15 * y**5 - x**5 * y**15) - 494 * x**10 * y**10
    tt = (x**30 + y**30) + 522 * (x**25 * y**5 - x**5 * y**25) \
        - 10005 * (x**20 * y**10 + x**10 * y**20)
    write(out / "icosahedral.cov", 1, (2, 3, 5),
          144**2 * h, 144**3 * tt, 1728 * f, "icosahedral covering, n = 60")

    d = 2
    pd = z**2 - 1
    qd = (2 * (z + 1)**d - (z - 1)**d / 2) / 2
    rd = (2 * (z + 1)**d + (z - 1)**d / 2) / 2
    lines = [f"# dihedral covering, d = {d}, n = {2 * d}", f"D=1 a=2 b={d} c=2"]
    for name, p in (("P", pd), ("Q", qd), ("R", rd)):
        cs = list(reversed(sp.Poly(sp.expand(p), z).all_coeffs()))
        lines.append(f"{name}: " + ", ".join(str(sp.Rational(c)) for c in cs))
    (out / "dihedral_d2.cov").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data")
