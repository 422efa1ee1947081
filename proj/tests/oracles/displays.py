"""Expands the displayed family formulas with sympy and writes
tests/golden/displays.json: g coefficients (lowest degree first) and the
displayed points, each checked on g y^2 = f(x) here first."""
import json
import pathlib
from sympy import Rational as R, symbols, expand, Poly, cancel, fraction

u, x = symbols("u x")


def coeffs(expr):
    p = Poly(expand(expr), u)
    return [str(c) for c in reversed(p.all_coeffs())]


def ratfunc(expr):
    n, d = fraction(cancel(expr))
    pn, pd = Poly(n, u), Poly(d, u)
    lc = pd.LC()
    return {"num": [str(c / lc) for c in reversed(pn.all_coeffs())],
            "den": [str(c / lc) for c in reversed(pd.all_coeffs())]}


def entry(f, g, points):
    for X, Y in points:
        assert cancel(g * Y**2 - f.subs(x, X)) == 0
    return {"g": coeffs(g), "points": [{"x": ratfunc(X), "y": ratfunc(Y)} for X, Y in points]}


out = {}

a, b = R(1), R(2)
g = -a * b * (u**2 + b**2) * (u**4 + 2 * b**2 * u**2 - a**2 * b * u**2 + b**4)
out["cor3_2"] = entry(x**3 + a * x**2 + b * x, g,
                      [(-(u**2 + b**2) / (a * b), 1 / (a**2 * b**2)),
                       (-b * (u**2 + b**2) / (a * u**2), b / (a**2 * u**3))])

b, c = R(3), R(1)
g = -b * c * (2 * u**6 + (18 * c**2 - b**3) * u**4 + (54 * c**4 + 2 * b**3 * c**2) * u**2 + 54 * c**6 - b**3 * c**4)
w = b**4 * u**2 * (u**2 - c**2) ** 2
out["cor3_3"] = entry(x**3 + (b**2 / (4 * c)) * x**2 + b * x + c, g,
                      [(-(u**2 + 3 * c**2) / (2 * b * c), 1 / (4 * b**2 * c**2)),
                       ((c * g - w) / (4 * b**2 * c * u**2 * (u**2 + 3 * c**2) ** 2),
                        (c * g + 3 * w) / (8 * b**3 * c * u**3 * (u**2 + 3 * c**2) ** 3))])

a, b = R(1), R(1)
g = -a * b * (b**2 * (u**4 + u**2 + 1) ** 3 + a**3 * u**4 * (u**2 + 1) ** 2) * (u**2 + 1)
out["mestre3_4"] = entry(x**3 + a * x + b, g, [])

a = R(1)
l = -2 * a**2
D = l * (2 * l - 1) * u**2 + 2 - l
N = (l**2 * (l + 1) * (2 * l - 1) ** 2 * u**4 - 4 * l**2 * (l - 1) * (2 * l - 1) * u**3
     + 2 * l * (l + 1) * (2 * l**2 - 3 * l + 2) * u**2 - 4 * l * (l - 1) * (l - 2) * u + (l - 2) ** 2 * (l + 1))
g = 2 * N * (N - 2 * D**2) * (N - 2 * l * D**2)
Q2 = l * (2 * l - 1) * u**2 - 2 * l * (2 * l - 1) * u + l - 2
Q3 = l * (2 * l - 1) * u**2 - (2 * l - 4) * u + l - 2
M = 4 * l * u * (u - 1) * (l * (2 * l - 1) * u + 2 - l)
out["thm4_1"] = entry(x * (x - 1) * (x - l), g,
                      [(N / (2 * D**2), 1 / (4 * D**3)),
                       (l**2 * (D**2 - M) / Q2**2, a * l / Q2**3),
                       ((D**2 + M) / (l * Q3**2), -a / (l**2 * Q3**3))])

a, b = R(2), R(1)
q = a**2 - 3 * a + 4
g = (-4 * b * u * ((a - 1) ** 2 * u - a) * (a**2 * q * u - (a**2 + 1) * (a - 1))
     * (a * q * u**2 - 2 * a * (a - 1) * u + a + 1)
     * (a * (a + 1) * (a - 1) ** 2 * q * u**2 - 2 * a * (a - 1) ** 2 * (a**2 + 1) * u + (a**2 + 1) ** 2)
     * (a**2 * (a - 1) ** 2 * q**2 * u**4 - 4 * a**2 * (a - 1) ** 3 * q * u**3
        + 2 * (a - 1) ** 2 * (3 * a**4 - 6 * a**3 + 5 * a**2 + 2) * u**2 - 4 * a * (a - 1) ** 2 * (a**2 + 1) * u
        + (a**2 + 1) ** 2))
out["thm4_3"] = entry(x * (x - b) * (x - a**2 * b), g, [])

g = 6 * (u**12 - 33 * u**8 - 33 * u**4 + 1)
P = [(-(u**4 - 6 * u**2 + 1) / (3 * (u**2 + 1) ** 2), R(2) / (9 * (u**2 + 1) ** 3)),
     (-(u**4 + 6 * u**2 + 1) / (3 * (u**2 - 1) ** 2), R(2) / (9 * (u**2 - 1) ** 3)),
     ((u**4 + 1) / (6 * u**2), 1 / (36 * u**3))]
out["thm4_5"] = entry(x**3 - x, g, P)

for level in (1, 2, 4):
    out[f"rem4_6_level{level}"] = {"g": coeffs(6 * (u ** (3 * level) - 33 * u ** (2 * level) - 33 * u**level + 1))}

path = pathlib.Path(__file__).resolve().parent.parent / "golden" / "displays.json"
path.write_text(json.dumps(out, indent=1) + "\n")
print("wrote", path)
