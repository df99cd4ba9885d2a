"""Expand the closed-form reference polynomials into term-line fixture files."""

import pathlib

import sympy as sp

k, l, m, u, v = sp.symbols("k l m u v")
OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "fixtures"

GB1 = (1 + k) * (1 + l) * (2 + k + l) * (3 + k + 2 * l)
GBQ = 2 * k**2 + 4 * k * (2 + l) + 4 * l * (3 + l)
A1 = (1 + k) * (1 + l) * (3 + k + 2 * l)
B1 = (1 + k) * (1 + l) * (1 + m)

FIXTURES = {
    # name: (variables, expression, coefficient suffix, factored form)
    "gb_v1": ((k, l), 64 * GB1, "*pi^(-1)", "64/pi (1+k)(1+l)(2+k+l)(3+k+2l)"),
    "gb_v2": ((k, l), -32 * GB1 * (35 + GBQ), "*pi^(-1)", "-32/pi (...)(35+2k^2+4k(2+l)+4l(3+l))"),
    "gb_v3": ((k, l), 8 * GB1 * (25 + GBQ) * (61 + GBQ), "*pi^(-1)", "8/pi (...)(25+...)(61+...)"),
    "appA_v1": ((k, l), 16 * A1, "*rad(3,-1/2)*pi^(-1)", "16/pi sqrt3^(-1-k-l) (1+k)(1+l)(3+k+2l)"),
    "appA_v2": ((k, l), -2 * A1 * (107 + 4 * k**2 + 32 * l + 16 * l**2 + 8 * k * (1 + l)),
                "*rad(3,-1/2)*pi^(-1)", "-2/pi sqrt3^(-1-k-l) (...)"),
    "appA_v3": ((k, l), sp.Rational(1, 8) * A1 * (15205 + 16 * k**4 + 8672 * l + 4976 * l**2 + 832 * l**3 + 256 * l**4
                                                  + 64 * k**3 * (1 + l) + 8 * k**2 * (157 + 48 * l + 24 * l**2)
                                                  + 16 * k * (149 + 157 * l + 36 * l**2 + 16 * l**3)),
                "*rad(3,-3/2)*pi^(-1)", "1/(8pi) sqrt3^(-3-k-l) (...)"),
    "appB_v1": ((k, l, m), 2**6 * B1, "*pi^(-3/2)", "2^6/pi^(3/2) 2^(-3k/4-l/2) (1+k)(1+l)(1+m)"),
    "appB_v2": ((k, l, m), -(2**4) * B1 * (63 - 8 * k + 2 * k**2 - 4 * l + 4 * l**2 + 16 * m + 8 * m**2),
                "*pi^(-3/2)", "-2^4/pi^(3/2) 2^(-3k/4-l/2) (...)"),
    "appB_v3": ((k, l, m), 2 * B1 * (5313 - 32 * k**3 + 4 * k**4 - 32 * l**3 + 16 * l**4 + 3040 * m + 1776 * m**2
                                      + 256 * m**3 + 64 * m**4 - 32 * k * (43 - 3 * l + 3 * l**2 + 12 * m + 6 * m**2)
                                      + 8 * l**2 * (93 + 16 * m + 8 * m**2)
                                      + 4 * k**2 * (99 - 4 * l + 4 * l**2 + 16 * m + 8 * m**2)
                                      - 8 * l * (103 + 48 * m + 24 * m**2)),
                "*pi^(-3/2)", "2/pi^(3/2) 2^(-3k/4-l/2) (...)"),
    # shifted coordinates, up to a constant factor
    "sw_v1": ((k, l, u, v), k * l * u * v, "", "kluv"),
    "sw_v2": ((k, l, u, v), k * l * u * v * (7 + 2 * k**2 + 2 * l**2 + 2 * u**2 + 2 * v**2), "", "kluv(7+...)"),
    "sw_v3": ((k, l, u, v), k * l * u * v * (167 + 140 * k**2 + 12 * k**4 + 140 * l**2 + 24 * k**2 * l**2 + 12 * l**4
                                             + 140 * u**2 + 40 * k**2 * u**2 + 24 * l**2 * u**2 + 12 * u**4
                                             + 140 * v**2 + 24 * k**2 * v**2 + 40 * l**2 * v**2 + 24 * u**2 * v**2
                                             + 12 * v**4), "", "kluv(167+...)"),
    "sw_v3_limit": ((k, l, u, v), k * l * u * v * (3 * k**4 + 6 * k**2 * l**2 + 3 * l**4 + 10 * k**2 * u**2
                                                   + 6 * l**2 * u**2 + 3 * u**4 + 6 * k**2 * v**2 + 10 * l**2 * v**2
                                                   + 6 * u**2 * v**2 + 3 * v**4), "", "scaling limit of v3"),
    "sw_f3": ((k, l, u, v), k * l * u * v * (3 * k**4 + 6 * k**2 * l**2 + 3 * l**4 + 22 * k**2 * u**2
                                             + 6 * l**2 * u**2 + 3 * u**4 + 6 * k**2 * v**2 + 22 * l**2 * v**2
                                             + 6 * u**2 * v**2 + 3 * v**4), "", "continuous heat kernel term f3"),
    "sw_h_1_1": ((k, l), k * l, "", "kl"),
    "sw_h_1_2": ((k, l), k * l * (k - l) * (k + l), "", "kl(k-l)(k+l)"),
    "sw_h_1_3": ((k, l), k * l * (14 - 5 * k**2 + 3 * k**4 - 5 * l**2 - 10 * k**2 * l**2 + 3 * l**4), "",
                 "kl(14-5k^2+3k^4-5l^2-10k^2l^2+3l^4)"),
    "sw_h_2_1": ((k, l), k * l * (l - 1) * (l + 1), "", "kl(l-1)(l+1)"),
    "sw_h_2_2": ((k, l), k * l * (l - 1) * (l + 1) * (7 + 5 * k**2 - 3 * l**2), "", "kl(l-1)(l+1)(7+5k^2-3l^2)"),
    "sw_h_3_1": ((k, l), k * l * (l - 2) * (l - 1) * (l + 1) * (l + 2), "", "kl(l-2)(l-1)(l+1)(l+2)"),
}


def term_lines(gens, expr, suffix):
    poly = sp.Poly(sp.expand(expr), *gens)
    lines = []
    for exps, coeff in sorted(poly.terms(), key=lambda t: (sum(t[0]), t[0]), reverse=True):
        c = sp.Rational(coeff)
        text = str(c.p) if c.q == 1 else f"{c.p}/{c.q}"
        lines.append(text + suffix + " " + " ".join(str(e) for e in exps))
    return lines


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, (gens, expr, suffix, form) in FIXTURES.items():
        header = [f"# {form}", "# vars " + " ".join(str(g) for g in gens)]
        (OUT / f"{name}.poly").write_text("\n".join(header + term_lines(gens, expr, suffix)) + "\n")


if __name__ == "__main__":
    main()
