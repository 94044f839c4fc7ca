"""Expands the reference banks with sympy, checks both identities, writes JSON fixtures."""

import json
import pathlib

import sympy as sp

z = sp.symbols("z")
HERE = pathlib.Path(__file__).parent
R = sp.Rational
s2 = sp.sqrt(2)


def P(low, cs):
    return sum(sp.nsimplify(c) * z ** (low + i) for i, c in enumerate(cs))


def star(u):
    return u.subs(z, 1 / z)


def literal(c):
    c = sp.expand(c)
    parts = {}
    for t in sp.Add.make_args(c):
        rat, rest = t.as_coeff_Mul()
        if rest == 1:
            parts[1] = parts.get(1, 0) + rat
        else:
            n = sp.Integer(rest**2)
            parts[int(n)] = parts.get(int(n), 0) + rat
    out = ""
    for n in sorted(parts):
        q = parts[n]
        if q == 0:
            continue
        body = str(abs(q)) if n == 1 else f"{abs(q)}*sqrt({n})"
        out += ("-" if q < 0 else ("+" if out else "")) + body
    return out or "0"


def coeffs(u):
    u = sp.expand(u)
    d = sp.Poly(sp.expand(u * z**64), z).as_dict()
    return [{"k": k[0] - 64, "v": literal(v)} for k, v in sorted(d.items()) if sp.simplify(v) != 0]


def check(a, th, b1, b2):
    t2 = th.subs(z, z**2)
    one = t2 * star(a) * a + star(b1) * b1 - star(b2) * b2 - th
    zero = t2 * star(a) * a.subs(z, -z) + star(b1) * b1.subs(z, -z) - star(b2) * b2.subs(z, -z)
    return sp.expand(one) == 0 and sp.expand(zero) == 0


def banks():
    sq = (1 + z) ** 2
    yield "classic", 2, (
        P(-2, ["-1/16", "1/4", "5/8", "1/4", "-1/16"]),
        1,
        s2 / 4 * P(0, [-1, 2, -1]),
        R(1, 16) * P(-2, [1, -4, 6, -4, 1]),
    )
    a = -R(1, 16) * P(0, [1, -6, 1]) * sq * z**-2 + (-R(3, 32) + s2 / 16) * sq * (1 - z) ** 4 * z**-3
    k1 = P(-3, [4 - 3 * s2, -2 * s2, -2068 + 1559 * s2, 1084 * s2, -2068 + 1559 * s2, -2 * s2, 4 - 3 * s2])
    k2 = P(-3, [3 * s2 - 4, 2 * s2, -2028 + 1513 * s2, 964 * s2, -2028 + 1513 * s2, 2 * s2, 3 * s2 - 4])
    v = (1 - z) ** 2
    yield "even_surd", 2, (a, 1, v * k1 / 2048, v * k2 / 2048)
    yield "even_high", 4, (
        P(-6, [-1, 0, 18, -32, -63, 288, 604, 288, -63, -32, 18, 0, -1]) / 1024,
        1,
        s2 / 32 * P(-2, [-1, 0, 9, -16, 9, 0, -1]),
        P(-6, [1, 0, -18, 32, 63, -288, 420, -288, 63, 32, -18, 0, 1]) / 1024,
    )
    yield "odd_three", 3, (
        P(-3, [15, -63, 35, 525, 525, 35, -63, 15]) / 1024,
        1,
        P(-3, [-15, 63, -385, 945, -945, 385, -63, 15]) / 1024,
        sp.sqrt(105) / 512 * P(-1, [5, -21, 38, -38, 21, -5]),
    )
    yield "odd_one", 1, (
        P(-2, [-1, 1, 16, 16, 1, -1]) / 32,
        1,
        s2 / 4096 * P(-4, [-1, 1, 32, 32, -2302, 2302, -32, -32, -1, 1]),
        s2 / 4096 * P(-4, [1, -1, -32, -32, -1794, 1794, 32, 32, 1, -1]),
    )
    v = (z - 1) ** 2 / z
    yield "theta_average", 2, (
        P(-3, [-1, 0, 3, 4, 3, 0, -1]) / 8,
        (z + 1 / z) / 2,
        v * P(-4, [1, 2, -12, -30, -46, -30, -12, 2, 1]) / 64,
        v * P(-2, [1, -2, 4, -2, 1]) * P(-2, [1, 4, 8, 4, 1]) / 64,
    )


def dump(name, doc):
    (HERE / name).write_text(json.dumps(doc, indent=2) + "\n")


def main():
    for name, nb, (a, th, b1, b2) in banks():
        th = sp.sympify(th)
        assert check(a, th, b1, b2), name
        fa, ft = {"coeffs": coeffs(a)}, {"coeffs": coeffs(th)}
        dump(f"{name}.bank.json", {"a": fa, "theta": ft, "b1": {"coeffs": coeffs(b1)}, "b2": {"coeffs": coeffs(b2)}, "nb": nb, "signature": [1, -1]})
        dump(f"{name}.a.json", fa)
        dump(f"{name}.theta.json", ft)
    # U0 = Up(z^-1 + z)·Lo(2)·diag(2, 1), A = U0·diag(1,-1)·U0⋆
    u0 = sp.Matrix([[1, z + 1 / z], [0, 1]]) * sp.Matrix([[1, 0], [2, 1]]) * sp.diag(2, 1)
    a = u0 * sp.diag(1, -1) * u0.T.subs(z, 1 / z)
    dump("round_trip.matrix.json", {k: {"coeffs": coeffs(a[i, j])} for k, (i, j) in {"11": (0, 0), "12": (0, 1), "21": (1, 0), "22": (1, 1)}.items()})
    dump("identity.matrix.json", {k: {"coeffs": coeffs(v)} for k, v in {"11": 1, "12": 0, "21": 0, "22": 1}.items()})
    dump("non_hermitian.matrix.json", {k: {"coeffs": coeffs(v)} for k, v in {"11": 1, "12": z + 1 / z, "21": 0, "22": -1}.items()})
    dump("one.json", {"coeffs": coeffs(sp.Integer(1))})
    dump("hat_square.json", {"coeffs": coeffs(z + 2 + 1 / z)})
    # x + 3 with x = z + 1/z: a simple real root z < -1, infeasible for ratio -1
    dump("real_root.json", {"coeffs": coeffs(z + 3 + 1 / z)})
    dump("haar.json", {"coeffs": coeffs((1 + z) / 2)})
    dump("delta.json", {"coeffs": coeffs(sp.Integer(1))})
    dump("bad_theta.json", {"coeffs": coeffs((1 + z) / 2)})


if __name__ == "__main__":
    main()
