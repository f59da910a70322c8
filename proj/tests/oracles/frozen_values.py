#!/usr/bin/env python3
"""Independent reference values for the unit tests.

Everything here is recomputed from the textbook formulas with Python
integers and fractions; none of it calls into the C++ code. Running the
script rewrites frozen.json next to it. The tests compare against that file,
so a change in either implementation shows up as a mismatch.
"""

import json
import pathlib
from fractions import Fraction


def negacyclic(a, b, mod=None):
    d = len(a)
    out = [0] * d
    for i in range(d):
        for j in range(d):
            k = i + j
            if k < d:
                out[k] += a[i] * b[j]
            else:
                out[k - d] -= a[i] * b[j]
    if mod is not None:
        out = [x % mod for x in out]
    return out


def centered(x, q):
    x %= q
    return x - q if x > q // 2 else x


def round_away(fr):
    # nearest integer, ties away from zero
    fl = fr.numerator // fr.denominator
    rem = fr - fl
    if rem > Fraction(1, 2):
        return fl + 1
    if rem < Fraction(1, 2):
        return fl
    return fl + 1 if fr > 0 else fl


def modswitch_coeff(c, q_from, q_to, t):
    # nearest c' to c * q_to / q_from with c' = c (mod t), found by search
    target = Fraction(c * q_to, q_from)
    best = None
    base = int(target) - 2 * t
    for cand in range(base, base + 4 * t + 1):
        if (cand - c) % t:
            continue
        dist = abs(cand - target)
        assert best is None or dist != best[0], "tie"
        if best is None or dist < best[0]:
            best = (dist, cand)
    return best[1] % q_to


def bgv_modswitch_case():
    t, q_from, q_to = 17, 1021, 103
    assert q_from % t == 1 and q_to % t == 1
    c0 = [5, 1000, 517, 33]
    c1 = [1020, 0, 250, 777]
    return {
        "t": t, "d": 4, "moduli": [q_to, q_from], "c0": c0, "c1": c1,
        "out0": [modswitch_coeff(c, q_from, q_to, t) for c in c0],
        "out1": [modswitch_coeff(c, q_from, q_to, t) for c in c1],
    }


def bfv_tensor_case():
    t, q = 17, 17 * 61
    a0, a1 = [3, 1000, 517, 44], [900, 12, 5, 1036]
    b0, b1 = [250, 7, 1001, 600], [1, 2, 3, 4]
    ca = [[centered(x, q) for x in p] for p in (a0, a1)]
    cb = [[centered(x, q) for x in p] for p in (b0, b1)]
    parts = [
        negacyclic(ca[0], cb[0]),
        [x + y for x, y in zip(negacyclic(ca[0], cb[1]), negacyclic(ca[1], cb[0]))],
        negacyclic(ca[1], cb[1]),
    ]
    out = [[round_away(Fraction(t * c, q)) % q for c in p] for p in parts]
    return {"t": t, "d": 4, "q": q, "a": [a0, a1], "b": [b0, b1], "out": out}


def bgv_fresh(t, d, eta):
    return Fraction(t, 2) + t * eta * (2 * d + 1)


def bfv_fresh(t, d, eta, q):
    return Fraction(t * eta * (2 * d + 1), q)


def single_modulus(scheme, t, bits):
    low = 2 ** (bits - 1)
    if scheme == "bfv":
        return -(-low // t) * t
    q = low
    while q % t != 1 % t:
        q += 1
    if q % 2 == 0:
        q += t
    return q


def static_depth(scheme, t, d, eta, q, plain, max_depth=64):
    bits = q.bit_length()
    if scheme == "bgv":
        fresh, cap = bgv_fresh(t, d, eta), Fraction(q, 2)
        f = lambda a, b: d * a * b + t * bits * d * eta
    else:
        fresh, cap = bfv_fresh(t, d, eta, q), Fraction(1, 2)
        lin = Fraction(t * d * (d + 3), 2)
        rounding = Fraction(t, q) * (Fraction(1 + d + d * d, 2) + bits * d * eta)
        f = lambda a, b: lin * (a + b) + d * a * b + rounding
    g = lambda a: t * d * a
    eps = fresh
    for k in range(max_depth):
        eps = g(eps) if plain else f(eps, fresh)
        if eps > cap:
            return k
    return max_depth


def depth_table():
    rows = []
    for scheme in ("bgv", "bfv"):
        for bits in range(20, 61, 5):
            q = single_modulus(scheme, 257, bits)
            rows.append({
                "scheme": scheme, "t": 257, "d": 16, "bits": bits, "q": str(q),
                "cipher": static_depth(scheme, 257, 16, 1, q, False),
                "plain": static_depth(scheme, 257, 16, 1, q, True),
            })
    return rows


def frac(x):
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def main():
    q_toy = 633825300114114700748351602937
    data = {
        "negacyclic": {"t": 17, "a": [1, 2, 3, 4], "b": [5, 6, 7, 8],
                       "out": negacyclic([1, 2, 3, 4], [5, 6, 7, 8], 17)},
        "fresh": {
            "bgv_t16_d16": frac(bgv_fresh(16, 16, 1)),
            "bgv_t257_d16": frac(bgv_fresh(257, 16, 1)),
            "bfv_toy": frac(bfv_fresh(257, 16, 1, q_toy)),
        },
        "bgv_modswitch": bgv_modswitch_case(),
        "bfv_tensor": bfv_tensor_case(),
        "depth": depth_table(),
        # acc starts at -t/2 and the value check is sup < t/2, so the first
        # rejected addition is the t-th one.
        "tfhe_rejected_at": {str(p): 2 ** p for p in range(2, 13)},
    }
    path = pathlib.Path(__file__).with_name("frozen.json")
    path.write_text(json.dumps(data, indent=1) + "\n")


if __name__ == "__main__":
    main()
