#!/usr/bin/env python3
"""Regenerate presets/*.json.

BGV moduli are 1 mod t (the toy modswitch preserves messages only then),
BFV moduli are multiples of t. Each modulus is the smallest such number
with the requested bit length.
"""
import json
import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "presets"


def bgv_modulus(bits, t):
    low = 1 << (bits - 1)
    q = low - (low % t) + 1
    if q < low:
        q += t
    if q % 2 == 0:
        q += t
    return q


def bfv_modulus(bits, t):
    low = 1 << (bits - 1)
    return -(-low // t) * t


def chain(bits, t, modulus):
    return [str(modulus(b, t)) for b in sorted(bits, reverse=True)]


def preset(name, scheme, t, d, moduli, seed, **extra):
    doc = {"name": name, "scheme": scheme, "t": t, "d": d, "eta": 1, "seed": seed,
           "modulus_chain": moduli, "estimator": "scaled_worst_case"}
    doc.update(extra)
    (OUT / f"{name}.json").write_text(json.dumps(doc, indent=2) + "\n")


def main():
    OUT.mkdir(exist_ok=True)
    # Toy presets: fuzzing, depth probes, inference, axioms.
    preset("bgv-toy", "bgv", 257, 16, chain([40, 60, 80, 100, 120], 257, bgv_modulus), 1)
    preset("bgv-wide", "bgv", 257, 8, chain([30, 45, 60, 75, 90, 105], 257, bgv_modulus), 2)
    preset("bfv-toy", "bfv", 257, 16, chain([100], 257, bfv_modulus), 3)
    preset("tfhe-toy", "tfhe", 16, 1, [str(1 << 64)], 4, tfhe_fresh_noise=1024)
    # PSI: six (len_A = 2) or twelve (len_A = 4) chained products. t leaves
    # room for products of up to eight differences of elements in 0..3.
    preset("psi-generous", "bgv", 786433, 16, chain([420], 786433, bgv_modulus), 5)
    preset("psi-tight", "bgv", 786433, 16, chain([300], 786433, bgv_modulus), 6)


if __name__ == "__main__":
    main()
