"""Smoke test for the padic_euler_py extension.

Build and place the module next to this script, then run it:

    cargo build --release -p padic-euler-py --features extension-module
    cp target/release/libpadic_euler_py.so crates/python/python/padic_euler_py.so
    python3 crates/python/python/smoke_test.py
"""

import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import padic_euler_py as pe


def check(label, ok):
    print(f"{'ok  ' if ok else 'FAIL'} {label}")
    return ok


def main():
    results = []

    results.append(check("E_3 = 1/4", pe.euler_number(3) == Fraction(1, 4)))
    results.append(check("E_2^(2) = 1/2", pe.euler_number(2, 2) == Fraction(1, 2)))
    results.append(check(
        "E_1(1/3) = -1/6",
        pe.euler_polynomial(1, 1, 1, 3) == Fraction(-1, 6),
    ))

    prim = pe.characters(15, primitive_only=True)
    results.append(check("three primitive characters mod 15", len(prim) == 3))

    chi = pe.Character(3, 1)
    results.append(check("quadratic character mod 3", chi.order == 2 and chi(2).as_fraction() == -1))

    oracle = pe.gf_oracle(chi, 2, 5)
    values = [pe.l_value_neg(chi, 2, n) for n in range(6)]
    results.append(check("oracle matches l-values", oracle == values))
    wide = [pe.l_value_neg(chi, 2, n, f_mult=3) for n in range(6)]
    results.append(check("modulus independence", wide == values))

    l0 = pe.l_padic(5, chi, 1, 0, prec=10)
    results.append(check("l_p(0) = -4 for p = 5", l0.small_integer() == -4))
    results.append(check("unit digits of -4", l0.unit_digits() == [1] + [4] * 9))
    results.append(check("json round trip", pe.Padic.from_json(l0.to_json()) == l0))
    results.append(check("value at 0 matches Euler-factor form", pe.theorem1_rhs(5, chi, 1, 0, prec=10) == l0))

    for n in range(1, 4):
        lhs = pe.l_padic(5, chi, 2, -n, prec=12)
        rhs = pe.theorem1_rhs(5, chi, 2, n, prec=12)
        results.append(check(f"l_p(-{n}) equals the Euler-factor form", lhs == rhs))

    third = pe.l_padic(5, chi, 1, "1/3", prec=8)
    results.append(check("rational s accepted", third.precision == 8))

    direct = pe.l_derivative_at_0(5, chi, 1, prec=12, method="direct")
    fd = pe.l_derivative_at_0(5, chi, 1, prec=12, method="fd", fd_k=6)
    c2 = pe.l_derivative_at_0(5, chi, 1, prec=12, method="corollary2")
    results.append(check("finite difference agrees to >= 6 digits", direct.agreement(fd) >= 6))
    results.append(check("corollary2 - direct = -4", (c2 - direct).small_integer() == -4))

    try:
        pe.l_padic(7, pe.Character(5, 1), 1, 0)
        results.append(check("order-4 character rejected for p = 7", False))
    except pe.UnsupportedEmbeddingError:
        results.append(check("order-4 character rejected for p = 7", True))

    suite = pe.verify("euler")
    results.append(check("euler suite passes", all(passed for _, _, passed, _ in suite)))

    failed = results.count(False)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
