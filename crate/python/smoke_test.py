"""Smoke test for the apery extension module.

Build first, e.g. `maturin develop -m crates/py/Cargo.toml`, or
`cargo build -p apery-py --features extension-module` and put a copy of
target/debug/libapery.so named apery.so on PYTHONPATH.
"""

import json
import math
from fractions import Fraction

import apery

ids = apery.identities()
assert "theorem1" in ids and "beta-table" in ids, ids

# j = 0: the series sums to pi^2/2.
rhs = apery.series_rhs("theorem1", 0)
assert str(rhs) == "8*beta(1)^2", str(rhs)
assert abs(float(rhs.eval(25)) - math.pi ** 2 / 2) < 1e-14

v = apery.evaluate_series("gencev", 0, 20)
assert abs(float(v) - 2 * math.log(2)) < 1e-14, v

assert apery.partial_sum("theorem1", 0, 1) == "2.0000000000000000000e+0"
assert apery.partial_sum("gencev", 0, 2, 5) == "6.8750e-1"

# Catalan's constant.
assert abs(float(apery.beta(2, 30)) - 0.915965594177219015054603514932) < 1e-15

# t*_2({2}_1) = 1 + 1/9.
assert Fraction(apery.t_star(2, 1)) == Fraction(10, 9)
assert Fraction(apery.zeta_star(2, 1)) == Fraction(5, 4)
assert Fraction(apery.weight("theorem1", 2)) == Fraction(2, 3)

e = apery.ClosedForm("pi^2 - 8*G") + apery.ClosedForm("8*G")
assert e == apery.ClosedForm("pi^2"), str(e)

reports = [json.loads(r) for r in apery.verify("oracle-tstar", n="1..5", j="0..2")]
assert len(reports) == 15 and all(r["status"] == "PASS" for r in reports)

try:
    apery.verify("nope")
except ValueError:
    pass
else:
    raise AssertionError("unknown identity accepted")

print("python smoke test: ok")
