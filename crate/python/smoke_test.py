#!/usr/bin/env python3
"""Smoke test for the piqes_py extension module.

Builds nothing itself: it locates the cdylib produced by
`cargo build -p piqes-py` (debug or release), copies it next to a temp dir as
`piqes_py.so`, imports it, and exercises the main types and operations.
"""

import json
import math
import shutil
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        REPO / "target" / "release" / "libpiqes_py.so",
        REPO / "target" / "debug" / "libpiqes_py.so",
    ]
    lib = next((c for c in candidates if c.exists()), None)
    if lib is None:
        sys.exit("build the bindings first: cargo build -p piqes-py")
    tmp = Path(tempfile.mkdtemp(prefix="piqes-smoke-"))
    shutil.copy2(lib, tmp / "piqes_py.so")
    sys.path.insert(0, str(tmp))
    import piqes_py

    return piqes_py


def main():
    m = load_module()
    failures = []

    def check(name, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] {name}" + (f" ({detail})" if detail else "")
        print(line)
        if not ok:
            failures.append(name)

    # gl(2) structure relation [j0, jm] = -jm
    jm, j0, jp, t0 = m.gl2_generators(3)
    lhs = j0.commutator(jm)
    zero = lhs + jm
    check("gl2 structure [j0,jm]=-jm", zero.is_zero())

    # particular integral annihilates the module
    i = m.pi_integral_gl2(3, 1)
    check("pi integral kernel on P_3", i.annihilates(3, [1]))
    check("pi integral does not kill P_4", not i.annihilates(4, [1]))

    # operator application: (t d/dt) t^2 = 2 t^2
    t_poly = m.MultiPoly.monomial(["t"], [1], "1")
    euler = m.DiffOp.mul_by(t_poly).compose(m.DiffOp.derivative(["t"], 0))
    t2 = m.MultiPoly.monomial(["t"], [2], "1")
    double = m.MultiPoly.monomial(["t"], [2], "2")
    check("Euler operator eigenvalue", euler.apply(t2) == double)

    # sextic block spectrum: n=1,q=0,a=1,b=0 has char poly lambda^2 - 8
    model = m.sextic_model(1, 0, "1", "0")
    spec = m.qes_block_spectrum(model["h2p"], 1)
    check("sextic char poly", spec["char_poly"] == ["-8", "0", "1"], str(spec["char_poly"]))
    evs = sorted(re for re, im in spec["eigenvalues"])
    root8 = math.sqrt(8)
    check(
        "sextic eigenvalues are ±2√2",
        abs(evs[0] + root8) < 1e-9 and abs(evs[1] - root8) < 1e-9,
        f"{evs}",
    )

    # numeric cross-check
    numeric = m.sextic_spectrum_numeric(1, 0, "1", "0", 3)
    matched = [min(abs(e - x) for x in numeric) for e in evs]
    check("numeric spectrum matches at 1e-6", max(matched) < 1e-6, f"{numeric[:3]}")

    # x-space commutant [H6, I_n] on the module
    rep = m.verify_commutant(model["h2p"], m.pi_integral_gl2(1, 1), 1)
    check("t-space commutant exact zero", rep["exact_zero"])

    # JSON round trip
    back = m.DiffOp.from_json(model["h2p"].to_json())
    check("DiffOp JSON round trip", back == model["h2p"])

    # Poisson bracket {x, p} = 1
    x = m.MultiPoly.monomial(["x", "p"], [1, 0], "1")
    p = m.MultiPoly.monomial(["x", "p"], [0, 1], "1")
    one = m.MultiPoly.monomial(["x", "p"], [0, 0], "1")
    check("canonical Poisson bracket", m.poisson_bracket(x, p) == one)

    # classical certificate and the origin value of the integral
    cl = m.classical_report(0, 1, "1", "0", 0.0, 0.0, 2.0, 1e-3)
    check("bracket certificate holds", cl["certificate_holds"])
    check("I_0(0,0) = -1/2 at q=1", cl["integral_at_origin"] == "-1/2")
    check("origin is a fixed point", cl["max_h_drift"] < 1e-12 and not cl["blew_up"])

    # Calogero-Sutherland rank 1: E0 = omega (nu + 1/2)
    cs = m.cs_rational_report(1, "3/2", "1", 4)
    check("A1 ground energy", cs["e0"] == "2", cs["e0"])
    check("A1 commutant exact", cs["algebraic"] and cs["commutant_exact_zero"])

    # rank 2 characteristic vector
    cs2 = m.cs_rational_report(2, "1/2", "1", 3)
    check("A2 characteristic vector", cs2["characteristic_vector"] == [1, 1])
    check("A2 commutant exact", cs2["commutant_exact_zero"])

    # trigonometric rank 1
    tr = m.sutherland_a1_report("2", "2", 3)
    check("trig ground energy mu^2 beta^2/4", tr["e0"] == "4", tr["e0"])
    check("trig flag exact", tr["algebraic"] and tr["flag_exact_zero"])

    print()
    if failures:
        print(f"{len(failures)} smoke checks failed: {failures}")
        sys.exit(1)
    print("all smoke checks passed")


if __name__ == "__main__":
    main()
