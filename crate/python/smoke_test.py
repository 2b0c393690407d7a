#!/usr/bin/env python3
"""Smoke test for the genpart_py extension module.

Builds are produced by `cargo build [--release] -p genpart-py`; this script
locates the freshest libgenpart_py.so under target/, exposes it as an
importable module, and exercises the main operations end to end.
"""
import math
import os
import shutil
import sys
import tempfile

HERE = os.path.dirname(os.path.abspath(__file__))
ROOT = os.path.dirname(HERE)


def load_module():
    candidates = [
        os.path.join(ROOT, "target", profile, "libgenpart_py.so")
        for profile in ("release", "debug")
    ]
    built = [p for p in candidates if os.path.exists(p)]
    if not built:
        sys.exit("build the extension first: cargo build --release -p genpart-py")
    newest = max(built, key=os.path.getmtime)
    stage = tempfile.mkdtemp(prefix="genpart_py_")
    shutil.copy(newest, os.path.join(stage, "genpart_py.so"))
    sys.path.insert(0, stage)
    import genpart_py

    print(f"loaded {newest}")
    return genpart_py


def main():
    gp = load_module()

    # series expansion, exact and modular
    assert gp.expand([1], 10) == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]
    assert gp.expand([0, 1], 7) == [1, 0, 1, 0, 2, 0, 3]
    mod5 = gp.expand([2, 0, 0, 4], 40, 5)
    assert all(mod5[i] == 0 for i in range(2, 40, 5))
    # big integers cross the FFI as Python ints
    p1000 = gp.expand([1], 1001)[1000]
    assert p1000 == 24061467864032622473692149727991
    print("ok expand")

    # asymptotics
    prof = gp.profile([1, 0, 1])
    assert prof["d"] == 1 and prof["gamma"] == 2
    assert prof["delta"] == (4, 3) and prof["a_over_pi2"] == (2, 9)
    assert abs(prof["a"] - 2 * math.pi**2 / 9) < 1e-12
    assert gp.evaluate_p([1, 0, 1], 1000)["sci4"] == "1.187e36"
    assert abs(gp.growth_rate([2]) - 2 * math.pi / math.sqrt(3)) < 1e-12
    rows = gp.ratio_table([1, 0, 1], [1000, 2000])
    assert rows[0]["p_exact"] == "1.155e36" and rows[0]["ratio_str"] == "0.97266"
    assert rows[1]["p_exact"] == "3.459e52" and rows[1]["ratio_str"] == "0.98057"
    assert gp.alt_conjugacy_series(3) == [1, 1, 3]
    print("ok asymptotics")

    # sturm datum and bounds
    datum = gp.sturm([2, 0, 0, 4], 5)
    assert datum["e_prime"] == [-8, 0, 0, -16]
    assert datum["w"] == 12 and datum["level"] == 4
    assert datum["delta_ell"] == 2 and datum["bound_k"] == 6
    datum2 = gp.sturm([2, 0, 0, 2], 5)
    assert datum2["e_prime"] == [-8, 0, 0, -28]
    assert datum2["w"] == 18 and datum2["level"] == 8
    assert datum2["bound_k_prime"] == 540
    print("ok sturm")

    # verification certificates
    cert = gp.verify([1], 5, [4])
    assert cert["verdict"] == "Verified" and cert["kind"] == "Type1"
    assert cert["bound"] == 1
    bad = gp.verify([1], 5, [3])
    assert bad["verdict"] == "Refuted"
    assert bad["counterexample"] == {"n": 0, "residue": 3, "value": 3}
    pair = gp.verify([2, 0, 0, 2], 5, [2, 3])
    assert pair["verdict"] == "Verified" and pair["kind"] == "Type2Minus"
    assert pair["bound"] == 540
    print("ok verify")

    # batch corpus run
    report = gp.run_corpus(os.path.join(ROOT, "data", "bacher_de_la_harpe.json"))
    summary = report["summary"]
    assert summary["claim_count"] == 246
    assert summary["verified"] == 241
    assert summary["refuted"] == 0
    assert summary["inconclusive"] == 5
    assert summary["errors"] == 0
    assert not summary["failing"]
    print("ok corpus:", summary)

    print("smoke test passed")


if __name__ == "__main__":
    main()
