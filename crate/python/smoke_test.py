"""Smoke test for the mzeta extension module.

Build and install first:
    pip install maturin
    maturin build --release -m crates/py/Cargo.toml -o dist && pip install dist/mzeta-*.whl
"""

import json

import mzeta


def main():
    line = mzeta.Matroid.uniform(2, 3)
    assert (line.n, line.rank) == (3, 2)
    assert str(line.char_poly()) == "q^2 - 3*q + 2"
    assert str(line.reduced_char_poly()) == "q - 2"

    z = line.zeta()
    assert z == mzeta.RationalQT(str(z))
    assert z == mzeta.RationalQT.from_json(z.to_json())
    assert line.zeta(building_set="min") == z
    assert line.zeta(building_set=[[0], [1], [2], [0, 1, 2]]) == z

    reduced = line.zeta("reduced")
    q = mzeta.RationalQT("q")
    assert reduced.substitute_inverse() == q * reduced

    for kind in ("full", "local", "reduced"):
        assert line.zeta(kind).series(5) == line.oracle(5, kind)

    m1 = mzeta.Matroid.named("M1")
    top = m1.topological_zeta()
    assert str(top).startswith("(-120*s^6 + 20*s^5")
    assert top.value_at_0() == "1"
    assert top.derivative_at_0() == "-7"

    n1, n2 = mzeta.Matroid.named("N1"), mzeta.Matroid.named("N2")
    assert n1.zeta() == n2.zeta()

    poincare = mzeta.Matroid.named("k4").poincare("min")
    assert str(poincare["h"]) == str(poincare["euler_poincare"])

    report = json.loads(mzeta.Matroid.named("fano").verify("functional"))
    assert report["passed"], report

    try:
        mzeta.Matroid.from_bases(4, [[0, 1], [2, 3]])
    except ValueError as e:
        assert "basis exchange" in str(e)
    else:
        raise AssertionError("invalid bases accepted")

    print("ok")


if __name__ == "__main__":
    main()
