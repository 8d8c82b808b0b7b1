"""Smoke test for the fknot_py extension module.

Build and install first, e.g. ``maturin develop --release -m crates/py/Cargo.toml``.
"""

import json

import fknot_py

TREFOIL = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"


def main():
    d = fknot_py.parse(TREFOIL)
    assert d.crossing_count == 3
    assert d.alexander() == [1, -1, 1]
    assert d.alexander("fox") == d.mirror().alexander()
    assert d.with_kink(0, "under-left").alexander() == [1, -1, 1]

    c = d.count(2)
    assert (c.q, c.delta_q, c.count, c.p_divides_c0) == (2, 3, 3, False)
    assert d.count(2, nu=2).count == 13

    e = d.enumerate(3, cap=12)
    assert e.stable_count == 7 and e.stable_levels == (6, 12)
    assert e.orbifold == (7, 2)

    t = d.torsor(2, 2)
    assert t.solutions == 3 and len(t.equations) == 1

    five_two = dict((name, pd) for name, _, pd, _ in fknot_py.corpus())["5_2"]
    c = fknot_py.parse(five_two).count(2)
    assert c.p_divides_c0 and c.count == 1

    assert fknot_py.elementary_divisors([[2, 4], [6, 8]]) == [2, 4]

    try:
        fknot_py.parse("X[1,2")
    except fknot_py.FknotError as err:
        assert "MalformedNotation" in str(err)
    else:
        raise AssertionError("malformed PD accepted")

    code, out, _ = fknot_py.run_cli(["alex", "unknot"])
    assert code == 0 and json.loads(out) == {"poly": [1]}
    print("fknot_py smoke test passed")


if __name__ == "__main__":
    main()
