"""Smoke test for the compiled extension.

Build with `cargo build -p polyrat-py --release`, copy
target/release/libpolyrat.so to polyrat.so next to this file (or on
PYTHONPATH), then run `python3 python/smoke_test.py`.
"""

import json

import polyrat


def main():
    fib = polyrat.Lrs(["1", "1"], ["0", "1"])
    assert fib.terms(8) == ["0", "1", "1", "2", "3", "5", "8", "13"]
    assert str(fib.series()) == "x/(1 - x - x^2)"
    assert not fib.is_polyrat()
    try:
        fib.to_expr()
    except polyrat.PolyratError:
        pass
    else:
        raise AssertionError("Fibonacci has no poly-rational expression")

    e = polyrat.SeqExpr("geo(1, 2) * arith(0, 1)")
    assert e.terms(4) == ["0", "2", "8", "24"]
    assert "polyrat" in e.fragments()
    a = e.to_wa()
    assert a.terms(4) == e.terms(4)
    assert a.ambiguity() == "polynomially ambiguous, degree 1"
    assert e.to_cra().to_expr().terms(10) == e.terms(10)

    a3 = polyrat.WeightedAutomaton.from_json(json.dumps({
        "states": 3,
        "initial": [[0, "2"]],
        "final": [[2, "1"]],
        "transitions": [[0, 1, "1"], [1, 0, "3"], [0, 2, "5"], [2, 2, "5"]],
    }))
    f = a3.series()
    assert f == polyrat.RationalFunction(["0", "10"], ["1", "-5", "-3", "15"])
    assert a3.to_expr().terms(12) == a3.terms(12)
    assert a3.equiv(polyrat.WeightedAutomaton.from_json(a3.to_json()))

    code, out, _ = polyrat.run_cli(["eval", "--from", "expr", "geo(1,1)", "-n", "3"])
    assert (code, out) == (0, "1 1 1\n")
    print("ok")


if __name__ == "__main__":
    main()
