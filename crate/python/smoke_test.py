"""Smoke test for the Python bindings.

Build the extension first:

    cargo build -p hyperbern-py --release
    python3 python/smoke_test.py

If `hyperbern` is already importable (for example after `maturin develop`),
that module is used instead of the build output.
"""

import importlib.machinery
import importlib.util
import pathlib
import sys
from fractions import Fraction


def load():
    try:
        import hyperbern

        return hyperbern
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parent.parent
    for profile in ("release", "debug"):
        for name in ("libhyperbern_py.so", "libhyperbern_py.dylib", "hyperbern_py.dll"):
            path = root / "target" / profile / name
            if path.exists():
                loader = importlib.machinery.ExtensionFileLoader("hyperbern", str(path))
                spec = importlib.util.spec_from_file_location("hyperbern", path, loader=loader)
                module = importlib.util.module_from_spec(spec)
                loader.exec_module(module)
                sys.modules["hyperbern"] = module
                return module
    sys.exit("extension not built; run `cargo build -p hyperbern-py --release`")


def main():
    hb = load()

    assert hb.numbers(1, 4) == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30)]
    assert hb.numbers(2, 3) == [1, Fraction(-1, 3), Fraction(1, 18), Fraction(1, 90)]
    for n_big in range(1, 6):
        assert hb.numbers(n_big, 1)[1] == Fraction(-1, n_big + 1)

    polys = hb.higher_polys(1, 4)
    assert polys[2].coeffs == [Fraction(1, 6), -1, 1]
    assert polys[4](Fraction(1, 2)) == Fraction(7, 240)
    assert polys[3].derivative() == hb.Poly([3 * c for c in polys[2].coeffs])
    assert hb.higher_polys(3, 8, r=2) == hb.higher_polys_recurrence(3, 8, r=2)
    assert polys[0].integral_weighted(1) == 1

    a = hb.apoly(2, 2)
    n = 1
    s = 1 + 2 - n
    assert a[0].subst_s(s) == hb.Poly([2 - n])
    assert a[1].subst_s(s) == hb.Poly([1, -1])

    report = hb.check_sums_of_products(2, 3, 6, mode="grid")
    assert report.passed and report.mode == "grid" and report.cells_checked == 7**3
    assert report.params == {"N": 2, "r": 3, "n": 6}

    bad = hb.check_ode(2, 2, 5, perturb=(2, 3))
    assert bad.status == "fail" and bad.counterexample is not None
    assert hb.replay(bad, perturb=(2, 3))
    assert not hb.replay(bad)

    reports = hb.verify(big_n_max=2, r_max=2, n_max=6)
    assert reports and all(r.status != "fail" for r in reports)

    try:
        hb.numbers(0, 3)
    except ValueError:
        pass
    else:
        raise AssertionError("N = 0 must be rejected")
    try:
        hb.Poly([0.5])
    except ValueError:
        pass
    else:
        raise AssertionError("floats are not exact rationals")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
