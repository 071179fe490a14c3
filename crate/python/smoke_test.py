"""Smoke test for the dblcat_py extension.

Build and run from the repository root:

    cargo build -p dblcat-py --release
    cp target/release/libdblcat_py.so python/dblcat_py.so
    python3 python/smoke_test.py
"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import dblcat_py as d


def main():
    assert "z2" in d.EXAMPLES
    z2 = d.Presentation.load("z2")
    assert z2.validate() == []
    assert z2.equal("i[-1] . i[-1]", "1") == "Equal"
    assert z2.equal("-1 . i[-1]", "i[-1] . -1", budget=8) == "Distinct(8)"
    assert z2.level("(-1 . i[-1]) * i[-1]") == 2
    assert z2.boundary("-1") == ("id_a", "id_a", "1", "1")
    assert d.parse("(a . b) . c") == "a . b . c"

    classes, truncated = z2.enumerate("id_a,id_a,1,1", 6)
    assert not truncated and len(classes) == 4, classes

    q = d.Quotient.load("z2-abelian")
    assert q.equal("-1 . i[-1]", "i[-1] . -1") == "Equal"
    assert q.check_verticalization() == []
    proj = d.Projection(q)
    assert proj.project("i[-1] . -1") == proj.project("-1 . i[-1]")

    collapse = d.Functor.load("collapse")
    assert collapse.map("-1 . i[-1]") == "1 . i[1]"

    try:
        z2.level("nope")
    except d.DblcatError:
        pass
    else:
        raise AssertionError("unknown cell accepted")

    print("smoke test ok")


if __name__ == "__main__":
    main()
