"""Smoke test for the `saddle_towers` extension module.

Build it first, e.g.
    cargo build -p saddle-py --release --features extension-module
    cp target/release/libsaddle_towers.so python/saddle_towers.so
then run `python3 python/smoke_test.py` (or `pytest python/`).
"""

import json
import math

import saddle_towers as st


def test_examples_listed():
    assert "tree1" in st.examples()
    assert "benzene" in st.examples()


def test_tree1_phases_and_verdict():
    cfg = st.example("tree1")
    st.validate(cfg)
    assert sorted(p[0][0] for p in st.phases(cfg)) == [0.0, math.pi]
    verdict = json.loads(st.embeddedness(cfg))
    assert (verdict["tier"], verdict["outcome"]) == ("FlatOrder", "Embedded")


def test_benzene_report():
    report = json.loads(st.report(st.example("benzene")))
    assert report["horizontal"]["dim_d"] == 11
    assert not report["horizontal"]["rigid"]


def test_render_and_errors():
    assert st.render(st.example("triangle"), 0.1).startswith("<?xml")
    try:
        st.validate("{")
    except ValueError:
        pass
    else:
        raise AssertionError("malformed JSON accepted")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"ok  {name}")
