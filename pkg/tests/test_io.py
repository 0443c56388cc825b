import numpy as np

from conformable.io import fmt, svg_from_csv, to_csv, write_text


def test_fmt_roundtrip():
    for v in (0.1, 1 / 3, np.float64(2.5e-300), -0.0):
        assert float(fmt(v)) == float(v)
    assert fmt(np.float64(0.5)) == "0.5"
    assert fmt(True) == "true" and fmt(np.int64(3)) == "3"


def test_to_csv_layout():
    text = to_csv(["a", "b"], [(1, 0.25), ("x,y", 2.0)])
    assert text == 'a,b\n1,0.25\n"x,y",2.0\n'


def test_svg_pure_function_of_csv(tmp_path):
    text = to_csv(["x", "y", "label"], [(0.0, 1.0, "a"), (0.5, 2.0, "b"), (1.0, 0.5, "c")])
    s1, s2 = svg_from_csv(text, "t"), svg_from_csv(text, "t")
    assert s1 == s2
    assert s1.count("<polyline") == 1      # the text column is not plotted
    assert "<title" not in s1 and "script" not in s1
    p = write_text(str(tmp_path / "sub" / "f.svg"), s1)
    assert open(p, encoding="utf-8").read() == s1


def test_svg_degenerate_input():
    assert svg_from_csv("x\n", "empty").endswith("</svg>\n")
    assert "<polyline" in svg_from_csv(to_csv(["x", "y"], [(1.0, 2.0), (1.0, 2.0)]))
