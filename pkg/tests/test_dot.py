from catcov import fixtures as fx
from catcov.category import FiniteCategory
from catcov.dot import render_dot
from catcov.universal import universal_ball


def _counts(text):
    lines = text.splitlines()
    nodes = [l for l in lines if "[label=" in l and "->" not in l]
    edges = [l for l in lines if "->" in l]
    return len(nodes), len(edges)


def test_k2():
    text = render_dot(fx.k2())
    assert _counts(text) == (2, 2)
    assert '"x" -> "x0" [label="alpha"];' in text
    assert text.index('label="alpha"') < text.index('label="beta"')


def test_ball():
    ball = universal_ball(fx.k2(), "x0", 1)
    text = render_dot(ball)
    assert _counts(text) == (6, 5)
    assert text.count("style=dashed") == len(ball.boundary) == 2
    assert text.count("rank=same") == 2


def test_single_object():
    assert _counts(render_dot(FiniteCategory(("o",), (), {}).check())) == (1, 0)


def test_deterministic():
    a = render_dot(universal_ball(fx.k_e(3), "x0", 2))
    b = render_dot(universal_ball(fx.k_e(3), "x0", 2))
    assert a == b


def test_quoting():
    C = FiniteCategory(('a"b',), (), {}).check()
    assert '"a\\"b"' in render_dot(C)
