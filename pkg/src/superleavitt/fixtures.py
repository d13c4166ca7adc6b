"""Small named graphs used in tests, docs and by the CLI's ``--graph``."""

from __future__ import annotations

import functools
import re

from .graph import SuperGraph, build_graph

__all__ = ["FIXTURES", "arrow", "chainx", "fedge", "fixture", "grass", "line2", "loop", "rose2"]


def arrow() -> SuperGraph:
    """v (bosonic) --e--> w (fermionic)."""
    return build_graph([("v", "b"), ("w", "f")], [("e", "v", "w")])


def grass(n: int = 1, m: int = 2) -> SuperGraph:
    """n bosonic and m fermionic vertices, no edges."""
    verts = [(f"v{i}" if n > 1 else "v", "b") for i in range(1, n + 1)]
    verts += [(f"w{j}", "f") for j in range(1, m + 1)]
    return build_graph(verts)


def line2() -> SuperGraph:
    return build_graph([("v1", "b"), ("v2", "b")], [("e", "v1", "v2")])


def loop() -> SuperGraph:
    return build_graph([("v", "b")], [("c", "v", "v")])


def rose2() -> SuperGraph:
    return build_graph([("v", "b")], [("e1", "v", "v"), ("e2", "v", "v")])


def chainx() -> SuperGraph:
    """Loops c1 at v1 and c2 at v2 joined by a: v1 -> v2."""
    return build_graph(
        [("v1", "b"), ("v2", "b")],
        [("c1", "v1", "v1"), ("c2", "v2", "v2"), ("a", "v1", "v2")],
    )


def fedge() -> SuperGraph:
    """A single fermionic edge w1 -> w2."""
    return build_graph([("w1", "f"), ("w2", "f")], [("f", "w1", "w2")])


FIXTURES = {
    "arrow": arrow,
    "grass": grass,
    "line2": line2,
    "loop": loop,
    "rose2": rose2,
    "chainx": chainx,
    "fedge": fedge,
}

_GRASS = re.compile(r"grass\((\d+),\s*(\d+)\)\Z")


def fixture(name: str) -> SuperGraph:
    """Look up a fixture by name; ``grass(n,m)`` takes parameters.

    Repeated lookups return the same graph object, so words built against
    one lookup multiply with words built against another.
    """
    return _fixture(name.strip().lower())


@functools.lru_cache(maxsize=None)
def _fixture(key: str) -> SuperGraph:
    m = _GRASS.match(key)
    if m:
        return grass(int(m.group(1)), int(m.group(2)))
    try:
        return FIXTURES[key]()
    except KeyError:
        raise KeyError(f"unknown fixture {key!r}") from None
