#!/usr/bin/env python3
"""Writes the bundled system files under data/ and the golden outputs under tests/golden/."""
import json
import os
import sys

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def triangular(n):
    return {"n": n, "edges": [[i, j] for i in range(1, n + 1) for j in range(i, n + 1)]}


def complete(n):
    return {"n": n, "edges": [[i, j] for i in range(1, n + 1) for j in range(1, n + 1)]}


def regular_map(dom, cod, table):
    images = {}
    for i, j in dom["edges"]:
        images[f"{i},{j}"] = sorted(table.get((i, j), []))
    return {"dom": dom, "cod": cod, "images": images}


def doubling_system(levels):
    # a -> a_22 + pap + pap on T_n, n = 3, 5, 9, ...
    sizes = [3]
    while len(sizes) < levels:
        sizes.append(2 * sizes[-1] - 1)
    spaces = [triangular(n) for n in sizes]
    maps = []
    for n, m in zip(sizes, sizes[1:]):
        table = {(2, 2): [[1, 1]]}
        for copy in range(2):
            shift = lambda v: 2 + copy * (n - 1) + (v - 2)
            for i in range(2, n + 1):
                for j in range(i, n + 1):
                    table.setdefault((i, j), []).append([shift(i), shift(j)])
        maps.append(regular_map(triangular(n), triangular(m), table))
    return {"spaces": spaces, "maps": maps, "tail": "stationary"}


def interval(n, i, levels):
    # a -> a + a_ii on T_n -> T_{n+1} -> ...
    sizes = list(range(n, n + levels))
    maps = []
    for k, m in zip(sizes, sizes[1:]):
        table = {(r, c): [[r, c]] for r in range(1, k + 1) for c in range(r, k + 1)}
        table[(i, i)].append([m, m])
        maps.append(regular_map(triangular(k), triangular(m), table))
    return {"spaces": [triangular(k) for k in sizes], "maps": maps, "tail": "stationary"}


def corner(n, levels):
    # a -> a + 0
    sizes = list(range(n, n + levels))
    maps = []
    for k, m in zip(sizes, sizes[1:]):
        table = {(r, c): [[r, c]] for r in range(1, k + 1) for c in range(r, k + 1)}
        maps.append(regular_map(triangular(k), triangular(m), table))
    return {"spaces": [triangular(k) for k in sizes], "maps": maps, "tail": "stationary"}


def truncation(n):
    table = {(r, c): [[r, c]] for r in range(1, n + 1) for c in range(r, n + 1)}
    return {"spaces": [complete(n), triangular(n)],
            "maps": [regular_map(complete(n), triangular(n), table)],
            "tail": "finite"}


def identity(n, levels):
    g = triangular(n)
    table = {(r, c): [[r, c]] for r, c in g["edges"]}
    return {"spaces": [g] * levels, "maps": [regular_map(g, g, table)] * (levels - 1),
            "tail": "stationary"}


def pattern():
    step = [[1, 1], [1, 2]]
    dims = [[1, 1], [2, 3], [5, 8], [13, 21]]
    return {"levels": [[{"dim": d, "maximal": True} for d in level] for level in dims],
            "transitions": [step] * 3,
            "stationary_from": 0}


def node(dim, maximal):
    return {"dim": dim, "maximal": maximal}


GOLDEN = {
    "example16_diagram.json": {
        "levels": [[node(1, False), node(2, True)],
                   [node(1, False), node(4, True)],
                   [node(1, False), node(8, True)]],
        "transitions": [[[1, 0], [0, 2]], [[1, 0], [0, 2]]],
        "stationary_from": 0,
    },
    "example16_envelope.json": {
        "levels": [[node(2, True)], [node(4, True)], [node(8, True)]],
        "transitions": [[[2]], [[2]]],
        "stationary_from": 0,
        "removed": [[0, 0], [1, 0], [2, 0]],
        "uhf": {"base_dim": 2, "ratio": 2},
    },
}


def write(path, obj, compact):
    with open(path, "w") as f:
        if compact:
            json.dump(obj, f, separators=(",", ":"))
        else:
            json.dump(obj, f, indent=2)
        f.write("\n")


def main():
    data = os.path.join(ROOT, "data")
    golden = os.path.join(ROOT, "tests", "golden")
    os.makedirs(data, exist_ok=True)
    os.makedirs(golden, exist_ok=True)
    files = {
        "example16.json": doubling_system(4),
        "interval_compression.json": interval(5, 3, 4),
        "corner.json": corner(2, 4),
        "truncation3.json": truncation(3),
        "identity.json": identity(3, 4),
        "pattern.json": pattern(),
    }
    for name, obj in files.items():
        write(os.path.join(data, name), obj, compact=True)
    for name, obj in GOLDEN.items():
        write(os.path.join(golden, name), obj, compact=False)
    return 0


if __name__ == "__main__":
    sys.exit(main())
