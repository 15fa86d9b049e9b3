"""Frozen golden data: the complete catalogue of cluster structures on three
points, their corner sign patterns, and the symbolic distance matrices.

Each row is (name, values, corner_signs, pattern) where ``pattern`` maps the
barycentric coordinates to the expected distance matrix: entries are sums of
t's, the constant 1 (the antipodal distance), or 0.  ``corner_signs`` lists
the sign pattern of every corner configuration, in corner order.

The pairing below (``TRIANGLE_PAIRS``, ``EDGE_PAIRS``) records which rows are
transposes of each other and therefore span the same simplex.
"""

from fractions import Fraction

F0 = Fraction(0)
F1 = Fraction(1)


def _sym(d12, d13, d23):
    return ((F0, d12, d13), (d12, F0, d23), (d13, d23, F0))


# name, cluster values, corner sign patterns (corner order), t -> D pattern
TRIANGLES = [
    ("f1", (1, -2, 3),
     [(1, 1, -1), (1, -1, -1), (1, -1, 1)],
     lambda t: _sym(t[1] + t[2], t[0] + t[1], t[0] + t[2])),
    ("f2", (1, 3, -2),
     [(1, -1, 1), (1, -1, -1), (1, 1, -1)],
     lambda t: _sym(t[0] + t[1], t[1] + t[2], t[0] + t[2])),
    ("f3", (1, 2, 3),
     [(1, -1, -1), (1, 1, -1), (1, 1, 1)],
     lambda t: _sym(t[0], t[0] + t[1], t[1])),
    ("f4", (1, -3, -2),
     [(1, 1, 1), (1, 1, -1), (1, -1, -1)],
     lambda t: _sym(t[2], t[1] + t[2], t[1])),
    ("f5", (1, 3, 2),
     [(1, -1, -1), (1, -1, 1), (1, 1, 1)],
     lambda t: _sym(t[0] + t[1], t[0], t[1])),
    ("f6", (1, -2, -3),
     [(1, 1, 1), (1, -1, 1), (1, -1, -1)],
     lambda t: _sym(t[1] + t[2], t[2], t[1])),
    ("f7", (1, -3, 2),
     [(1, 1, -1), (1, 1, 1), (1, -1, 1)],
     lambda t: _sym(t[2], t[0], t[0] + t[2])),
    ("f8", (1, 2, -3),
     [(1, -1, 1), (1, 1, 1), (1, 1, -1)],
     lambda t: _sym(t[0], t[2], t[0] + t[2])),
]

EDGES = [
    ("e1", (1, 2, -1),
     [(1, -1, -1), (1, 1, -1)],
     lambda t: _sym(t[0], F1, t[1])),
    ("e2", (1, -2, -1),
     [(1, 1, -1), (1, -1, -1)],
     lambda t: _sym(t[1], F1, t[0])),
    ("e3", (1, -1, 2),
     [(1, -1, -1), (1, -1, 1)],
     lambda t: _sym(F1, t[0], t[1])),
    ("e4", (1, -1, -2),
     [(1, -1, 1), (1, -1, -1)],
     lambda t: _sym(F1, t[1], t[0])),
    ("e5", (1, -2, 2),
     [(1, 1, -1), (1, -1, 1)],
     lambda t: _sym(t[1], t[0], F1)),
    ("e6", (1, 2, -2),
     [(1, -1, 1), (1, 1, -1)],
     lambda t: _sym(t[0], t[1], F1)),
    ("e7", (1, 2, 2),
     [(1, -1, -1), (1, 1, 1)],
     lambda t: _sym(t[0], t[0], F0)),
    ("e8", (1, -2, -2),
     [(1, 1, 1), (1, -1, -1)],
     lambda t: _sym(t[1], t[1], F0)),
    ("e9", (1, 1, 2),
     [(1, 1, -1), (1, 1, 1)],
     lambda t: _sym(F0, t[0], t[0])),
    ("e10", (1, 1, -2),
     [(1, 1, 1), (1, 1, -1)],
     lambda t: _sym(F0, t[1], t[1])),
    ("e11", (1, 2, 1),
     [(1, -1, 1), (1, 1, 1)],
     lambda t: _sym(t[0], F0, t[0])),
    ("e12", (1, -2, 1),
     [(1, 1, 1), (1, -1, 1)],
     lambda t: _sym(t[1], F0, t[1])),
]

VERTICES = [
    ("v1", (1, -1, -1), [(1, -1, -1)], lambda t: _sym(F1, F1, F0)),
    ("v2", (1, 1, -1), [(1, 1, -1)], lambda t: _sym(F0, F1, F1)),
    ("v3", (1, -1, 1), [(1, -1, 1)], lambda t: _sym(F1, F0, F1)),
    ("v4", (1, 1, 1), [(1, 1, 1)], lambda t: _sym(F0, F0, F0)),
]

# rows 2k-1 and 2k are transposes and span the same simplex
TRIANGLE_PAIRS = [("f1", "f2"), ("f3", "f4"), ("f5", "f6"), ("f7", "f8")]
EDGE_PAIRS = [
    ("e1", "e2"), ("e3", "e4"), ("e5", "e6"),
    ("e7", "e8"), ("e9", "e10"), ("e11", "e12"),
]

# the face lattice: triangle -> its three edges, edge -> its two endpoints
FACE_LATTICE = {
    "f1": ("e1", "e3", "e5"),
    "f3": ("e1", "e7", "e9"),
    "f5": ("e3", "e7", "e11"),
    "f7": ("e5", "e9", "e11"),
    "e1": ("v1", "v2"),
    "e3": ("v1", "v3"),
    "e5": ("v2", "v3"),
    "e7": ("v1", "v4"),
    "e9": ("v2", "v4"),
    "e11": ("v3", "v4"),
}

ALL_ROWS = TRIANGLES + EDGES + VERTICES

# rational sample points per cluster count, for evaluating the patterns
SAMPLE_T = {
    3: [(Fraction(1, 3), Fraction(1, 4), Fraction(5, 12)),
        (Fraction(1, 6), Fraction(1, 2), Fraction(1, 3))],
    2: [(Fraction(1, 3), Fraction(2, 3)), (Fraction(3, 5), Fraction(2, 5))],
    1: [(Fraction(1),)],
}
