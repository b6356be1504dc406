"""Reference inputs exercised by ``bsideal suite`` and the test-suite."""

from __future__ import annotations

BFUNCTIONS = ("x", "x^2", "x^3", "x^4", "x^2 + y^2", "x^2 + y^3", "x*y")

TUPLES = (("x", "y"), ("x", "x"), ("x", "x + y"), ("x", "x*y"))

MULTI_INDICES = ((1, 1), (1, 0), (0, 1))

UNION_TUPLES = (("x", "y"), ("x", "x + y"), ("x", "x*y"))

# numerical data (N, nu) of embedded resolutions
RESOLUTIONS = {
    "cusp": {
        "F": ("x^2 + y^3",),
        "data": {
            "r": 1,
            "label": "minimal log resolution of x^2 + y^3",
            "divisors": [
                {"N": [1], "nu": 1, "label": "strict transform"},
                {"N": [2], "nu": 2, "label": "E1"},
                {"N": [3], "nu": 3, "label": "E2"},
                {"N": [6], "nu": 5, "label": "E3"},
            ],
        },
    },
    "axes": {
        "F": ("x", "y"),
        "data": {
            "r": 2,
            "label": "coordinate axes, already normal crossing",
            "divisors": [
                {"N": [1, 0], "nu": 1, "label": "x = 0"},
                {"N": [0, 1], "nu": 1, "label": "y = 0"},
            ],
        },
    },
}
