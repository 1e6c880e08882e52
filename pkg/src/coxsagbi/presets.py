"""Named configurations and golden monomial tables.

Matrices are stored as scalar literals so they round-trip through the JSON
config format unchanged.
"""

from __future__ import annotations

from functools import lru_cache

from .apolarity import LinearFormConfig, random_generic_config
from .cox import parse_monomial

CAYLEY_A = [
    ["1", "0", "0", "1", "-1", "0"],
    ["0", "1", "0", "-1", "0", "1"],
    ["0", "0", "1", "0", "1", "-1"],
]

CUBIC_SAGBI_A = [
    ["t", "t^11", "t^11", "t^13", "t^7", "t^7"],
    ["t^6", "1", "t^13", "t^10", "t^15", "t^15"],
    ["t^6", "t^5", "1", "t^15", "t^5", "t"],
]

DP2_SAGBI_A = [
    ["t^3", "t^10", "1", "t^6", "t^17", "t^12", "t^11"],
    ["t^18", "t^15", "t^8", "t^4", "t^6", "t^7", "t"],
    ["t^10", "t^16", "t^2", "1", "t^6", "t^4", "t^9"],
]

# degree-one scenario for n = 8; kept for completeness, not used by the checks
DP1_SAGBI_A = [
    ["t^6", "t^10", "t^3", "t^10", "t", "t^4", "t^10", "t^2"],
    ["t^10", "t^3", "t^8", "t^6", "t^8", "t", "t^8", "t^8"],
    ["t^4", "t^8", "t^7", "t^7", "t^8", "t^5", "t", "t^9"],
]

ZONO_EX_C = [
    ["0", "0", "1", "1"],
    ["0", "1", "0", "1"],
    ["1", "0", "0", "1"],
]

ARRANGEMENT_P3_C = [
    ["0", "0", "0", "1", "t"],
    ["0", "0", "1", "0", "t^2"],
    ["0", "1", "0", "0", "t^3"],
    ["1", "0", "0", "0", "t^4"],
]

# the seven underlined lines and conics of the four-line configuration
CAYLEY_TABLE = [f"x{i}" for i in range(1, 7)] + [
    ("L_124", "y3x5x6"), ("L_135", "y2x4x6"), ("L_236", "y1x4x5"), ("L_456", "y1x2x3"),
    ("M_16", "y2x3x4x5"), ("M_25", "y1x3x4x6"), ("M_34", "y1x2x5x6"),
]

# fiber coordinates are the exponents of y2 and y3
CAYLEY_FREE = (1, 2)

# --- Gr(2,5): representative metrics and initial monomial sets per type ---

_T1 = ["x1", "x2", "x3", "x4", "x5", "y1x2x3", "y1x2x4", "y1x2x5", "x1y3x4", "x1y3x5",
       "x1y4x5", "x2y3x4", "x2y3x5", "x2y4x5", "y3x4x5", "y1x2y3x4x5"]


def _swap(base, old, new):
    return [new if m == old else m for m in base]


_T3 = _swap(_T1, "x1y4x5", "y1x4x5")

TYPE_MONOMIALS = {
    1: _T1,
    2: _swap(_T1, "y1x2x3", "x1x2y3"),
    3: _T3,
    4: _swap(_T3, "x2y4x5", "y2x4x5"),
    5: ["x1", "x2", "x3", "x4", "x5", "y1x2x3", "y1x2x4", "y1x2x5", "y1x3x4", "y1x3x5",
        "y1x4x5", "y2x3x4", "y2x3x5", "y2x4x5", "y3x4x5", "y1y3x2x4x5"],
    6: ["x1", "x2", "x3", "x4", "x5", "y1x2x3", "y1x2x4", "y1x2x5", "x1y3x4", "x1y3x5",
        "x1y4x5", "x2y3x4", "x2y3x5", "x2y4x5", "x3y4x5", "y1x2x3y4x5"],
    7: ["x1", "x2", "x3", "x4", "x5", "y1x2x3", "y1x2x4", "y1x2x5", "y1x3x4", "y1x3x5",
        "y1x4x5", "y2x3x4", "y2x3x5", "y2x4x5", "y3x4x5", "y1y2x3x4x5"],
}

TYPE_METRICS = {
    1: (1, 2, 3, 4, 3, 4, 5, 1, 2, 3),
    2: (5, 3, 5, 6, 4, 6, 7, 2, 3, 5),
    3: (2, 1, 3, 4, 3, 5, 6, 2, 3, 5),
    4: (1, 1, 4, 4, 2, 5, 5, 3, 3, 6),
    5: (1, 4, 5, 5, 5, 6, 6, 7, 7, 8),
    6: (1, 1, 2, 3, 2, 3, 4, 1, 2, 1),
    7: (1, 2, 3, 3, 3, 4, 4, 5, 5, 6),
}

TYPE_TALLIES = {1: 120, 2: 120, 3: 120, 4: 60, 5: 60, 6: 60, 7: 60}

# Type 6 fiber coordinates are the exponents of y1 and y4
TYPE6_FREE = (0, 3)

# --- cubic surface: 27 initial monomials of the sagbi matrix ---

CUBIC_TABLE = [
    ("E_1", "x1"), ("E_2", "x2"), ("E_3", "x3"), ("E_4", "x4"), ("E_5", "x5"), ("E_6", "x6"),
    ("F_12", "y3x4x5x6"), ("F_13", "y2x4x5x6"), ("F_14", "x2y3x5x6"), ("F_15", "y2x3x4x6"),
    ("F_16", "y2x3x4x5"), ("F_23", "y1x4x5x6"), ("F_24", "x1y3x5x6"), ("F_25", "y1x3x4x6"),
    ("F_26", "y1x3x4x5"), ("F_34", "y1x2x5x6"), ("F_35", "x1y2x4x6"), ("F_36", "x1y2x4x5"),
    ("F_45", "y1x2x3x6"), ("F_46", "y1x2x3x5"), ("F_56", "x1y2x3x4"),
    ("G_6", "x1y2y3x4x5x6^2"), ("G_5", "x1y2y3x4x5^2x6"), ("G_4", "x1y2y3x4^2x5x6"),
    ("G_3", "x1y2y3x3x4x5x6"), ("G_2", "x1x2y2y3x4x5x6"), ("G_1", "x1^2y2y3x4x5x6"),
]

# fiber coordinates are the exponents of y2 and y3
CUBIC_FREE = (1, 2)

DP2_TABLE = [
    ("E_1", "x1"), ("E_2", "x2"), ("E_3", "x3"), ("E_4", "x4"), ("E_5", "x5"), ("E_6", "x6"),
    ("E_7", "x7"),
    ("F_12", "x3x5x6x7y4"), ("F_13", "x2x4x5x6y7"), ("F_14", "x2x3x5x6y7"),
    ("F_15", "x2x3x6x7y4"), ("F_16", "x2x3x4x5y7"), ("F_17", "x2x3x5x6y4"),
    ("F_23", "x1x4x5x6y7"), ("F_24", "x1x3x5x6y7"), ("F_25", "x1x3x6x7y4"),
    ("F_26", "x1x3x4x5y7"), ("F_27", "x1x3x5x6y4"), ("F_34", "x1x2x5x6y7"),
    ("F_35", "x1x2x6x7y4"), ("F_36", "x1x2x4x5y7"), ("F_37", "x1x2x5x6y4"),
    ("F_45", "x1x2x6x7y3"), ("F_46", "x1x2x5x7y3"), ("F_47", "x1x2x5x6y3"),
    ("F_56", "x1x2x4x7y3"), ("F_57", "x1x2x4x6y3"), ("F_67", "x1x2x4x5y3"),
    ("G_67", "x1x2x3x5x6^2x7y4y7"), ("G_57", "x1x2x3x4x5^2x6y7^2"),
    ("G_56", "x1x2x3x5^2x6^2y4y7"), ("G_47", "x1x2x3x4x5x6x7y4y7"),
    ("G_46", "x1x2x3x5x6^2x7y4^2"), ("G_45", "x1x2x3x4x5^2x6y4y7"),
    ("G_37", "x1x2x3x5x6x7^2y3y4"), ("G_36", "x1x2x3x5x6^2x7y3y4"),
    ("G_35", "x1x2x3x5^2x6x7y3y4"), ("G_34", "x1x2x3x4x5x6x7y3y4"),
    ("G_27", "x1x2^2x4x5x6x7y3y7"), ("G_26", "x1x2^2x4x5x6^2y3y7"),
    ("G_25", "x1x2^2x4x5^2x6y3y7"), ("G_24", "x1x2^2x4^2x5x6y3y7"),
    ("G_23", "x1x2^2x3x4x5x6y3y7"), ("G_17", "x1^2x2x4x5x6x7y3y7"),
    ("G_16", "x1^2x2x4x5x6^2y3y7"), ("G_15", "x1^2x2x4x5^2x6y3y7"),
    ("G_14", "x1^2x2x4^2x5x6y3y7"), ("G_13", "x1^2x2x3x4x5x6y3y7"),
    ("G_12", "x1^2x2^2x4x5x6y3y7"),
    ("C_1", "x1x2^2x3x4x5^2x6^2x7y3y4y7"), ("C_2", "x1^2x2x3x4x5^2x6^2x7y3y4y7"),
    ("C_3", "x1^2x2^2x4^2x5^2x6^2y3y7^2"), ("C_4", "x1^2x2^2x3x4x5^2x6^2y3y7^2"),
    ("C_5", "x1^2x2^2x3x4x5x6^2x7y3y4y7"), ("C_6", "x1^2x2^2x3x4^2x5^2x6y3y7^2"),
    ("C_7", "x1^2x2^2x3x4x5^2x6^2y3y4y7"),
]

# the arrangement of five planes in P^3: ten variables and fifteen planes
ARRANGEMENT_P3_TABLE = [f"x{i}" for i in range(1, 11)] + [
    "y1x2x3x4", "y1x5x6x7", "y2x5x8x9", "y3x6x8x10", "y4x7x9x10",
    "y3x4x6x7x8x9", "y2x4x5x7x8x10", "y1x4x5x6x9x10", "y1x2x3x7x9x10", "y2x3x5x6x9x10",
    "y1x3x5x7x8x10", "y1x2x4x6x8x10", "y1x2x6x7x8x9", "y1x3x4x5x8x9", "y2x3x4x5x6x7",
]

# fiber coordinates for the arrangement are the exponents of y2, y3, y4
ARRANGEMENT_P3_FREE = (1, 2, 3)

# point labels of the ten variables, as triples of the five planes
ARRANGEMENT_P3_LABELS = [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4), (1, 2, 5),
                         (1, 3, 5), (2, 3, 5), (1, 4, 5), (2, 4, 5), (3, 4, 5)]


def monomials_of(table, n):
    """Parse a list of monomial strings or (label, monomial) pairs."""
    out = []
    for item in table:
        text = item[1] if isinstance(item, tuple) else item
        out.append(parse_monomial(text, n))
    return out


def type_monomials(k: int):
    return monomials_of(TYPE_MONOMIALS[k], 5)


def cubic_degrees():
    """Multidegrees of the 27 generators E_i, F_ij, G_i for n = 6."""
    n = 6
    out = {}
    for i in range(n):
        u = [0] * n
        u[i] = 1
        out[f"E_{i + 1}"] = (0,) + tuple(u)
    for i in range(n):
        for j in range(i + 1, n):
            u = [1] * n
            u[i] = u[j] = 0
            out[f"F_{i + 1}{j + 1}"] = (1,) + tuple(u)
    for i in range(n):
        u = [1] * n
        u[i] = 2
        out[f"G_{i + 1}"] = (2,) + tuple(u)
    return out


def dp2_degrees():
    """Multidegrees of the 56 generators E_i, F_ij, G_ij, C_i for n = 7."""
    n = 7
    out = {}
    for i in range(n):
        u = [0] * n
        u[i] = 1
        out[f"E_{i + 1}"] = (0,) + tuple(u)
    for i in range(n):
        for j in range(i + 1, n):
            u = [1] * n
            u[i] = u[j] = 0
            out[f"F_{i + 1}{j + 1}"] = (1,) + tuple(u)
    for i in range(n):
        for j in range(i + 1, n):
            u = [1] * n
            u[i] = u[j] = 2
            out[f"G_{i + 1}{j + 1}"] = (2,) + tuple(u)
    for i in range(n):
        u = [2] * n
        u[i] = 1
        out[f"C_{i + 1}"] = (3,) + tuple(u)
    return out


@lru_cache(maxsize=None)
def config(name: str, seed: int = 0) -> LinearFormConfig:
    """Linear form configuration for a preset name."""
    if name == "cayley":
        return LinearFormConfig(CAYLEY_A)
    if name == "cubic-sagbi":
        return LinearFormConfig(CUBIC_SAGBI_A)
    if name == "dp2-sagbi":
        return LinearFormConfig(DP2_SAGBI_A)
    if name == "dp3-generic":
        return random_generic_config(3, 6, seed=seed)
    if name == "dp4-generic":
        return random_generic_config(3, 5, seed=seed)
    if name in ("zono-ex", "arrangement-p3"):
        from .zonotopal import arrangement_from_C
    if name == "zono-ex":
        return arrangement_from_C(ZONO_EX_C).config
    if name == "arrangement-p3":
        return arrangement_from_C(ARRANGEMENT_P3_C, order=ARRANGEMENT_P3_LABELS).config
    if name.startswith("type") and name[4:].isdigit():
        from .sagbi import realize_metric

        B = realize_metric(TYPE_METRICS[int(name[4:])])
        return LinearFormConfig(kernel_rows_of_B(B))
    raise KeyError(f"unknown preset {name!r}")


def sagbi_table(name: str):
    """(initial monomials, DegreeMap) of the monomial cone attached to a preset.

    Generic presets borrow the table of a sagbi degeneration with the same
    Hilbert function.  Raises KeyError when no table is known.
    """
    from .polyhedral import DegreeMap

    if name in ("cubic-sagbi", "dp3-generic"):
        mons = monomials_of(CUBIC_TABLE, 6)
        return mons, DegreeMap(6, CUBIC_FREE)
    if name == "dp2-sagbi":
        mons = monomials_of(DP2_TABLE, 7)
        return mons, DegreeMap.for_monomials(mons, 7)
    if name == "cayley":
        mons = monomials_of(CAYLEY_TABLE, 6)
        return mons, DegreeMap(6, CAYLEY_FREE)
    if name == "arrangement-p3":
        mons = monomials_of(ARRANGEMENT_P3_TABLE, 10)
        return mons, DegreeMap(10, ARRANGEMENT_P3_FREE)
    if name == "dp4-generic":
        name = "type6"
    if name.startswith("type") and name[4:].isdigit():
        k = int(name[4:])
        mons = type_monomials(k)
        return mons, (DegreeMap(5, TYPE6_FREE) if k == 6 else DegreeMap.for_monomials(mons, 5))
    raise KeyError(f"no monomial table for preset {name!r}")


def kernel_rows_of_B(B):
    """Rows of a d x n matrix A with ker(A) = rowspace(B)."""
    from . import exact

    ncols = len(B[0])
    basis = exact.kernel_basis([list(r) for r in B], ncols)
    return [list(v) for v in basis]


PRESET_NAMES = ("dp3-generic", "dp4-generic", "cayley", "cubic-sagbi", "dp2-sagbi", "zono-ex",
                "arrangement-p3") + tuple(f"type{k}" for k in range(1, 8))
