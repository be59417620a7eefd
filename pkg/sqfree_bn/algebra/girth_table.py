"""
Numerical data (g, v, w) of graphs with minimum valency k whose girth w
exceeds ⌊(g+3)/2⌋.

A graph with minimum valency k >= 3 has v <= 2g - 2 vertices, and girth w
forces at least as many vertices as a tree of radius ⌊(w-1)/2⌋ around one
vertex. For even w the tree around an edge gives a better count.
"""

from dataclasses import dataclass

from sqfree_bn.utils.exceptions import PreconditionError

GirthRow = tuple[int, int, int]


def vertex_bound(k: int, w: int) -> int:
    """1 + k((k-1)^⌊(w-1)/2⌋ - 1)/(k-2)"""
    return 1 + k * ((k - 1) ** ((w - 1) // 2) - 1) // (k - 2)


def even_vertex_bound(k: int, w: int) -> int:
    """2((k-1)^{w/2} - 1)/(k-2), for even w"""
    return 2 * ((k - 1) ** (w // 2) - 1) // (k - 2)


def lower_bound(k: int, w: int, sharpened: bool = False) -> int:
    if sharpened and w % 2 == 0:
        return even_vertex_bound(k, w)
    return vertex_bound(k, w)


@dataclass
class GirthTable:
    k: int
    g_min: int
    g_max: int
    sharpened: bool
    rows: list[GirthRow]

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "g_min": self.g_min,
            "g_max": self.g_max,
            "sharpened": self.sharpened,
            "rows": [list(r) for r in self.rows],
        }


def girth_table(
    k: int = 3, g_max: int = 12, sharpened: bool = False, g_min: int = 4
) -> GirthTable:
    """Rows with 2g - 2 >= v >= lower_bound(k, w), w >= ⌊(g+5)/2⌋ and w <= v"""
    if k < 3:
        raise PreconditionError("minimum valency k >= 3", f"k = {k}")
    rows = list()
    for g in range(g_min, g_max + 1):
        v_max = 2 * g - 2
        w = (g + 5) // 2
        while (bound := lower_bound(k, w, sharpened)) <= v_max:
            rows.extend((g, v, w) for v in range(max(bound, w), v_max + 1))
            w += 1
    return GirthTable(k, g_min, g_max, sharpened, rows)
