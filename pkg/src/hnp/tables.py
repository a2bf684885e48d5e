"""Reference H^1 values for the small alternating and symmetric groups.

Each row is (index [G:H], name of H, generators of H, H^1 as a group name).
"""

import math
import threading
from typing import Dict, List, NamedTuple, Tuple


class TableRow(NamedTuple):
    index: int
    name: str
    generators: Tuple[str, ...]
    h1: str


# (degree n, kind) of the ambient group for each table key
AMBIENTS: Dict[str, Tuple[int, str]] = {
    "a4": (4, "A"), "s4": (4, "S"), "a5": (5, "A"),
    "s5": (5, "S"), "a6": (6, "A"), "a7": (7, "A"),
}

TABLES: Dict[str, List[TableRow]] = {
    "a4": [
        TableRow(12, '1', (), 'Z/2'),
        TableRow(6, 'C2', ('(1,2)(3,4)',), 'Z/2'),
        TableRow(4, 'C3', ('(1,2,3)',), 'Z/2'),
        TableRow(3, 'V4', ('(1,2)(3,4)', '(1,3)(2,4)'), '0'),
    ],
    "s4": [
        TableRow(24, '1', (), 'Z/2'),
        TableRow(12, 'C2a', ('(1,2)',), '0'),
        TableRow(12, 'C2b', ('(1,2)(3,4)',), 'Z/2'),
        TableRow(8, 'C3', ('(1,2,3)',), 'Z/2'),
        TableRow(6, 'C4', ('(1,2,3,4)',), '0'),
        TableRow(6, 'V4', ('(1,2)', '(3,4)'), '0'),
        TableRow(6, 'V4', ('(1,2)(3,4)', '(1,3)(2,4)'), '0'),
        TableRow(4, 'S3', ('(1,2,3)', '(1,2)'), '0'),
        TableRow(3, 'D4', ('(1,2,3,4)', '(1,3)'), '0'),
        TableRow(2, 'A4', ('(1,2)(3,4)', '(1,2,3)'), '0'),
    ],
    "a5": [
        TableRow(60, '1', (), 'Z/2'),
        TableRow(30, 'C2', ('(1,2)(3,4)',), 'Z/2'),
        TableRow(20, 'C3', ('(1,2,3)',), 'Z/2'),
        TableRow(15, 'V4', ('(1,2)(3,4)', '(1,3)(2,4)'), '0'),
        TableRow(12, 'C5', ('(1,2,3,4,5)',), 'Z/2'),
        TableRow(10, 'S3', ('(1,2,3)', '(1,2)(4,5)'), 'Z/2'),
        TableRow(6, 'D5', ('(1,2,3,4,5)', '(2,5)(3,4)'), 'Z/2'),
        TableRow(5, 'A4', ('(1,2)(3,4)', '(1,2,3)'), '0'),
    ],
    "s5": [
        TableRow(120, '1', (), 'Z/2'),
        TableRow(60, 'C2a', ('(1,2)',), '0'),
        TableRow(60, 'C2b', ('(1,2)(3,4)',), 'Z/2'),
        TableRow(40, 'C3', ('(1,2,3)',), 'Z/2'),
        TableRow(30, 'C4', ('(1,2,3,4)',), '0'),
        TableRow(30, 'V4a', ('(1,2)', '(3,4)'), '0'),
        TableRow(30, 'V4b', ('(1,2)(3,4)', '(1,3)(2,4)'), '0'),
        TableRow(24, 'C5', ('(1,2,3,4,5)',), 'Z/2'),
        TableRow(20, 'C6', ('(1,2,3)', '(4,5)'), '0'),
        TableRow(20, 'S3a', ('(1,2,3)', '(1,2)'), '0'),
        TableRow(20, 'S3b', ('(1,2,3)', '(1,2)(4,5)'), 'Z/2'),
        TableRow(15, 'D4', ('(1,2,3,4)', '(1,3)'), '0'),
        TableRow(12, 'D5', ('(1,2,3,4,5)', '(2,5)(3,4)'), 'Z/2'),
        TableRow(10, 'A4', ('(1,2)(3,4)', '(1,2,3)'), '0'),
        TableRow(10, 'S3xC2', ('(1,2,3)', '(1,2)', '(4,5)'), '0'),
        TableRow(6, 'C5:C4', ('(1,2,3,4,5)', '(2,3,5,4)'), '0'),
        TableRow(5, 'S4', ('(1,2,3,4)', '(1,2)'), '0'),
        TableRow(2, 'A5', ('(1,2,3,4,5)', '(1,2,3)'), '0'),
    ],
    "a6": [
        TableRow(360, '1', (), 'Z/6'),
        TableRow(180, 'C2', ('(1,2)(3,4)',), 'Z/6'),
        TableRow(120, 'C3', ('(1,2,3)',), 'Z/2'),
        TableRow(120, 'C3', ('(1,2,3)(4,5,6)',), 'Z/2'),
        TableRow(90, 'C4', ('(1,2,3,4)(5,6)',), 'Z/6'),
        TableRow(90, 'V4a', ('(1,2)(3,4)', '(1,3)(2,4)'), 'Z/3'),
        TableRow(90, 'V4b', ('(1,2)(5,6)', '(1,2)(3,4)'), 'Z/3'),
        TableRow(72, 'C5', ('(1,2,3,4,5)',), 'Z/6'),
        TableRow(60, 'S3a', ('(1,2,3)(4,5,6)', '(1,2)(4,5)'), 'Z/2'),
        TableRow(60, 'S3b', ('(1,2,3)', '(1,2)(4,5)'), 'Z/2'),
        TableRow(45, 'D4', ('(1,2,3,4)(5,6)', '(1,3)(5,6)'), 'Z/3'),
        TableRow(40, 'C3xC3', ('(1,2,3)', '(4,5,6)'), 'Z/2'),
        TableRow(36, 'D5', ('(1,2,3,4,5)', '(2,5)(3,4)'), 'Z/6'),
        TableRow(30, 'A4a', ('(1,2)(3,4)', '(1,2,3)'), '0'),
        TableRow(30, 'A4b', ('(1,2,3)(4,5,6)', '(1,4)(2,5)'), '0'),
        TableRow(20, '(C3xC3):C2', ('(1,2,3)', '(4,5,6)', '(1,2)(4,5)'), 'Z/2'),
        TableRow(15, 'S4a', ('(1,2,3,4)(5,6)', '(1,2)(5,6)'), '0'),
        TableRow(15, 'S4b', ('(1,3,5)(2,4,6)', '(1,6)(2,5)'), '0'),
        TableRow(10, '(C3xC3):C4', ('(1,2,3)', '(4,5,6)', '(1,4)(2,5,3,6)'), 'Z/2'),
        TableRow(6, 'A5a', ('(1,2,3,4,5)', '(1,2,3)'), '0'),
        TableRow(6, 'A5b', ('(1,2,3,4,5)', '(1,4)(5,6)'), '0'),
    ],
    "a7": [
        TableRow(2520, '1', (), 'Z/6'),
        TableRow(1260, 'C2', ('(1,2)(3,4)',), 'Z/6'),
        TableRow(840, 'C3a', ('(1,2,3)',), 'Z/2'),
        TableRow(840, 'C3b', ('(1,2,3)(4,5,6)',), 'Z/2'),
        TableRow(630, 'C4', ('(1,2,3,4)(5,6)',), 'Z/6'),
        TableRow(630, 'V4a', ('(1,2)(3,4)', '(1,3)(2,4)'), 'Z/3'),
        TableRow(630, 'V4b', ('(1,2)(5,6)', '(1,2)(3,4)'), 'Z/3'),
        TableRow(504, 'C5', ('(1,2,3,4,5)',), 'Z/6'),
        TableRow(420, 'C6', ('(1,2)(3,4)(5,6,7)',), 'Z/2'),
        TableRow(420, 'S3a', ('(1,2,3)(4,5,6)', '(1,2)(4,5)'), 'Z/2'),
        TableRow(420, 'S3b', ('(1,2,3)', '(1,2)(4,5)'), 'Z/2'),
        TableRow(360, 'C7', ('(1,2,3,4,5,6,7)',), 'Z/6'),
        TableRow(315, 'D4', ('(1,2,3,4)(5,6)', '(1,3)(5,6)'), 'Z/3'),
        TableRow(280, 'C3xC3', ('(1,2,3)', '(4,5,6)'), 'Z/2'),
        TableRow(252, 'D5', ('(1,2,3,4,5)', '(2,5)(3,4)'), 'Z/6'),
        TableRow(210, 'A4a', ('(1,2)(3,4)', '(1,2,3)'), '0'),
        TableRow(210, 'A4b', ('(1,2,3)(4,5,6)', '(1,4)(2,5)'), '0'),
        TableRow(210, 'A4c', ('(1,5,3)(4,7,6)', '(2,6)(4,7)'), '0'),
        TableRow(210, 'A4d', ('(1,2,5)(4,6,7)', '(3,4)(6,7)'), '0'),
        TableRow(210, 'C2xC6', ('(1,2)(3,5)(4,6,7)', '(1,3)(2,5)'), '0'),
        TableRow(210, 'D6', ('(1,2)(3,5)(4,6,7)', '(1,2)(6,7)'), '0'),
        TableRow(210, 'C3:C4', ('(2,3,6)', '(1,4,7,5)(3,6)'), 'Z/2'),
        TableRow(140, '(C3xC3):C2', ('(1,2,3)', '(4,5,6)', '(1,2)(4,5)'), 'Z/2'),
        TableRow(126, 'C5:C4', ('(1,2)(4,5,7,6)', '(3,6,7,4,5)'), 'Z/6'),
        TableRow(120, 'C7:C3', ('(1,7,4,2,6,5,3)', '(2,3,5)(4,6,7)'), 'Z/2'),
        TableRow(105, '(C6xC2):C2', ('(1,2)(3,5)(4,6,7)', '(1,3)(2,5)', '(1,2)(6,7)'), '0'),
        TableRow(105, 'S4a', ('(1,2,3,4)(5,6)', '(1,2)(5,6)'), '0'),
        TableRow(105, 'S4b', ('(1,3,5)(2,4,6)', '(1,6)(2,5)'), '0'),
        TableRow(105, 'S4c', ('(1,2,3)(5,6,7)', '(2,3)(4,5,6,7)'), '0'),
        TableRow(105, 'S4d', ('(1,3,2)(5,6,7)', '(2,3)(4,5,6,7)'), '0'),
        TableRow(70, 'A4xC3', ('(1,3,5)(4,6,7)', '(1,2,3)'), '0'),
        TableRow(70, '(C3xC3):C4', ('(1,2,3)', '(4,5,6)', '(1,4)(2,5,3,6)'), 'Z/2'),
        TableRow(42, 'A5a', ('(1,2,3,4,5)', '(1,2,3)'), '0'),
        TableRow(42, 'A5b', ('(1,2,3,4,5)', '(1,4)(5,6)'), '0'),
        TableRow(35, '(A4xC3):C2', ('(2,3)(5,7)', '(1,2)(4,5,6,7)', '(2,3)(5,6)'), '0'),
        TableRow(21, 'S5', ('(1,2)(3,7)', '(2,6,5,4)(3,7)'), '0'),
        TableRow(15, 'PSL(3,2)a', ('(1,4)(2,3)', '(2,4,6)(3,5,7)'), '0'),
        TableRow(15, 'PSL(3,2)b', ('(1,3)(2,7)', '(1,5,7)(3,4,6)'), '0'),
        TableRow(7, 'A6', ('(1,2,3,4,5)', '(4,5,6)'), '0'),
    ],
}


# ---------------------------------------------------------------------------
# naming subgroups the way the tables do

_NAMES: Dict[Tuple, str] = {}
_NAMES_LOCK = threading.Lock()


def _base_name(name: str) -> str:
    # 'C2a', 'PSL(3,2)b' -> 'C2', 'PSL(3,2)'
    if len(name) > 1 and name[-1] in "abcd" and (name[-2].isdigit() or name[-2] == ")"):
        return name[:-1]
    return name


def fingerprint(G) -> Tuple:
    """(order, abelianization, exponent, center size, involution count)."""
    from .abelian import abelian_quotient
    from .permcore import derived_subgroup, element_order

    elems = G.elements()
    D = derived_subgroup(G)
    Ab, _ = abelian_quotient(list(G.gens), G.identity, D.__contains__)
    orders = [element_order(g, G.identity) for g in elems]
    exponent = 1
    for o in orders:
        exponent = exponent * o // math.gcd(exponent, o)
    center = sum(1 for g in elems if all(g * x == x * g for x in G.gens))
    return (G.order, Ab.invariants.factors, exponent, center, orders.count(2))


def _name_table() -> Dict[Tuple, str]:
    with _NAMES_LOCK:
        if not _NAMES:
            from .permcore import PermGroup, parse_generators

            table = {}
            for key, rows in TABLES.items():
                n = AMBIENTS[key][0]
                for row in rows:
                    H = PermGroup(parse_generators(row.generators, n), n)
                    table.setdefault(fingerprint(H), _base_name(row.name))
            _NAMES.update(table)
    return _NAMES


def group_name(G) -> str:
    """Isomorphism-type name by fingerprint, following the tables where possible."""
    fp = fingerprint(G)
    name = _name_table().get(fp)
    if name is not None:
        return name
    order, ab, exponent, center, _ = fp
    if G.is_abelian():
        if len(ab) <= 1:
            return f"C{order}"
        return "x".join(f"C{d}" for d in ab)
    known = {(18, (6,), 6, 3, 3): "S3xC3", (24, (6,), 6, 2, 7): "A4xC2", (36, (2, 2), 6, 1, 15): "S3xS3",
             (48, (2, 2), 12, 2, 19): "S4xC2", (72, (2, 2), 12, 1, 21): "S3wrC2", (120, (2,), 60, 1, 25): "S5",
             (720, (2,), 60, 1, 75): "S6", (16, (2, 2, 2), 4, 4, 11): "D4xC2"}
    return known.get(fp, f"G{order}")
