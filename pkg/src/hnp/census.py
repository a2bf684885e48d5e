"""Transitive groups of small degree, Malle's alpha, and H^1 of the norm-one torus.

The check: whenever H^1 (for G with point stabilizer H) is nonzero, the
group satisfies alpha(G) > 1.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional

from .abelian import InvariantFactors
from .obstruction import ExtensionProblem, h1_invariant
from .oracle import BudgetExceeded, sha_omega2
from .permcore import (GroupError, Perm, PermGroup, conjugacy_class_reps, is_transitive, point_stabilizer,
                       subgroup_classes, symmetric_group)
from .tables import group_name

CENSUS_BUDGET = 10 ** 7
MAX_CATALOG_DEGREE = 6
UNKNOWN = "unknown(method out of range)"


class CensusError(ValueError):
    pass


def ind(g: Perm, n: Optional[int] = None) -> int:
    """n minus the number of orbits of g, fixed points included."""
    n = len(g) if n is None else n
    if len(g) != n:
        raise CensusError("degree mismatch")
    return n - len(g.cycle_type())


def alpha(G: PermGroup) -> int:
    if G.order == 1:
        raise CensusError("alpha is undefined for the trivial group")
    reps = conjugacy_class_reps(G) if G.enumerable() else G.elements()
    return min(ind(g, G.degree) for g in reps if not g.is_identity())


@dataclass
class TransitiveGroupRecord:
    degree: int
    group: PermGroup
    point_stabilizer: PermGroup
    alpha: int
    h1: Optional[InvariantFactors]
    method: str
    name: str

    @property
    def verdict(self) -> bool:
        """h1 != 0 implies alpha > 1; an unknown h1 passes only when alpha > 1."""
        if self.alpha > 1:
            return True
        return self.h1 is not None and self.h1.is_trivial()

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "name": self.name,
            "order": self.group.order,
            "generators": [str(g) for g in self.group.gens],
            "alpha": self.alpha,
            "h1": self.h1.to_json() if self.h1 is not None else UNKNOWN,
            "method": self.method,
            "verdict": self.verdict,
        }


@dataclass
class CensusReport:
    degree: int
    records: List[TransitiveGroupRecord]

    @property
    def verdicts(self) -> List[bool]:
        return [r.verdict for r in self.records]

    @property
    def exceptional(self) -> List[TransitiveGroupRecord]:
        """Records with nonzero h1 and alpha = 1."""
        return [r for r in self.records if r.h1 is not None and not r.h1.is_trivial() and r.alpha == 1]

    def to_json(self) -> dict:
        return {"degree": self.degree, "records": [r.to_json() for r in self.records],
                "all_verdicts_true": all(self.verdicts), "exceptional": [r.name for r in self.exceptional]}

    def render_text(self) -> str:
        lines = [f"degree {self.degree}: {len(self.records)} transitive groups",
                 f"{'name':<12} {'order':>6} {'alpha':>5}  {'h1':<14} {'method':<10} verdict"]
        for r in self.records:
            h1 = r.h1.name if r.h1 is not None else "unknown"
            lines.append(f"{r.name:<12} {r.group.order:>6} {r.alpha:>5}  {h1:<14} {r.method:<10} "
                         f"{'ok' if r.verdict else 'FAIL'}")
        return "\n".join(lines)


def _h1_for(G: PermGroup, H: PermGroup, budget: int):
    kind = G.natural_kind()
    n = G.degree
    if kind is not None and n >= 4:
        return h1_invariant(ExtensionProblem(G, H, [], (n, kind))), "decision"
    try:
        return sha_omega2(G, H, budget), "oracle"
    except BudgetExceeded:
        return None, UNKNOWN


def transitive_catalog(n: int, budget: int = CENSUS_BUDGET, with_h1: bool = True,
                       jobs: int = 1) -> List[TransitiveGroupRecord]:
    """Transitive subgroups of S_n up to conjugacy, smallest first."""
    if not 2 <= n <= MAX_CATALOG_DEGREE:
        raise CensusError(f"catalog supports 2 <= n <= {MAX_CATALOG_DEGREE}, got {n}")
    groups = [G for G in subgroup_classes(symmetric_group(n)) if is_transitive(G)]

    def record(G: PermGroup) -> TransitiveGroupRecord:
        if G.natural_kind() is not None:
            G.declared_kind = G.natural_kind()
        H = point_stabilizer(G, 1)
        if G.order // H.order != n:
            raise GroupError("orbit-stabilizer check failed")
        h1, method = _h1_for(G, H, budget) if with_h1 else (None, "skipped")
        return TransitiveGroupRecord(n, G, H, alpha(G), h1, method, group_name(G))

    if jobs <= 1:
        return [record(G) for G in groups]
    # map keeps input order, so reports stay reproducible
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(record, groups))


def census_run(n: int, budget: int = CENSUS_BUDGET, jobs: int = 1) -> CensusReport:
    return CensusReport(n, transitive_catalog(n, budget, jobs=jobs))
