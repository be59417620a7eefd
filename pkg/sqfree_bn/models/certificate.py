from dataclasses import dataclass, field
from typing import Optional

from sqfree_bn.models.complex import Edge
from sqfree_bn.models.cycle import CycleVector
from sqfree_bn.models.field import QQ, Field, FieldScalar

SEARCH_SPACE_FLAG = "exact-over-search-space"


@dataclass(frozen=True)
class LinearSeriesCertificate:
    """A g^r_d given by generating cycles in H̃₁, with the checks it passed"""

    cycles: tuple[CycleVector, ...]
    degree: int
    r: int
    checks: dict[str, bool] = field(default_factory=dict, hash=False)

    @property
    def l(self) -> int:
        return self.r + 1

    @property
    def verified(self) -> bool:
        return bool(self.checks) and all(self.checks.values())

    @property
    def sort_key(self) -> tuple:
        return self.degree, tuple(sorted(c.sort_key() for c in self.cycles))

    def to_json(self) -> dict:
        return {
            "d": self.degree,
            "r": self.r,
            "cycles": [c.to_json() for c in self.cycles],
            "checks": dict(self.checks),
        }


@dataclass(frozen=True)
class GaugeNormalForm:
    tree_edges: tuple[Edge, ...]
    chords: tuple[Edge, ...]
    holonomies: tuple[FieldScalar, ...]
    field: Field = QQ

    def to_json(self) -> dict:
        return {
            "tree_edges": [list(e) for e in self.tree_edges],
            "chords": [
                [v, w, self.field.format(h)]
                for (v, w), h in zip(self.chords, self.holonomies)
            ],
        }


@dataclass(frozen=True)
class CycleClass:
    """A point of P¹ for an n-gon module; the edge is set at (0,1) and (1,0)"""

    point: tuple[FieldScalar, FieldScalar]
    edge: Optional[Edge] = None
    field: Field = QQ

    @property
    def is_degenerate(self) -> bool:
        return self.edge is not None

    def to_json(self) -> dict:
        return {
            "point": [self.field.format(x) for x in self.point],
            "edge": list(self.edge) if self.edge else None,
        }


@dataclass(frozen=True)
class RiemannRochReport:
    l: int
    l_omega: int
    deg: int
    g: int

    @property
    def holds(self) -> bool:
        return self.l - self.l_omega == 1 + self.deg - self.g

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "l_omega": self.l_omega,
            "deg": self.deg,
            "g": self.g,
            "holds": self.holds,
        }


@dataclass
class GonalityResult:
    gonality: int
    certificate: LinearSeriesCertificate
    girth_bound: int
    genus_bound: int
    seed: int
    first_cycles_examined: int = 0
    candidates_certified: int = 0
    search_space: str = SEARCH_SPACE_FLAG
    certified: list[LinearSeriesCertificate] = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {
            "gonality": self.gonality,
            "search_space": self.search_space,
            "bounds": {"girth": self.girth_bound, "genus": self.genus_bound},
            "seed": self.seed,
            "first_cycles_examined": self.first_cycles_examined,
            "candidates_certified": self.candidates_certified,
            "certificate": self.certificate.to_json(),
        }


@dataclass
class CliffordResult:
    clifford_index: int
    certificate: LinearSeriesCertificate
    l_omega: int
    candidates: int
    violations: int
    seed: int
    enumerated: int = 0
    search_space: str = SEARCH_SPACE_FLAG

    def to_json(self) -> dict:
        return {
            "clifford_index": self.clifford_index,
            "search_space": self.search_space,
            "l_omega": self.l_omega,
            "candidates": self.candidates,
            "enumerated": self.enumerated,
            "clifford_violations": self.violations,
            "seed": self.seed,
            "certificate": self.certificate.to_json(),
        }
