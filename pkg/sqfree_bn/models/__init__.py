from sqfree_bn.models.certificate import (
    CliffordResult,
    CycleClass,
    GaugeNormalForm,
    GonalityResult,
    LinearSeriesCertificate,
    RiemannRochReport,
)
from sqfree_bn.models.complex import Edge, Face, SimplicialComplex, SimplicialGraph
from sqfree_bn.models.cycle import CycleVector
from sqfree_bn.models.field import QQ, Field, PrimeField, RationalField, parse_field
from sqfree_bn.models.matrix import Matrix
from sqfree_bn.models.module import ModuleHom, SquareFreeModule
