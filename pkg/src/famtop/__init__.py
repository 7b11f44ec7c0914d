"""Family-open, Scott and Isbell topologies on finite function spaces."""

from .errors import FamtopError, SizeGuardExceeded
from .finite_space import (
    FiniteSpace,
    FunctionSpaceTopology,
    PointMap,
    ProbeCatalog,
    SetFamilyTopology,
    chain_space,
    enumerate_continuous_maps,
    enumerate_probe_catalog,
    is_continuous,
    is_corecompact,
    is_T0,
    point_space,
    product_space,
    sierpinski,
    validate_topology,
)
from .family_open import LevelChain, build_family_open_topology, carrier, o_level, phi, subbasic_set
from .function_space import characteristic_map, check_h_properties, h_map, isbell_topology, t0_chain_build
from .guards import Guards, get_guards, use_guards
from .topology_algebra import Poset, generate_topology, inclusion_poset, is_scott_continuous, scott_topology
from .tower import induced_next_topology, stabilization_search, tower_containment
from .verification import (
    check_jointly_characterization,
    check_phi_scott_implies_splitting,
    check_splitting_characterization,
    greatest_splitting_bruteforce,
    is_A_jointly_continuous,
    is_A_splitting,
)

__version__ = "0.1.0"
