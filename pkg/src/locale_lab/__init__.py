"""Finite locale computations: frames, sublocales, localic maps and adjunction checks."""

from .adjunctions import adjunction_type, check_galois, commutativity_report, dissolution_report
from .catalog import CatalogSpec, MapStream, enumerate_maps, generate_catalog
from .errors import LocaleLabError
from .lattice import FiniteSpace, Frame, downset_frame, frame_check, frame_from_topology, heyting_arrow, lattice_from_order
from .maps import (
    LatticeMap,
    classify_map,
    image_sublocale,
    joyal_tierney,
    left_adjoint,
    localic_preimage,
    open_closed_report,
    skeletal_hierarchy,
)
from .search import search_counterexample
from .sublocales import (
    booleanization,
    closed_sublocale,
    closure_of_subset,
    coframe_ops,
    enumerate_sublocales,
    interior_of_subset,
    is_sublocale,
    least_sublocale_containing,
    open_sublocale,
)
from .theorems import THEOREMS, replay_witness, verify_theorem

__version__ = "0.1.0"

__all__ = [
    "CatalogSpec",
    "FiniteSpace",
    "Frame",
    "LatticeMap",
    "LocaleLabError",
    "MapStream",
    "THEOREMS",
    "adjunction_type",
    "booleanization",
    "check_galois",
    "classify_map",
    "closed_sublocale",
    "closure_of_subset",
    "coframe_ops",
    "commutativity_report",
    "dissolution_report",
    "downset_frame",
    "enumerate_maps",
    "enumerate_sublocales",
    "frame_check",
    "frame_from_topology",
    "generate_catalog",
    "heyting_arrow",
    "image_sublocale",
    "interior_of_subset",
    "is_sublocale",
    "joyal_tierney",
    "lattice_from_order",
    "least_sublocale_containing",
    "left_adjoint",
    "localic_preimage",
    "open_closed_report",
    "open_sublocale",
    "replay_witness",
    "search_counterexample",
    "skeletal_hierarchy",
    "verify_theorem",
]
