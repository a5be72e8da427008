"""Chaos classification for weighted generalized shifts over finite commutative rings."""
from .classify import ChaosReport, Verdict, classify_all, classify_li_yorke, classify_onto_dpp, classify_sensitive
from .classify import classify_strongly_sensitive, classify_transitive_devaney, stability_certificate
from .dynamics import (
    Branch, Cylinder, FiniteSet, FiniteSupport, TriangularIndicator, apply_shift, config_eval, iterate_coord,
    weight_product,
)
from .oracle import bf_properties, bf_prox_asym, state_space, sweep_equivalence
from .ring import Ring, RingSpec, make_ring
from .system import (
    System, classify_orbit, cofinite_system, finite_system, full_shift, integer_system, is_injective,
    orbit_weight_profile, phi_apply,
)
from .witness import (
    nonasym_times, periodic_point, preimage, prox_schedule, scrambled_pair, separation_witness, transit_witness,
)

__version__ = "0.1.0"
