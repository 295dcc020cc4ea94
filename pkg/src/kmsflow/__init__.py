"""Thermodynamics of graded branching graphs: partition functions, Markov links,
coherent systems, central path measures and link realization."""
from .errors import KmsflowError
from .flow import (
    FlowSpec,
    PartitionOnly,
    PartitionTable,
    Spectrum,
    apply_gauge,
    classify_vertices,
    edge_partition,
    gauge_check,
    kms_verify,
    rho_spectrum,
    vertex_hamiltonian_spectrum,
    vertex_partition,
)
from .graph import Edge, GradedGraph, Vertex, dim_vertex, enumerate_paths, truncate, validate_graph
from .harmonic import (
    CoherentSystem,
    LevelMeasure,
    boundary_kernel_approx,
    check_harmonic,
    decompose_at_level,
    extend_down,
    state_eval,
)
from .links import (
    DiagonalObservable,
    LinkMatrix,
    conditional_expectation,
    link_adjacent,
    link_matrix,
    link_multi,
    tau_eval,
    trace_link,
    verify_compatibility,
    verify_markov,
)
from .paths import (
    CylinderSpec,
    PathSampler,
    SampledPath,
    cylinder_prob,
    ergodic_experiment,
    sample_down,
    sample_up,
)
from .realize import AbstractLink, Geometric, Uniform, realize_link, verify_realization

__version__ = "0.1.0"
