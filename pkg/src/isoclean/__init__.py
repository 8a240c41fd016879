"""Small isosurface component removal on regular scalar grids.

The grid is relabeled rather than the mesh: small connected components of
the superlevel (``f >= iso``) or sublevel (``f <= iso``) vertex graphs are
found with union-find, their values are moved across the isovalue, and
Marching Cubes on the result no longer produces their surface pieces.
"""
from isoclean._backend import name as backend_name
from isoclean.dsu import DisjointSetForest
from isoclean.filtering import (
    CombinedOutcome,
    FilterOutcome,
    filter_both,
    filter_components,
    reassign_value,
    reassign_values,
)
from isoclean.isosurface import (
    CubeCensus,
    TriangleMesh,
    count_cubes,
    marching_cubes,
    mesh_component_count,
    write_mesh,
)
from isoclean.labeling import ComponentLabeling, FilterMode, label_components, small_components
from isoclean.report import StatsRow, emit, run_case, sweep_isovalues, sweep_thresholds
from isoclean.volume import (
    SampleKind,
    VolumeGrid,
    load_nhdr,
    load_raw,
    load_volume,
    store_nhdr,
    store_raw,
)

__version__ = "0.1.0"
