"""FDTD simulator for reconfigurable surface-wave pathways.

Scenes describe a grounded dielectric slab with rows of conductor-
fillable bars forming a waveguiding pathway; the solver runs the
experiment in full 3D or in a fast 2D effective-index mode and records
probe phasors, confinement metrics and field rasters.
"""

__version__ = "0.1.0"

from .errors import (BlowUpError, ResolutionError, ResourceRefusal, RswpError,
                     SceneError)
from .harness import (ScenarioResult, compare, leakage_floor,
                      run_paper_scenario, turn_loss)
from .lattice import BarLattice, FillPattern, WallMode, gen_l_turn, gen_straight
from .materials import Material, MaterialKind, UpdateCoeffs, lossy_coeffs
from .oracles import (DispersionSolution, impedance_wave_decay, skin_depth,
                      slab_mode_loss, spreading_db, surface_impedance_slab,
                      tm0_grounded_slab)
from .scene import (Probe, ProbeSet, RswpScene, Slab, SolverSettings,
                    Transducer, gen_probe_lines, load_scene, preset_scene,
                    scene_from_dict, scene_to_dict)
from .solver import (BoundarySpec, RunRecord, Simulation, SliceSpec, StopRule,
                     cfl_dt, run)
from .sources import SourceSpec, aperture_waveform, mode_profile
from .probes import (ProbeRecord, dft_accumulate, finalize_phasors,
                     steady_state_check, to_db)
from .io import FieldSlice, read_probe_csv, read_slice, write_probe_csv, write_slice
from .voxelize import MaterialGrid, voxelize
from .cpml import CpmlSpec, cpml_profile

__all__ = [
    "BarLattice", "BlowUpError", "BoundarySpec", "CpmlSpec",
    "DispersionSolution", "FieldSlice", "FillPattern", "Material",
    "MaterialGrid", "MaterialKind", "Probe", "ProbeRecord", "ProbeSet",
    "ResolutionError", "ResourceRefusal", "RswpError", "RswpScene",
    "RunRecord", "ScenarioResult", "SceneError", "Simulation", "Slab",
    "SliceSpec", "SolverSettings", "SourceSpec", "StopRule", "Transducer",
    "UpdateCoeffs", "WallMode", "aperture_waveform", "cfl_dt", "compare",
    "cpml_profile", "dft_accumulate", "finalize_phasors", "gen_l_turn",
    "gen_probe_lines", "gen_straight", "impedance_wave_decay",
    "leakage_floor", "load_scene", "lossy_coeffs", "mode_profile",
    "preset_scene", "read_probe_csv", "read_slice", "run",
    "run_paper_scenario", "scene_from_dict", "scene_to_dict", "skin_depth",
    "slab_mode_loss", "spreading_db", "steady_state_check",
    "surface_impedance_slab", "tm0_grounded_slab", "to_db", "turn_loss",
    "voxelize", "write_probe_csv", "write_slice",
]
