"""Forward and inverse scattering for the 1D Helmholtz equation with
piecewise-constant wave speed."""

from ._core import (
    ComplexTrace,
    FrequencyBand,
    ReconstructionDiagnostics,
    ReconstructionReport,
    WaveSpeedProfile,
    __version__,
    add_noise,
    data_to_reflection,
    detect_period,
    field_at,
    field_on_grid,
    invert,
    layer_strip,
    reflection_response,
    schur_bound,
    synth_trace,
)

__all__ = [
    "ComplexTrace",
    "FrequencyBand",
    "ReconstructionDiagnostics",
    "ReconstructionReport",
    "WaveSpeedProfile",
    "__version__",
    "add_noise",
    "data_to_reflection",
    "detect_period",
    "field_at",
    "field_on_grid",
    "invert",
    "layer_strip",
    "reflection_response",
    "schur_bound",
    "synth_trace",
]
