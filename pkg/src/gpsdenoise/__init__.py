"""GPS position-series denoising: band filtering + incremental RBF networks."""

from .signal import (
    COMPONENTS,
    NoiseConfig,
    PositionSeries,
    SeriesFormatError,
    Sinusoid,
    TrajectoryConfig,
    add_noise,
    generate_trajectory,
    mse,
    read_series,
    write_series,
)
from .bandfilter import (
    BAND_NAMES,
    BandComponent,
    BandSpec,
    decompose,
    default_band_spec,
    read_component,
    select_band,
    write_component,
)
from .rbf import (
    RbfNetwork,
    TrainConfig,
    TrainTrace,
    forward,
    gaussian_activation,
    load_network,
    save_network,
    solve_output_weights,
    train,
)
from .pipeline import (
    BenchmarkResult,
    MethodConfig,
    PlotData,
    build_grid,
    emit_plot_data,
    method_pair,
    run_method,
    run_table,
    write_plot_data,
    write_report,
)

__version__ = "0.1.0"

__all__ = [
    "COMPONENTS",
    "BAND_NAMES",
    "BandComponent",
    "BandSpec",
    "BenchmarkResult",
    "MethodConfig",
    "NoiseConfig",
    "PlotData",
    "PositionSeries",
    "RbfNetwork",
    "SeriesFormatError",
    "Sinusoid",
    "TrainConfig",
    "TrainTrace",
    "TrajectoryConfig",
    "add_noise",
    "build_grid",
    "decompose",
    "default_band_spec",
    "emit_plot_data",
    "forward",
    "gaussian_activation",
    "generate_trajectory",
    "load_network",
    "method_pair",
    "mse",
    "read_component",
    "read_series",
    "run_method",
    "run_table",
    "save_network",
    "select_band",
    "solve_output_weights",
    "train",
    "write_component",
    "write_plot_data",
    "write_report",
    "write_series",
]
