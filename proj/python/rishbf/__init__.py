# SPDX-License-Identifier: Apache-2.0
"""Link-level simulator for RIS-aided angular-based hybrid beamforming."""

from ._rishbf import (
    AngularCluster,
    Geometry,
    LinkBudget,
    Method,
    PowerAllocation,
    Precoder,
    QuantizedPair,
    RankDeficientError,
    ResultRow,
    RfBeamformer,
    ScenarioConfig,
    SwarmConfig,
    SwarmResult,
    UpaSize,
    achievable_rate,
    bb_precoder,
    build_rf_beamformer,
    constant_phases,
    design_baseband_rate,
    direction_coeffs,
    effective_channel,
    exhaustive_search,
    format_results,
    load_scenario,
    mmse_combiner,
    noise_power_watt,
    parse_scenario_text,
    path_loss,
    phase_response_vector,
    pso_optimize,
    quantized_grid,
    random_phases,
    resolve_geometry,
    run_sweep,
    run_trial,
    baseline_scenario,
    water_filling,
    write_results,
)

__all__ = [name for name in dir() if not name.startswith("_")]
