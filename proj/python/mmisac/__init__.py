# SPDX-License-Identifier: Apache-2.0
# Copyright (C) 2026 The mmisac authors
"""Dual-band mmWave ISAC channel sounding emulator and analysis toolkit."""

from ._core import (
    ConfigError,
    ConfigMismatch,
    DegenerateConfiguration,
    DomainError,
    EmptyProfile,
    Error,
    GeometryError,
    IOError,
    ParseError,
    __version__,
    band_config,
    beam_angles,
    cir_to_ctf,
    compute_adps,
    compute_angular_spread,
    compute_pap,
    compute_pdp,
    compute_rms_ds,
    ctf_to_cir,
    default_scene_json,
    first_fresnel_radius,
    fit_rigid_transform,
    measurement_catalog,
    normalize_scenario_code,
    parse_scenario_code,
    schedule_csv,
    synthesize,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
