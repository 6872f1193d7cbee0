"""
qnetctl Core Modules

Channel planning, link simulation, scoring, pump sweeps and stability
analysis for wavelength-multiplexed entanglement distribution networks.
"""

__version__ = "0.1.0"

__all__ = [
    "cli",
    "config",
    "grid",
    "io",
    "physics",
    "pipeline",
    "scoring",
    "stability",
    "sweep",
    "topology",
]
