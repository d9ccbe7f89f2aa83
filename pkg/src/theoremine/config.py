"""Pipeline configuration: tolerance table, detector parameters, caps.

Pixel tolerances are stored at a reference canvas size (``base_size``, 400 px
by default) and scaled by min(W, H) / base_size when applied to a W x H
image.  The angle tolerance ``tau_a`` and the numeric-check tolerance
``tau_C`` never scale: angles and relative residuals are size-invariant.

The config file is a flat ``key = value`` table, one entry per line;
``#`` starts a comment.  Values parse as int, float, or bool (true/false).
Keys use dotted sections, e.g. ``tolerances.tau_c = 3``.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field


@dataclass
class Tolerances:
    """Tolerance table at base_size scale; all entries strictly positive."""

    tau_l: float = 10.0      # endpoint gap for segment merging (px)
    tau_c: float = 3.0       # circle-hugging test for artifact removal (px)
    delta: float = 5.0       # boundary-point margin (px)
    tau_p: float = 5.0       # identical-point identification (px)
    tau_pl: float = 4.5      # point-on-line incidence (px)
    tau_pc: float = 4.5      # point-on-circle incidence (px)
    tau_d: float = 5.0       # distance-equality (px)
    tau_a: float = 0.08      # angle tolerance (rad); never scales
    tau_C: float = 1e-6      # relative numeric-check tolerance; never scales
    base_size: float = 400.0

    _PIXEL_FIELDS = ("tau_l", "tau_c", "delta", "tau_p", "tau_pl", "tau_pc", "tau_d")

    def validate(self) -> None:
        for f in dataclasses.fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"tolerance {f.name} must be positive")

    def scaled(self, width: int, height: int) -> "Tolerances":
        """Pixel tolerances adjusted to the image size; tau_a, tau_C fixed."""
        k = min(width, height) / self.base_size
        out = dataclasses.replace(self)
        for name in self._PIXEL_FIELDS:
            setattr(out, name, getattr(self, name) * k)
        return out


@dataclass
class HoughParams:
    """Detector knobs, tuned on the synthetic fixture corpus."""

    circle_dp: float = 1.0           # accumulator resolution divisor
    circle_canny_high: float = 120.0
    circle_votes: int = 60
    circle_min_dist: float = 40.0
    circle_min_radius: int = 10
    circle_max_radius: int = 0       # 0: up to min(W, H)
    smooth_sigma: float = 1.5        # at base_size; scales with the image
    seg_rho: float = 1.0
    seg_theta_deg: float = 1.0
    seg_votes: int = 30
    seg_min_length: float = 25.0     # at base_size; scales
    seg_max_gap: float = 5.0


@dataclass
class ProverParams:
    trials: int = 10                 # rule-out instantiation rounds
    param_range: int = 50            # random integer parameters in [-range, range]
    retry_cap: int = 25              # fresh parameter draws per trial
    initial_eps: float = 1e-9        # relative initial-vanishing threshold
    root_precision: float = 1e-12
    max_terms: int = 200_000         # charset term cap before Undetermined
    max_degree: int = 40
    wlog: bool = False


@dataclass
class PipelineConfig:
    tolerances: Tolerances = field(default_factory=Tolerances)
    hough: HoughParams = field(default_factory=HoughParams)
    prover: ProverParams = field(default_factory=ProverParams)
    template_threshold: float = 0.90
    weight_min: int = 3              # characteristic-point weight threshold
    cross_vertex_angles: bool = False
    seed: int = 0
    jobs: int = 1

    def validate(self) -> None:
        self.tolerances.validate()
        if not 0 < self.template_threshold <= 1:
            raise ValueError("template_threshold must be in (0, 1]")
        if self.prover.trials < 1:
            raise ValueError("trials must be >= 1")


def _parse_value(text: str):
    text = text.strip()
    if text.lower() in ("true", "false"):
        return text.lower() == "true"
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text.strip("\"'")


def parse_config(text: str) -> PipelineConfig:
    """Parse the flat key = value grammar into a validated PipelineConfig."""
    cfg = PipelineConfig()
    sections = {
        "tolerances": cfg.tolerances,
        "hough": cfg.hough,
        "prover": cfg.prover,
    }
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key = value, got {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip()
        value = _parse_value(val)
        if "." in key:
            section, _, name = key.partition(".")
            target = sections.get(section)
            if target is None or not hasattr(target, name):
                raise ValueError(f"line {lineno}: unknown key {key!r}")
            setattr(target, name, type(getattr(target, name))(value))
        else:
            if not hasattr(cfg, key) or key in sections:
                raise ValueError(f"line {lineno}: unknown key {key!r}")
            setattr(cfg, key, type(getattr(cfg, key))(value))
    cfg.validate()
    return cfg


def load_config(path: str | None = None) -> PipelineConfig:
    """Config from a file, or embedded defaults when path is None."""
    if path is None:
        cfg = PipelineConfig()
        cfg.validate()
        return cfg
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())
