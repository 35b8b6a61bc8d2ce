"""Run configuration: one JSON document, overridable from the command line."""

from dataclasses import asdict, dataclass, fields, replace
import json

from ..quadrature import QuadratureSpec


@dataclass(frozen=True)
class Config:
    t: float = None               # kernel-test exponent; None picks the per-space default
    aperture: float = 1.0
    radial_levels: int = 20
    angular_base: int = 256
    boundary_margin: float = 2.0 ** -10
    target_rel_err: float = 1e-3
    degree: int = 256
    lattice_r: float = 0.5
    lattice_kappa: float = 0.2
    cap: float = 0.99             # radial cap of the default lattice
    atomic_cap: float = 0.9       # cap of the lattice used for synthesis experiments
    eta_samples: int = 256
    seed: int = 0
    out_dir: str = "reports"

    def __post_init__(self):
        if self.aperture <= 0.5:
            raise ValueError("aperture must exceed 1/2")
        if self.t is not None and not self.t > 0:
            raise ValueError("t must be positive")
        if self.degree < 1:
            raise ValueError("degree must be positive")
        if not 0 < self.cap < 1 or not 0 < self.atomic_cap < 1:
            raise ValueError("lattice caps must lie in (0, 1)")
        self.spec()  # validates the quadrature fields

    def spec(self):
        return QuadratureSpec(radial_levels=self.radial_levels, angular_base=self.angular_base,
                              boundary_margin=self.boundary_margin,
                              target_rel_err=self.target_rel_err)

    def to_dict(self):
        return asdict(self)

    def with_overrides(self, **kw):
        return replace(self, **{k: v for k, v in kw.items() if v is not None})

    @classmethod
    def from_dict(cls, data):
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(unknown)}")
        return cls(**data)

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            text = fh.read()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"config {path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        if not isinstance(data, dict):
            raise ValueError(f"config {path}: expected a JSON object")
        return cls.from_dict(data)
