from dataclasses import dataclass, replace


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class GeomConfig:
    """Every "small enough" radius, tolerance and resolution used by the geometry checks."""

    rho1: float = 0.1
    tol: float = 1e-9
    jacobian_tol: float = 1e-6
    samples: int = 10_000
    ray_samples: int = 2048
    grid_res: int = 96
    seed: int = 0

    def __post_init__(self):
        if not self.rho1 > 0:
            raise ConfigError("rho1 must be positive")
        if not (self.tol > 0 and self.jacobian_tol > 0):
            raise ConfigError("tolerances must be positive")
        if self.samples < 1:
            raise ConfigError("samples must be at least 1")
        if self.ray_samples < 8:
            raise ConfigError("ray_samples must be at least 8")
        if self.grid_res < 8:
            raise ConfigError("grid_res must be at least 8")

    def with_(self, **changes) -> "GeomConfig":
        return replace(self, **changes)
