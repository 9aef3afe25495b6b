"""
Configuration management for Equitable Spectra
"""
import os
from pathlib import Path


class Config:
    """Application configuration"""

    # Default directory for CSV outputs, manifests and cell caches
    OUTPUT_DIR: Path = Path(os.getenv("EQUITABLE_OUTPUT_DIR", "./data/runs"))

    # Logging level
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")

    # Largest graph accepted by the dense eigensolver
    MAX_EIGEN_N: int = int(os.getenv("MAX_EIGEN_N", "16384"))

    # Cavity solver defaults
    CAVITY_TOL: float = float(os.getenv("CAVITY_TOL", "1e-10"))
    CAVITY_MAX_ITER: int = int(os.getenv("CAVITY_MAX_ITER", "100000"))
    CAVITY_DAMPING: float = float(os.getenv("CAVITY_DAMPING", "0.7"))

    # Regularizers: curves for display vs. comparison with the closed form
    EPSILON_PLOT: float = float(os.getenv("EPSILON_PLOT", "1e-3"))
    EPSILON_COMPARE: float = float(os.getenv("EPSILON_COMPARE", "1e-5"))

    # Points of the default spectral grid
    GRID_POINTS: int = int(os.getenv("GRID_POINTS", "401"))

    # Sampler budgets: rejection attempts per component, then swap repair
    SAMPLER_MAX_ATTEMPTS: int = int(os.getenv("SAMPLER_MAX_ATTEMPTS", "1000"))
    SAMPLER_SWAP_FACTOR: int = int(os.getenv("SAMPLER_SWAP_FACTOR", "100"))

    # Threads used for independent batch cells
    WORKERS: int = int(os.getenv("WORKERS", "1"))

    @classmethod
    def get_output_dir(cls) -> Path:
        """Get output directory, creating it if it doesn't exist"""
        cls.OUTPUT_DIR.mkdir(parents=True, exist_ok=True)
        return cls.OUTPUT_DIR

    @classmethod
    def resolve_output_path(cls, name: str | Path) -> Path:
        """
        Resolve where an output file goes.

        Bare file names land in the output directory; anything carrying a
        directory component (absolute or relative) is used as given.

        Args:
            name: File name or path requested by the caller

        Returns:
            Path: Output path with its parent directory created
        """
        path = Path(name)
        if path.is_absolute() or path.parent != Path("."):
            path.parent.mkdir(parents=True, exist_ok=True)
            return path
        return cls.get_output_dir() / path

    @classmethod
    def get_cache_dir(cls, run_name: str) -> Path:
        """Get per-run cell cache directory, creating it if needed"""
        cache_dir = cls.get_output_dir() / ".cache" / run_name
        cache_dir.mkdir(parents=True, exist_ok=True)
        return cache_dir

    @classmethod
    def get_manifest_path(cls, out: Path) -> Path:
        """Manifest sits next to the CSV it describes"""
        return out.with_name(f"{out.stem}.manifest.md")


# Global config instance
config = Config()
