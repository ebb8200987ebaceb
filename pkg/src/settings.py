"""
Configuration: config/config.yaml validated into pydantic models, then
environment overrides (a .env file is honoured through python-dotenv).
"""

import os
from pathlib import Path
from typing import Optional, Union

import yaml
from dotenv import load_dotenv
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

from algebra.groebner import Budget

ENV_OVERRIDES = {
    "ULRICH_MAX_BASIS_SIZE": ("budget", "max_basis_size"),
    "ULRICH_MAX_REDUCTION_STEPS": ("budget", "max_reduction_steps"),
    "ULRICH_JOBS": ("corpus", "jobs"),
}


class BudgetSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    max_basis_size: int = Field(5000, ge=1)
    max_reduction_steps: int = Field(20_000_000, ge=1)

    def to_budget(self) -> Budget:
        return Budget(max_basis_size=self.max_basis_size, max_reduction_steps=self.max_reduction_steps)


class DefaultSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    a: int = Field(2, ge=2)
    j_max: int = Field(20, ge=2)
    hilbert_check_degree: int = Field(12, ge=0)
    brute_force_bound: int = Field(16, ge=1)


class CorpusSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    directory: str = "corpus"
    manifest: str = "manifest.yaml"
    jobs: int = Field(1, ge=1)


class OutputSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    reports_dir: str = "reports"


class LoggingSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    level: str = "WARNING"
    file: Optional[str] = "logs/ulrich.log"
    console: bool = True


class Settings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    budget: BudgetSettings = BudgetSettings()
    defaults: DefaultSettings = DefaultSettings()
    corpus: CorpusSettings = CorpusSettings()
    output: OutputSettings = OutputSettings()
    logging: LoggingSettings = LoggingSettings()

    # Directory the relative paths above are resolved against.
    root: Path = Path(".")

    def resolve(self, relative: str) -> Path:
        path = Path(relative)
        return path if path.is_absolute() else self.root / path


def load_settings(config_path: Optional[Union[str, Path]] = None, root: Optional[Path] = None) -> Settings:
    """Read the YAML file (if any) and apply ULRICH_* environment overrides."""
    load_dotenv()
    raw = {}
    if config_path is not None:
        with open(config_path, "r", encoding="utf-8") as f:
            raw = yaml.safe_load(f) or {}
    for variable, (section, key) in ENV_OVERRIDES.items():
        value = os.getenv(variable)
        if value:
            raw.setdefault(section, {})[key] = int(value)
            logger.debug(f"{variable} overrides {section}.{key} = {value}")
    if root is None:
        root = Path(config_path).resolve().parent.parent if config_path is not None else Path(".")
    raw["root"] = root
    return Settings.model_validate(raw)
