import logging
import os
from configparser import ConfigParser
from fractions import Fraction
from typing import Optional, Union

from pydantic import ValidationError, field_validator
from sqlmodel import Field, SQLModel

from core.cover import SURANYI_CAP
from core.errors import ConfigError
from core.functions import format_number, parse_rational
from core.laws import Fault
from core.report import LawId
from core.spectral import DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE

logger = logging.getLogger("config")

SETTINGS_FILE = "taucrit.ini"
SETTINGS_SECTION = "taucrit"
REPORT_FORMATS = ("json", "csv", "sqlite")

# Settings field -> environment variable
ENVIRONMENT = {
    "tolerance": "TAUCRIT_TOL",
    "max_iterations": "TAUCRIT_MAX_ITER",
    "suranyi_cap": "TAUCRIT_SURANYI_CAP",
    "database_url": "TAUCRIT_DATABASE_URL",
}


def _describe(error: ValidationError) -> str:
    return "; ".join(
        f"{'.'.join(str(part) for part in item['loc'])}: {item['msg']}"
        for item in error.errors()
    )


class Settings(SQLModel):
    "Process-wide defaults, overridden by taucrit.ini, then by the environment"

    tolerance: float = DEFAULT_TOLERANCE
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    suranyi_cap: int = SURANYI_CAP
    database_url: str = "sqlite:///taucrit.db"

    @field_validator("tolerance")
    @classmethod
    def _positive_tolerance(cls, value: float) -> float:
        if not value > 0:
            raise ValueError("tolerance must be positive")
        return value

    @field_validator("max_iterations", "suranyi_cap")
    @classmethod
    def _positive_count(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be at least 1")
        return value

    @classmethod
    def load(cls, path: Union[str, os.PathLike] = SETTINGS_FILE) -> "Settings":
        values: dict[str, str] = {}

        config = ConfigParser()
        if config.read(path) and config.has_section(SETTINGS_SECTION):
            for key in ENVIRONMENT:
                if config.has_option(SETTINGS_SECTION, key):
                    values[key] = config.get(SETTINGS_SECTION, key)
            logger.debug(f"Read settings from {path}")

        for key, variable in ENVIRONMENT.items():
            if variable in os.environ:
                values[key] = os.environ[variable]

        try:
            return cls.model_validate(values)
        except ValidationError as e:
            raise ConfigError(f"Invalid settings: {_describe(e)}") from e


class SweepConfig(SQLModel):
    "Everything a sweep depends on; jobs and output only decide how it runs and where it goes"

    n_max: int = 7
    r_values: Optional[list[str]] = None
    laws: list[str] = Field(default_factory=lambda: [law.value for law in LawId])
    tol: float = DEFAULT_TOLERANCE
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    suranyi_cap: int = SURANYI_CAP
    corpus_path: Optional[str] = None
    fail_fast: bool = True
    fault: Optional[str] = None
    output: Optional[str] = None
    format: str = "json"
    jobs: int = 1

    @field_validator("n_max")
    @classmethod
    def _order(cls, value: int) -> int:
        if value < 2:
            raise ValueError("n_max must be at least 2")
        return value

    @field_validator("r_values")
    @classmethod
    def _rationals(cls, value: Optional[list[str]]) -> Optional[list[str]]:
        if value is None:
            return None
        try:
            parsed = sorted({parse_rational(item) for item in value})
        except ConfigError as e:
            raise ValueError(str(e)) from e
        if not parsed:
            raise ValueError("at least one r value is required")
        return [format_number(r) for r in parsed]

    @field_validator("laws")
    @classmethod
    def _law_ids(cls, value: list[str]) -> list[str]:
        known = {law.value for law in LawId}
        unknown = [item for item in value if item.upper() not in known]
        if unknown:
            raise ValueError(f"unknown laws {unknown}, choose from {sorted(known)}")
        chosen = {item.upper() for item in value}
        if not chosen:
            raise ValueError("at least one law is required")
        return [law.value for law in LawId if law.value in chosen]

    @field_validator("fault")
    @classmethod
    def _fault_law(cls, value: Optional[str]) -> Optional[str]:
        if value is None:
            return None
        if value.upper() not in {law.value for law in LawId}:
            raise ValueError(f"unknown law {value!r}")
        return value.upper()

    @field_validator("tol")
    @classmethod
    def _tolerance(cls, value: float) -> float:
        if not value > 0:
            raise ValueError("tol must be positive")
        return value

    @field_validator("format")
    @classmethod
    def _format(cls, value: str) -> str:
        if value not in REPORT_FORMATS:
            raise ValueError(f"format must be one of {', '.join(REPORT_FORMATS)}")
        return value

    @field_validator("jobs", "max_iterations", "suranyi_cap")
    @classmethod
    def _at_least_one(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be at least 1")
        return value

    @classmethod
    def build(cls, **values) -> "SweepConfig":
        try:
            return cls.model_validate(values)
        except ValidationError as e:
            raise ConfigError(f"Invalid sweep configuration: {_describe(e)}") from e

    @property
    def rationals(self) -> Optional[list[Fraction]]:
        if self.r_values is None:
            return None
        return [parse_rational(r) for r in self.r_values]

    @property
    def law_ids(self) -> list[LawId]:
        return [LawId(law) for law in self.laws]

    @property
    def fault_injection(self) -> Optional[Fault]:
        return Fault(LawId(self.fault)) if self.fault else None

    def embedded(self) -> dict:
        "The part of the configuration that determines the report's content"

        return self.model_dump(exclude={"jobs", "output"})
