"""
Pydantic validation models for the configuration of every command.
"""

import os
from typing import List, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from hdp_lpcm.commands.utils.defaults import DEFAULT_CHAIN_FORMAT, DEFAULT_MAX_LAG, DEFAULT_OUT_DIR
from hdp_lpcm.sampling import SamplerConfig
from hdp_lpcm.simulation import SimSpec


def _check_file(path: str) -> str:
    if not os.path.isfile(path):
        raise ValueError(f"File {path} does not exist")
    return path


class PreprocessingConfig(BaseModel):
    """
    Declared sizes of the edge list and the optional window aggregation and degree filter, applied in
    this order.
    """

    n: Optional[int] = Field(default=None, ge=1)
    T: Optional[int] = Field(default=None, ge=1)
    window: Optional[int] = Field(default=None, ge=1)
    min_degree: Optional[int] = Field(default=None, ge=0)


class RunConfig(BaseModel):
    """
    Fields shared by every command.
    """

    out: str = DEFAULT_OUT_DIR


class SimulateConfig(RunConfig):
    spec: SimSpec
    preset: Optional[str] = None
    replications: int = Field(default=1, ge=1)


class FitConfig(RunConfig):
    input: str
    sampler: SamplerConfig = Field(default_factory=SamplerConfig)
    preprocessing: PreprocessingConfig = Field(default_factory=PreprocessingConfig)
    chains: int = Field(default=1, ge=1)
    chain_format: Literal["jsonl", "bin"] = DEFAULT_CHAIN_FORMAT
    resume: bool = False

    @field_validator("input")
    @classmethod
    def _validate_input(cls, value: str) -> str:
        return _check_file(value)


class ChainInputConfig(RunConfig):
    """
    Commands reading one or more chain files. Samples of several chains are pooled.
    """

    chains: List[str] = Field(min_length=1)

    @field_validator("chains")
    @classmethod
    def _validate_chains(cls, value: List[str]) -> List[str]:
        return [_check_file(path) for path in value]


class SummarizeConfig(ChainInputConfig):
    network: Optional[str] = None

    @field_validator("network")
    @classmethod
    def _validate_network(cls, value: Optional[str]) -> Optional[str]:
        return None if value is None else _check_file(value)


class EvaluateConfig(ChainInputConfig):
    network: str
    truth: str

    @model_validator(mode="after")
    def _validate_paths(self) -> "EvaluateConfig":
        _check_file(self.network)
        _check_file(self.truth)
        return self


class DiagnoseConfig(ChainInputConfig):
    max_lag: int = Field(default=DEFAULT_MAX_LAG, ge=0)
