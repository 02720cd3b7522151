"""
Pydantic utility module.

Array-valued model fields are plain `numpy.ndarray` objects in memory and nested lists in JSON. The
annotated aliases below carry the validator/serializer pair, so models only need
`arbitrary_types_allowed`.
"""

import json
from typing import Any, Type, TypeVar

import numpy as np
from pydantic import BaseModel, PlainSerializer, PlainValidator
from typing_extensions import Annotated

from hdp_lpcm.exceptions import ChainFormatError, MissingFileError

M = TypeVar("M", bound=BaseModel)


def _as_float_array(value: Any) -> np.ndarray:
    return np.array(value, dtype=np.float64)


def _as_int_array(value: Any) -> np.ndarray:
    array = np.array(value)

    if array.size > 0 and not np.issubdtype(array.dtype, np.integer):
        if not np.all(np.equal(np.mod(array, 1), 0)):
            raise ValueError("Expected integer entries")

    return array.astype(np.int64)


def _as_binary_array(value: Any) -> np.ndarray:
    array = np.array(value)

    if array.size > 0 and not np.all(np.isin(array, (0, 1))):
        raise ValueError("Entries must be exactly 0 or 1")

    return array.astype(np.uint8)


def _to_list(value: np.ndarray) -> list:
    return value.tolist()


FloatArray = Annotated[np.ndarray, PlainValidator(_as_float_array), PlainSerializer(_to_list, when_used="json")]
IntArray = Annotated[np.ndarray, PlainValidator(_as_int_array), PlainSerializer(_to_list, when_used="json")]
BinaryArray = Annotated[np.ndarray, PlainValidator(_as_binary_array), PlainSerializer(_to_list, when_used="json")]


def parse_model(model_type: Type[M], data: Any) -> M:
    return model_type.model_validate(data)


def get_model_dump(model: BaseModel, *args, **kwargs):
    return model.model_dump(*args, **kwargs)


def get_model_dump_json(model: BaseModel, *args, **kwargs) -> str:
    return model.model_dump_json(*args, **kwargs)


def load_model_file(model_type: Type[M], path: str) -> M:
    """
    Loads a JSON document from `path` and validates it against `model_type`.

    Args:
        model_type (Type[BaseModel]): Model class to validate against.
        path (str): Path to a JSON file.

    Raises:
        MissingFileError: If the file does not exist.
        ChainFormatError: If the file is not valid JSON.

    Returns:
        BaseModel: The validated model.
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError as exc:
        raise MissingFileError(path) from exc
    except json.JSONDecodeError as exc:
        raise ChainFormatError(path, str(exc)) from exc

    return parse_model(model_type, data)
