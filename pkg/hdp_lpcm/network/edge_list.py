"""
Reading and writing edge lists.

Records are `t,i,j[,w]` with 1-based time indices, separated by commas or whitespace. A header line is
detected by a non-numeric first field and everything after a `#` is a comment.
"""

import re
from typing import IO, Dict, Iterable, List, Optional, Tuple, Union

import numpy as np

from hdp_lpcm.exceptions import (
    EdgeListParseError,
    EmptyNetworkError,
    MissingFileError,
    RangeError,
    SelfLoopError,
)
from hdp_lpcm.logger import logger
from hdp_lpcm.network.dynamic_network import DynamicNetwork

FIELD_SEPARATOR = re.compile(r"[,\s]+")
EdgeRecord = Tuple[int, int, str, str, float]


def _is_number(field: str) -> bool:
    try:
        float(field)
    except ValueError:
        return False
    return True


def _is_integer(field: str) -> bool:
    try:
        value = float(field)
    except ValueError:
        return False
    return bool(np.isfinite(value)) and value == int(value)


def _parse_int(field: str, what: str, line_number: int) -> int:
    try:
        value = float(field)
    except ValueError as exc:
        raise EdgeListParseError(line_number, f"{what} {field!r} is not numeric") from exc

    if not np.isfinite(value) or value != int(value):
        raise EdgeListParseError(line_number, f"{what} {field!r} is not an integer")

    return int(value)


def _parse_records(source: Iterable[Union[bytes, str]]) -> List[EdgeRecord]:
    records: List[EdgeRecord] = []
    seen_data = False

    for line_number, raw in enumerate(source, start=1):
        if isinstance(raw, bytes):
            try:
                line = raw.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise EdgeListParseError(line_number, "invalid UTF-8") from exc
        else:
            line = raw
        line = line.split("#", 1)[0].strip()

        if not line:
            continue

        fields = [field for field in FIELD_SEPARATOR.split(line) if field]

        if not seen_data and not _is_number(fields[0]):
            logger.debug("Skipping header line %d", line_number)
            seen_data = True
            continue
        seen_data = True

        if len(fields) not in (3, 4):
            raise EdgeListParseError(line_number, f"expected 3 or 4 fields, got {len(fields)}")

        t = _parse_int(fields[0], "time", line_number)
        actor_a, actor_b = fields[1], fields[2]
        weight = 1.0

        if len(fields) == 4:
            try:
                weight = float(fields[3])
            except ValueError as exc:
                raise EdgeListParseError(line_number, f"weight {fields[3]!r} is not numeric") from exc
            if not np.isfinite(weight):
                raise EdgeListParseError(line_number, f"weight {fields[3]!r} is not finite")

        if actor_a == actor_b or (
            _is_integer(actor_a) and _is_integer(actor_b) and float(actor_a) == float(actor_b)
        ):
            raise SelfLoopError(line_number)

        records.append((line_number, t, actor_a, actor_b, weight))

    return records


def _resolve_actors(
    records: List[EdgeRecord], n: Optional[int]
) -> Tuple[Dict[str, int], int, Optional[List[str]]]:
    identifiers: List[str] = []
    seen = set()
    for _, _, actor_a, actor_b, _ in records:
        for actor in (actor_a, actor_b):
            if actor not in seen:
                seen.add(actor)
                identifiers.append(actor)

    numeric = all(_is_integer(actor) for actor in identifiers)

    if numeric:
        index = {actor: int(float(actor)) - 1 for actor in identifiers}
        n_actors = n if n is not None else max((value + 1 for value in index.values()), default=0)

        for line_number, _, actor_a, actor_b, _ in records:
            for actor in (actor_a, actor_b):
                if index[actor] < 0 or index[actor] >= n_actors:
                    raise RangeError("actor", actor, n_actors, line_number)

        return index, n_actors, None

    index = {actor: position for position, actor in enumerate(identifiers)}
    n_actors = n if n is not None else len(identifiers)

    if len(identifiers) > n_actors:
        line_number = next(
            line for line, _, actor_a, actor_b, _ in records if max(index[actor_a], index[actor_b]) >= n_actors
        )
        raise RangeError("actor count", len(identifiers), n_actors, line_number)

    names = identifiers + [str(position + 1) for position in range(len(identifiers), n_actors)]
    return index, n_actors, names


def load_edge_list(
    source: Iterable[Union[bytes, str]], n: Optional[int] = None, T: Optional[int] = None  # pylint: disable=invalid-name
) -> DynamicNetwork:
    """
    Builds a dynamic network from an edge list.

    Integer actor identifiers are used as 1-based indices. As soon as one identifier is not an integer,
    all actors are indexed by order of first appearance and the identifiers become `actor_names`. Records
    with a weight `<= 0` register their actors but do not add an edge, positive weights become 1.

    Args:
        source (Iterable[bytes | str]): A byte stream, text stream or any iterable of lines.
        n (int, optional): Declared number of actors. Unmentioned actors become isolates.
        T (int, optional): Declared number of time steps. Unmentioned times become empty slices.

    Raises:
        EdgeListParseError: If a record is malformed.
        SelfLoopError: If a record connects an actor to itself.
        RangeError: If a time or actor is outside of the declared bounds.
        EmptyNetworkError: If neither records nor sizes define at least one actor and time step.

    Returns:
        DynamicNetwork: The symmetric binary network.
    """
    records = _parse_records(source)

    for line_number, t, _, _, _ in records:
        if t < 1 or (T is not None and t > T):
            raise RangeError("time", t, T if T is not None else max(t, 1), line_number)

    index, n_actors, names = _resolve_actors(records, n)
    n_times = T if T is not None else max((record[1] for record in records), default=0)

    if n_actors < 1 or n_times < 1:
        raise EmptyNetworkError()

    adjacency = np.zeros((n_times, n_actors, n_actors), dtype=np.uint8)
    for _, t, actor_a, actor_b, weight in records:
        if weight > 0:
            i, j = index[actor_a], index[actor_b]
            adjacency[t - 1, i, j] = 1
            adjacency[t - 1, j, i] = 1

    logger.debug("Loaded %d records into a network with n=%d, T=%d", len(records), n_actors, n_times)
    return DynamicNetwork(adjacency=adjacency, actor_names=names)


def read_edge_list(path: str, n: Optional[int] = None, T: Optional[int] = None) -> DynamicNetwork:  # pylint: disable=invalid-name
    """
    Opens `path` in binary mode and passes it to `load_edge_list`.
    """
    try:
        with open(path, "rb") as f:
            return load_edge_list(f, n=n, T=T)
    except FileNotFoundError as exc:
        raise MissingFileError(path) from exc


def export_edge_list(net: DynamicNetwork, sink: IO[str]) -> None:
    """
    Writes every edge once per unordered pair, sorted by `(t, i, j)` with `i < j`, using 1-based indices.
    Actor names are not written, they are persisted separately.

    Args:
        net (DynamicNetwork): Network to export.
        sink (IO[str]): Text stream to write to.
    """
    sink.write("t,i,j\n")
    times, rows, cols = np.nonzero(np.triu(net.adjacency, k=1))

    for t, i, j in zip(times.tolist(), rows.tolist(), cols.tolist()):
        sink.write(f"{t + 1},{i + 1},{j + 1}\n")


def write_edge_list(net: DynamicNetwork, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        export_edge_list(net, f)
