"""
JSON-Formate für fsopkit
Posets, Darstellungen, FS^op-Präsentationen, symmetrische Funktionen und DFAs
"""
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Type, TypeVar, Union

import structlog
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from fsopkit.domain.exceptions import InvalidInputError
from fsopkit.domain.models.automata import Dfa, DfaPayload
from fsopkit.domain.models.fsop import FsopPresentation
from fsopkit.domain.models.linalg import RatMatrix, as_rat, format_rat
from fsopkit.domain.models.poset import FinitePoset
from fsopkit.domain.models.rep import PosetRep
from fsopkit.domain.models.symfunc import Partition, SymFunc
from fsopkit.domain.services.bar_construction import rep_from_cover_maps

logger = structlog.get_logger(__name__)

PayloadT = TypeVar("PayloadT", bound=BaseModel)
Source = Union[str, Path, Mapping[str, Any]]


# =====================================================
# Payload-Modelle
# =====================================================

class PosetPayload(BaseModel):
    """{"size": n, "covers": [[a, b], …], "top": t?, "labels": […]?}"""
    model_config = ConfigDict(from_attributes=True, frozen=True)

    size: int = Field(ge=1)
    covers: List[Tuple[int, int]] = Field(default_factory=list)
    top: Optional[int] = None
    labels: List[str] = Field(default_factory=list)

    def to_poset(self) -> FinitePoset:
        return FinitePoset.from_covers(self.size, self.covers, self.top, self.labels)


class CoverMapPayload(BaseModel):
    model_config = ConfigDict(from_attributes=True, frozen=True, populate_by_name=True)

    source: int = Field(alias="from")
    target: int = Field(alias="to")
    matrix: List[List[Union[int, str]]] = Field(default_factory=list)


class RepPayload(BaseModel):
    """{"poset": {…}, "dims": [...], "maps": [{"from": p, "to": q, "matrix": [[…]]}]}"""
    model_config = ConfigDict(from_attributes=True, frozen=True)

    poset: PosetPayload
    dims: List[int]
    maps: List[CoverMapPayload] = Field(default_factory=list)

    @field_validator("dims")
    @classmethod
    def validate_dims(cls, v: List[int]) -> List[int]:
        if any(d < 0 for d in v):
            raise ValueError("Dimensionen müssen ≥ 0 sein")
        return v

    def to_rep(self) -> PosetRep:
        poset = self.poset.to_poset()
        if len(self.dims) != poset.size:
            raise InvalidInputError(f"{len(self.dims)} Dimensionen für {poset.size} Elemente")
        cover_maps: Dict[Tuple[int, int], RatMatrix] = {}
        for entry in self.maps:
            rows, cols = self.dims[entry.target], self.dims[entry.source]
            if rows == 0 or cols == 0:
                matrix = RatMatrix.zeros(rows, cols)
            else:
                matrix = RatMatrix.from_rows([[as_rat(v) for v in row] for row in entry.matrix], cols)
            if matrix.shape != (rows, cols):
                raise InvalidInputError(
                    f"Abbildung ({entry.source}, {entry.target}) hat Form {matrix.shape}, erwartet {(rows, cols)}"
                )
            cover_maps[(entry.source, entry.target)] = matrix
        for p, q in poset.covers():
            if (p, q) not in cover_maps and (self.dims[p] == 0 or self.dims[q] == 0):
                cover_maps[(p, q)] = RatMatrix.zeros(self.dims[q], self.dims[p])
        return rep_from_cover_maps(poset, self.dims, cover_maps)


class SymFuncPayload(BaseModel):
    """{"truncation": N, "coeffs": {"2,1": "1/2", "∅": 1}}"""
    model_config = ConfigDict(from_attributes=True, frozen=True)

    truncation: int = Field(ge=0)
    coeffs: Dict[str, Union[int, str]] = Field(default_factory=dict)

    def to_symfunc(self) -> SymFunc:
        return SymFunc(
            self.truncation,
            {Partition.parse(key): as_rat(value) for key, value in self.coeffs.items()},
        )

    @classmethod
    def from_symfunc(cls, f: SymFunc) -> "SymFuncPayload":
        return cls(
            truncation=f.truncation_degree,
            coeffs={partition_key(k): format_rat(v) for k, v in f.items()},
        )


# =====================================================
# Lesen
# =====================================================

def partition_key(p: Partition) -> str:
    return ",".join(str(part) for part in p) if p else "∅"


def read_json(source: Source) -> Mapping[str, Any]:
    """Datei, JSON-Text oder bereits gelesenes Objekt"""
    if isinstance(source, Mapping):
        return source
    text = str(source)
    path = Path(text) if isinstance(source, Path) or not text.lstrip().startswith(("{", "[")) else None
    try:
        if path is not None:
            text = path.read_text(encoding="utf-8")
        data = json.loads(text)
    except OSError as exc:
        raise InvalidInputError(f"Datei {path} nicht lesbar: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"Kein gültiges JSON: {exc.msg} (Zeile {exc.lineno})") from exc
    if not isinstance(data, dict):
        raise InvalidInputError("JSON-Objekt erwartet")
    return data


def _validate(model: Type[PayloadT], source: Source) -> PayloadT:
    data = read_json(source)
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        error = exc.errors()[0]
        location = ".".join(str(part) for part in error["loc"]) or model.__name__
        raise InvalidInputError(f"{model.__name__}: {location}: {error['msg']}") from exc


def load_poset(source: Source) -> FinitePoset:
    return _validate(PosetPayload, source).to_poset()


def load_rep(source: Source) -> PosetRep:
    rep = _validate(RepPayload, source).to_rep()
    logger.debug("rep_loaded", poset_size=rep.poset.size, total_dim=rep.total_dim)
    return rep


def load_presentation(source: Source) -> FsopPresentation:
    presentation = _validate(FsopPresentation, source)
    logger.debug(
        "presentation_loaded",
        generators=list(presentation.generator_degrees),
        relations=len(presentation.relations),
    )
    return presentation


def load_symfunc(source: Source) -> SymFunc:
    return _validate(SymFuncPayload, source).to_symfunc()


def load_dfa(source: Source) -> Dfa:
    return _validate(DfaPayload, source).to_dfa()


# =====================================================
# Schreiben
# =====================================================

def to_jsonable(value: Any) -> Any:
    """Fractions als "num/den", Partitionen als Schlüssel, Tupel als Listen"""
    if isinstance(value, Fraction):
        return format_rat(value)
    if isinstance(value, BaseModel):
        return to_jsonable(value.model_dump(mode="json", by_alias=True))
    if isinstance(value, SymFunc):
        return SymFuncPayload.from_symfunc(value).model_dump()
    if isinstance(value, Dfa):
        return DfaPayload.from_dfa(value).model_dump()
    if isinstance(value, Mapping):
        return {
            (partition_key(k) if isinstance(k, Partition) else str(k)): to_jsonable(v)
            for k, v in value.items()
        }
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [to_jsonable(v) for v in value]
        return sorted(items, key=str) if isinstance(value, (set, frozenset)) else items
    return value


def dumps_canonical(value: Any) -> str:
    """Sortierte Schlüssel, feste Einrückung"""
    return json.dumps(to_jsonable(value), sort_keys=True, indent=2, ensure_ascii=False)
