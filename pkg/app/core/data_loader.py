"""
Data Loader
===========
Loads fans and subdivisions from JSON files and encodes every result
type back to JSON.

Fan JSON:
    {"ambient_dim": d, "rays": [[...]], "cones": [[ray indices]], "degree_map": [[...]]?}
Subdivision JSON:
    {"coarse": <fan object | path>, "fine": <fan object | path>}
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from .config_manager import get_config
from .degree_map import DegreeMap
from .errors import FanSheafError, ParseError
from .fan import Fan, build_fan
from .logging_utils import get_logger
from .ncpoly import NCPolynomial, TensorNCPolynomial
from .polynomials import InvariantPolynomial
from .subdivision import FanSubdivision, build_subdivision

logger = get_logger('data_loader')

Source = Union[str, Path, Dict]


# =============================================================================
# UTILITIES
# =============================================================================

def _line_of(text: str, key: str) -> Optional[int]:
    """1-based line of the first occurrence of a JSON key."""
    needle = f'"{key}"'
    for number, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return number
    return None


def _require_int_rows(value: Any, what: str, source: Optional[str], line: Optional[int]) -> List[List[int]]:
    if not isinstance(value, list) or not all(isinstance(row, list) for row in value):
        raise ParseError(f"'{what}' must be a list of lists", source, line)
    rows = []
    for row in value:
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in row):
            raise ParseError(f"'{what}' entries must be integers", source, line)
        rows.append([int(x) for x in row])
    return rows


# =============================================================================
# LOADED DATA
# =============================================================================

@dataclass
class LoadedFan:
    """A fan with its optional user degree map and where it came from."""
    fan: Fan
    degree_map: Optional[DegreeMap] = None
    source: Optional[str] = None


@dataclass
class LoadedSubdivision:
    subdivision: FanSubdivision
    coarse: LoadedFan
    fine: LoadedFan

    @property
    def degree_map(self) -> Optional[DegreeMap]:
        return self.coarse.degree_map


# =============================================================================
# FAN LOADER
# =============================================================================

class FanLoader:
    """Parse fan and subdivision documents from files or inline dicts."""

    def __init__(self, certify: bool = True, strict: bool = False):
        self.certify = certify
        self.strict = strict
        self.loaded: List[str] = []

    def _read(self, path: Path) -> Tuple[Dict, str]:
        try:
            text = path.read_text()
        except OSError as e:
            raise ParseError(f"cannot read file: {e.strerror or e}", str(path))
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e.msg}", str(path), e.lineno)
        if not isinstance(data, dict):
            raise ParseError("top level must be a JSON object", str(path), 1)
        self.loaded.append(str(path))
        return data, text

    def load_fan(self, source: Source, label: Optional[str] = None, base_dir: Optional[Path] = None) -> LoadedFan:
        """Fan (and optional degree_map) from a path or an already parsed dict."""
        if isinstance(source, dict):
            data, text, name = source, '', None
        else:
            path = Path(source)
            if base_dir is not None and not path.is_absolute():
                path = base_dir / path
            data, text = self._read(path)
            name = str(path)
            label = label or path.stem

        for key in ('ambient_dim', 'rays', 'cones'):
            if key not in data:
                raise ParseError(f"missing field '{key}'", name, 1 if text else None)
        ambient = data['ambient_dim']
        if not isinstance(ambient, int) or isinstance(ambient, bool) or ambient < 0:
            raise ParseError("'ambient_dim' must be a nonnegative integer", name, _line_of(text, 'ambient_dim'))
        rays = _require_int_rows(data['rays'], 'rays', name, _line_of(text, 'rays'))
        cones = _require_int_rows(data['cones'], 'cones', name, _line_of(text, 'cones'))

        try:
            fan = build_fan(rays, cones, ambient_dim=ambient, certify=self.certify, strict=self.strict,
                            label=label or data.get('label'))
        except ParseError as e:
            raise ParseError(e.detail, name, _line_of(text, 'cones'))
        except FanSheafError as e:
            if name is not None:
                e.context.setdefault('source', name)
            raise

        degree_map = None
        if data.get('degree_map') is not None:
            try:
                degree_map = DegreeMap.from_dict(fan, data['degree_map'])
            except (ValueError, TypeError) as e:
                raise ParseError(f"invalid degree_map: {e}", name, _line_of(text, 'degree_map'))
            except ParseError as e:
                raise ParseError(e.detail, name, _line_of(text, 'degree_map'))
            except FanSheafError as e:
                if name is not None:
                    e.context.setdefault('source', name)
                raise
        logger.info(f"[Loader] {fan!r} from {name or 'inline data'}")
        return LoadedFan(fan=fan, degree_map=degree_map, source=name)

    def load_subdivision(self, coarse: Source, fine: Source) -> LoadedSubdivision:
        coarse_fan = self.load_fan(coarse)
        fine_fan = self.load_fan(fine)
        pi = build_subdivision(fine_fan.fan, coarse_fan.fan)
        return LoadedSubdivision(subdivision=pi, coarse=coarse_fan, fine=fine_fan)

    def load_subdivision_document(self, source: Source) -> LoadedSubdivision:
        """{"coarse": ..., "fine": ...} where each side is a fan object or a path next to the document."""
        if isinstance(source, dict):
            data, name, base_dir = source, None, None
        else:
            path = Path(source)
            data, _ = self._read(path)
            name, base_dir = str(path), path.parent
        for key in ('coarse', 'fine'):
            if key not in data:
                raise ParseError(f"missing field '{key}'", name)
        sides = {}
        for key in ('coarse', 'fine'):
            value = data[key]
            if isinstance(value, str):
                sides[key] = self.load_fan(value, base_dir=base_dir)
            elif isinstance(value, dict):
                sides[key] = self.load_fan(value, label=key)
            else:
                raise ParseError(f"'{key}' must be a fan object or a path", name)
        pi = build_subdivision(sides['fine'].fan, sides['coarse'].fan)
        return LoadedSubdivision(subdivision=pi, coarse=sides['coarse'], fine=sides['fine'])


# =============================================================================
# ENCODERS
# =============================================================================

def encode(value: Any) -> Any:
    """JSON-ready form of any result object; plain values pass through."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, (InvariantPolynomial, NCPolynomial, TensorNCPolynomial)):
        return value.to_dict()
    if hasattr(value, 'to_dict'):
        return value.to_dict()
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    return str(value)


def to_text(value: Any) -> Any:
    """Compact form: polynomials as their canonical strings."""
    if isinstance(value, (InvariantPolynomial, NCPolynomial, TensorNCPolynomial)):
        return value.to_string()
    if isinstance(value, dict):
        return {str(k): to_text(v) for k, v in value.items()}
    return encode(value)


def dumps(document: Any, indent: Optional[int] = None) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    if indent is None:
        indent = int(get_config().get('output', 'indent', default=2))
    return json.dumps(encode(document), sort_keys=True, indent=indent, ensure_ascii=False) + '\n'


def write_json(path: Union[str, Path], document: Any, indent: Optional[int] = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(document, indent))
    logger.info(f"[Loader] wrote {path}")
    return path
