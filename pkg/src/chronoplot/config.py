"""
Render and scale defaults, optionally overridden from a TOML file::

    [render]
    width = 1000
    palette = ["#1b9e77", "#d95f02"]
"""

import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from chronoplot.exceptions import ConfigurationError

DEFAULT_PALETTE = (
    '#1b9e77', '#d95f02', '#7570b3', '#e7298a',
    '#66a61e', '#e6ab02', '#a6761d', '#666666',
)


@dataclass(frozen=True)
class Settings:
    width: int = 800
    height: int = 500
    padding: int = 10
    font_size: int = 11
    palette: Tuple[str, ...] = DEFAULT_PALETTE
    inner_radius: float = 0.2
    break_target: int = 5
    line_width: float = 1.5
    point_radius: float = 2.5

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ConfigurationError('canvas width and height must be positive')
        if self.padding < 0 or self.font_size <= 0:
            raise ConfigurationError('padding must be >= 0 and font_size > 0')
        if not self.palette:
            raise ConfigurationError('palette needs at least one color')
        if not 0 <= self.inner_radius < 1:
            raise ConfigurationError('inner_radius must be within [0, 1)')
        if self.break_target < 1:
            raise ConfigurationError('break_target must be >= 1')
        if self.line_width <= 0 or self.point_radius <= 0:
            raise ConfigurationError('line_width and point_radius must be positive')


_TYPES: Dict[str, Any] = {
    'width': int,
    'height': int,
    'padding': int,
    'font_size': int,
    'palette': tuple,
    'inner_radius': float,
    'break_target': int,
    'line_width': float,
    'point_radius': float,
}


def _coerce(name: str, value: Any) -> Any:
    expected = _TYPES[name]
    if expected is tuple:
        if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
            raise ConfigurationError(f'render.{name} must be a list of strings')
        return tuple(value)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigurationError(f'render.{name} must be a number')
    if expected is int and not isinstance(value, int):
        raise ConfigurationError(f'render.{name} must be an integer')
    return expected(value)


def settings_from_dict(data: Dict[str, Any], base: Optional[Settings] = None) -> Settings:
    base = base or Settings()
    unknown = set(data) - {'render'}
    if unknown:
        raise ConfigurationError(f'unknown config table(s): {", ".join(sorted(unknown))}')
    render = data.get('render', {})
    if not isinstance(render, dict):
        raise ConfigurationError('[render] must be a table')
    known = {f.name for f in fields(Settings)}
    unknown = set(render) - known
    if unknown:
        raise ConfigurationError(f'unknown render setting(s): {", ".join(sorted(unknown))}')
    return replace(base, **{name: _coerce(name, value) for name, value in render.items()})


def load_settings(path: Optional[Union[str, Path]] = None) -> Settings:
    """
    Read settings from a TOML file; defaults when ``path`` is None.

    Raises
    ------
    chronoplot.exceptions.ConfigurationError
        If the file cannot be read or holds unknown or invalid values.
    """
    if path is None:
        return Settings()
    try:
        with Path(path).open('rb') as handle:
            data = tomllib.load(handle)
    except OSError as e:
        raise ConfigurationError(f'cannot read config {path}: {e}') from e
    except tomllib.TOMLDecodeError as e:
        raise ConfigurationError(f'invalid TOML in {path}: {e}') from e
    return settings_from_dict(data)
