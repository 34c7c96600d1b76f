"""
Run Configuration Data Model
"""

from dataclasses import asdict, dataclass, fields
from typing import Optional

from config.constants import (
    DEFAULT_DESCENT_CAP,
    DEFAULT_ENUM_RADIUS,
    DEFAULT_ENUM_SIZE_CAP,
    DEFAULT_ORDER_PROBE,
    DEFAULT_SEARCH_RADIUS,
    DEFAULT_WORD_CAP,
    OUTPUT_FORMATS,
)
from config.settings import Settings


@dataclass(frozen=True)
class RunConfig:
    """Caps and output mode for one CLI invocation"""

    word_cap: int = DEFAULT_WORD_CAP
    enum_radius: int = DEFAULT_ENUM_RADIUS
    enum_size_cap: int = DEFAULT_ENUM_SIZE_CAP
    search_radius: int = DEFAULT_SEARCH_RADIUS
    output_format: str = "text"
    descent_cap: int = DEFAULT_DESCENT_CAP
    order_probe: Optional[int] = DEFAULT_ORDER_PROBE

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name == 'output_format':
                if value not in OUTPUT_FORMATS:
                    raise ValueError(f"output_format must be one of {OUTPUT_FORMATS}, got {value!r}")
            elif f.name == 'order_probe' and value is None:
                continue
            elif not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ValueError(f"{f.name} must be a positive integer, got {value!r}")

    @property
    def json_output(self) -> bool:
        return self.output_format == "json"

    @classmethod
    def from_settings(cls, settings: Settings) -> 'RunConfig':
        """Take every field from the settings, falling back to the defaults"""
        defaults = cls()
        return cls(**{f.name: settings.get(f.name, getattr(defaults, f.name)) for f in fields(cls)})

    def to_dict(self) -> dict:
        return asdict(self)
