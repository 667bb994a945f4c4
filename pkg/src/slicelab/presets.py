"""Repository-shipped generating-family presets."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .families import GeneratingFamily, family_from_json_dict


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    family: GeneratingFamily
    grid: int
    level: float
    sweep_from: float
    sweep_to: float
    sweep_steps: int
    witness: tuple[float, float]
    expect: dict

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "family": self.family.to_json_dict(),
            "grid": self.grid,
            "level": self.level,
            "sweep": {
                "from": self.sweep_from,
                "to": self.sweep_to,
                "steps": self.sweep_steps,
            },
            "witness": list(self.witness),
            "expect": self.expect,
        }


def _load(name: str) -> Preset:
    raw = resources.files("slicelab").joinpath("preset_data").joinpath(f"{name}.json").read_text()
    data = json.loads(raw)
    return Preset(
        name=data["name"],
        description=data["description"],
        family=family_from_json_dict(data["family"]),
        grid=int(data.get("grid", 256)),
        level=float(data["level"]),
        sweep_from=float(data["sweep"]["from"]),
        sweep_to=float(data["sweep"]["to"]),
        sweep_steps=int(data["sweep"]["steps"]),
        witness=tuple(data["witness"]),
        expect=data.get("expect", {}),
    )


PRESET_NAMES = ("P-eight", "P-sum", "P-seq", "P-seq-top", "P-link")


def load_preset(name: str) -> Preset:
    if name not in PRESET_NAMES:
        raise KeyError(f"unknown preset {name!r}; have {', '.join(PRESET_NAMES)}")
    return _load(name)


def all_presets() -> list[Preset]:
    return [_load(n) for n in PRESET_NAMES]
