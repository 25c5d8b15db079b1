"""Shipped simulation configs."""
from importlib import resources
from pathlib import Path


def preset_path(name: str) -> Path:
    """Filesystem path of a shipped config, e.g. ``preset_path("impulsive_lf")``."""
    if not name.endswith(".cfg"):
        name = name + ".cfg"
    with resources.as_file(resources.files(__name__).joinpath(name)) as path:
        return Path(path)


def available() -> list[str]:
    return sorted(
        entry.name[: -len(".cfg")]
        for entry in resources.files(__name__).iterdir()
        if entry.name.endswith(".cfg")
    )
