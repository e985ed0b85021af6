"""Named example crushtaceans shipped with the package."""

from importlib import resources

from ..core import PaintedCrushtacean, parse

NAMES = ("THETA", "BORR", "BORR-tt", "BORR-tf", "BORR-ff", "PRISM3", "PRISM1")


def path(name: str):
    return resources.files(__name__).joinpath(f"{name}.crush")


def load(name: str) -> PaintedCrushtacean:
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(NAMES)}")
    return parse(path(name).read_text())
