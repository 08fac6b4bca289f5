"""Access to the data files shipped with the package."""

from __future__ import annotations

from importlib import resources


def data_text(name: str) -> str:
    return resources.files("braidmono").joinpath("data").joinpath(name).read_text()


def data_path(name: str):
    return resources.files("braidmono").joinpath("data").joinpath(name)
