"""Dynamical systems on the space models, with a catalog keyed by descriptor tag."""

from mobiuslab.systems.base import DynSystem, iterate
from mobiuslab.systems.catalog import *  # noqa: F401,F403
from mobiuslab.systems.catalog import __all__ as _catalog_all
from mobiuslab.systems.registry import KNOWN_TAGS, UnknownSystemError, build_system, parse_point

__all__ = ["DynSystem", "KNOWN_TAGS", "UnknownSystemError", "build_system", "iterate", "parse_point", *_catalog_all]
