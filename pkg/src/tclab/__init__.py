from importlib.metadata import version

from tclab.pipeline import Tclab

__all__ = ["Tclab"]

__version__ = version("tclab")
