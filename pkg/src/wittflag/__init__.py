"""wittflag: exact root-system computations for Witt rings of complex flag varieties."""
from .rootdata import RootDatum, SimpleType, build_root_datum

__version__ = "0.1.0"
__all__ = ["RootDatum", "SimpleType", "build_root_datum", "__version__"]
