"""Python face of the native core.

The compiled module lives inside this package when installed from a wheel;
in a plain CMake build tree it sits on PYTHONPATH next to the package, so
fall back to a top-level import in that case.
"""

try:
    from . import _core
except ImportError:  # build-tree layout
    import _core

polarization = _core.polarization
epr = _core.epr
fock = _core.fock
laxphillips = _core.laxphillips
earlyq = _core.earlyq
config = _core.config

InvalidParameter = _core.InvalidParameter
ZeroAtOrigin = _core.ZeroAtOrigin
DimensionMismatch = _core.DimensionMismatch
BlockMixture = _core.BlockMixture
TagMismatch = _core.TagMismatch
NoCrossing = _core.NoCrossing
GridTooSmall = _core.GridTooSmall
BandLimitExceeded = _core.BandLimitExceeded
ZeroAmplitude = _core.ZeroAmplitude
NonHermitian = _core.NonHermitian

__version__ = _core.__version__

__all__ = [
    "polarization",
    "epr",
    "fock",
    "laxphillips",
    "earlyq",
    "config",
    "InvalidParameter",
    "ZeroAtOrigin",
    "DimensionMismatch",
    "BlockMixture",
    "TagMismatch",
    "NoCrossing",
    "GridTooSmall",
    "BandLimitExceeded",
    "ZeroAmplitude",
    "NonHermitian",
    "__version__",
]
