"""Exception types raised by the fcar package.

Every error that the estimators, simulators and I/O helpers raise on bad
input or unusable data derives from :class:`FcarError`, so callers can
catch one type at the boundary (the CLI does exactly that).
"""

from __future__ import annotations


class FcarError(Exception):
    """Base class for all errors raised by this package."""


class EmptySeries(FcarError):
    """A time series with zero observations was supplied."""


class NonFiniteValue(FcarError):
    """A series contains a NaN or infinite value.

    Parameters
    ----------
    index : int
        Zero-based position of the first offending value.
    """

    def __init__(self, index: int):
        self.index = int(index)
        super().__init__(f"non-finite value at index {self.index}")


class NonMonotoneTimestamps(FcarError):
    """Timestamps attached to a series are not strictly increasing."""


class SeriesTooShort(FcarError):
    """A series is too short for the requested operation.

    Parameters
    ----------
    needed : int
        Minimum usable length.
    got : int
        Length actually supplied.
    """

    def __init__(self, needed: int, got: int):
        self.needed = int(needed)
        self.got = int(got)
        super().__init__(f"series of length {self.got} is too short (need > {self.needed})")


class DegenerateInterval(FcarError):
    """An interval [a, b] with a >= b was supplied where a < b is required."""


class DegenerateDelay(FcarError):
    """All delay-variable values coincide, so no smoothing grid exists."""


class OutOfSupport(FcarError):
    """A value lies outside the knot interval [a, b]."""

    def __init__(self, value: float):
        self.value = float(value)
        super().__init__(f"value {self.value!r} lies outside the knot support")


class DimensionMismatch(FcarError):
    """Arrays passed together do not have compatible shapes."""


class GammaOutOfRange(FcarError):
    """A lag index gamma outside 1..p was requested."""

    def __init__(self, gamma: int, p: int):
        self.gamma = int(gamma)
        self.p = int(p)
        super().__init__(f"lag index {self.gamma} outside 1..{self.p}")


class NoSupport(FcarError):
    """No observations carry kernel weight anywhere near an evaluation point.

    Raised when the nearest delay value is farther than eight bandwidths
    from the requested point, so even the widening fallback cannot help.
    """

    def __init__(self, u: float):
        self.u = float(u)
        super().__init__(f"no data within eight bandwidths of u={self.u!r}")


class NonFiniteState(FcarError):
    """A simulated path diverged past the overflow guard.

    Parameters
    ----------
    seed : int
        Seed of the offending replication.
    step : int
        Zero-based recursion step at which the guard tripped.
    """

    def __init__(self, seed: int, step: int):
        self.seed = int(seed)
        self.step = int(step)
        super().__init__(f"simulated state exceeded 1e6 at step {self.step} (seed {self.seed})")


class ShapeMismatch(FcarError):
    """Forecast and actual matrices do not share a common shape."""


class DegenerateSample(FcarError):
    """A sample with fewer than two points or zero spread was supplied."""


class MissingColumn(FcarError):
    """An input CSV lacks a required column."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"input file is missing required column {self.name!r}")


class ParseError(FcarError):
    """A CSV cell could not be parsed as a number.

    Parameters
    ----------
    line : int
        One-based line number in the file, header included.
    """

    def __init__(self, line: int, detail: str = ""):
        self.line = int(line)
        msg = f"could not parse line {self.line}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class EmptyWindow(FcarError):
    """No rows survive windowing / filtering of an input file."""
