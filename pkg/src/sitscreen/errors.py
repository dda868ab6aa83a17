"""Exception hierarchy for the sitscreen package.

Every error raised by the library derives from :class:`SitScreenError`, so
callers (notably the CLI) can map failures onto exit codes without chasing
bare ``ValueError``s through the stack.
"""


class SitScreenError(Exception):
    """Base class for all sitscreen errors."""


class InputError(SitScreenError):
    """Problems with user-supplied data files (CSV parsing, selectors)."""


class ParseError(InputError):
    """Malformed CSV content; the message names the offending row/column."""


class MissingResponse(InputError):
    """The requested response column does not exist."""


class NonNumericColumn(InputError):
    """A covariate column contains a value that cannot be read as a number."""


class EmptyData(InputError):
    """The input file contains no data rows (or no header)."""


class DegenerateData(SitScreenError):
    """Data that is structurally unusable for the statistic."""


class DegenerateResponse(DegenerateData):
    """The response carries no usable variation (constant, or effectively so)."""


class SampleTooSmall(DegenerateData):
    """Fewer than two slices remain after remainder trimming."""


class AllColumnsConstant(DegenerateData):
    """Every covariate column is constant; screening would be meaningless."""


class ConfigError(SitScreenError):
    """Invalid configuration values (slice size, FDR level, rule parameters)."""


class InvalidCalibration(ConfigError):
    """A variance calibration with non-positive sigma squared."""


class InvalidSize(ConfigError):
    """A hard-threshold model size outside [1, p]."""


class InvalidRho(ConfigError):
    """An autoregressive correlation outside (-1, 1)."""


class IncompatibleDimensions(ConfigError):
    """A design matrix too narrow for the requested response model."""


class NonPositiveThreshold(ConfigError):
    """The estimated-FDP curve is only defined for thresholds t > 0."""


class EmptyActiveSet(ConfigError):
    """Minimum model size is undefined for an empty active set."""
