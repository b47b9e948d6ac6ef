"""Exception types raised across the pipeline."""


class EcgClassifyError(Exception):
    """Base class for all errors raised by this package."""


# --- signal errors ---

class InvalidWindow(EcgClassifyError):
    """Moving-average window must be a positive integer."""


class WindowTooLarge(EcgClassifyError):
    """Moving-average window exceeds the signal length."""


class ConstantSignal(EcgClassifyError):
    """Signal has zero amplitude range; min-max scaling is undefined."""


class UpsampleNotSupported(EcgClassifyError):
    """Resampling target rate exceeds the source rate."""


# --- ingest errors ---

class ParseError(EcgClassifyError):
    def __init__(self, msg, row=None, col=None):
        if row is not None:
            loc = f"row {row}" + (f", column {col}" if col is not None else "")
            msg = f"{loc}: {msg}"
        super().__init__(msg)
        self.row = row
        self.col = col


class UnknownLabel(ParseError):
    """Label token is not one of the five rhythm classes."""


class MissingRateHeader(EcgClassifyError):
    """Segment CSV must start with a '# rate_hz=<float>' header line."""


class SegmentTooShort(EcgClassifyError):
    """Too few samples to form one full analysis window."""


# --- feature errors ---

class ZeroVariance(EcgClassifyError):
    """Moment ratio undefined for a (numerically) constant input."""


class InsufficientRows(EcgClassifyError):
    """Component fit needs more training rows."""


class LengthMismatch(EcgClassifyError):
    """Vector length does not match the fitted model."""


# --- model / training errors ---

class NonFiniteInput(EcgClassifyError):
    """Network input contains NaN or Inf."""


class DegenerateDataset(EcgClassifyError):
    """Training data cannot support the requested fit."""


class DatasetTooSmall(EcgClassifyError):
    """Not enough segments to split into train and test sets."""


class EmptyMatrix(EcgClassifyError):
    """Confusion matrix has zero total count."""


# --- persistence errors ---

class VersionMismatch(EcgClassifyError):
    """Model file was written by an incompatible format version."""


class ChecksumFailure(EcgClassifyError):
    """Model file is corrupt or truncated."""
