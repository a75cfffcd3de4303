"""Exception hierarchy.

Two branches: ValidationError for rejected inputs (violated preconditions,
inconsistent grids, unresolvable parameters) and NumericalError for
computations that fail at run time on otherwise valid inputs (ambiguous
winding numbers, DC-dominated helicity, missing sign changes).  The CLI maps
the branches to exit codes 2 and 3.
"""


class BeamError(Exception):
    """Base class for everything raised by this package."""


class ValidationError(BeamError):
    """Input rejected before any numerics ran."""


class SamplingError(ValidationError):
    """Grid too coarse for the requested transverse wavenumber or tilt."""


class EvanescentBeamError(ValidationError):
    """Transverse momentum exceeds the total momentum."""


class ApertureError(ValidationError):
    """Aperture does not fit inside the grid."""


class GridMismatchError(ValidationError):
    """Fields on different grids were combined."""


class DegenerateFieldError(ValidationError):
    """A field with no weight was passed where a normalizable one is needed."""


class MaskSingularityError(ValidationError):
    """Reference amplitude too small to divide by during mask synthesis."""


class OrderOverlapError(ValidationError):
    """Extraction window would overlap a neighboring diffraction order."""


class NumericalError(BeamError):
    """A computation on valid inputs failed to produce a trustworthy result."""


class AmbiguousChargeError(NumericalError):
    """Winding-number loop crossed a region of negligible amplitude."""


class DCSingularityError(NumericalError):
    """Transverse-helicity operator applied to a field with DC weight."""


class CrossingNotFoundError(NumericalError):
    """No sign change found while bisecting for a critical radius."""
