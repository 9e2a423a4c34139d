"""Finite-shift classification for parabolic semigroups of holomorphic self-maps of the disc."""

__version__ = "0.1.0"

from .criteria import (  # noqa: E402
    ClassifyOptions,
    ClosedForm,
    Decision,
    PowerLogFit,
    Verdict,
    classify_shift,
    karamanlis_integral,
    series_criterion,
    step_series,
)
from .domains import (  # noqa: E402
    GraphDomain,
    HalfPlane,
    Power,
    SlitPlane,
    StepDomain,
    Table,
    VerticalSector,
    XLogEps,
    bstar_height,
    contains,
    eta,
)
from .models import (  # noqa: E402
    HalfPlaneTranslation,
    SlitPlaneModel,
    VerticalSectorModel,
    orbit,
    speeds,
)
