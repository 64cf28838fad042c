"""Exact computations for Lie superalgebras, their enveloping algebras and
left-invariant split gradings on homogeneous superspaces G/H."""

__version__ = "0.1.0"

from .core import *  # noqa: F401,F403
from .catalog import *  # noqa: F401,F403
from .pbw import *  # noqa: F401,F403
from .exterior import *  # noqa: F401,F403
from .grading import *  # noqa: F401,F403
from .document import *  # noqa: F401,F403
