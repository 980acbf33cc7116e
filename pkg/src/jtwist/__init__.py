"""Construction and exact verification of extended jordanian twists."""
from .scalars import XiSeries, Q, default_order
from .kernel import BACKEND

__version__ = "0.1.0"

__all__ = ["XiSeries", "Q", "default_order", "BACKEND", "__version__"]
