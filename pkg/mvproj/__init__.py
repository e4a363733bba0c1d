"""
Multivariate K-sample and independence tests by projection to distances
from center points.
"""

from mvproj.utils.config import settings

__version__ = settings.VERSION
