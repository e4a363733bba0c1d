"""
Domain models module
"""

from . import center
from . import config
from . import dataset
from . import kernel
from . import permutation
from . import projected
from . import report
from . import statistic
