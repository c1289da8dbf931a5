"""
Topological Levinson theorem for point interactions
Winding of the boundary symbol Gamma against the bound state count, with numerical
checks of the wave operators behind it
"""

# Add imports here

from .models import *
from .symbols import *
from .boundary import *
from .winding import *
from .levinson import *
from .waveop import *

__version__ = "0.1.0"
