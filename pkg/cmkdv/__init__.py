"""
cmkdv is a verification lab for U(1)-invariant complex mKdV equations: exact jet-space identities of their
conservation laws, closed-form travelling waves and a pseudospectral time-evolution harness.
"""

import importlib.metadata

__version__ = importlib.metadata.version("cmkdv")
__author__ = ""
__email__ = ""
__credits__ = []
__license__ = "BSD-3"

from .errors import *
from .jet import *
from .method import *
from .models import *
