# cli/__init__.py

"""
Command line front end for fermatsym.
"""

from .commands import main
from .output import OutputDocument
