"""Data objects for fdre."""

from .estimate import Estimate
from .meta_data import MetaData
