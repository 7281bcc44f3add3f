"""Utilities for fdre."""

from .db import ResultsDB, create_file_structure
from .io import (save_model, load_model, dump_dataset, load_dataset, save_json, load_json,
                 save_results, load_results)
