"""Core functionality and utilities for the module."""
