"""Exact checks for iota-root data, quantum symmetric pairs at q = 1 and the
resulting symmetric subgroups."""

__version__ = "0.1.0"
