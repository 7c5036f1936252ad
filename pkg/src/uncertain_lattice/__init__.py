"""Validators, conversions and a checked generalization hierarchy for uncertain set and graph structures."""

__version__ = "0.1.0"
