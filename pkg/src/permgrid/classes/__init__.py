"""Enumeration pipelines for the three avoidance classes and their grid-class data."""
